#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "takiff/dixmier.hpp"
#include "takiff/invariants.hpp"
#include "takiff/lie.hpp"
#include "takiff/polynomial.hpp"

namespace takiff {

// Insertion-ordered so emitted documents are byte-stable.
using Json = nlohmann::ordered_json;

Json ring_to_json(const Ring& ring);
RingPtr ring_from_json(const Json& j);

// {"ring": [...], "terms": [{"coeff": "1/2", "exps": {"f0.0": 2}}, ...]}
Json polynomial_to_json(const Polynomial& p);
Polynomial polynomial_from_json(const Json& j);
// Just the "terms" array, for documents that share one ring.
Json terms_to_json(const Polynomial& p);
Polynomial terms_from_json(const Json& j, const RingPtr& ring);

Json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const Json& j);

// {"dim": 3, "names": [...], "c": [[[...]]]}
Json algebra_to_json(const LieAlgebra& g);
LieAlgebra algebra_from_json(const Json& j);

// {"algebra": {...}, "space_dim": n, "matrices": [[[row], ...], ...]}
Json representation_to_json(const Representation& rep);
Representation representation_from_json(const Json& j);

// {"ring": [...], "codomain": [{"name", "size"}], "components": [[terms], ...]}
Json field_to_json(const PolyMap& field);
PolyMap field_from_json(const Json& j);

// Self-contained: carries the base representation and the ring so that a
// decomposition can be verified without other inputs.
struct DecompositionDocument {
  Representation rep;
  RingPtr ring;
  Decomposition dec;
};
Json decomposition_to_json(const Representation& base_rep, const RingPtr& ring, const Decomposition& dec);
DecompositionDocument decomposition_from_json(const Json& j);

// [{"state": [...], "params": [...]}, ...]
std::vector<SamplePoint> points_from_json(const Json& j);
Json scalars_to_json(const std::vector<Scalar>& v);
std::vector<Scalar> scalars_from_json(const Json& j);

Json parse_json(const std::string& text);

}  // namespace takiff
