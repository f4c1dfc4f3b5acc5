#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "takiff/dixmier.hpp"
#include "takiff/invariants.hpp"
#include "takiff/lie.hpp"
#include "takiff/matrix.hpp"
#include "takiff/polynomial.hpp"

namespace takiff {

/// Seeded source of exact random data. The engine is std::mt19937_64 seeded
/// with the 64-bit seed; an integer in [0, n) is next() % n. Nothing else
/// touches the engine, so other implementations can replay the stream.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  std::uint64_t next() { return engine_(); }
  std::uint64_t below(std::uint64_t n) { return n == 0 ? 0 : next() % n; }
  // Uniform in [lo, hi].
  long range(long lo, long hi) { return lo + static_cast<long>(below(static_cast<std::uint64_t>(hi - lo + 1))); }
  // p/q with p in [-3, 3] and q in {1, 2}.
  Scalar small_rational();
  Scalar nonzero_rational();

 private:
  std::mt19937_64 engine_;
};

// Sum of up to max_terms random terms of total degree <= max_degree in the
// variables of the listed blocks (all blocks when empty).
Polynomial random_polynomial(Rng& rng, const RingPtr& ring, unsigned max_degree, std::size_t max_terms,
                             const std::vector<std::string>& blocks = {});

// Integer entries in [-3, 3], redrawn until invertible.
Matrix random_invertible_matrix(Rng& rng, std::size_t n);

std::vector<SamplePoint> random_points(Rng& rng, std::size_t count, std::size_t state_dim, std::size_t param_dim);

struct RunConfig {
  std::uint64_t seed = 1;
  unsigned max_degree = 2;
  unsigned level = 1;
  std::string kind = "so";  // so, so_pq, sl2_adjoint, zero
  std::size_t n = 3;        // so: n; zero: dim V
  std::size_t p = 1;        // so_pq
  std::size_t q = 1;
  std::size_t params = 1;     // parameter variables in block "w"
  std::size_t max_terms = 2;  // per coefficient polynomial
  bool zero_coefficients = false;
};

// Base representation for a generator kind; throws ValidationError for an
// unknown kind.
Representation standard_representation(const RunConfig& config);

struct Instance {
  Representation rep;
  unsigned level = 0;
  RingPtr ring;  // w (parameters), f0..fm
  Decomposition coefficients;
  VectorField field;  // rho_m(b) F
};

// Deterministic in config. The field annihilates the lifted invariants by
// construction.
Instance generate_instance(const RunConfig& config);

}  // namespace takiff
