#include "takiff/serialize.hpp"

#include "takiff/errors.hpp"

namespace takiff {

namespace {

const Json& field(const Json& j, const char* key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError(std::string("missing field \"") + key + "\"");
  return j.at(key);
}

Scalar scalar_from_json(const Json& j) {
  if (j.is_string()) return parse_scalar(j.get<std::string>());
  if (j.is_number_integer()) return Scalar(j.get<long>());
  throw ParseError("scalars must be strings \"p/q\" or integers");
}

std::size_t size_from_json(const Json& j, const char* what) {
  if (!j.is_number_integer() || j.get<long long>() < 0) throw ParseError(std::string(what) + " must be a non-negative integer");
  return j.get<std::size_t>();
}

}  // namespace

Json parse_json(const std::string& text) {
  try {
    return Json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
}

Json ring_to_json(const Ring& ring) {
  Json out = Json::array();
  for (const auto& b : ring.blocks())
    out.push_back(Json{{"name", b.name}, {"size", b.size}, {"role", std::string(to_string(b.role))}});
  return out;
}

RingPtr ring_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("ring must be an array of blocks");
  std::vector<VariableBlock> blocks;
  for (const auto& b : j) {
    VariableBlock vb;
    vb.name = field(b, "name").get<std::string>();
    vb.size = size_from_json(field(b, "size"), "block size");
    vb.role = b.contains("role") ? parse_block_role(b.at("role").get<std::string>()) : BlockRole::state;
    blocks.push_back(std::move(vb));
  }
  return make_ring(std::move(blocks));
}

Json terms_to_json(const Polynomial& p) {
  Json terms = Json::array();
  const auto& ring = *p.ring();
  for (const auto& [m, c] : p.terms()) {
    Json exps = Json::object();
    for (std::size_t v = 0; v < m.size(); ++v)
      if (m[v] > 0) exps[ring.var_name(v)] = m[v];
    terms.push_back(Json{{"coeff", format_scalar(c)}, {"exps", std::move(exps)}});
  }
  return terms;
}

Polynomial terms_from_json(const Json& j, const RingPtr& ring) {
  if (!j.is_array()) throw ParseError("terms must be an array");
  Polynomial p(ring);
  for (const auto& t : j) {
    Monomial m(ring->num_vars(), 0);
    if (t.contains("exps")) {
      const auto& exps = t.at("exps");
      if (!exps.is_object()) throw ParseError("exps must be an object");
      for (const auto& [name, e] : exps.items()) {
        const auto v = ring->parse_var_name(name);
        const auto exp = size_from_json(e, "exponent");
        m[v] += static_cast<std::uint32_t>(exp);
      }
    }
    p.add_term(m, scalar_from_json(field(t, "coeff")));
  }
  return p;
}

Json polynomial_to_json(const Polynomial& p) {
  return Json{{"ring", ring_to_json(*p.ring())}, {"terms", terms_to_json(p)}};
}

Polynomial polynomial_from_json(const Json& j) {
  auto ring = ring_from_json(field(j, "ring"));
  return terms_from_json(field(j, "terms"), ring);
}

Json matrix_to_json(const Matrix& m) {
  Json rows = Json::array();
  for (std::size_t r = 0; r < m.rows(); ++r) {
    Json row = Json::array();
    for (std::size_t c = 0; c < m.cols(); ++c) row.push_back(format_scalar(m(r, c)));
    rows.push_back(std::move(row));
  }
  return rows;
}

Matrix matrix_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("matrix must be an array of rows");
  std::vector<std::vector<Scalar>> rows;
  for (const auto& row : j) rows.push_back(scalars_from_json(row));
  return Matrix::from_rows(rows);
}

Json algebra_to_json(const LieAlgebra& g) {
  const auto d = g.dim();
  Json c = Json::array();
  for (std::size_t i = 0; i < d; ++i) {
    Json ci = Json::array();
    for (std::size_t jj = 0; jj < d; ++jj) {
      Json cij = Json::array();
      for (std::size_t k = 0; k < d; ++k) cij.push_back(format_scalar(g.constants()(i, jj, k)));
      ci.push_back(std::move(cij));
    }
    c.push_back(std::move(ci));
  }
  return Json{{"dim", d}, {"names", g.names()}, {"c", std::move(c)}};
}

LieAlgebra algebra_from_json(const Json& j) {
  const auto d = size_from_json(field(j, "dim"), "dim");
  std::vector<std::string> names;
  if (j.contains("names")) {
    names = j.at("names").get<std::vector<std::string>>();
  } else {
    for (std::size_t i = 0; i < d; ++i) names.push_back("x" + std::to_string(i));
  }
  const auto& c = field(j, "c");
  StructureConstants sc(d);
  if (!c.is_array() || c.size() != d) throw StructuralError("structure constants must be a dim x dim x dim array");
  for (std::size_t i = 0; i < d; ++i) {
    if (!c[i].is_array() || c[i].size() != d) throw StructuralError("structure constants must be dim x dim x dim");
    for (std::size_t jj = 0; jj < d; ++jj) {
      if (!c[i][jj].is_array() || c[i][jj].size() != d)
        throw StructuralError("structure constants must be dim x dim x dim");
      for (std::size_t k = 0; k < d; ++k) sc(i, jj, k) = scalar_from_json(c[i][jj][k]);
    }
  }
  return make_lie_algebra(d, std::move(names), std::move(sc));
}

Json representation_to_json(const Representation& rep) {
  Json mats = Json::array();
  for (const auto& m : rep.matrices()) mats.push_back(matrix_to_json(m));
  return Json{{"algebra", algebra_to_json(rep.algebra())}, {"space_dim", rep.space_dim()}, {"matrices", mats}};
}

Representation representation_from_json(const Json& j) {
  auto g = algebra_from_json(field(j, "algebra"));
  const auto n = size_from_json(field(j, "space_dim"), "space_dim");
  std::vector<Matrix> mats;
  for (const auto& m : field(j, "matrices")) mats.push_back(matrix_from_json(m));
  return Representation(std::move(g), n, std::move(mats));
}

Json field_to_json(const PolyMap& f) {
  Json codomain = Json::array();
  for (const auto& b : f.codomain()) codomain.push_back(Json{{"name", b.name}, {"size", b.size}});
  Json comps = Json::array();
  for (const auto& c : f.components()) comps.push_back(terms_to_json(c));
  return Json{{"ring", ring_to_json(*f.ring())}, {"codomain", std::move(codomain)}, {"components", std::move(comps)}};
}

PolyMap field_from_json(const Json& j) {
  auto ring = ring_from_json(field(j, "ring"));
  std::vector<PolyMap::CodomainBlock> codomain;
  for (const auto& b : field(j, "codomain"))
    codomain.push_back({field(b, "name").get<std::string>(), size_from_json(field(b, "size"), "codomain size")});
  for (const auto& b : codomain)
    if (ring->block(b.name).size != b.size)
      throw StructuralError("codomain block " + b.name + " does not match the ring block size");
  std::vector<Polynomial> comps;
  for (const auto& c : field(j, "components")) comps.push_back(terms_from_json(c, ring));
  return PolyMap(ring, std::move(comps), std::move(codomain));
}

Json decomposition_to_json(const Representation& base_rep, const RingPtr& ring, const Decomposition& dec) {
  Json levels = Json::array();
  for (const auto& level : dec.coefficients) {
    Json lv = Json::array();
    for (const auto& c : level) lv.push_back(terms_to_json(rebase(c, ring)));
    levels.push_back(std::move(lv));
  }
  return Json{{"level", dec.level},
              {"rep", representation_to_json(base_rep)},
              {"ring", ring_to_json(*ring)},
              {"coefficients", std::move(levels)}};
}

DecompositionDocument decomposition_from_json(const Json& j) {
  auto rep = representation_from_json(field(j, "rep"));
  auto ring = ring_from_json(field(j, "ring"));
  Decomposition dec;
  dec.level = static_cast<unsigned>(size_from_json(field(j, "level"), "level"));
  for (const auto& lv : field(j, "coefficients")) {
    std::vector<Polynomial> level;
    for (const auto& c : lv) level.push_back(terms_from_json(c, ring));
    if (level.size() != rep.algebra().dim())
      throw StructuralError("decomposition level has " + std::to_string(level.size()) + " coefficients, algebra has " +
                            std::to_string(rep.algebra().dim()));
    dec.coefficients.push_back(std::move(level));
  }
  if (dec.coefficients.size() != dec.level + 1u) throw StructuralError("decomposition must list level + 1 blocks");
  return {std::move(rep), std::move(ring), std::move(dec)};
}

Json scalars_to_json(const std::vector<Scalar>& v) {
  Json out = Json::array();
  for (const auto& s : v) out.push_back(format_scalar(s));
  return out;
}

std::vector<Scalar> scalars_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("expected an array of scalars");
  std::vector<Scalar> out;
  for (const auto& s : j) out.push_back(scalar_from_json(s));
  return out;
}

std::vector<SamplePoint> points_from_json(const Json& j) {
  if (!j.is_array()) throw ParseError("points must be an array");
  std::vector<SamplePoint> out;
  for (const auto& p : j) {
    SamplePoint sp;
    if (p.is_array()) {
      sp.state = scalars_from_json(p);
    } else {
      sp.state = scalars_from_json(field(p, "state"));
      if (p.contains("params")) sp.params = scalars_from_json(p.at("params"));
    }
    out.push_back(std::move(sp));
  }
  return out;
}

}  // namespace takiff
