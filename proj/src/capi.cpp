#include "takiff/takiff.h"

#include <cstdlib>
#include <cstring>
#include <new>
#include <sstream>
#include <string>

#include "takiff/dixmier.hpp"
#include "takiff/errors.hpp"
#include "takiff/generate.hpp"
#include "takiff/serialize.hpp"
#include "takiff/suite.hpp"
#include "takiff/takiff.hpp"

struct takiff_algebra {
  takiff::LieAlgebra value;
};
struct takiff_rep {
  takiff::Representation value;
};
struct takiff_poly {
  takiff::Polynomial value;
};
struct takiff_field {
  takiff::PolyMap value;
};

namespace {

using takiff::Json;

thread_local std::string last_error;

struct ArgumentError : takiff::Error {
  using takiff::Error::Error;
};

template <class T>
void require(const T* p, const char* what) {
  if (p == nullptr) throw ArgumentError(std::string(what) + " is null");
}

char* copy_string(const std::string& s) {
  auto* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (out == nullptr) throw std::bad_alloc();
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(char** out, const Json& j) {
  require(out, "output pointer");
  *out = copy_string(j.dump(2) + "\n");
}

template <class F>
takiff_status guard(F&& body) {
  try {
    body();
    last_error.clear();
    return TAKIFF_OK;
  } catch (const ArgumentError& e) {
    last_error = e.what();
    return TAKIFF_ERR_ARGUMENT;
  } catch (const takiff::ParseError& e) {
    last_error = e.what();
    return TAKIFF_ERR_PARSE;
  } catch (const takiff::StructuralError& e) {
    last_error = e.what();
    return TAKIFF_ERR_STRUCTURE;
  } catch (const takiff::ValidationError& e) {
    last_error = e.what();
    return TAKIFF_ERR_VALIDATION;
  } catch (const takiff::RefusalError& e) {
    last_error = e.what();
    return TAKIFF_ERR_REFUSED;
  } catch (const takiff::InternalConsistencyError& e) {
    last_error = e.what();
    return TAKIFF_ERR_INTERNAL;
  } catch (const nlohmann::json::exception& e) {
    last_error = std::string("malformed document: ") + e.what();
    return TAKIFF_ERR_PARSE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return TAKIFF_ERR_INTERNAL;
  }
}

Json parse(const char* text) {
  require(text, "JSON text");
  return takiff::parse_json(text);
}

takiff::LiftedRepresentation lift(const takiff::Representation& rep, unsigned m) {
  return takiff::lift_representation(takiff::build_takiff(rep.algebra(), m), rep);
}

// ---------------------------------------------------------------- human rendering

bool is_polynomial(const Json& j) { return j.is_object() && j.size() == 2 && j.contains("ring") && j.contains("terms"); }

bool is_field(const Json& j) {
  return j.is_object() && j.contains("ring") && j.contains("codomain") && j.contains("components");
}

bool is_scalar_row(const Json& j) {
  if (!j.is_array() || j.empty()) return false;
  for (const auto& x : j)
    if (!x.is_string() && !x.is_number()) return false;
  return true;
}

std::string scalar_text(const Json& j) { return j.is_string() ? j.get<std::string>() : j.dump(); }

void render(std::ostream& out, const Json& j, int indent);

void render_value(std::ostream& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (is_polynomial(j)) {
    out << takiff::polynomial_from_json(j).to_string() << "\n";
  } else if (is_scalar_row(j)) {
    out << "[";
    for (std::size_t i = 0; i < j.size(); ++i) out << (i ? ", " : "") << scalar_text(j[i]);
    out << "]\n";
  } else if (j.is_object() || j.is_array()) {
    out << "\n";
    render(out, j, indent + 2);
  } else if (j.is_string()) {
    out << j.get<std::string>() << "\n";
  } else {
    out << j.dump() << "\n";
  }
}

void render(std::ostream& out, const Json& j, int indent) {
  const std::string pad(static_cast<std::size_t>(indent), ' ');
  if (is_field(j)) {
    const auto f = takiff::field_from_json(j);
    std::size_t p = 0;
    for (const auto& b : f.codomain())
      for (std::size_t i = 0; i < b.size; ++i, ++p)
        out << pad << "d/d" << b.name << "." << i << ": " << f.components()[p].to_string() << "\n";
    return;
  }
  if (j.is_object()) {
    for (const auto& [key, value] : j.items()) {
      if (key == "ring" && value.is_array()) {
        out << pad << "ring: " << takiff::ring_from_json(value)->describe() << "\n";
        continue;
      }
      out << pad << key << ": ";
      render_value(out, value, indent);
    }
  } else if (j.is_array()) {
    for (std::size_t i = 0; i < j.size(); ++i) {
      out << pad << "[" << i << "] ";
      render_value(out, j[i], indent);
    }
  } else {
    out << pad;
    render_value(out, j, indent);
  }
}

takiff::RunConfig config_from_json(const Json& j) {
  takiff::RunConfig c;
  if (!j.is_object()) throw takiff::ParseError("run config must be an object");
  if (j.contains("seed")) c.seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("kind")) c.kind = j.at("kind").get<std::string>();
  if (j.contains("n")) c.n = j.at("n").get<std::size_t>();
  if (j.contains("p")) c.p = j.at("p").get<std::size_t>();
  if (j.contains("q")) c.q = j.at("q").get<std::size_t>();
  if (j.contains("level")) c.level = j.at("level").get<unsigned>();
  if (j.contains("max_degree")) c.max_degree = j.at("max_degree").get<unsigned>();
  if (j.contains("params")) c.params = j.at("params").get<std::size_t>();
  if (j.contains("max_terms")) c.max_terms = j.at("max_terms").get<std::size_t>();
  if (j.contains("zero")) c.zero_coefficients = j.at("zero").get<bool>();
  if (c.max_degree == 0) throw takiff::ValidationError("max_degree must be positive");
  return c;
}

Json config_to_json(const takiff::RunConfig& c) {
  return Json{{"seed", c.seed},          {"kind", c.kind},       {"n", c.n},
              {"p", c.p},                {"q", c.q},             {"level", c.level},
              {"max_degree", c.max_degree}, {"params", c.params}, {"max_terms", c.max_terms},
              {"zero", c.zero_coefficients}};
}

}  // namespace

extern "C" {

const char* takiff_last_error(void) { return last_error.c_str(); }

const char* takiff_status_name(takiff_status status) {
  switch (status) {
    case TAKIFF_OK: return "ok";
    case TAKIFF_ERR_PARSE: return "parse error";
    case TAKIFF_ERR_STRUCTURE: return "structural error";
    case TAKIFF_ERR_VALIDATION: return "validation error";
    case TAKIFF_ERR_REFUSED: return "refused";
    case TAKIFF_ERR_INTERNAL: return "internal consistency error";
    case TAKIFF_ERR_ARGUMENT: return "invalid argument";
  }
  return "unknown status";
}

void takiff_string_free(char* s) { std::free(s); }

// ---------------------------------------------------------------- algebras

takiff_status takiff_algebra_from_json(const char* json, takiff_algebra** out) {
  return guard([&] {
    require(out, "output pointer");
    *out = new takiff_algebra{takiff::algebra_from_json(parse(json))};
  });
}

takiff_status takiff_algebra_to_json(const takiff_algebra* g, char** out) {
  return guard([&] {
    require(g, "algebra");
    emit(out, takiff::algebra_to_json(g->value));
  });
}

size_t takiff_algebra_dim(const takiff_algebra* g) { return g ? g->value.dim() : 0; }

void takiff_algebra_free(takiff_algebra* g) { delete g; }

takiff_status takiff_build_takiff(const takiff_algebra* g, unsigned m, takiff_algebra** out) {
  return guard([&] {
    require(g, "algebra");
    require(out, "output pointer");
    *out = new takiff_algebra{takiff::build_takiff(g->value, m).algebra()};
  });
}

takiff_status takiff_verify_flip(const takiff_algebra* g, unsigned m, char** report) {
  return guard([&] {
    require(g, "algebra");
    const auto r = takiff::verify_flip_identity(g->value, m);
    Json j{{"algebra_dim", g->value.dim()}, {"level", m}, {"pass", r.pass}, {"checked", r.checked}};
    j["failing_element"] = r.failing_element ? Json(*r.failing_element) : Json();
    emit(report, j);
  });
}

// ---------------------------------------------------------------- representations

takiff_status takiff_rep_standard(const char* kind, size_t n, size_t p, size_t q, takiff_rep** out) {
  return guard([&] {
    require(kind, "kind");
    require(out, "output pointer");
    const std::string k = kind;
    if (k == "sl2") {
      *out = new takiff_rep{takiff::make_sl2().rep};
    } else if (k == "sl2_coadjoint") {
      *out = new takiff_rep{takiff::coadjoint_rep(takiff::make_sl2().algebra)};
    } else if (k == "gl") {
      if (n == 0) throw takiff::ValidationError("gl(n) needs n >= 1");
      *out = new takiff_rep{takiff::make_gl_n(n).rep};
    } else {
      takiff::RunConfig c;
      c.kind = k;
      c.n = n;
      c.p = p;
      c.q = q;
      *out = new takiff_rep{takiff::standard_representation(c)};
    }
  });
}

takiff_status takiff_rep_from_json(const char* json, takiff_rep** out) {
  return guard([&] {
    require(out, "output pointer");
    *out = new takiff_rep{takiff::representation_from_json(parse(json))};
  });
}

takiff_status takiff_rep_to_json(const takiff_rep* rep, char** out) {
  return guard([&] {
    require(rep, "representation");
    emit(out, takiff::representation_to_json(rep->value));
  });
}

takiff_status takiff_rep_algebra(const takiff_rep* rep, takiff_algebra** out) {
  return guard([&] {
    require(rep, "representation");
    require(out, "output pointer");
    *out = new takiff_algebra{rep->value.algebra()};
  });
}

void takiff_rep_free(takiff_rep* rep) { delete rep; }

takiff_status takiff_lift_rep(const takiff_rep* rep, unsigned m, takiff_rep** out) {
  return guard([&] {
    require(rep, "representation");
    require(out, "output pointer");
    *out = new takiff_rep{lift(rep->value, m).rep()};
  });
}

// ---------------------------------------------------------------- polynomials

takiff_status takiff_poly_from_json(const char* json, takiff_poly** out) {
  return guard([&] {
    require(out, "output pointer");
    *out = new takiff_poly{takiff::polynomial_from_json(parse(json))};
  });
}

takiff_status takiff_poly_to_json(const takiff_poly* p, char** out) {
  return guard([&] {
    require(p, "polynomial");
    emit(out, takiff::polynomial_to_json(p->value));
  });
}

takiff_status takiff_poly_to_string(const takiff_poly* p, char** out) {
  return guard([&] {
    require(p, "polynomial");
    require(out, "output pointer");
    *out = copy_string(p->value.to_string());
  });
}

void takiff_poly_free(takiff_poly* p) { delete p; }

takiff_status takiff_lift_invariant(const takiff_rep* rep, unsigned m, const takiff_poly* phi, int allow_noninvariant,
                                    char** out) {
  return guard([&] {
    require(rep, "representation");
    require(phi, "polynomial");
    const auto lifts = takiff::lift_invariant(lift(rep->value, m), phi->value, allow_noninvariant != 0);
    Json list = Json::array();
    for (const auto& p : lifts) list.push_back(takiff::polynomial_to_json(p));
    emit(out, Json{{"level", m}, {"lifts", std::move(list)}});
  });
}

takiff_status takiff_check_invariant(const takiff_rep* rep, const takiff_poly* phi, int* invariant, char** report) {
  return guard([&] {
    require(rep, "representation");
    require(phi, "polynomial");
    Json failures = Json::array();
    for (std::size_t x = 0; x < rep->value.algebra().dim(); ++x) {
      auto r = takiff::apply_killing(rep->value, x, phi->value);
      if (!r.is_zero())
        failures.push_back(Json{{"element", x},
                                {"name", rep->value.algebra().names()[x]},
                                {"value", takiff::polynomial_to_json(r)}});
    }
    const bool ok = failures.empty();
    if (invariant) *invariant = ok ? 1 : 0;
    emit(report, Json{{"invariant", ok}, {"failures", std::move(failures)}});
  });
}

// ---------------------------------------------------------------- fields

takiff_status takiff_field_from_json(const char* json, takiff_field** out) {
  return guard([&] {
    require(out, "output pointer");
    *out = new takiff_field{takiff::field_from_json(parse(json))};
  });
}

takiff_status takiff_field_to_json(const takiff_field* f, char** out) {
  return guard([&] {
    require(f, "field");
    emit(out, takiff::field_to_json(f->value));
  });
}

void takiff_field_free(takiff_field* f) { delete f; }

takiff_status takiff_tangency(const takiff_rep* rep, const takiff_field* field, const char* points_json,
                              char** report) {
  return guard([&] {
    require(rep, "representation");
    require(field, "field");
    const auto points = takiff::points_from_json(parse(points_json));
    const auto r = takiff::tangency_check(rep->value, field->value, points);
    Json pts = Json::array();
    for (const auto& p : r.points) {
      Json item{{"member", p.member}, {"value", takiff::scalars_to_json(p.value)}};
      item["coefficients"] = p.coefficients ? takiff::scalars_to_json(*p.coefficients) : Json();
      pts.push_back(std::move(item));
    }
    emit(report, Json{{"all_members", r.all_members()}, {"points", std::move(pts)}});
  });
}

takiff_status takiff_decompose(const takiff_rep* rep, unsigned m, const takiff_field* field, const char* gram_json,
                               char** decomposition, char** report) {
  if (decomposition) *decomposition = nullptr;
  if (report) *report = nullptr;
  return guard([&] {
    require(rep, "representation");
    require(field, "field");
    require(decomposition, "decomposition pointer");
    std::optional<takiff::Matrix> gram;
    if (gram_json) gram = takiff::matrix_from_json(parse(gram_json));
    takiff::SolverRegistry registry;
    const auto& entry = registry.get(takiff::register_base_solver(registry, rep->value, gram));
    const auto lifted = lift(rep->value, m);
    takiff::DecomposeStats stats;
    takiff::Decomposition dec;
    try {
      dec = takiff::takiff_decompose(lifted, entry, field->value, &stats);
    } catch (const takiff::RefusalError& e) {
      Json j{{"status", "refused"}, {"reason", e.what()}};
      j["witness"] = e.witness() ? takiff::polynomial_to_json(*e.witness()) : Json();
      if (report) emit(report, j);
      throw;
    }
    const auto v = takiff::verify_decomposition(lifted, field->value, dec);
    Json j{{"status", v.ok ? "decomposed" : "verification failed"},
           {"solver", entry.solver->name()},
           {"invariants", entry.family.label()},
           {"verified", v.ok},
           {"residual_checks", stats.residual_checks},
           {"base_solves", stats.base_solves}};
    if (report) emit(report, j);
    if (!v.ok)
      throw takiff::InternalConsistencyError("decomposition does not reconstruct the field (component " +
                                             std::to_string(*v.first_failure) + ")");
    emit(decomposition, takiff::decomposition_to_json(rep->value, field->value.ring(), dec));
  });
}

takiff_status takiff_verify(const takiff_field* field, const char* decomposition_json, int* ok, char** report) {
  return guard([&] {
    require(field, "field");
    const auto doc = takiff::decomposition_from_json(parse(decomposition_json));
    const auto v = takiff::verify_decomposition(lift(doc.rep, doc.dec.level), field->value, doc.dec);
    if (ok) *ok = v.ok ? 1 : 0;
    Json j{{"ok", v.ok}};
    if (v.ok) {
      j["first_failure"] = Json();
    } else {
      j["first_failure"] = *v.first_failure;
      j["residual"] = takiff::polynomial_to_json(v.residuals[*v.first_failure]);
    }
    emit(report, j);
  });
}

// ---------------------------------------------------------------- generation and suites

takiff_status takiff_generate(const char* config_json, char** out) {
  return guard([&] {
    const auto config = config_from_json(parse(config_json));
    const auto inst = takiff::generate_instance(config);
    emit(out, Json{{"config", config_to_json(config)},
                   {"rep", takiff::representation_to_json(inst.rep)},
                   {"level", inst.level},
                   {"coefficients", takiff::decomposition_to_json(inst.rep, inst.ring, inst.coefficients)},
                   {"field", takiff::field_to_json(inst.field)}});
  });
}

takiff_status takiff_run_suite(const char* name, uint64_t seed, int human, char** out, int* all_pass) {
  return guard([&] {
    require(name, "suite name");
    require(out, "output pointer");
    const auto reports = takiff::run_suite(name, seed);
    bool pass = true;
    for (const auto& r : reports) pass = pass && r.pass;
    if (all_pass) *all_pass = pass ? 1 : 0;
    if (human)
      *out = copy_string(takiff::reports_to_human(reports));
    else
      emit(out, takiff::reports_to_json(reports));
  });
}

takiff_status takiff_suite_names(char** out) {
  return guard([&] {
    require(out, "output pointer");
    std::string s;
    for (const auto& n : takiff::suite_names()) s += (s.empty() ? "" : " ") + n;
    *out = copy_string(s);
  });
}

takiff_status takiff_render_human(const char* json, char** out) {
  return guard([&] {
    require(out, "output pointer");
    std::ostringstream text;
    render(text, parse(json), 0);
    *out = copy_string(text.str());
  });
}

}  // extern "C"
