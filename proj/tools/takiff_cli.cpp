// Command-line front end. Talks to the library only through takiff.h.
#include <cstdint>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>

#include <CLI11.hpp>
#include <json.hpp>

#include "takiff/takiff.h"

namespace {

enum Exit { kOk = 0, kFailure = 1, kRefused = 2, kInternal = 3 };

struct CliError : std::runtime_error {
  CliError(const std::string& what, int code) : std::runtime_error(what), code(code) {}
  int code;
};

int exit_code(takiff_status s) {
  switch (s) {
    case TAKIFF_OK: return kOk;
    case TAKIFF_ERR_REFUSED: return kRefused;
    case TAKIFF_ERR_INTERNAL: return kInternal;
    default: return kFailure;
  }
}

void check(takiff_status s, const std::string& context) {
  if (s != TAKIFF_OK)
    throw CliError(context + ": " + takiff_status_name(s) + ": " + takiff_last_error(), exit_code(s));
}

// Owns a string returned by the library.
class Text {
 public:
  Text() = default;
  Text(const Text&) = delete;
  Text& operator=(const Text&) = delete;
  ~Text() { takiff_string_free(p_); }
  char** out() { return &p_; }
  std::string str() const { return p_ ? p_ : ""; }
  explicit operator bool() const { return p_ != nullptr; }

 private:
  char* p_ = nullptr;
};

template <class T, void (*Free)(T*)>
class Handle {
 public:
  Handle() = default;
  Handle(const Handle&) = delete;
  Handle& operator=(const Handle&) = delete;
  ~Handle() { Free(p_); }
  T** out() { return &p_; }
  T* get() const { return p_; }

 private:
  T* p_ = nullptr;
};

using Algebra = Handle<takiff_algebra, takiff_algebra_free>;
using Rep = Handle<takiff_rep, takiff_rep_free>;
using Poly = Handle<takiff_poly, takiff_poly_free>;
using Field = Handle<takiff_field, takiff_field_free>;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw CliError("cannot read " + path, kFailure);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

struct Output {
  bool human = false;
  std::string path;

  void write(const std::string& json) const {
    std::string text = json;
    if (human) {
      Text rendered;
      check(takiff_render_human(json.c_str(), rendered.out()), "render");
      text = rendered.str();
    }
    if (path.empty()) {
      std::cout << text;
      return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out || !(out << text)) throw CliError("cannot write " + path, kFailure);
  }
};

std::uint64_t effective_seed(std::uint64_t seed) {
  if (const char* env = std::getenv("TAKIFF_SEED")) {
    try {
      std::size_t used = 0;
      const auto v = std::stoull(env, &used, 10);
      if (used != std::string(env).size()) throw std::invalid_argument(env);
      return v;
    } catch (const std::exception&) {
      throw CliError(std::string("TAKIFF_SEED is not an unsigned integer: ") + env, kFailure);
    }
  }
  return seed;
}

void load_rep(Rep& rep, const std::string& path) {
  check(takiff_rep_from_json(read_file(path).c_str(), rep.out()), "reading " + path);
}

void load_field(Field& field, const std::string& path) {
  check(takiff_field_from_json(read_file(path).c_str(), field.out()), "reading " + path);
}

void load_poly(Poly& poly, const std::string& path) {
  check(takiff_poly_from_json(read_file(path).c_str(), poly.out()), "reading " + path);
}

std::string doc(const Text& t) { return t.str(); }

// Number of variables in parameter-role blocks of a field document.
std::size_t parameter_count(const std::string& field_json) {
  const auto j = nlohmann::json::parse(field_json);
  std::size_t count = 0;
  for (const auto& b : j.at("ring"))
    if (b.value("role", std::string("state")) == "parameter") count += b.at("size").get<std::size_t>();
  return count;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact Takiff algebras, lifted invariants and Killing-field decomposition"};
  app.require_subcommand(1);
  app.fallthrough();
  Output output;
  app.add_flag("--human", output.human, "Plain-text output instead of JSON");
  app.add_option("-o,--out", output.path, "Write the main output to this file");

  std::string algebra_path, rep_path, phi_path, field_path, points_path, dec_path, gram_path, suite_name = "all",
                                                                                                kind = "so";
  unsigned level = 0, max_degree = 2;
  std::size_t n = 3, p = 1, q = 1, params = 1, max_terms = 2;
  std::optional<std::size_t> expected_params;
  std::uint64_t seed = 1;
  bool allow_noninvariant = false, zero = false, algebra_only = false;

  auto* build = app.add_subcommand("build", "Emit the truncated current algebra g_m");
  build->add_option("--algebra", algebra_path, "Lie algebra JSON")->required();
  build->add_option("--level", level, "Truncation level m")->required();

  auto* lift_rep = app.add_subcommand("lift-rep", "Emit the lifted representation rho_m");
  lift_rep->add_option("--rep", rep_path, "Representation JSON")->required();
  lift_rep->add_option("--level", level, "Truncation level m")->required();

  auto* lift_inv = app.add_subcommand("lift-invariant", "Emit Phi_0..Phi_m of an invariant polynomial");
  lift_inv->add_option("--rep", rep_path, "Representation JSON")->required();
  lift_inv->add_option("--phi", phi_path, "Polynomial JSON on one block")->required();
  lift_inv->add_option("--level", level, "Truncation level m")->required();
  lift_inv->add_flag("--allow-noninvariant", allow_noninvariant, "Skip the invariance check on phi");

  auto* check_inv = app.add_subcommand("check-invariant", "Check a polynomial against every basis Killing field");
  check_inv->add_option("--rep", rep_path, "Representation JSON")->required();
  check_inv->add_option("--phi", phi_path, "Polynomial JSON")->required();

  auto* tangency = app.add_subcommand("tangency", "Pointwise test a(w, v) in rho(g) v");
  tangency->add_option("--rep", rep_path, "Representation JSON")->required();
  tangency->add_option("--field", field_path, "Vector field JSON")->required();
  tangency->add_option("--points", points_path, "Sample points JSON")->required();

  auto* decompose = app.add_subcommand("decompose", "Decompose a field into lifted Killing fields");
  decompose->add_option("--rep", rep_path, "Base representation JSON")->required();
  decompose->add_option("--level", level, "Truncation level m")->required();
  decompose->add_option("--field", field_path, "Vector field JSON over w, f0..fm")->required();
  decompose->add_option("--params", expected_params, "Expected number of parameter variables");
  decompose->add_option("--gram", gram_path, "Gram matrix JSON selecting the quadratic invariant");

  auto* verify = app.add_subcommand("verify", "Check a decomposition against a field");
  verify->add_option("--field", field_path, "Vector field JSON")->required();
  verify->add_option("--dec", dec_path, "Decomposition JSON")->required();

  auto* flip = app.add_subcommand("verify-flip", "Check the coadjoint flip identity on g_m");
  flip->add_option("--algebra", algebra_path, "Lie algebra JSON")->required();
  flip->add_option("--level", level, "Truncation level m")->required();

  auto* suite = app.add_subcommand("suite", "Run property suites");
  suite->add_option("name", suite_name, "Suite name, or all");
  suite->add_option("--seed", seed, "Seed for random instances");

  auto* generate = app.add_subcommand("generate", "Emit a random decomposable instance");
  generate->add_option("--kind", kind, "so, so_pq, sl2_adjoint or zero");
  generate->add_option("--n", n, "so(n) size, or dim V for zero");
  generate->add_option("--p", p, "so(p,q): p");
  generate->add_option("--q", q, "so(p,q): q");
  generate->add_option("--level", level, "Truncation level m");
  generate->add_option("--max-degree", max_degree, "Maximal degree of the coefficients")->check(CLI::PositiveNumber);
  generate->add_option("--params", params, "Number of parameter variables");
  generate->add_option("--max-terms", max_terms, "Maximal number of terms per coefficient");
  generate->add_option("--seed", seed, "Seed");
  generate->add_flag("--zero", zero, "Use b = 0");
  std::string part = "all";
  generate->add_option("--part", part, "Emit only one part: rep, field or coefficients")
      ->check(CLI::IsMember({"all", "rep", "field", "coefficients"}));

  auto* standard = app.add_subcommand("standard", "Emit a built-in representation");
  standard->add_option("--kind", kind, "so, so_pq, sl2, sl2_adjoint, sl2_coadjoint, gl or zero");
  standard->add_option("--n", n, "Size parameter");
  standard->add_option("--p", p, "so(p,q): p");
  standard->add_option("--q", q, "so(p,q): q");
  standard->add_flag("--algebra-only", algebra_only, "Emit only the Lie algebra");

  CLI11_PARSE(app, argc, argv);

  try {
    if (build->parsed()) {
      Algebra g, gm;
      check(takiff_algebra_from_json(read_file(algebra_path).c_str(), g.out()), "reading " + algebra_path);
      check(takiff_build_takiff(g.get(), level, gm.out()), "build");
      Text out;
      check(takiff_algebra_to_json(gm.get(), out.out()), "build");
      output.write(doc(out));
    } else if (lift_rep->parsed()) {
      Rep rep, lifted;
      load_rep(rep, rep_path);
      check(takiff_lift_rep(rep.get(), level, lifted.out()), "lift-rep");
      Text out;
      check(takiff_rep_to_json(lifted.get(), out.out()), "lift-rep");
      output.write(doc(out));
    } else if (lift_inv->parsed()) {
      Rep rep;
      Poly phi;
      load_rep(rep, rep_path);
      load_poly(phi, phi_path);
      Text out;
      check(takiff_lift_invariant(rep.get(), level, phi.get(), allow_noninvariant ? 1 : 0, out.out()),
            "lift-invariant");
      output.write(doc(out));
    } else if (check_inv->parsed()) {
      Rep rep;
      Poly phi;
      load_rep(rep, rep_path);
      load_poly(phi, phi_path);
      Text out;
      int invariant = 0;
      check(takiff_check_invariant(rep.get(), phi.get(), &invariant, out.out()), "check-invariant");
      output.write(doc(out));
      return invariant ? kOk : kFailure;
    } else if (tangency->parsed()) {
      Rep rep;
      Field field;
      load_rep(rep, rep_path);
      load_field(field, field_path);
      Text out;
      check(takiff_tangency(rep.get(), field.get(), read_file(points_path).c_str(), out.out()), "tangency");
      output.write(doc(out));
    } else if (decompose->parsed()) {
      Rep rep;
      Field field;
      load_rep(rep, rep_path);
      const auto field_json = read_file(field_path);
      check(takiff_field_from_json(field_json.c_str(), field.out()), "reading " + field_path);
      if (expected_params && parameter_count(field_json) != *expected_params)
        throw CliError("field has " + std::to_string(parameter_count(field_json)) + " parameter variables, expected " +
                           std::to_string(*expected_params),
                       kFailure);
      std::string gram;
      if (!gram_path.empty()) gram = read_file(gram_path);
      Text dec, report;
      const auto status = takiff_decompose(rep.get(), level, field.get(), gram_path.empty() ? nullptr : gram.c_str(),
                                           dec.out(), report.out());
      if (status == TAKIFF_ERR_REFUSED && report) {
        output.write(doc(report));
        std::cerr << "refused: " << takiff_last_error() << "\n";
        return kRefused;
      }
      check(status, "decompose");
      nlohmann::ordered_json combined;
      combined["report"] = nlohmann::ordered_json::parse(report.str());
      combined["decomposition"] = nlohmann::ordered_json::parse(dec.str());
      output.write(combined.dump(2) + "\n");
    } else if (verify->parsed()) {
      Field field;
      load_field(field, field_path);
      auto dec = nlohmann::ordered_json::parse(read_file(dec_path));
      if (dec.contains("decomposition")) dec = dec.at("decomposition");
      Text out;
      int ok = 0;
      check(takiff_verify(field.get(), dec.dump().c_str(), &ok, out.out()), "verify");
      output.write(doc(out));
      return ok ? kOk : kFailure;
    } else if (flip->parsed()) {
      Algebra g;
      check(takiff_algebra_from_json(read_file(algebra_path).c_str(), g.out()), "reading " + algebra_path);
      Text out;
      check(takiff_verify_flip(g.get(), level, out.out()), "verify-flip");
      output.write(doc(out));
      return nlohmann::json::parse(out.str()).at("pass").get<bool>() ? kOk : kFailure;
    } else if (suite->parsed()) {
      Text out;
      int all_pass = 0;
      check(takiff_run_suite(suite_name.c_str(), effective_seed(seed), output.human ? 1 : 0, out.out(), &all_pass),
            "suite");
      // Already rendered by the library in human mode.
      Output raw{false, output.path};
      raw.write(out.str());
      return all_pass ? kOk : kFailure;
    } else if (generate->parsed()) {
      nlohmann::ordered_json config{{"seed", effective_seed(seed)},
                                    {"kind", kind},
                                    {"n", n},
                                    {"p", p},
                                    {"q", q},
                                    {"level", level},
                                    {"max_degree", max_degree},
                                    {"params", params},
                                    {"max_terms", max_terms},
                                    {"zero", zero}};
      Text out;
      check(takiff_generate(config.dump().c_str(), out.out()), "generate");
      if (part == "all") {
        output.write(doc(out));
      } else {
        output.write(nlohmann::ordered_json::parse(out.str()).at(part).dump(2) + "\n");
      }
    } else if (standard->parsed()) {
      Rep rep;
      check(takiff_rep_standard(kind.c_str(), n, p, q, rep.out()), "standard");
      Text out;
      if (algebra_only) {
        Algebra g;
        check(takiff_rep_algebra(rep.get(), g.out()), "standard");
        check(takiff_algebra_to_json(g.get(), out.out()), "standard");
      } else {
        check(takiff_rep_to_json(rep.get(), out.out()), "standard");
      }
      output.write(doc(out));
    }
  } catch (const CliError& e) {
    std::cerr << "takiff: " << e.what() << "\n";
    return e.code;
  } catch (const nlohmann::json::exception& e) {
    std::cerr << "takiff: malformed JSON: " << e.what() << "\n";
    return kFailure;
  }
  return kOk;
}
