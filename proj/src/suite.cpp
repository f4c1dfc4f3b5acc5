#include "takiff/suite.hpp"

#include <algorithm>
#include <chrono>
#include <functional>
#include <map>
#include <sstream>

#include "takiff/errors.hpp"
#include "takiff/generate.hpp"
#include "takiff/takiff.hpp"

namespace takiff {

namespace {

struct Outcome {
  bool pass = true;
  Json witness;
};

Outcome fail(Json witness) { return {false, std::move(witness)}; }

class Recorder {
 public:
  explicit Recorder(std::string suite) : suite_(std::move(suite)) {}

  void run(const std::string& operation, const std::function<Outcome()>& body) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = body();
    } catch (const Error& e) {
      o = fail(Json{{"error", e.what()}});
    }
    const auto stop = std::chrono::steady_clock::now();
    Report r{suite_, operation, o.pass, o.pass ? Json() : std::move(o.witness),
             std::chrono::duration<double, std::milli>(stop - start).count()};
    reports_.push_back(std::move(r));
  }

  std::vector<Report> take() { return std::move(reports_); }

 private:
  std::string suite_;
  std::vector<Report> reports_;
};

std::string at_level(const std::string& label, unsigned m) { return label + " m=" + std::to_string(m); }

std::vector<std::pair<std::string, Representation>> structural_grid() {
  std::vector<std::pair<std::string, Representation>> out;
  out.emplace_back("sl2", make_sl2().rep);
  out.emplace_back("so3", make_so_n(3).rep);
  out.emplace_back("so4", make_so_n(4).rep);
  Matrix e1(2, 2), e2(2, 2);
  e1(0, 0) = 1;
  e2(1, 1) = 1;
  out.emplace_back("abelian2", make_abelian(2, {e1, e2}).rep);
  return out;
}

struct InvariantCase {
  std::string label;
  Representation rep;
  Polynomial phi;
};

std::vector<InvariantCase> invariant_grid() {
  std::vector<InvariantCase> out;
  for (std::size_t n = 2; n <= 4; ++n)
    out.push_back({"so" + std::to_string(n) + " Q", make_so_n(n).rep, quadratic_form_polynomial(Matrix::identity(n))});
  const auto sl2 = make_sl2().algebra;
  out.push_back({"sl2-adjoint Killing", adjoint_rep(sl2), quadratic_form_polynomial(killing_form(sl2))});
  return out;
}

std::vector<Report> suite_jacobi(std::uint64_t) {
  Recorder rec("jacobi");
  for (const auto& [label, rep] : structural_grid())
    for (unsigned m = 0; m <= 3; ++m)
      rec.run(at_level(label, m), [&, m] {
        const auto ctx = build_takiff(rep.algebra(), m);
        if (auto v = antisymmetry_violation(ctx.algebra().constants())) return fail(Json{{"antisymmetry", *v}});
        if (auto v = jacobi_violation(ctx.algebra().constants())) return fail(Json{{"jacobi", *v}});
        return Outcome{};
      });
  return rec.take();
}

std::vector<Report> suite_homomorphism(std::uint64_t) {
  Recorder rec("homomorphism");
  for (const auto& [label, rep] : structural_grid())
    for (unsigned m = 0; m <= 3; ++m)
      rec.run(at_level(label, m), [&, m] {
        const auto lifted = lift_representation(build_takiff(rep.algebra(), m), rep);
        if (auto v = homomorphism_violation(lifted.context().algebra(), lifted.rep().matrices()))
          return fail(Json{{"pair", *v}});
        return Outcome{};
      });
  return rec.take();
}

std::vector<Report> suite_invariance(std::uint64_t) {
  Recorder rec("invariance");
  for (const auto& c : invariant_grid())
    for (unsigned m = 0; m <= 3; ++m)
      rec.run(at_level(c.label, m), [&, m] {
        const auto lifted = lift_representation(build_takiff(c.rep.algebra(), m), c.rep);
        const auto phis = lift_invariant(lifted, c.phi);
        const auto layout = level_block_names(m);
        for (std::size_t k = 0; k < phis.size(); ++k)
          for (std::size_t x = 0; x < lifted.rep().algebra().dim(); ++x) {
            auto r = apply_killing(lifted.rep(), x, phis[k], layout);
            if (!r.is_zero()) return fail(Json{{"k", k}, {"element", x}, {"value", polynomial_to_json(r)}});
          }
        return Outcome{};
      });
  return rec.take();
}

std::vector<Report> suite_lift_structure(std::uint64_t) {
  Recorder rec("lift-structure");
  for (const auto& c : invariant_grid())
    for (unsigned m = 0; m <= 3; ++m)
      rec.run(at_level(c.label, m), [&, m] {
        const auto lifted = lift_representation(build_takiff(c.rep.algebra(), m), c.rep);
        const auto phis = lift_invariant(lifted, c.phi);
        for (unsigned k = 0; k <= m; ++k) {
          for (unsigned j = k + 1; j <= m; ++j)
            if (phis[k].depends_on_block("f" + std::to_string(j))) return fail(Json{{"k", k}, {"depends_on", j}});
          if (k == 0) continue;
          const auto split = extract_linear_part(phis[k], k);
          const auto expected = differential_pairing(c.phi, phis[k].ring(), "f0", "f" + std::to_string(k));
          if (!(split.linear == expected))
            return fail(Json{{"k", k}, {"linear_part", polynomial_to_json(split.linear)},
                             {"expected", polynomial_to_json(expected)}});
          if (split.remainder.depends_on_block("f" + std::to_string(k)))
            return fail(Json{{"k", k}, {"remainder", polynomial_to_json(split.remainder)}});
        }
        return Outcome{};
      });
  return rec.take();
}

std::vector<Report> suite_faa_di_bruno(std::uint64_t seed) {
  Recorder rec("faa-di-bruno");
  Rng rng(seed);
  for (int trial = 0; trial < 10; ++trial) {
    const auto n = 1 + rng.below(3);
    const auto m = static_cast<unsigned>(rng.below(4));
    const auto ring = make_ring({{"x", n, BlockRole::state}});
    const auto phi = random_polynomial(rng, ring, 4, 4);
    rec.run("trial " + std::to_string(trial), [&, m] {
      const auto a = substitute_curve(phi, level_block_names(m), m);
      const auto b = faa_di_bruno_lift(phi, m);
      for (unsigned k = 0; k <= m; ++k)
        if (!(rebase(a[k], b[k].ring()) == b[k]))
          return fail(Json{{"k", k}, {"phi", polynomial_to_json(phi)}, {"curve", polynomial_to_json(a[k])},
                           {"partitions", polynomial_to_json(b[k])}});
      return Outcome{};
    });
  }
  return rec.take();
}

std::vector<Report> suite_cylindrical(std::uint64_t seed) {
  Recorder rec("cylindrical");
  Rng rng(seed);
  for (int trial = 0; trial < 10; ++trial) {
    const auto n = 2 + rng.below(2);
    const auto m = static_cast<unsigned>(1 + rng.below(2));
    const auto rep = make_so_n(n).rep;
    const auto lifted = lift_representation(build_takiff(rep.algebra(), m), rep);
    const auto lower_ring = lifted_ring(n, m - 1);
    Polynomial theta(lower_ring);
    if (trial % 2 == 0) {
      const auto lower = lift_representation(build_takiff(rep.algebra(), m - 1), rep);
      for (const auto& phi : lift_invariant(lower, quadratic_form_polynomial(Matrix::identity(n))))
        theta += rebase(phi, lower_ring) * rng.small_rational();
    } else {
      theta = random_polynomial(rng, lower_ring, 2, 3);
    }
    rec.run("trial " + std::to_string(trial), [&] {
      const auto r = cylindrical_invariance_check(lifted, theta);
      if (!r.agree())
        return fail(Json{{"theta", polynomial_to_json(theta)},
                         {"level_m", r.invariant_at_level_m},
                         {"level_m_minus_1", r.invariant_at_level_m_minus_1}});
      return Outcome{};
    });
  }
  return rec.take();
}

std::vector<Report> suite_base_solver(std::uint64_t seed) {
  Recorder rec("base-solver");
  Rng rng(seed);
  for (int trial = 0; trial < 12; ++trial) {
    const std::size_t n = 2 + trial % 3;
    const auto params = rng.below(3);
    std::vector<VariableBlock> blocks;
    if (params > 0) blocks.push_back({"w", params, BlockRole::parameter});
    blocks.push_back({"x", n, BlockRole::state});
    const auto ring = make_ring(blocks);
    PolyMatrix b(n, std::vector<Polynomial>(n, Polynomial(ring)));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        b[i][j] = random_polynomial(rng, ring, 3, 3);
        b[j][i] = -b[i][j];
      }
    const auto x = block_variables(ring, "x");
    std::vector<Polynomial> a(n, Polynomial(ring));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) a[i] += b[i][j] * x[j];
    rec.run("so" + std::to_string(n) + " trial " + std::to_string(trial), [&, n] {
      const auto sol = quadratic_base_solve(Matrix::identity(n), a, "x");
      for (std::size_t i = 0; i < n; ++i) {
        Polynomial row(ring);
        for (std::size_t j = 0; j < n; ++j) {
          if (!(sol.antisymmetric[i][j] == -sol.antisymmetric[j][i])) return fail(Json{{"not_antisymmetric", {i, j}}});
          row += sol.matrix[i][j] * x[j];
        }
        if (!(row == a[i])) return fail(Json{{"component", i}, {"residual", polynomial_to_json(a[i] - row)}});
      }
      return Outcome{};
    });
  }
  return rec.take();
}

std::vector<Report> suite_roundtrip(std::uint64_t seed) {
  Recorder rec("roundtrip");
  const std::vector<std::pair<std::string, RunConfig>> kinds = {
      {"so2", RunConfig{.kind = "so", .n = 2}},
      {"so3", RunConfig{.kind = "so", .n = 3}},
      {"sl2-adjoint", RunConfig{.kind = "sl2_adjoint"}},
  };
  std::uint64_t offset = 0;
  for (const auto& [label, base] : kinds)
    for (unsigned m = 0; m <= 2; ++m) {
      auto config = base;
      config.seed = seed + offset++;
      config.level = m;
      rec.run(at_level(label, m), [&, config] {
        const auto inst = generate_instance(config);
        SolverRegistry registry;
        const auto& entry = registry.get(register_base_solver(registry, inst.rep));
        const auto lifted = lift_representation(build_takiff(inst.rep.algebra(), inst.level), inst.rep);
        const auto dec = takiff_decompose(lifted, entry, inst.field);
        const auto v = verify_decomposition(lifted, inst.field, dec);
        if (!v.ok)
          return fail(Json{{"component", *v.first_failure},
                           {"residual", polynomial_to_json(v.residuals[*v.first_failure])}});
        return Outcome{};
      });
    }
  return rec.take();
}

std::vector<Report> suite_refusal(std::uint64_t) {
  Recorder rec("refusal");
  for (std::size_t n = 2; n <= 4; ++n)
    rec.run("radial so" + std::to_string(n), [n] {
      const auto rep = make_so_n(n).rep;
      SolverRegistry registry;
      const auto& entry = registry.get(register_base_solver(registry, rep));
      const auto lifted = lift_representation(build_takiff(rep.algebra(), 0), rep);
      const auto ring = lifted_ring(n, 0);
      const auto field = make_vector_field(ring, block_variables(ring, "f0"), n, 0);
      try {
        takiff_decompose(lifted, entry, field);
      } catch (const RefusalError& e) {
        if (e.witness() && !e.witness()->is_zero()) return Outcome{};
        return fail(Json{{"error", "refusal without a nonzero witness"}});
      }
      return fail(Json{{"error", "radial field was decomposed"}});
    });
  return rec.take();
}

std::vector<Report> suite_flip(std::uint64_t) {
  Recorder rec("flip");
  const std::vector<std::pair<std::string, LieAlgebra>> algebras = {{"sl2", make_sl2().algebra},
                                                                     {"so3", make_so_n(3).algebra}};
  for (const auto& [label, g] : algebras)
    for (unsigned m = 0; m <= 2; ++m)
      rec.run(at_level(label, m), [&, m] {
        const auto r = verify_flip_identity(g, m);
        if (!r.pass) return fail(Json{{"element", *r.failing_element}});
        return Outcome{};
      });
  return rec.take();
}

std::vector<Report> suite_quadratic_lift(std::uint64_t) {
  Recorder rec("quadratic-lift");
  const std::vector<std::pair<std::string, LieAlgebra>> algebras = {{"sl2", make_sl2().algebra},
                                                                     {"so3", make_so_n(3).algebra}};
  for (const auto& [label, g] : algebras)
    for (unsigned m = 0; m <= 2; ++m)
      rec.run(at_level(label, m), [&, m] {
        const auto ctx = build_takiff(g, m);
        const auto lifted = lift_bilinear_form(ctx, BilinearForm{killing_form(g)});
        if (!lifted.is_symmetric() || !lifted.is_nondegenerate() || !lifted.is_invariant(ctx.algebra()))
          return fail(Json{{"gram", matrix_to_json(lifted.gram)}});
        return Outcome{};
      });
  return rec.take();
}

std::vector<Report> suite_transport(std::uint64_t seed) {
  Recorder rec("transport");
  Rng rng(seed);
  const auto rep = make_so_n(2).rep;
  for (int trial = 0; trial < 4; ++trial) {
    const auto theta = random_invertible_matrix(rng, 2);
    RunConfig config{.seed = rng.next(), .level = 0, .kind = "so", .n = 2};
    rec.run("trial " + std::to_string(trial), [&, config] {
      const auto inst = generate_instance(config);
      const auto tau = conjugate_representation(rep, theta);
      const auto moved = conjugate_field(inst.field, theta);
      SolverRegistry registry;
      const auto& entry = registry.get(register_base_solver(registry, tau));
      const auto lifted = lift_representation(build_takiff(tau.algebra(), 0), tau);
      const auto dec = takiff_decompose(lifted, entry, moved);
      const auto v = verify_decomposition(lifted, moved, dec);
      if (!v.ok) return fail(Json{{"theta", matrix_to_json(theta)}, {"component", *v.first_failure}});
      return Outcome{};
    });
  }
  return rec.take();
}

using SuiteFn = std::vector<Report> (*)(std::uint64_t);

const std::map<std::string, SuiteFn>& registry() {
  static const std::map<std::string, SuiteFn> suites = {
      {"base-solver", suite_base_solver},   {"cylindrical", suite_cylindrical},
      {"faa-di-bruno", suite_faa_di_bruno}, {"flip", suite_flip},
      {"homomorphism", suite_homomorphism}, {"invariance", suite_invariance},
      {"jacobi", suite_jacobi},             {"lift-structure", suite_lift_structure},
      {"quadratic-lift", suite_quadratic_lift}, {"refusal", suite_refusal},
      {"roundtrip", suite_roundtrip},       {"transport", suite_transport},
  };
  return suites;
}

}  // namespace

std::vector<std::string> suite_names() {
  std::vector<std::string> out;
  for (const auto& [name, fn] : registry()) out.push_back(name);
  return out;
}

std::vector<Report> run_suite(const std::string& name, std::uint64_t seed) {
  const auto& suites = registry();
  if (name == "all") {
    std::vector<Report> out;
    for (const auto& [n, fn] : suites) {
      auto part = fn(seed);
      out.insert(out.end(), std::make_move_iterator(part.begin()), std::make_move_iterator(part.end()));
    }
    return out;
  }
  auto it = suites.find(name);
  if (it == suites.end()) throw ValidationError("unknown suite: " + name);
  return it->second(seed);
}

Json reports_to_json(const std::vector<Report>& reports) {
  Json list = Json::array();
  std::size_t failed = 0;
  for (const auto& r : reports) {
    Json item{{"suite", r.suite}, {"operation", r.operation}, {"pass", r.pass}};
    if (!r.pass) {
      item["witness"] = r.witness;
      ++failed;
    }
    list.push_back(std::move(item));
  }
  return Json{{"total", reports.size()}, {"failed", failed}, {"reports", std::move(list)}};
}

std::string reports_to_human(const std::vector<Report>& reports) {
  std::ostringstream out;
  std::size_t failed = 0;
  for (const auto& r : reports) {
    out << (r.pass ? "PASS  " : "FAIL  ") << r.suite << ": " << r.operation << "  (" << static_cast<long>(r.millis)
        << " ms)\n";
    if (!r.pass) {
      out << "      witness: " << r.witness.dump() << "\n";
      ++failed;
    }
  }
  out << reports.size() - failed << "/" << reports.size() << " passed\n";
  return out.str();
}

}  // namespace takiff
