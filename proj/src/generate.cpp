#include "takiff/generate.hpp"

#include "takiff/errors.hpp"
#include "takiff/takiff.hpp"

namespace takiff {

Scalar Rng::small_rational() {
  const long num = range(-3, 3);
  const long den = range(1, 2);
  Scalar s(num, den);
  s.canonicalize();
  return s;
}

Scalar Rng::nonzero_rational() {
  for (;;) {
    auto s = small_rational();
    if (s != 0) return s;
  }
}

Polynomial random_polynomial(Rng& rng, const RingPtr& ring, unsigned max_degree, std::size_t max_terms,
                             const std::vector<std::string>& blocks) {
  std::vector<std::size_t> vars;
  if (blocks.empty()) {
    for (std::size_t v = 0; v < ring->num_vars(); ++v) vars.push_back(v);
  } else {
    for (const auto& b : blocks)
      for (std::size_t i = 0; i < ring->block(b).size; ++i) vars.push_back(ring->var_index(b, i));
  }
  Polynomial p(ring);
  const auto terms = rng.below(max_terms + 1);
  for (std::uint64_t t = 0; t < terms; ++t) {
    Monomial m(ring->num_vars(), 0);
    const auto degree = vars.empty() ? 0 : rng.below(max_degree + 1);
    for (std::uint64_t d = 0; d < degree; ++d) ++m[vars[rng.below(vars.size())]];
    p.add_term(m, rng.nonzero_rational());
  }
  return p;
}

Matrix random_invertible_matrix(Rng& rng, std::size_t n) {
  for (;;) {
    Matrix m(n, n);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) m(r, c) = Scalar(rng.range(-3, 3));
    if (m.determinant() != 0) return m;
  }
}

std::vector<SamplePoint> random_points(Rng& rng, std::size_t count, std::size_t state_dim, std::size_t param_dim) {
  std::vector<SamplePoint> out(count);
  for (auto& pt : out) {
    for (std::size_t i = 0; i < state_dim; ++i) pt.state.push_back(rng.small_rational());
    for (std::size_t i = 0; i < param_dim; ++i) pt.params.push_back(rng.small_rational());
  }
  return out;
}

Representation standard_representation(const RunConfig& config) {
  if (config.kind == "so") {
    if (config.n < 2) throw ValidationError("so(n) needs n >= 2");
    return make_so_n(config.n).rep;
  }
  if (config.kind == "so_pq") {
    if (config.p + config.q < 2) throw ValidationError("so(p,q) needs p + q >= 2");
    return make_so_pq(config.p, config.q).rep;
  }
  if (config.kind == "sl2_adjoint") return adjoint_rep(make_sl2().algebra);
  if (config.kind == "zero") {
    if (config.n == 0) throw ValidationError("zero representation needs dim V >= 1");
    return make_abelian(config.n, {}).rep;
  }
  throw ValidationError("unknown generator kind: " + config.kind);
}

Instance generate_instance(const RunConfig& config) {
  auto rep = standard_representation(config);
  const auto m = config.level;
  const auto n = rep.space_dim();
  const auto d = rep.algebra().dim();
  std::vector<VariableBlock> params;
  if (config.params > 0) params.push_back({"w", config.params, BlockRole::parameter});
  auto ring = lifted_ring(n, m, params);
  auto lifted = lift_representation(build_takiff(rep.algebra(), m), rep);

  Rng rng(config.seed);
  Decomposition b{m, {}};
  for (unsigned r = 0; r <= m; ++r) {
    std::vector<Polynomial> level;
    for (std::size_t i = 0; i < d; ++i)
      level.push_back(config.zero_coefficients ? Polynomial(ring)
                                               : random_polynomial(rng, ring, config.max_degree, config.max_terms));
    b.coefficients.push_back(std::move(level));
  }
  const auto comps = reconstruct(lifted, b, ring);
  auto field = make_vector_field(ring, comps, n, m);
  return Instance{std::move(rep), m, std::move(ring), std::move(b), std::move(field)};
}

}  // namespace takiff
