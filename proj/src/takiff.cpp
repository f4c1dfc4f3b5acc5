#include "takiff/takiff.hpp"

#include "takiff/errors.hpp"

namespace takiff {

namespace {

LieAlgebra truncated_current_algebra(const LieAlgebra& base, unsigned m) {
  const auto d = base.dim();
  const auto levels = static_cast<std::size_t>(m) + 1;
  StructureConstants sc(levels * d);
  std::vector<std::string> names;
  for (std::size_t r = 0; r < levels; ++r)
    for (std::size_t i = 0; i < d; ++i) names.push_back(base.names()[i] + "T" + std::to_string(r));
  for (std::size_t r = 0; r < levels; ++r)
    for (std::size_t s = 0; r + s < levels; ++s)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          for (std::size_t k = 0; k < d; ++k)
            sc(r * d + i, s * d + j, (r + s) * d + k) = base.constants()(i, j, k);
  // The constructor re-verifies antisymmetry and Jacobi.
  return LieAlgebra(std::move(names), std::move(sc));
}

}  // namespace

TakiffContext::TakiffContext(LieAlgebra base, unsigned level)
    : base_(std::move(base)), level_(level), algebra_(truncated_current_algebra(base_, level)) {}

TakiffContext build_takiff(const LieAlgebra& base, unsigned m) { return TakiffContext(base, m); }

std::vector<std::string> level_block_names(unsigned m) {
  std::vector<std::string> names;
  for (unsigned r = 0; r <= m; ++r) names.push_back("f" + std::to_string(r));
  return names;
}

RingPtr lifted_ring(std::size_t n, unsigned m, std::vector<VariableBlock> params) {
  for (auto& p : params) p.role = BlockRole::parameter;
  for (const auto& name : level_block_names(m)) params.push_back({name, n, BlockRole::state});
  return make_ring(std::move(params));
}

// ---------------------------------------------------------------- rho_m

namespace {

Representation lifted_matrices(const TakiffContext& ctx, const Representation& rho) {
  if (!(rho.algebra() == ctx.base()))
    throw StructuralError("lift_representation: representation is not over the Takiff base algebra");
  const auto n = rho.space_dim();
  const auto d = ctx.base().dim();
  const auto levels = static_cast<std::size_t>(ctx.level()) + 1;
  std::vector<Matrix> mats;
  for (std::size_t r = 0; r < levels; ++r)
    for (std::size_t i = 0; i < d; ++i) {
      Matrix big(levels * n, levels * n);
      const auto& small = rho.matrix(i);
      for (std::size_t s = 0; r + s < levels; ++s)
        for (std::size_t p = 0; p < n; ++p)
          for (std::size_t q = 0; q < n; ++q) big((r + s) * n + p, s * n + q) = small(p, q);
      mats.push_back(std::move(big));
    }
  return Representation(ctx.algebra(), levels * n, std::move(mats));
}

}  // namespace

LiftedRepresentation::LiftedRepresentation(TakiffContext ctx, Representation base_rep)
    : ctx_(std::move(ctx)), base_rep_(std::move(base_rep)), lifted_(lifted_matrices(ctx_, base_rep_)) {}

std::vector<std::vector<Polynomial>> LiftedRepresentation::act(std::span<const std::vector<Polynomial>> b,
                                                               std::span<const std::vector<Polynomial>> f) const {
  const auto levels = static_cast<std::size_t>(level()) + 1;
  if (b.size() > levels || f.size() != levels) throw StructuralError("lifted act: wrong number of levels");
  std::vector<std::vector<Polynomial>> h;
  for (std::size_t j = 0; j < levels; ++j) {
    std::vector<Polynomial> hj(block_dim(), Polynomial(f[0][0].ring()));
    for (std::size_t r = 0; r <= j && r < b.size(); ++r) {
      const auto term = base_rep_.act(b[r], f[j - r]);
      for (std::size_t p = 0; p < hj.size(); ++p) hj[p] += term[p];
    }
    h.push_back(std::move(hj));
  }
  return h;
}

LiftedRepresentation lift_representation(const TakiffContext& ctx, const Representation& rho) {
  return LiftedRepresentation(ctx, rho);
}

// ---------------------------------------------------------------- flip

Matrix flip_involution(unsigned m, std::size_t block_dim) {
  const auto levels = static_cast<std::size_t>(m) + 1;
  Matrix theta(levels * block_dim, levels * block_dim);
  for (std::size_t s = 0; s < levels; ++s)
    for (std::size_t p = 0; p < block_dim; ++p) theta((levels - 1 - s) * block_dim + p, s * block_dim + p) = 1;
  return theta;
}

FlipReport verify_flip_identity(const LieAlgebra& g, unsigned m) {
  const auto ctx = build_takiff(g, m);
  const auto rho = lift_representation(ctx, coadjoint_rep(g));
  const auto tau = coadjoint_rep(ctx.algebra());
  const auto theta = flip_involution(m, g.dim());
  FlipReport report;
  for (std::size_t x = 0; x < ctx.algebra().dim(); ++x) {
    ++report.checked;
    if (tau.matrix(x) != theta * rho.rep().matrix(x) * theta) {
      report.pass = false;
      report.failing_element = x;
      break;
    }
  }
  return report;
}

// ---------------------------------------------------------------- quadratic lift

BilinearForm lift_bilinear_form(const TakiffContext& ctx, const BilinearForm& b) {
  const auto d = ctx.base().dim();
  if (b.gram.rows() != d || b.gram.cols() != d) throw StructuralError("lift_bilinear_form: Gram matrix has wrong size");
  if (!b.is_symmetric()) throw ValidationError("lift_bilinear_form: form is not symmetric");
  if (!b.is_nondegenerate()) throw ValidationError("lift_bilinear_form: form is degenerate");
  if (!b.is_invariant(ctx.base())) throw ValidationError("lift_bilinear_form: form is not ad-invariant");
  const auto levels = static_cast<std::size_t>(ctx.level()) + 1;
  BilinearForm lifted{Matrix(levels * d, levels * d)};
  for (std::size_t r = 0; r < levels; ++r) {
    const auto s = levels - 1 - r;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j) lifted.gram(r * d + i, s * d + j) = b.gram(i, j);
  }
  if (!lifted.is_symmetric() || !lifted.is_nondegenerate() || !lifted.is_invariant(ctx.algebra()))
    throw InternalConsistencyError("lifted bilinear form failed symmetry, nondegeneracy or invariance");
  return lifted;
}

}  // namespace takiff
