#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "takiff/lie.hpp"
#include "takiff/polynomial.hpp"

namespace takiff {

/// The truncated current algebra g_m = g (x) K[T]/(T^{m+1}). Basis is
/// level-major: element (r, i) = x_i T^r has index r * dim(g) + i.
class TakiffContext {
 public:
  TakiffContext(LieAlgebra base, unsigned level);

  const LieAlgebra& base() const noexcept { return base_; }
  unsigned level() const noexcept { return level_; }
  const LieAlgebra& algebra() const noexcept { return algebra_; }

  std::size_t index(unsigned r, std::size_t i) const { return r * base_.dim() + i; }

 private:
  LieAlgebra base_;
  unsigned level_;
  LieAlgebra algebra_;
};

TakiffContext build_takiff(const LieAlgebra& base, unsigned m);

// "f0", ..., "fm".
std::vector<std::string> level_block_names(unsigned m);

// Parameter blocks first, then f0..fm, each of size n.
RingPtr lifted_ring(std::size_t n, unsigned m, std::vector<VariableBlock> params = {});

/// rho_m on V_m = V^{m+1}: x T^r sends block s to block r + s through rho(x),
/// and to zero when r + s > m.
class LiftedRepresentation {
 public:
  LiftedRepresentation(TakiffContext ctx, Representation base_rep);

  const TakiffContext& context() const noexcept { return ctx_; }
  const Representation& base_rep() const noexcept { return base_rep_; }
  const Representation& rep() const noexcept { return lifted_; }
  unsigned level() const noexcept { return ctx_.level(); }
  std::size_t block_dim() const noexcept { return base_rep_.space_dim(); }

  // Blocks h_j = sum_{r <= j} rho(b_r) f_{j-r}; b[r] holds the coordinates
  // of the level-r part in the base basis, f[s] is block s.
  std::vector<std::vector<Polynomial>> act(std::span<const std::vector<Polynomial>> b,
                                           std::span<const std::vector<Polynomial>> f) const;

 private:
  TakiffContext ctx_;
  Representation base_rep_;
  Representation lifted_;
};

LiftedRepresentation lift_representation(const TakiffContext& ctx, const Representation& rho);

// Block reversal (f_0, ..., f_m) -> (f_m, ..., f_0).
Matrix flip_involution(unsigned m, std::size_t block_dim);

struct FlipReport {
  bool pass = true;
  std::size_t checked = 0;
  std::optional<std::size_t> failing_element;
};

// Compares the lifted coadjoint representation of g with the coadjoint
// representation of g_m through the flip: tau(X) = theta rho(X) theta.
FlipReport verify_flip_identity(const LieAlgebra& g, unsigned m);

// B_m(sum x_r T^r, sum y_s T^s) = sum_{r+s=m} B(x_r, y_s). The input must be
// symmetric, nondegenerate and invariant; the output is verified to be all
// three for g_m.
BilinearForm lift_bilinear_form(const TakiffContext& ctx, const BilinearForm& b);

}  // namespace takiff
