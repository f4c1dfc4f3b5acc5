#include <gtest/gtest.h>

#include "takiff/errors.hpp"
#include "takiff/generate.hpp"
#include "takiff/lie.hpp"

using namespace takiff;

namespace {

Matrix M(std::vector<std::vector<long>> rows) {
  std::vector<std::vector<Scalar>> r;
  for (const auto& row : rows) {
    r.emplace_back();
    for (long v : row) r.back().emplace_back(v);
  }
  return Matrix::from_rows(r);
}

constexpr std::size_t E = 0, H = 1, F = 2;

}  // namespace

TEST(LieAlgebra, Sl2BracketsFromConstants) {
  StructureConstants c(3);
  c(H, E, E) = 2;
  c(E, H, E) = -2;
  c(H, F, F) = -2;
  c(F, H, F) = 2;
  c(E, F, H) = 1;
  c(F, E, H) = -1;
  auto g = make_lie_algebra(3, {"e", "h", "f"}, c);
  EXPECT_EQ(g, make_sl2().algebra);
  EXPECT_EQ(g.bracket_basis(E, F), (std::vector<Scalar>{0, 1, 0}));
}

TEST(LieAlgebra, AbelianOfAnyDimension) {
  for (std::size_t d = 0; d <= 4; ++d) {
    std::vector<std::string> names;
    for (std::size_t i = 0; i < d; ++i) names.push_back("a" + std::to_string(i));
    EXPECT_NO_THROW(make_lie_algebra(d, names, StructureConstants(d)));
  }
}

TEST(LieAlgebra, AntisymmetryViolation) {
  StructureConstants c(2);
  c(0, 1, 0) = 1;
  c(1, 0, 0) = 1;
  EXPECT_TRUE(antisymmetry_violation(c).has_value());
  EXPECT_THROW(make_lie_algebra(2, {"a", "b"}, c), ValidationError);
}

TEST(LieAlgebra, JacobiViolationIsReported) {
  // [x0,x1] = x2, [x1,x2] = x0, [x0,x2] = x0: antisymmetric, not Lie.
  StructureConstants c(3);
  auto set = [&](std::size_t i, std::size_t j, std::size_t k, long v) {
    c(i, j, k) = v;
    c(j, i, k) = -v;
  };
  set(0, 1, 2, 1);
  set(1, 2, 0, 1);
  set(0, 2, 0, 1);
  EXPECT_FALSE(antisymmetry_violation(c).has_value());
  EXPECT_TRUE(jacobi_violation(c).has_value());
  EXPECT_THROW(make_lie_algebra(3, {"a", "b", "c"}, c), ValidationError);
}

TEST(LieAlgebra, WrongNameCountIsStructural) {
  EXPECT_THROW(make_lie_algebra(2, {"a"}, StructureConstants(2)), StructuralError);
}

TEST(StandardConstructors, So2Matrix) {
  auto so2 = make_so_n(2);
  EXPECT_EQ(so2.algebra.dim(), 1u);
  EXPECT_EQ(so2.rep.matrix(0), M({{0, -1}, {1, 0}}));
}

TEST(StandardConstructors, So3AndSo4Dimensions) {
  EXPECT_EQ(make_so_n(3).algebra.dim(), 3u);
  EXPECT_EQ(make_so_n(4).algebra.dim(), 6u);
  EXPECT_EQ(make_so_pq(2, 1).algebra.dim(), 3u);
  EXPECT_EQ(make_gl_n(2).algebra.dim(), 4u);
}

TEST(StandardConstructors, So3HomomorphismIdentities) {
  auto so3 = make_so_n(3);
  EXPECT_FALSE(homomorphism_violation(so3.algebra, so3.rep.matrices()).has_value());
}

TEST(StandardConstructors, SoFormPreservesGram) {
  auto g = make_so_pq(1, 2);
  Matrix gram(3, 3);
  gram(0, 0) = 1;
  gram(1, 1) = -1;
  gram(2, 2) = -1;
  for (const auto& x : g.rep.matrices()) EXPECT_TRUE((x.transpose() * gram + gram * x).is_zero());
}

TEST(StandardConstructors, Sl2Natural) {
  auto sl2 = make_sl2();
  EXPECT_EQ(sl2.rep.matrix(E), M({{0, 1}, {0, 0}}));
  EXPECT_EQ(sl2.rep.matrix(H), M({{1, 0}, {0, -1}}));
  EXPECT_EQ(sl2.rep.matrix(F), M({{0, 0}, {1, 0}}));
}

TEST(StandardConstructors, AbelianMatricesMustCommute) {
  EXPECT_THROW(make_abelian(2, {M({{0, 1}, {0, 0}}), M({{0, 0}, {1, 0}})}), ValidationError);
  auto z = make_abelian(3, {});
  EXPECT_EQ(z.algebra.dim(), 0u);
  EXPECT_EQ(z.rep.space_dim(), 3u);
}

TEST(Representation, RejectsNonHomomorphism) {
  auto sl2 = make_sl2();
  auto mats = sl2.rep.matrices();
  mats[H] = M({{2, 0}, {0, -2}});
  EXPECT_THROW(Representation(sl2.algebra, 2, mats), ValidationError);
}

TEST(Adjoint, AbelianIsZero) {
  auto ab = make_abelian(2, {M({{1, 0}, {0, 0}}), M({{0, 0}, {0, 1}})});
  const auto ad = adjoint_rep(ab.algebra);
  const auto coad = coadjoint_rep(ab.algebra);
  for (const auto& m : ad.matrices()) EXPECT_TRUE(m.is_zero());
  for (const auto& m : coad.matrices()) EXPECT_TRUE(m.is_zero());
}

TEST(Adjoint, Sl2Diagonals) {
  auto g = make_sl2().algebra;
  EXPECT_EQ(adjoint_rep(g).matrix(H), M({{2, 0, 0}, {0, 0, 0}, {0, 0, -2}}));
  EXPECT_EQ(coadjoint_rep(g).matrix(H), M({{-2, 0, 0}, {0, 0, 0}, {0, 0, 2}}));
}

TEST(Adjoint, DerivedAlgebraIsTraceless) {
  for (const auto& g : {make_sl2().algebra, make_so_n(4).algebra, make_gl_n(2).algebra}) {
    auto ad = adjoint_rep(g);
    for (std::size_t i = 0; i < g.dim(); ++i)
      for (std::size_t j = 0; j < g.dim(); ++j) EXPECT_EQ(ad.image(g.bracket_basis(i, j)).trace(), 0);
  }
}

TEST(Coadjoint, EquivalentToAdjointViaKilling) {
  auto g = make_sl2().algebra;
  auto k = killing_form(g);
  EXPECT_EQ(k, M({{0, 0, 4}, {0, 8, 0}, {4, 0, 0}}));
  EXPECT_EQ(conjugate_representation(adjoint_rep(g), k), coadjoint_rep(g));
}

TEST(Conjugation, IdentitySwapAndInverse) {
  auto sl2 = make_sl2();
  EXPECT_EQ(conjugate_representation(sl2.rep, Matrix::identity(2)), sl2.rep);
  auto swapped = conjugate_representation(sl2.rep, M({{0, 1}, {1, 0}}));
  EXPECT_EQ(swapped.matrix(E), sl2.rep.matrix(F));
  EXPECT_EQ(swapped.matrix(F), sl2.rep.matrix(E));
  EXPECT_EQ(swapped.matrix(H), -sl2.rep.matrix(H));

  Rng rng(2);
  auto theta = random_invertible_matrix(rng, 2);
  auto back = conjugate_representation(conjugate_representation(sl2.rep, theta), theta.inverse());
  EXPECT_EQ(back, sl2.rep);
}

TEST(AlgebraFromMatrices, RecoversSl2) {
  auto sl2 = make_sl2();
  auto g = algebra_from_matrices({"e", "h", "f"}, sl2.rep.matrices());
  EXPECT_EQ(g.algebra, sl2.algebra);
}

TEST(AlgebraFromMatrices, RejectsNonClosedSpan) {
  EXPECT_THROW(algebra_from_matrices({"a", "b"}, {M({{0, 1}, {0, 0}}), M({{0, 0}, {1, 0}})}), ValidationError);
}

TEST(BilinearForm, KillingIsInvariant) {
  for (const auto& g : {make_sl2().algebra, make_so_n(3).algebra}) {
    BilinearForm k{killing_form(g)};
    EXPECT_TRUE(k.is_symmetric());
    EXPECT_TRUE(k.is_nondegenerate());
    EXPECT_TRUE(k.is_invariant(g));
  }
  EXPECT_FALSE(BilinearForm{Matrix::identity(3)}.is_invariant(make_sl2().algebra));
}
