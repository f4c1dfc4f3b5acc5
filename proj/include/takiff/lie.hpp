#pragma once

#include <array>
#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "takiff/matrix.hpp"
#include "takiff/scalar.hpp"

namespace takiff {

/// Structure constants c[i][j][k] with [x_i, x_j] = sum_k c[i][j][k] x_k,
/// stored flat.
class StructureConstants {
 public:
  StructureConstants() = default;
  explicit StructureConstants(std::size_t dim) : dim_(dim), data_(dim * dim * dim, Scalar(0)) {}

  std::size_t dim() const noexcept { return dim_; }
  Scalar& operator()(std::size_t i, std::size_t j, std::size_t k) { return data_[(i * dim_ + j) * dim_ + k]; }
  const Scalar& operator()(std::size_t i, std::size_t j, std::size_t k) const {
    return data_[(i * dim_ + j) * dim_ + k];
  }
  bool operator==(const StructureConstants&) const = default;

 private:
  std::size_t dim_ = 0;
  std::vector<Scalar> data_;
};

/// Finite-dimensional Lie algebra over Q. Construction validates
/// antisymmetry and the Jacobi identity exactly.
class LieAlgebra {
 public:
  LieAlgebra(std::vector<std::string> names, StructureConstants constants);

  std::size_t dim() const noexcept { return names_.size(); }
  const std::vector<std::string>& names() const noexcept { return names_; }
  const StructureConstants& constants() const noexcept { return c_; }

  std::vector<Scalar> bracket(std::span<const Scalar> x, std::span<const Scalar> y) const;
  // Coordinates of [x_i, x_j].
  std::vector<Scalar> bracket_basis(std::size_t i, std::size_t j) const;

  bool operator==(const LieAlgebra& o) const { return names_ == o.names_ && c_ == o.c_; }

 private:
  std::vector<std::string> names_;
  StructureConstants c_;
};

// First (i, j, k) with c[i][j][k] != -c[j][i][k].
std::optional<std::array<std::size_t, 3>> antisymmetry_violation(const StructureConstants& c);
// First basis triple i < j < k whose Jacobi sum is nonzero. Assumes an
// antisymmetric bracket.
std::optional<std::array<std::size_t, 3>> jacobi_violation(const StructureConstants& c);

LieAlgebra make_lie_algebra(std::size_t dim, std::vector<std::string> names, StructureConstants constants);

/// A Lie algebra with one square matrix per basis element. Construction
/// checks rho([x_i, x_j]) = [rho(x_i), rho(x_j)] for every pair.
class Representation {
 public:
  Representation(LieAlgebra algebra, std::size_t space_dim, std::vector<Matrix> matrices);

  const LieAlgebra& algebra() const noexcept { return algebra_; }
  std::size_t space_dim() const noexcept { return space_dim_; }
  const std::vector<Matrix>& matrices() const noexcept { return matrices_; }
  const Matrix& matrix(std::size_t i) const { return matrices_.at(i); }

  // rho(x) for x given in basis coordinates.
  Matrix image(std::span<const Scalar> x) const;
  // rho(b) v where b holds polynomial coordinates in the algebra basis.
  std::vector<Polynomial> act(std::span<const Polynomial> b, std::span<const Polynomial> v) const;

  bool operator==(const Representation& o) const {
    return space_dim_ == o.space_dim_ && algebra_ == o.algebra_ && matrices_ == o.matrices_;
  }

 private:
  LieAlgebra algebra_;
  std::size_t space_dim_;
  std::vector<Matrix> matrices_;
};

// First basis pair (i, j) breaking the homomorphism property.
std::optional<std::array<std::size_t, 2>> homomorphism_violation(const LieAlgebra& g, std::span<const Matrix> mats);

struct BilinearForm {
  Matrix gram;

  bool is_symmetric() const { return gram.is_symmetric(); }
  bool is_nondegenerate() const { return gram.is_square() && gram.determinant() != 0; }
  // B([z, x], y) + B(x, [z, y]) = 0 for every basis triple, i.e.
  // ad(z)^T G + G ad(z) = 0.
  bool is_invariant(const LieAlgebra& g) const;
};

struct AlgebraWithRep {
  LieAlgebra algebra;
  Representation rep;
};

// Lie algebra spanned by linearly independent matrices closed under the
// commutator; structure constants are solved for exactly.
AlgebraWithRep algebra_from_matrices(std::vector<std::string> names, std::vector<Matrix> mats);

// so(G) for a nondegenerate symmetric Gram matrix: basis G^{-1} J_ij, i < j,
// where J_ij = E_ji - E_ij sends e_i to e_j.
AlgebraWithRep make_so_form(const Matrix& gram);
AlgebraWithRep make_so_n(std::size_t n);
AlgebraWithRep make_so_pq(std::size_t p, std::size_t q);
// sl(2) with basis (e, h, f) and its natural 2-dimensional representation.
AlgebraWithRep make_sl2();
// Abelian algebra acting on K^space_dim by the given pairwise commuting
// matrices. Zero matrices (or none at all) are allowed.
AlgebraWithRep make_abelian(std::size_t space_dim, std::vector<Matrix> mats);
AlgebraWithRep make_gl_n(std::size_t n);

Representation adjoint_rep(const LieAlgebra& g);
// Matrices -ad(x_i)^T.
Representation coadjoint_rep(const LieAlgebra& g);
// tau(x) = theta rho(x) theta^{-1}.
Representation conjugate_representation(const Representation& rho, const Matrix& theta);

// K(x_i, x_j) = trace(ad x_i ad x_j).
Matrix killing_form(const LieAlgebra& g);

}  // namespace takiff
