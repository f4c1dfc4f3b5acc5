#include "takiff/lie.hpp"

#include <algorithm>

#include "takiff/errors.hpp"

namespace takiff {

namespace {

std::string triple(std::size_t i, std::size_t j, std::size_t k) {
  return "(" + std::to_string(i) + ", " + std::to_string(j) + ", " + std::to_string(k) + ")";
}

}  // namespace

std::optional<std::array<std::size_t, 3>> antisymmetry_violation(const StructureConstants& c) {
  const auto d = c.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        if (c(i, j, k) != -c(j, i, k)) return std::array{i, j, k};
  return std::nullopt;
}

std::optional<std::array<std::size_t, 3>> jacobi_violation(const StructureConstants& c) {
  // The Jacobi sum is alternating once the bracket is antisymmetric, so
  // strictly increasing triples cover every case.
  const auto d = c.dim();
  std::vector<std::vector<std::pair<std::size_t, Scalar>>> br(d * d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k)
        if (c(i, j, k) != 0) br[i * d + j].emplace_back(k, c(i, j, k));
  std::vector<Scalar> acc(d);
  auto nested = [&](std::size_t outer, std::size_t a, std::size_t b) {
    for (const auto& [l, c1] : br[a * d + b])
      for (const auto& [n, c2] : br[outer * d + l]) acc[n] += c1 * c2;
  };
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j)
      for (std::size_t k = j + 1; k < d; ++k) {
        std::fill(acc.begin(), acc.end(), Scalar(0));
        nested(i, j, k);
        nested(j, k, i);
        nested(k, i, j);
        for (const auto& x : acc)
          if (x != 0) return std::array{i, j, k};
      }
  return std::nullopt;
}

LieAlgebra::LieAlgebra(std::vector<std::string> names, StructureConstants constants)
    : names_(std::move(names)), c_(std::move(constants)) {
  if (c_.dim() != names_.size())
    throw StructuralError("Lie algebra has " + std::to_string(names_.size()) + " names but constants of dimension " +
                          std::to_string(c_.dim()));
  if (auto v = antisymmetry_violation(c_))
    throw ValidationError("antisymmetry fails at (i, j, k) = " + triple((*v)[0], (*v)[1], (*v)[2]));
  if (auto v = jacobi_violation(c_))
    throw ValidationError("Jacobi identity fails at (i, j, k) = " + triple((*v)[0], (*v)[1], (*v)[2]));
}

std::vector<Scalar> LieAlgebra::bracket(std::span<const Scalar> x, std::span<const Scalar> y) const {
  const auto d = dim();
  if (x.size() != d || y.size() != d) throw StructuralError("bracket: coordinate vector has wrong length");
  std::vector<Scalar> out(d, Scalar(0));
  for (std::size_t i = 0; i < d; ++i) {
    if (x[i] == 0) continue;
    for (std::size_t j = 0; j < d; ++j) {
      if (y[j] == 0) continue;
      const Scalar xy = x[i] * y[j];
      for (std::size_t k = 0; k < d; ++k)
        if (c_(i, j, k) != 0) out[k] += xy * c_(i, j, k);
    }
  }
  return out;
}

std::vector<Scalar> LieAlgebra::bracket_basis(std::size_t i, std::size_t j) const {
  std::vector<Scalar> out(dim());
  for (std::size_t k = 0; k < dim(); ++k) out[k] = c_(i, j, k);
  return out;
}

LieAlgebra make_lie_algebra(std::size_t dim, std::vector<std::string> names, StructureConstants constants) {
  if (names.size() != dim || constants.dim() != dim)
    throw StructuralError("make_lie_algebra: dimension " + std::to_string(dim) + " does not match inputs");
  return LieAlgebra(std::move(names), std::move(constants));
}

// ---------------------------------------------------------------- representations

std::optional<std::array<std::size_t, 2>> homomorphism_violation(const LieAlgebra& g, std::span<const Matrix> mats) {
  const auto d = g.dim();
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      Matrix lhs(mats[0].rows(), mats[0].cols());
      for (std::size_t k = 0; k < d; ++k)
        if (g.constants()(i, j, k) != 0) lhs = lhs + mats[k] * g.constants()(i, j, k);
      if (lhs != commutator(mats[i], mats[j])) return std::array{i, j};
    }
  return std::nullopt;
}

Representation::Representation(LieAlgebra algebra, std::size_t space_dim, std::vector<Matrix> matrices)
    : algebra_(std::move(algebra)), space_dim_(space_dim), matrices_(std::move(matrices)) {
  if (space_dim_ == 0) throw StructuralError("representation space must be nonzero");
  if (matrices_.size() != algebra_.dim())
    throw StructuralError("representation needs one matrix per basis element (" + std::to_string(algebra_.dim()) +
                          "), got " + std::to_string(matrices_.size()));
  for (const auto& m : matrices_)
    if (m.rows() != space_dim_ || m.cols() != space_dim_)
      throw StructuralError("representation matrix is not " + std::to_string(space_dim_) + "x" +
                            std::to_string(space_dim_));
  if (auto v = homomorphism_violation(algebra_, matrices_))
    throw ValidationError("homomorphism property fails for basis pair (" + std::to_string((*v)[0]) + ", " +
                          std::to_string((*v)[1]) + ")");
}

Matrix Representation::image(std::span<const Scalar> x) const {
  if (x.size() != algebra_.dim()) throw StructuralError("image: coordinate vector has wrong length");
  Matrix out(space_dim_, space_dim_);
  for (std::size_t i = 0; i < x.size(); ++i)
    if (x[i] != 0) out = out + matrices_[i] * x[i];
  return out;
}

std::vector<Polynomial> Representation::act(std::span<const Polynomial> b, std::span<const Polynomial> v) const {
  if (b.size() != algebra_.dim()) throw StructuralError("act: coefficient vector has wrong length");
  if (v.size() != space_dim_) throw StructuralError("act: vector has wrong length");
  std::vector<Polynomial> out(space_dim_, Polynomial(v.front().ring()));
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (b[i].is_zero() || matrices_[i].is_zero()) continue;
    const auto rv = apply(matrices_[i], v);
    for (std::size_t p = 0; p < space_dim_; ++p)
      if (!rv[p].is_zero()) out[p] += b[i] * rv[p];
  }
  return out;
}

bool BilinearForm::is_invariant(const LieAlgebra& g) const {
  const auto ad = adjoint_rep(g);
  for (const auto& m : ad.matrices())
    if (!(m.transpose() * gram + gram * m).is_zero()) return false;
  return true;
}

// ---------------------------------------------------------------- constructors

AlgebraWithRep algebra_from_matrices(std::vector<std::string> names, std::vector<Matrix> mats) {
  const auto d = mats.size();
  if (names.size() != d) throw StructuralError("algebra_from_matrices: one name per matrix required");
  if (d == 0) throw StructuralError("algebra_from_matrices: empty basis");
  const auto n = mats[0].rows();
  Matrix span(n * n, d);
  for (std::size_t k = 0; k < d; ++k) {
    if (mats[k].rows() != n || mats[k].cols() != n) throw StructuralError("algebra_from_matrices: shape mismatch");
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) span(r * n + c, k) = mats[k](r, c);
  }
  if (span.rank() != d) throw ValidationError("algebra_from_matrices: matrices are linearly dependent");
  StructureConstants sc(d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const auto br = commutator(mats[i], mats[j]);
      std::vector<Scalar> flat(n * n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) flat[r * n + c] = br(r, c);
      auto coords = span.solve(flat);
      if (!coords)
        throw ValidationError("algebra_from_matrices: span not closed under the bracket at (" + std::to_string(i) +
                              ", " + std::to_string(j) + ")");
      for (std::size_t k = 0; k < d; ++k) sc(i, j, k) = (*coords)[k];
    }
  LieAlgebra g(std::move(names), std::move(sc));
  Representation rep(g, n, std::move(mats));
  return {std::move(g), std::move(rep)};
}

AlgebraWithRep make_so_form(const Matrix& gram) {
  if (!gram.is_symmetric()) throw ValidationError("so(G): Gram matrix is not symmetric");
  const auto n = gram.rows();
  if (n < 2) throw ValidationError("so(G) needs dimension at least 2");
  const Matrix ginv = gram.inverse();
  std::vector<std::string> names;
  std::vector<Matrix> mats;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      Matrix jm(n, n);
      jm(j, i) = 1;
      jm(i, j) = -1;
      names.push_back("J" + std::to_string(i + 1) + std::to_string(j + 1));
      mats.push_back(ginv * jm);
    }
  return algebra_from_matrices(std::move(names), std::move(mats));
}

AlgebraWithRep make_so_n(std::size_t n) {
  if (n < 2) throw ValidationError("so(n) needs n >= 2");
  return make_so_form(Matrix::identity(n));
}

AlgebraWithRep make_so_pq(std::size_t p, std::size_t q) {
  if (p + q < 2) throw ValidationError("so(p, q) needs p + q >= 2");
  Matrix g = Matrix::identity(p + q);
  for (std::size_t i = p; i < p + q; ++i) g(i, i) = -1;
  return make_so_form(g);
}

AlgebraWithRep make_sl2() {
  Matrix e(2, 2), h(2, 2), f(2, 2);
  e(0, 1) = 1;
  h(0, 0) = 1;
  h(1, 1) = -1;
  f(1, 0) = 1;
  return algebra_from_matrices({"e", "h", "f"}, {e, h, f});
}

AlgebraWithRep make_abelian(std::size_t space_dim, std::vector<Matrix> mats) {
  for (const auto& m : mats)
    if (m.rows() != space_dim || m.cols() != space_dim) throw StructuralError("abelian: matrix has wrong shape");
  for (std::size_t i = 0; i < mats.size(); ++i)
    for (std::size_t j = i + 1; j < mats.size(); ++j)
      if (!commutator(mats[i], mats[j]).is_zero())
        throw ValidationError("abelian: matrices " + std::to_string(i) + " and " + std::to_string(j) +
                              " do not commute");
  std::vector<std::string> names;
  for (std::size_t i = 0; i < mats.size(); ++i) names.push_back("a" + std::to_string(i + 1));
  LieAlgebra g(names, StructureConstants(mats.size()));
  Representation rep(g, space_dim, std::move(mats));
  return {std::move(g), std::move(rep)};
}

AlgebraWithRep make_gl_n(std::size_t n) {
  if (n == 0) throw ValidationError("gl(n) needs n >= 1");
  std::vector<std::string> names;
  std::vector<Matrix> mats;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      Matrix m(n, n);
      m(i, j) = 1;
      names.push_back("E" + std::to_string(i + 1) + std::to_string(j + 1));
      mats.push_back(std::move(m));
    }
  return algebra_from_matrices(std::move(names), std::move(mats));
}

Representation adjoint_rep(const LieAlgebra& g) {
  const auto d = g.dim();
  std::vector<Matrix> mats;
  for (std::size_t i = 0; i < d; ++i) {
    Matrix ad(d, d);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) ad(k, j) = g.constants()(i, j, k);
    mats.push_back(std::move(ad));
  }
  if (d == 0) throw StructuralError("adjoint representation of the zero algebra has no space");
  return Representation(g, d, std::move(mats));
}

Representation coadjoint_rep(const LieAlgebra& g) {
  auto ad = adjoint_rep(g);
  std::vector<Matrix> mats;
  for (const auto& m : ad.matrices()) mats.push_back(-m.transpose());
  return Representation(g, g.dim(), std::move(mats));
}

Representation conjugate_representation(const Representation& rho, const Matrix& theta) {
  if (theta.rows() != rho.space_dim() || theta.cols() != rho.space_dim())
    throw StructuralError("conjugate_representation: theta has wrong size");
  const Matrix inv = theta.inverse();
  std::vector<Matrix> mats;
  for (const auto& m : rho.matrices()) mats.push_back(theta * m * inv);
  return Representation(rho.algebra(), rho.space_dim(), std::move(mats));
}

Matrix killing_form(const LieAlgebra& g) {
  const auto ad = adjoint_rep(g);
  const auto d = g.dim();
  Matrix k(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) k(i, j) = (ad.matrix(i) * ad.matrix(j)).trace();
  return k;
}

}  // namespace takiff
