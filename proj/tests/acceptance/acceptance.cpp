// Acceptance run: one PASS/FAIL line per criterion. Every expected value is
// recomputed here from first principles (dense structure tables, explicit
// block matrices, naive curve expansion, Gaussian elimination) rather than
// taken from the library.

#include <chrono>
#include <cstdio>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "takiff/dixmier.hpp"
#include "takiff/errors.hpp"
#include "takiff/generate.hpp"
#include "takiff/invariants.hpp"
#include "takiff/lie.hpp"
#include "takiff/takiff.hpp"

using namespace takiff;

namespace oracle {

using Mat = std::vector<std::vector<Scalar>>;
// table[i][j][k]: coefficient of x_k in [x_i, x_j].
using Table = std::vector<std::vector<std::vector<Scalar>>>;

Mat zeros(std::size_t r, std::size_t c) { return Mat(r, std::vector<Scalar>(c, Scalar(0))); }

Mat mul(const Mat& a, const Mat& b) {
  auto out = zeros(a.size(), b.empty() ? 0 : b[0].size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t k = 0; k < b.size(); ++k) {
      if (a[i][k] == 0) continue;
      for (std::size_t j = 0; j < b[k].size(); ++j)
        if (b[k][j] != 0) out[i][j] += a[i][k] * b[k][j];
    }
  return out;
}

Mat sub(Mat a, const Mat& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) a[i][j] -= b[i][j];
  return a;
}

Mat transpose(const Mat& a) {
  auto out = zeros(a.empty() ? 0 : a[0].size(), a.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < a[i].size(); ++j) out[j][i] = a[i][j];
  return out;
}

bool is_zero(const Mat& a) {
  for (const auto& row : a)
    for (const auto& x : row)
      if (x != 0) return false;
  return true;
}

bool same(const Mat& a, const Matrix& b) {
  if (a.size() != b.rows()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].size() != b.cols()) return false;
    for (std::size_t j = 0; j < a[i].size(); ++j)
      if (a[i][j] != b(i, j)) return false;
  }
  return true;
}

Mat unit(std::size_t n, std::size_t r, std::size_t c) {
  auto m = zeros(n, n);
  m[r][c] = 1;
  return m;
}

// Row reduction of [A | rhs]; returns the solution when it exists and is
// unique.
std::optional<std::vector<Scalar>> solve_unique(Mat a, std::vector<Scalar> rhs) {
  const std::size_t rows = a.size(), cols = a.empty() ? 0 : a[0].size();
  std::size_t rank = 0;
  std::vector<std::size_t> pivot_col;
  for (std::size_t c = 0; c < cols && rank < rows; ++c) {
    std::size_t p = rank;
    while (p < rows && a[p][c] == 0) ++p;
    if (p == rows) continue;
    std::swap(a[p], a[rank]);
    std::swap(rhs[p], rhs[rank]);
    const Scalar inv = 1 / a[rank][c];
    for (auto& x : a[rank]) x *= inv;
    rhs[rank] *= inv;
    for (std::size_t r = 0; r < rows; ++r) {
      if (r == rank || a[r][c] == 0) continue;
      const Scalar f = a[r][c];
      for (std::size_t k = 0; k < cols; ++k) a[r][k] -= f * a[rank][k];
      rhs[r] -= f * rhs[rank];
    }
    pivot_col.push_back(c);
    ++rank;
  }
  for (std::size_t r = rank; r < rows; ++r)
    if (rhs[r] != 0) return std::nullopt;
  if (rank != cols) return std::nullopt;
  std::vector<Scalar> x(cols, Scalar(0));
  for (std::size_t r = 0; r < rank; ++r) x[pivot_col[r]] = rhs[r];
  return x;
}

Scalar determinant(Mat a) {
  const std::size_t n = a.size();
  Scalar det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return 0;
    if (p != c) {
      std::swap(a[p], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (a[r][c] == 0) continue;
      const Scalar f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return det;
}

// Base algebras, written out by hand.

struct Base {
  std::string name;
  Table table;
  std::vector<Mat> rep;  // defining representation
};

Table empty_table(std::size_t d) {
  return Table(d, std::vector<std::vector<Scalar>>(d, std::vector<Scalar>(d, Scalar(0))));
}

// Basis (e, h, f): [h, e] = 2e, [h, f] = -2f, [e, f] = h.
Base sl2() {
  Base b{"sl2", empty_table(3), {}};
  auto set = [&](std::size_t i, std::size_t j, std::size_t k, long v) {
    b.table[i][j][k] = v;
    b.table[j][i][k] = -v;
  };
  set(1, 0, 0, 2);
  set(1, 2, 2, -2);
  set(0, 2, 1, 1);
  b.rep = {unit(2, 0, 1), sub(unit(2, 0, 0), unit(2, 1, 1)), unit(2, 1, 0)};
  return b;
}

// so(n): basis J_ij = E_ji - E_ij for i < j in lexicographic order. A
// skew-symmetric matrix A has coordinate A(j, i) on J_ij.
Base so(std::size_t n) {
  Base b{"so" + std::to_string(n), {}, {}};
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      pairs.emplace_back(i, j);
      b.rep.push_back(sub(unit(n, j, i), unit(n, i, j)));
    }
  const auto d = pairs.size();
  b.table = empty_table(d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t c = 0; c < d; ++c) {
      const auto br = sub(mul(b.rep[a], b.rep[c]), mul(b.rep[c], b.rep[a]));
      for (std::size_t k = 0; k < d; ++k) b.table[a][c][k] = br[pairs[k].second][pairs[k].first];
    }
  return b;
}

Base abelian2() {
  Base b{"abelian2", empty_table(2), {unit(2, 0, 0), unit(2, 1, 1)}};
  return b;
}

// ad(x_i)(k, j) = c[i][j][k].
std::vector<Mat> adjoint(const Table& t) {
  const auto d = t.size();
  std::vector<Mat> out;
  for (std::size_t i = 0; i < d; ++i) {
    auto m = zeros(d, d);
    for (std::size_t j = 0; j < d; ++j)
      for (std::size_t k = 0; k < d; ++k) m[k][j] = t[i][j][k];
    out.push_back(std::move(m));
  }
  return out;
}

std::vector<Mat> coadjoint(const Table& t) {
  std::vector<Mat> out;
  for (const auto& m : adjoint(t)) {
    auto n = transpose(m);
    for (auto& row : n)
      for (auto& x : row) x = -x;
    out.push_back(std::move(n));
  }
  return out;
}

Mat killing(const Table& t) {
  const auto ad = adjoint(t);
  const auto d = t.size();
  auto k = zeros(d, d);
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      const auto p = mul(ad[i], ad[j]);
      for (std::size_t r = 0; r < d; ++r) k[i][j] += p[r][r];
    }
  return k;
}

// [x_i T^r, x_j T^s] = [x_i, x_j] T^{r+s}, zero past level m; index r d + i.
Table takiff_table(const Table& c, unsigned m) {
  const auto d = c.size(), D = (m + 1) * d;
  auto t = empty_table(D);
  for (unsigned r = 0; r <= m; ++r)
    for (unsigned s = 0; r + s <= m; ++s)
      for (std::size_t i = 0; i < d; ++i)
        for (std::size_t j = 0; j < d; ++j)
          for (std::size_t k = 0; k < d; ++k) t[r * d + i][s * d + j][(r + s) * d + k] = c[i][j][k];
  return t;
}

// x_i T^r acts on V^{m+1} sending block s to block r + s through rho(x_i).
std::vector<Mat> lifted_rep(const std::vector<Mat>& rho, std::size_t n, unsigned m) {
  std::vector<Mat> out;
  for (unsigned r = 0; r <= m; ++r)
    for (const auto& x : rho) {
      auto big = zeros((m + 1) * n, (m + 1) * n);
      for (unsigned s = 0; r + s <= m; ++s)
        for (std::size_t p = 0; p < n; ++p)
          for (std::size_t q = 0; q < n; ++q) big[(r + s) * n + p][s * n + q] = x[p][q];
      out.push_back(std::move(big));
    }
  return out;
}

bool matches(const Table& t, const StructureConstants& c) {
  if (c.dim() != t.size()) return false;
  for (std::size_t i = 0; i < t.size(); ++i)
    for (std::size_t j = 0; j < t.size(); ++j)
      for (std::size_t k = 0; k < t.size(); ++k)
        if (t[i][j][k] != c(i, j, k)) return false;
  return true;
}

bool matches(const std::vector<Mat>& a, const std::vector<Matrix>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!same(a[i], b[i])) return false;
  return true;
}

// Polynomials.

std::vector<std::size_t> block_vars(const RingPtr& ring, const std::string& name) {
  std::vector<std::size_t> out;
  const auto off = ring->offset(name);
  for (std::size_t i = 0; i < ring->block(name).size; ++i) out.push_back(off + i);
  return out;
}

// f0.0, ..., f0.{n-1}, f1.0, ... in block-major order.
std::vector<std::size_t> state_vars(const RingPtr& ring, std::size_t n, unsigned m) {
  std::vector<std::size_t> out;
  for (unsigned s = 0; s <= m; ++s)
    for (std::size_t i = 0; i < n; ++i) out.push_back(ring->var_index("f" + std::to_string(s), i));
  return out;
}

Polynomial var(const RingPtr& ring, std::size_t v) { return Polynomial::variable(ring, v); }

// Sum_p (R v)_p d phi / d v_p over the listed state variables.
Polynomial killing_derivative(const Mat& r, const Polynomial& phi, const std::vector<std::size_t>& vars) {
  Polynomial out(phi.ring());
  for (std::size_t p = 0; p < vars.size(); ++p) {
    auto d = partial_derivative(phi, vars[p]);
    if (d.is_zero()) continue;
    Polynomial rv(phi.ring());
    for (std::size_t q = 0; q < vars.size(); ++q)
      if (r[p][q] != 0) rv += var(phi.ring(), vars[q]) * r[p][q];
    out += rv * d;
  }
  return out;
}

Polynomial field_derivative(std::span<const Polynomial> a, const Polynomial& phi,
                            const std::vector<std::size_t>& vars) {
  Polynomial out(phi.ring());
  for (std::size_t p = 0; p < vars.size(); ++p) out += a[p] * partial_derivative(phi, vars[p]);
  return out;
}

bool invariant(const std::vector<Mat>& rep, const Polynomial& phi, const std::vector<std::size_t>& vars) {
  for (const auto& r : rep)
    if (!killing_derivative(r, phi, vars).is_zero()) return false;
  return true;
}

// Coefficients of t^0..t^m in phi(f_0 + t f_1 + ... + t^m f_m), phi over one
// block of size n, expanded term by term over target.
std::vector<Polynomial> curve(const Polynomial& phi, std::size_t n, unsigned m, const RingPtr& target) {
  std::vector<Polynomial> out(m + 1, Polynomial(target));
  for (const auto& [mono, c] : phi.terms()) {
    std::vector<Polynomial> series(m + 1, Polynomial(target));
    series[0] = Polynomial::constant(target, c);
    for (std::size_t p = 0; p < n; ++p)
      for (std::uint32_t e = 0; e < mono[p]; ++e) {
        std::vector<Polynomial> next(m + 1, Polynomial(target));
        for (unsigned a = 0; a <= m; ++a)
          for (unsigned b = 0; a + b <= m; ++b)
            next[a + b] += series[a] * Polynomial::variable(target, "f" + std::to_string(b), p);
        series = std::move(next);
      }
    for (unsigned k = 0; k <= m; ++k) out[k] += series[k];
  }
  return out;
}

// Sum_i (d_i phi)(f_0) f_k,i over target.
Polynomial differential_at_f0(const Polynomial& phi, std::size_t n, unsigned k, const RingPtr& target) {
  std::vector<Polynomial> f0;
  for (std::size_t i = 0; i < n; ++i) f0.push_back(Polynomial::variable(target, "f0", i));
  Polynomial out(target);
  for (std::size_t i = 0; i < n; ++i)
    out += compose(partial_derivative(phi, i), target, f0) * Polynomial::variable(target, "f" + std::to_string(k), i);
  return out;
}

// Part of p of degree exactly one in the given variables.
Polynomial degree_one_part(const Polynomial& p, const std::vector<std::size_t>& vars) {
  Polynomial out(p.ring());
  for (const auto& [mono, c] : p.terms()) {
    std::uint32_t deg = 0;
    for (auto v : vars) deg += mono[v];
    if (deg == 1) out.add_term(mono, c);
  }
  return out;
}

Polynomial quadratic(const Mat& gram, const RingPtr& ring) {
  Polynomial out(ring);
  for (std::size_t i = 0; i < gram.size(); ++i)
    for (std::size_t j = 0; j < gram.size(); ++j)
      if (gram[i][j] != 0) out += Polynomial::variable(ring, "x", i) * Polynomial::variable(ring, "x", j) * (gram[i][j] / 2);
  return out;
}

Mat identity(std::size_t n) {
  auto m = zeros(n, n);
  for (std::size_t i = 0; i < n; ++i) m[i][i] = 1;
  return m;
}

// Sum over r <= j of rho(b_r) f_{j-r}, block by block.
std::vector<Polynomial> lifted_action(const std::vector<Mat>& rho, const std::vector<std::vector<Polynomial>>& b,
                                      const RingPtr& ring, std::size_t n, unsigned m) {
  std::vector<Polynomial> out((m + 1) * n, Polynomial(ring));
  for (unsigned j = 0; j <= m; ++j)
    for (unsigned r = 0; r <= j; ++r)
      for (std::size_t i = 0; i < rho.size(); ++i)
        for (std::size_t p = 0; p < n; ++p)
          for (std::size_t q = 0; q < n; ++q)
            if (rho[i][p][q] != 0)
              out[j * n + p] += b[r][i] * Polynomial::variable(ring, "f" + std::to_string(j - r), q) * rho[i][p][q];
  return out;
}

Polynomial random_polynomial(Rng& rng, const RingPtr& ring, const std::vector<std::size_t>& vars, unsigned max_degree,
                             std::size_t max_terms) {
  Polynomial p(ring);
  const auto terms = 1 + rng.below(max_terms);
  for (std::size_t t = 0; t < terms; ++t) {
    Monomial mono(ring->num_vars(), 0);
    const auto deg = vars.empty() ? 0 : rng.below(max_degree + 1);
    for (std::size_t u = 0; u < deg; ++u) ++mono[vars[rng.below(vars.size())]];
    p.add_term(mono, rng.nonzero_rational());
  }
  return p;
}

}  // namespace oracle

namespace {

using oracle::Mat;

struct Tally {
  std::size_t checks = 0;
  std::optional<std::string> failure;

  void require(bool ok, const std::function<std::string()>& what) {
    ++checks;
    if (!ok && !failure) failure = what();
  }
  bool failed() const { return failure.has_value(); }
};

struct Setting {
  oracle::Base base;
  Representation rep;
  std::vector<Mat> rho;  // oracle matrices of rep
  Polynomial phi;        // invariant quadratic over block x
};

RingPtr x_ring(std::size_t n) { return make_ring({{"x", n, BlockRole::state}}); }

Setting so_setting(std::size_t n) {
  auto b = oracle::so(n);
  auto rho = b.rep;
  auto phi = oracle::quadratic(oracle::identity(n), x_ring(n));
  return {std::move(b), make_so_n(n).rep, std::move(rho), std::move(phi)};
}

Setting sl2_adjoint_setting() {
  auto b = oracle::sl2();
  auto rho = oracle::adjoint(b.table);
  auto phi = oracle::quadratic(oracle::killing(b.table), x_ring(3));
  return {std::move(b), adjoint_rep(make_sl2().algebra), std::move(rho), std::move(phi)};
}

std::string where(const std::string& name, unsigned m) { return name + " m=" + std::to_string(m); }

// 1. Brackets of g_m equal the oracle table, which is antisymmetric and
// satisfies Jacobi on every triple.
void takiff_validity(Tally& t) {
  const std::vector<std::pair<oracle::Base, LieAlgebra>> grid = {
      {oracle::sl2(), make_sl2().algebra},
      {oracle::so(3), make_so_n(3).algebra},
      {oracle::so(4), make_so_n(4).algebra},
      {oracle::abelian2(), make_abelian(2, {Matrix::identity(2), Matrix::identity(2)}).algebra}};
  for (const auto& [base, g] : grid) {
    t.require(oracle::matches(base.table, g.constants()), [&] { return base.name + ": base constants differ"; });
    for (unsigned m = 0; m <= 3; ++m) {
      const auto table = oracle::takiff_table(base.table, m);
      const auto ctx = build_takiff(g, m);
      t.require(oracle::matches(table, ctx.algebra().constants()),
                [&] { return where(base.name, m) + ": bracket differs from the truncated product"; });
      const auto D = table.size();
      // Sparse rows for the Jacobi sums.
      std::vector<std::vector<std::vector<std::pair<std::size_t, Scalar>>>> sparse(
          D, std::vector<std::vector<std::pair<std::size_t, Scalar>>>(D));
      for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j)
          for (std::size_t k = 0; k < D; ++k)
            if (table[i][j][k] != 0) sparse[i][j].emplace_back(k, table[i][j][k]);
      bool anti = true, jacobi = true;
      std::vector<Scalar> acc(D);
      for (std::size_t i = 0; i < D; ++i)
        for (std::size_t j = 0; j < D; ++j) {
          for (std::size_t k = 0; k < D; ++k)
            if (table[i][j][k] != -table[j][i][k]) anti = false;
          for (std::size_t k = 0; k < D; ++k) {
            for (auto& a : acc) a = 0;
            const std::size_t cyc[3][3] = {{i, j, k}, {j, k, i}, {k, i, j}};
            for (const auto& c : cyc)
              for (const auto& [l, v] : sparse[c[1]][c[2]])
                for (const auto& [p, u] : sparse[c[0]][l]) acc[p] += v * u;
            for (const auto& a : acc)
              if (a != 0) jacobi = false;
          }
        }
      t.require(anti, [&] { return where(base.name, m) + ": antisymmetry fails"; });
      t.require(jacobi, [&] { return where(base.name, m) + ": Jacobi fails"; });
    }
  }
}

// 2. Lifted matrices equal the block construction and are a homomorphism.
void homomorphism(Tally& t) {
  const std::vector<std::pair<oracle::Base, Representation>> grid = {
      {oracle::sl2(), make_sl2().rep},
      {oracle::so(3), make_so_n(3).rep},
      {oracle::so(4), make_so_n(4).rep},
      {oracle::abelian2(), make_abelian(2, {Matrix::from_rows(oracle::unit(2, 0, 0)), Matrix::from_rows(oracle::unit(2, 1, 1))}).rep}};
  for (const auto& [base, rep] : grid) {
    t.require(oracle::matches(base.rep, rep.matrices()), [&] { return base.name + ": base matrices differ"; });
    const auto n = rep.space_dim();
    for (unsigned m = 0; m <= 3; ++m) {
      const auto table = oracle::takiff_table(base.table, m);
      const auto big = oracle::lifted_rep(base.rep, n, m);
      const auto lifted = lift_representation(build_takiff(rep.algebra(), m), rep);
      t.require(oracle::matches(big, lifted.rep().matrices()),
                [&] { return where(base.name, m) + ": lifted matrices differ from the block construction"; });
      const auto D = table.size();
      for (std::size_t a = 0; a < D; ++a)
        for (std::size_t b = 0; b < D; ++b) {
          auto lhs = oracle::zeros(big[0].size(), big[0].size());
          for (std::size_t k = 0; k < D; ++k)
            if (table[a][b][k] != 0)
              for (std::size_t p = 0; p < lhs.size(); ++p)
                for (std::size_t q = 0; q < lhs.size(); ++q) lhs[p][q] += table[a][b][k] * big[k][p][q];
          const auto rhs = oracle::sub(oracle::mul(big[a], big[b]), oracle::mul(big[b], big[a]));
          t.require(oracle::is_zero(oracle::sub(lhs, rhs)), [&] {
            return where(base.name, m) + ": rho_m([X, Y]) != [rho_m X, rho_m Y] at (" + std::to_string(a) + ", " +
                   std::to_string(b) + ")";
          });
        }
    }
  }
}

std::vector<Setting> invariant_grid() {
  return {so_setting(2), so_setting(3), so_setting(4), sl2_adjoint_setting()};
}

// 3. Every basis Killing field of rho_m annihilates every Phi_k.
void lifted_invariance(Tally& t) {
  for (const auto& s : invariant_grid()) {
    const auto n = s.rep.space_dim();
    t.require(oracle::matches(s.rho, s.rep.matrices()), [&] { return s.base.name + ": matrices differ"; });
    t.require(oracle::invariant(s.rho, s.phi, oracle::block_vars(s.phi.ring(), "x")),
              [&] { return s.base.name + ": phi is not invariant"; });
    for (unsigned m = 0; m <= 3; ++m) {
      const auto lifted = lift_representation(build_takiff(s.rep.algebra(), m), s.rep);
      const auto phis = lift_invariant(lifted, s.phi);
      const auto ring = lifted_ring(n, m);
      const auto expected = oracle::curve(s.phi, n, m, ring);
      const auto vars = oracle::state_vars(ring, n, m);
      const auto big = oracle::lifted_rep(s.rho, n, m);
      t.require(phis.size() == m + 1u, [&] { return where(s.base.name, m) + ": wrong number of lifts"; });
      for (unsigned k = 0; k < phis.size() && k <= m; ++k) {
        const auto phi_k = rebase(phis[k], ring);
        t.require(phi_k == expected[k],
                  [&] { return where(s.base.name, m) + ": Phi_" + std::to_string(k) + " differs from the expansion"; });
        for (std::size_t a = 0; a < big.size(); ++a)
          t.require(oracle::killing_derivative(big[a], phi_k, vars).is_zero(), [&] {
            return where(s.base.name, m) + ": element " + std::to_string(a) + " moves Phi_" + std::to_string(k);
          });
      }
    }
  }
}

// 4. Triangularity and the linear part of each lift.
void lifted_structure(Tally& t) {
  for (const auto& s : invariant_grid()) {
    const auto n = s.rep.space_dim();
    for (unsigned m = 0; m <= 3; ++m) {
      const auto lifted = lift_representation(build_takiff(s.rep.algebra(), m), s.rep);
      const auto phis = lift_invariant(lifted, s.phi);
      const auto ring = lifted_ring(n, m);
      for (unsigned k = 0; k <= m; ++k) {
        const auto phi_k = rebase(phis[k], ring);
        const auto tag = [&] { return where(s.base.name, m) + " k=" + std::to_string(k); };
        for (unsigned j = k + 1; j <= m; ++j)
          for (auto v : oracle::block_vars(ring, "f" + std::to_string(j)))
            t.require(partial_derivative(phi_k, v).is_zero(),
                      [&] { return tag() + ": depends on f" + std::to_string(j); });
        if (k == 0) continue;
        const auto fk = oracle::block_vars(ring, "f" + std::to_string(k));
        const auto linear = oracle::degree_one_part(phi_k, fk);
        for (const auto& [mono, c] : phi_k.terms()) {
          std::uint32_t deg = 0;
          for (auto v : fk) deg += mono[v];
          t.require(deg <= 1, [&] { return tag() + ": f_k-degree above one"; });
        }
        t.require(linear == oracle::differential_at_f0(s.phi, n, k, ring),
                  [&] { return tag() + ": linear part is not <d phi(f_0), f_k>"; });
        const auto split = extract_linear_part(phis[k], k);
        t.require(rebase(split.linear, ring) == linear, [&] { return tag() + ": extracted linear part differs"; });
        const auto psi = rebase(split.remainder, ring);
        t.require(psi == phi_k - linear, [&] { return tag() + ": remainder is not Phi_k minus the linear part"; });
        for (auto v : fk) t.require(partial_derivative(psi, v).is_zero(), [&] { return tag() + ": psi_k has f_k"; });
      }
    }
  }
}

// 5. Partition expansion, curve substitution and the naive expansion agree.
void faa_di_bruno(Tally& t) {
  Rng rng(5005);
  for (int trial = 0; trial < 50; ++trial) {
    const std::size_t n = 1 + trial % 3;
    const unsigned m = trial % 4;
    const auto xr = x_ring(n);
    const auto phi = oracle::random_polynomial(rng, xr, oracle::block_vars(xr, "x"), 4, 6);
    // Every polynomial is invariant under the zero representation.
    const auto zero = make_abelian(n, {}).rep;
    const auto lifted = lift_representation(build_takiff(zero.algebra(), m), zero);
    const auto ring = lifted_ring(n, m);
    const auto expected = oracle::curve(phi, n, m, ring);
    const auto a = lift_invariant(lifted, phi);
    const auto b = faa_di_bruno_lift(phi, m);
    const auto tag = [&] { return "trial " + std::to_string(trial) + " phi=" + phi.to_string(); };
    t.require(a.size() == m + 1u && b.size() == m + 1u, [&] { return tag() + ": wrong number of lifts"; });
    for (unsigned k = 0; k <= m && k < a.size() && k < b.size(); ++k) {
      t.require(rebase(a[k], ring) == expected[k], [&] { return tag() + ": curve path differs at k=" + std::to_string(k); });
      t.require(rebase(b[k], ring) == expected[k],
                [&] { return tag() + ": partition path differs at k=" + std::to_string(k); });
    }
  }
}

// 6. Cylindrical functions: invariance at level m equals invariance at level
// m - 1, and both match the oracle.
void cylindrical(Tally& t) {
  Rng rng(6006);
  const std::vector<Setting> grid = {so_setting(2), so_setting(3), sl2_adjoint_setting()};
  std::size_t invariant_seen = 0, non_invariant_seen = 0;
  for (int trial = 0; trial < 50; ++trial) {
    const auto& s = grid[trial % grid.size()];
    const auto n = s.rep.space_dim();
    const unsigned m = 1 + trial % 3;
    const auto lifted = lift_representation(build_takiff(s.rep.algebra(), m), s.rep);
    const auto lower = lift_representation(build_takiff(s.rep.algebra(), m - 1), s.rep);
    const auto ring = lifted_ring(n, m - 1);
    std::vector<Polynomial> gens;
    for (const auto& p : lift_invariant(lower, s.phi)) gens.push_back(rebase(p, ring));
    auto theta = Polynomial::constant(ring, rng.small_rational());
    theta += gens[rng.below(gens.size())] * rng.nonzero_rational();
    theta += gens[rng.below(gens.size())] * gens[rng.below(gens.size())] * rng.small_rational();
    if (trial % 2 == 1) {
      std::vector<std::size_t> vars = oracle::state_vars(ring, n, m - 1);
      theta += oracle::random_polynomial(rng, ring, vars, 3, 3);
    }
    const auto top = lifted_ring(n, m);
    const bool at_lower = oracle::invariant(oracle::lifted_rep(s.rho, n, m - 1), theta, oracle::state_vars(ring, n, m - 1));
    const bool at_top =
        oracle::invariant(oracle::lifted_rep(s.rho, n, m), rebase(theta, top), oracle::state_vars(top, n, m));
    (at_lower ? invariant_seen : non_invariant_seen)++;
    const auto r = cylindrical_invariance_check(lifted, theta);
    const auto tag = [&] { return where(s.base.name, m) + " trial " + std::to_string(trial); };
    t.require(at_lower == at_top, [&] { return tag() + ": oracle levels disagree"; });
    t.require(r.agree(), [&] { return tag() + ": levels disagree"; });
    t.require(r.invariant_at_level_m == at_top && r.invariant_at_level_m_minus_1 == at_lower,
              [&] { return tag() + ": result differs from the oracle"; });
  }
  t.require(invariant_seen > 0 && non_invariant_seen > 0, [&] { return std::string("sample is not mixed"); });
}

// x-degree of a monomial and its remaining (parameter) part.
struct Split {
  Monomial rest;
  std::vector<std::uint32_t> x;
  unsigned degree = 0;
};

Split split_monomial(const Monomial& mono, const std::vector<std::size_t>& xs) {
  Split s{mono, {}, 0};
  for (auto v : xs) {
    s.x.push_back(mono[v]);
    s.degree += mono[v];
    s.rest[v] = 0;
  }
  return s;
}

void monomials(std::size_t n, unsigned d, std::vector<std::uint32_t>& cur, std::vector<std::vector<std::uint32_t>>& out) {
  if (cur.size() + 1 == n) {
    cur.push_back(d);
    out.push_back(cur);
    cur.pop_back();
    return;
  }
  for (unsigned e = 0; e <= d; ++e) {
    cur.push_back(d - e);
    monomials(n, e, cur, out);
    cur.pop_back();
  }
}

std::vector<std::vector<std::uint32_t>> monomials(std::size_t n, unsigned d) {
  std::vector<std::vector<std::uint32_t>> out;
  std::vector<std::uint32_t> cur;
  monomials(n, d, cur, out);
  return out;
}

// The closed antisymmetric b with b x = a, found degree by degree from a
// linear system: b x = a, and for n = 3, d_0 b_12 - d_1 b_02 + d_2 b_01 = 0.
std::optional<std::vector<std::vector<Polynomial>>> per_degree_oracle(std::span<const Polynomial> a, const RingPtr& ring,
                                                                     std::size_t n) {
  const auto xs = oracle::block_vars(ring, "x");
  std::map<std::pair<Monomial, unsigned>, std::vector<std::map<std::vector<std::uint32_t>, Scalar>>> groups;
  for (std::size_t i = 0; i < n; ++i)
    for (const auto& [mono, c] : a[i].terms()) {
      auto s = split_monomial(mono, xs);
      auto& g = groups[{s.rest, s.degree}];
      g.resize(n);
      g[i][s.x] = c;
    }
  std::vector<std::vector<Polynomial>> b(n, std::vector<Polynomial>(n, Polynomial(ring)));
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) pairs.emplace_back(i, j);
  for (const auto& [key, rhs_by_row] : groups) {
    const auto& [rest, degree] = key;
    if (degree == 0) return std::nullopt;
    const unsigned d = degree - 1;
    const auto mus = monomials(n, d);
    std::map<std::vector<std::uint32_t>, std::size_t> mu_index;
    for (std::size_t k = 0; k < mus.size(); ++k) mu_index[mus[k]] = k;
    const auto unknown = [&](std::size_t pair, std::size_t mu) { return pair * mus.size() + mu; };
    const auto pair_of = [&](std::size_t i, std::size_t j) {
      for (std::size_t p = 0; p < pairs.size(); ++p)
        if (pairs[p] == std::make_pair(std::min(i, j), std::max(i, j))) return p;
      return pairs.size();
    };
    Mat rows;
    std::vector<Scalar> rhs;
    const auto cols = pairs.size() * mus.size();
    for (std::size_t i = 0; i < n; ++i)
      for (const auto& nu : monomials(n, degree)) {
        std::vector<Scalar> row(cols, Scalar(0));
        for (std::size_t j = 0; j < n; ++j) {
          if (j == i || nu[j] == 0) continue;
          auto mu = nu;
          --mu[j];
          row[unknown(pair_of(i, j), mu_index.at(mu))] += i < j ? 1 : -1;
        }
        const auto it = rhs_by_row[i].find(nu);
        rows.push_back(std::move(row));
        rhs.push_back(it == rhs_by_row[i].end() ? Scalar(0) : it->second);
      }
    if (n == 3 && d >= 1) {
      // (pair, derivative variable, sign) for d_0 b_12 - d_1 b_02 + d_2 b_01.
      const std::tuple<std::size_t, std::size_t, int> closed[3] = {
          {pair_of(1, 2), 0, 1}, {pair_of(0, 2), 1, -1}, {pair_of(0, 1), 2, 1}};
      for (const auto& kappa : monomials(n, d - 1)) {
        std::vector<Scalar> row(cols, Scalar(0));
        for (const auto& [pair, p, sign] : closed) {
          auto mu = kappa;
          ++mu[p];
          row[unknown(pair, mu_index.at(mu))] += Scalar(sign) * Scalar(mu[p]);
        }
        rows.push_back(std::move(row));
        rhs.push_back(0);
      }
    }
    const auto sol = oracle::solve_unique(rows, rhs);
    if (!sol) return std::nullopt;
    for (std::size_t p = 0; p < pairs.size(); ++p)
      for (std::size_t k = 0; k < mus.size(); ++k) {
        const auto& c = (*sol)[unknown(p, k)];
        if (c == 0) continue;
        auto mono = rest;
        for (std::size_t v = 0; v < n; ++v) mono[xs[v]] += mus[k][v];
        b[pairs[p].first][pairs[p].second].add_term(mono, c);
        b[pairs[p].second][pairs[p].first].add_term(mono, -c);
      }
  }
  return b;
}

// 7. Base solver on manufactured syzygies.
void base_solver(Tally& t) {
  Rng rng(7007);
  for (std::size_t n = 2; n <= 4; ++n) {
    const auto so = make_so_n(n);
    const auto rho = oracle::so(n).rep;
    const auto solver = make_quadratic_solver(so.rep, Matrix::identity(n));
    const auto ring = make_ring({{"w", 2, BlockRole::parameter}, {"x", n, BlockRole::state}});
    const auto xs = oracle::block_vars(ring, "x");
    const auto ws = oracle::block_vars(ring, "w");
    for (int trial = 0; trial < 150; ++trial) {
      // The last 50 trials per n feed the per-degree oracle.
      const bool oracle_batch = trial >= 100;
      if (oracle_batch && n == 4) break;
      std::vector<std::size_t> vars = xs;
      for (std::size_t k = 0; k < static_cast<std::size_t>(trial % 3); ++k) vars.push_back(ws[k]);
      std::vector<std::vector<Polynomial>> b(n, std::vector<Polynomial>(n, Polynomial(ring)));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) {
          b[i][j] = oracle::random_polynomial(rng, ring, vars, oracle_batch ? 2 : 3, 3);
          b[j][i] = -b[i][j];
        }
      std::vector<Polynomial> a(n, Polynomial(ring));
      for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j) a[i] += b[i][j] * oracle::var(ring, xs[j]);
      const auto tag = [&] { return "n=" + std::to_string(n) + " trial " + std::to_string(trial); };
      try {
        const auto sol = quadratic_base_solve(Matrix::identity(n), a, "x");
        for (std::size_t i = 0; i < n; ++i) {
          Polynomial row(ring);
          for (std::size_t j = 0; j < n; ++j) {
            t.require(sol.antisymmetric[i][j] == -sol.antisymmetric[j][i], [&] { return tag() + ": b not antisymmetric"; });
            row += sol.antisymmetric[i][j] * oracle::var(ring, xs[j]);
          }
          t.require(row == a[i], [&] { return tag() + ": b x != a"; });
        }
        const auto coords = solver->solve(a, "x");
        std::vector<Polynomial> back(n, Polynomial(ring));
        for (std::size_t k = 0; k < coords.size() && k < rho.size(); ++k)
          for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = 0; q < n; ++q)
              if (rho[k][p][q] != 0) back[p] += coords[k] * oracle::var(ring, xs[q]) * rho[k][p][q];
        t.require(coords.size() == rho.size() && back == a, [&] { return tag() + ": rho(c) x != a"; });
        if (oracle_batch) {
          const auto expected = per_degree_oracle(a, ring, n);
          t.require(expected.has_value(), [&] { return tag() + ": oracle system has no unique solution"; });
          if (expected)
            for (std::size_t i = 0; i < n; ++i)
              for (std::size_t j = 0; j < n; ++j)
                t.require(sol.antisymmetric[i][j] == (*expected)[i][j],
                          [&] { return tag() + ": homotopy differs from the oracle at (" + std::to_string(i) + ", " +
                                       std::to_string(j) + ")"; });
        }
      } catch (const Error& e) {
        t.require(false, [&] { return tag() + ": " + e.what(); });
      }
    }
  }
}

// 8. Fields rho_m(b) F decompose and reconstruct exactly.
void roundtrip(Tally& t) {
  Rng rng(8008);
  const std::vector<Setting> grid = {so_setting(2), so_setting(3), sl2_adjoint_setting()};
  for (const auto& s : grid) {
    const auto n = s.rep.space_dim();
    SolverRegistry registry;
    const auto& entry = registry.get(register_base_solver(registry, s.rep));
    for (unsigned m = 0; m <= 3; ++m) {
      const auto lifted = lift_representation(build_takiff(s.rep.algebra(), m), s.rep);
      const auto ring = lifted_ring(n, m, {{"w", 1, BlockRole::parameter}});
      std::vector<std::size_t> vars = oracle::state_vars(ring, n, m);
      vars.push_back(ring->var_index("w", 0));
      const auto fvars = oracle::state_vars(ring, n, m);
      const auto gens = oracle::curve(s.phi, n, m, ring);
      for (int trial = 0; trial < 50; ++trial) {
        std::vector<std::vector<Polynomial>> b(m + 1);
        for (auto& level : b)
          for (std::size_t i = 0; i < s.rho.size(); ++i) level.push_back(oracle::random_polynomial(rng, ring, vars, 2, 3));
        const auto comps = oracle::lifted_action(s.rho, b, ring, n, m);
        const auto field = make_vector_field(ring, comps, n, m);
        const auto tag = [&] { return where(s.base.name, m) + " trial " + std::to_string(trial); };
        for (const auto& g : gens)
          t.require(oracle::field_derivative(comps, g, fvars).is_zero(), [&] { return tag() + ": oracle annihilation fails"; });
        t.require(annihilates_invariants(field, lifted_generators(lifted, entry.family, ring)).annihilates,
                  [&] { return tag() + ": field reported as not annihilating"; });
        try {
          DecomposeStats stats;
          const auto dec = takiff_decompose(lifted, entry, field, &stats);
          t.require(verify_decomposition(lifted, field, dec).ok, [&] { return tag() + ": verification fails"; });
          std::vector<std::vector<Polynomial>> coeffs;
          for (const auto& level : dec.coefficients) {
            coeffs.emplace_back();
            for (const auto& c : level) coeffs.back().push_back(rebase(c, ring));
          }
          t.require(dec.coefficients.size() == m + 1u && oracle::lifted_action(s.rho, coeffs, ring, n, m) == comps,
                    [&] { return tag() + ": oracle reconstruction differs"; });
          t.require(m == 0 || stats.residual_checks >= m, [&] { return tag() + ": residual identity not evaluated"; });
        } catch (const InternalConsistencyError& e) {
          t.require(false, [&] { return tag() + ": residual assertion fired: " + e.what(); });
        } catch (const Error& e) {
          t.require(false, [&] { return tag() + ": " + e.what(); });
        }
      }
    }
  }
}

// q = c p for some nonzero rational c.
bool proportional(const Polynomial& p, const Polynomial& q) {
  if (p.is_zero() || q.is_zero() || p.terms().size() != q.terms().size()) return false;
  const auto& [mono, c] = *p.terms().begin();
  const auto it = q.terms().find(mono);
  if (it == q.terms().end()) return false;
  return p * (it->second / c) == q;
}

// Checks that decompose refuses and the witness is a nonzero field
// derivative of one of the lifted generators. Generators are fixed only up
// to scale, so a rational multiple is accepted.
void expect_refusal(Tally& t, const LiftedRepresentation& lifted, const SolverEntry& entry, const VectorField& field,
                    const std::vector<Polynomial>& gens, const std::vector<std::size_t>& fvars, const std::string& tag) {
  try {
    takiff_decompose(lifted, entry, field);
    t.require(false, [&] { return tag + ": decomposed"; });
  } catch (const RefusalError& e) {
    t.require(e.witness().has_value() && !e.witness()->is_zero(), [&] { return tag + ": no nonzero witness"; });
    if (!e.witness()) return;
    bool found = false;
    for (const auto& g : gens)
      if (proportional(oracle::field_derivative(field.components(), g, fvars), *e.witness())) found = true;
    t.require(found, [&] { return tag + ": witness is not a generator derivative"; });
  } catch (const Error& e) {
    t.require(false, [&] { return tag + ": " + e.what(); });
  }
}

// 9. Radial fields and random non-annihilating fields are refused.
void refusal(Tally& t) {
  for (std::size_t n = 2; n <= 4; ++n) {
    auto s = so_setting(n);
    SolverRegistry registry;
    const auto& entry = registry.get(register_base_solver(registry, s.rep));
    for (unsigned m = 0; m <= 1; ++m) {
      const auto lifted = lift_representation(build_takiff(s.rep.algebra(), m), s.rep);
      const auto ring = lifted_ring(n, m);
      const auto fvars = oracle::state_vars(ring, n, m);
      std::vector<Polynomial> comps;
      for (auto v : fvars) comps.push_back(oracle::var(ring, v));
      expect_refusal(t, lifted, entry, make_vector_field(ring, comps, n, m), oracle::curve(s.phi, n, m, ring), fvars,
                     "radial " + where(s.base.name, m));
    }
  }
  Rng rng(9009);
  const std::vector<Setting> grid = {so_setting(2), so_setting(3), sl2_adjoint_setting()};
  for (int trial = 0; trial < 20; ++trial) {
    const auto& s = grid[trial % grid.size()];
    const auto n = s.rep.space_dim();
    const unsigned m = trial % 3;
    SolverRegistry registry;
    const auto& entry = registry.get(register_base_solver(registry, s.rep));
    const auto lifted = lift_representation(build_takiff(s.rep.algebra(), m), s.rep);
    const auto ring = lifted_ring(n, m, {{"w", 1, BlockRole::parameter}});
    const auto fvars = oracle::state_vars(ring, n, m);
    auto vars = fvars;
    vars.push_back(ring->var_index("w", 0));
    const auto gens = oracle::curve(s.phi, n, m, ring);
    std::vector<Polynomial> comps;
    for (bool annihilating = true; annihilating;) {
      comps.clear();
      for (std::size_t p = 0; p < fvars.size(); ++p) comps.push_back(oracle::random_polynomial(rng, ring, vars, 2, 3));
      annihilating = true;
      for (const auto& g : gens)
        if (!oracle::field_derivative(comps, g, fvars).is_zero()) annihilating = false;
    }
    expect_refusal(t, lifted, entry, make_vector_field(ring, comps, n, m), gens, fvars,
                   "random " + where(s.base.name, m) + " trial " + std::to_string(trial));
  }
}

// 10. Block reversal intertwines the lifted coadjoint with the coadjoint of
// g_m.
void flip(Tally& t) {
  const std::vector<std::pair<oracle::Base, LieAlgebra>> grid = {{oracle::sl2(), make_sl2().algebra},
                                                                  {oracle::so(3), make_so_n(3).algebra}};
  for (const auto& [base, g] : grid) {
    const auto d = base.table.size();
    for (unsigned m = 0; m <= 2; ++m) {
      const auto report = verify_flip_identity(g, m);
      t.require(report.pass && report.checked == (m + 1) * d,
                [&] { return where(base.name, m) + ": library flip check fails"; });
      const auto coad_m = oracle::coadjoint(oracle::takiff_table(base.table, m));
      const auto lifted = oracle::lifted_rep(oracle::coadjoint(base.table), d, m);
      auto theta = oracle::zeros((m + 1) * d, (m + 1) * d);
      for (unsigned s = 0; s <= m; ++s)
        for (std::size_t i = 0; i < d; ++i) theta[(m - s) * d + i][s * d + i] = 1;
      for (std::size_t a = 0; a < coad_m.size(); ++a)
        t.require(oracle::mul(oracle::mul(theta, lifted[a]), theta) == coad_m[a],
                  [&] { return where(base.name, m) + ": identity fails at element " + std::to_string(a); });
    }
  }
}

// 11. Lifted Killing forms are symmetric, nondegenerate and invariant.
void quadratic_lift(Tally& t) {
  const std::vector<std::pair<oracle::Base, LieAlgebra>> grid = {{oracle::sl2(), make_sl2().algebra},
                                                                  {oracle::so(3), make_so_n(3).algebra}};
  for (const auto& [base, g] : grid) {
    const auto k = oracle::killing(base.table);
    const auto d = k.size();
    for (unsigned m = 0; m <= 2; ++m) {
      const auto tag = [&] { return where(base.name, m); };
      try {
        const auto form = lift_bilinear_form(build_takiff(g, m), BilinearForm{Matrix::from_rows(k)});
        auto expected = oracle::zeros((m + 1) * d, (m + 1) * d);
        for (unsigned r = 0; r <= m; ++r)
          for (std::size_t i = 0; i < d; ++i)
            for (std::size_t j = 0; j < d; ++j) expected[r * d + i][(m - r) * d + j] = k[i][j];
        t.require(oracle::same(expected, form.gram), [&] { return tag() + ": gram differs from the pairing"; });
        t.require(oracle::transpose(expected) == expected, [&] { return tag() + ": not symmetric"; });
        t.require(oracle::determinant(expected) != 0, [&] { return tag() + ": degenerate"; });
        for (const auto& ad : oracle::adjoint(oracle::takiff_table(base.table, m))) {
          auto lhs = oracle::mul(oracle::transpose(ad), expected);
          const auto rhs = oracle::mul(expected, ad);
          for (std::size_t i = 0; i < lhs.size(); ++i)
            for (std::size_t j = 0; j < lhs.size(); ++j) lhs[i][j] += rhs[i][j];
          t.require(oracle::is_zero(lhs), [&] { return tag() + ": not invariant"; });
        }
      } catch (const Error& e) {
        t.require(false, [&] { return tag() + ": " + e.what(); });
      }
    }
  }
}

// 12. a'(v) = theta a(theta^{-1} v) decomposes under tau = theta rho theta^{-1}
// with coefficients b(theta^{-1} v).
void transport(Tally& t) {
  Rng rng(1212);
  const auto so2 = make_so_n(2);
  const auto j = oracle::so(2).rep[0];
  const auto ring = lifted_ring(2, 0, {{"w", 1, BlockRole::parameter}});
  const auto f = oracle::block_vars(ring, "f0");
  std::vector<std::size_t> vars = f;
  vars.push_back(ring->var_index("w", 0));
  for (int trial = 0; trial < 10; ++trial) {
    Mat theta;
    Scalar det = 0;
    while (det == 0) {
      theta = {{rng.small_rational(), rng.small_rational()}, {rng.small_rational(), rng.small_rational()}};
      det = oracle::determinant(theta);
    }
    const Mat inv = {{theta[1][1] / det, -theta[0][1] / det}, {-theta[1][0] / det, theta[0][0] / det}};
    const auto b = oracle::random_polynomial(rng, ring, vars, 2, 3);
    // a = b J v; substitute v -> theta^{-1} v, then apply theta.
    std::vector<Polynomial> pulled;
    for (std::size_t p = 0; p < 2; ++p)
      pulled.push_back(oracle::var(ring, f[0]) * inv[p][0] + oracle::var(ring, f[1]) * inv[p][1]);
    std::vector<Polynomial> images;
    for (std::size_t v = 0; v < ring->num_vars(); ++v)
      images.push_back(v == f[0] ? pulled[0] : v == f[1] ? pulled[1] : oracle::var(ring, v));
    const auto b_pulled = compose(b, ring, images);
    const auto tau = oracle::mul(oracle::mul(theta, j), inv);
    std::vector<Polynomial> expected(2, Polynomial(ring));
    for (std::size_t p = 0; p < 2; ++p)
      for (std::size_t q = 0; q < 2; ++q)
        if (tau[p][q] != 0) expected[p] += b_pulled * oracle::var(ring, f[q]) * tau[p][q];
    std::vector<Polynomial> a(2, Polynomial(ring));
    for (std::size_t p = 0; p < 2; ++p)
      for (std::size_t q = 0; q < 2; ++q)
        if (j[p][q] != 0) a[p] += b * oracle::var(ring, f[q]) * j[p][q];
    const auto tag = [&] { return "trial " + std::to_string(trial); };
    try {
      const auto field = make_vector_field(ring, a, 2, 0);
      const auto moved = conjugate_field(field, Matrix::from_rows(theta));
      t.require(moved.components() == expected, [&] { return tag() + ": conjugated field differs"; });
      const auto rep_tau = conjugate_representation(so2.rep, Matrix::from_rows(theta));
      t.require(oracle::same(tau, rep_tau.matrix(0)), [&] { return tag() + ": tau differs"; });
      SolverRegistry registry;
      const auto& entry = registry.get(register_base_solver(registry, rep_tau));
      const auto lifted = lift_representation(build_takiff(rep_tau.algebra(), 0), rep_tau);
      const auto dec = takiff_decompose(lifted, entry, moved);
      t.require(verify_decomposition(lifted, moved, dec).ok, [&] { return tag() + ": verification fails"; });
      const auto coeff = rebase(dec.coefficients.at(0).at(0), ring);
      std::vector<Polynomial> back(2, Polynomial(ring));
      for (std::size_t p = 0; p < 2; ++p)
        for (std::size_t q = 0; q < 2; ++q)
          if (tau[p][q] != 0) back[p] += coeff * oracle::var(ring, f[q]) * tau[p][q];
      t.require(back == expected, [&] { return tag() + ": tau(b') v != a'"; });
      t.require(coeff == b_pulled, [&] { return tag() + ": coefficient is not b(theta^{-1} v)"; });
    } catch (const Error& e) {
      t.require(false, [&] { return tag() + ": " + e.what(); });
    }
  }
}

struct Criterion {
  int id;
  const char* title;
  std::optional<double> limit_seconds;
  void (*run)(Tally&);
};

}  // namespace

int main() {
  const Criterion criteria[] = {
      {1, "Takiff brackets: antisymmetry and Jacobi", 10, takiff_validity},
      {2, "lifted representation is a homomorphism", 20, homomorphism},
      {3, "lifted invariants are invariant", 30, lifted_invariance},
      {4, "lifted invariants: triangularity and linear part", std::nullopt, lifted_structure},
      {5, "partition expansion equals curve expansion", 60, faa_di_bruno},
      {6, "cylindrical invariance agrees across levels", std::nullopt, cylindrical},
      {7, "base solver on manufactured syzygies", 60, base_solver},
      {8, "decomposition roundtrip", 120, roundtrip},
      {9, "refusal with witnesses", std::nullopt, refusal},
      {10, "flip identity", std::nullopt, flip},
      {11, "lifted Killing forms", std::nullopt, quadratic_lift},
      {12, "transport by conjugation", std::nullopt, transport},
  };
  int failed = 0;
  for (const auto& c : criteria) {
    Tally tally;
    const auto start = std::chrono::steady_clock::now();
    try {
      c.run(tally);
    } catch (const std::exception& e) {
      tally.require(false, [&] { return std::string("uncaught: ") + e.what(); });
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (c.limit_seconds && secs > *c.limit_seconds && !tally.failed()) {
      std::ostringstream os;
      os << "took " << secs << " s, limit " << *c.limit_seconds << " s";
      tally.failure = os.str();
    }
    std::ostringstream timing;
    timing.precision(2);
    timing << std::fixed << secs << " s";
    if (c.limit_seconds) timing << " / limit " << static_cast<int>(*c.limit_seconds) << " s";
    std::printf("%s  %2d  %s  [%zu checks, %s]\n", tally.failed() ? "FAIL" : "PASS", c.id, c.title, tally.checks,
                timing.str().c_str());
    if (tally.failed()) {
      std::printf("          %s\n", tally.failure->c_str());
      ++failed;
    }
    std::fflush(stdout);
  }
  std::printf("%d/%zu criteria passed\n", static_cast<int>(std::size(criteria)) - failed, std::size(criteria));
  return failed == 0 ? 0 : 1;
}
