#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "takiff/invariants.hpp"
#include "takiff/lie.hpp"
#include "takiff/polynomial.hpp"
#include "takiff/takiff.hpp"

namespace takiff {

// A field a : W x V_m -> V_m. Codomain blocks are f0..fm; any other ring
// block is a parameter.
using VectorField = PolyMap;

VectorField make_vector_field(RingPtr ring, std::vector<Polynomial> components, std::size_t block_dim, unsigned m);

// Coordinates b[r][i] of the map b : W x V_m -> g_m in the level-major basis.
struct Decomposition {
  unsigned level = 0;
  std::vector<std::vector<Polynomial>> coefficients;
};

using PolyMatrix = std::vector<std::vector<Polynomial>>;

/// Level-0 solver: given a field on V (extra blocks of the ring act as
/// parameters), returns coefficients b with a = rho(b) v, or throws
/// RefusalError.
class BaseSolver {
 public:
  virtual ~BaseSolver() = default;
  virtual std::string name() const = 0;
  virtual std::vector<Polynomial> solve(std::span<const Polynomial> a, const std::string& state_block) const = 0;
};

struct QuadraticSolution {
  PolyMatrix antisymmetric;  // b with G a = b x
  PolyMatrix matrix;         // M = G^{-1} b, so a = M x and G M is antisymmetric
};

/// Division of a by x under the constraint sum_ij a_i G_ij x_j = 0. With
/// c = G a and c^(d) its x-homogeneous degree-d part,
///   b_ij = sum_d (d_j c_i^(d) - d_i c_j^(d)) / (d + 1).
/// Throws RefusalError with the residual when the constraint fails.
QuadraticSolution quadratic_base_solve(const Matrix& gram, std::span<const Polynomial> a,
                                       const std::string& state_block);

// Solver for representations with rho(g) = so(G): requires rho(x)^T G + G rho(x) = 0,
// rho faithful, and dim g = n(n-1)/2.
std::shared_ptr<const BaseSolver> make_quadratic_solver(const Representation& rep, const Matrix& gram);

// Solver for representations acting by zero: only the zero field decomposes.
std::shared_ptr<const BaseSolver> make_trivial_solver(const Representation& rep);

// Basis of the symmetric Gram matrices G with rho(x)^T G + G rho(x) = 0.
std::vector<Matrix> invariant_symmetric_forms(const Representation& rep);

struct SolverEntry {
  Representation rep;
  InvariantFamily family;
  std::shared_ptr<const BaseSolver> solver;
};

using SolverHandle = std::size_t;

/// Associates base solvers with representations. One solver per
/// representation; registering a second one is an error.
class SolverRegistry {
 public:
  SolverHandle register_solver(Representation rep, InvariantFamily family, std::shared_ptr<const BaseSolver> solver);
  const SolverEntry& get(SolverHandle handle) const;
  const SolverEntry* find(const Representation& rep) const;
  std::size_t size() const noexcept { return entries_.size(); }

 private:
  std::vector<SolverEntry> entries_;
};

// Built-in registration: zero representations get the trivial solver with
// the coordinate functions as invariants; otherwise a Gram matrix (given, or
// the unique invariant symmetric form up to scale) gives the quadratic solver
// with {Q_G}. Throws ValidationError when neither applies.
SolverHandle register_base_solver(SolverRegistry& registry, const Representation& rep,
                                  const std::optional<Matrix>& gram = std::nullopt);

struct AnnihilationResult {
  bool annihilates = true;
  std::optional<std::size_t> generator;  // index of the first failing generator
  std::optional<Polynomial> witness;     // sum_p a_p d Phi / d v_p, nonzero
};

// Checks sum_p a_p dPhi/dv_p = 0 for each generator; the field's codomain
// blocks are the state coordinates.
AnnihilationResult annihilates_invariants(const VectorField& field, std::span<const Polynomial> generators);

// Lifts of the family's generators (Phi_0..Phi_m of each), over ring.
std::vector<Polynomial> lifted_generators(const LiftedRepresentation& lifted, const InvariantFamily& family,
                                          const RingPtr& ring);

struct DecomposeStats {
  std::size_t residual_checks = 0;
  std::size_t base_solves = 0;
};

/// Recursive decomposition of a field annihilating the lifted invariants:
/// decompose (a_0..a_{m-1}) with f_m as a parameter, form
/// c_m = sum_{r<m} rho(b_r) f_{m-r}, check <d phi(f_0), a_m - c_m> = 0, and
/// solve a_m - c_m = rho(b_m) f_0 with the base solver.
/// Throws RefusalError when the field fails the precondition and
/// InternalConsistencyError when the residual identity fails.
Decomposition takiff_decompose(const LiftedRepresentation& lifted, const SolverEntry& base, const VectorField& field,
                               DecomposeStats* stats = nullptr);

// rho_m(b) F for a decomposition over ring (codomain f0..fm).
std::vector<Polynomial> reconstruct(const LiftedRepresentation& lifted, const Decomposition& dec, const RingPtr& ring);

struct VerificationResult {
  bool ok = true;
  std::vector<Polynomial> residuals;  // a_j - (rho_m(b) F)_j, per component
  std::optional<std::size_t> first_failure;
};

VerificationResult verify_decomposition(const LiftedRepresentation& lifted, const VectorField& field,
                                        const Decomposition& dec);

// Equivalence transport on a level-0 field with one state block:
// a'(v) = theta a(theta^{-1} v).
VectorField conjugate_field(const VectorField& field, const Matrix& theta);
// b'(v) = b(theta^{-1} v) for level-0 coefficients.
Decomposition conjugate_decomposition(const Decomposition& dec, const std::string& state_block, const Matrix& theta);

}  // namespace takiff
