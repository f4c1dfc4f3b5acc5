#pragma once

#include <cstddef>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "takiff/lie.hpp"
#include "takiff/polynomial.hpp"
#include "takiff/takiff.hpp"

namespace takiff {

// Global variable indices of the representation space inside a ring: the
// concatenation of the named blocks. An empty list means every block with
// role state, in ring order. The total size must equal expected_dim.
std::vector<std::size_t> state_variables(const Ring& ring, std::span<const std::string> blocks,
                                         std::size_t expected_dim);

/// Killing field of a fixed algebra element: v -> rho(x) v, acting on
/// polynomials as the derivation L_x phi = <d phi, rho(x) v>.
class KillingField {
 public:
  KillingField(const Representation& rep, std::vector<Scalar> element);

  const std::vector<Scalar>& element() const noexcept { return element_; }
  const Matrix& matrix() const noexcept { return matrix_; }

  Polynomial apply(const Polynomial& phi, std::span<const std::string> layout = {}) const;

 private:
  std::vector<Scalar> element_;
  Matrix matrix_;
};

// sum_p (rho(x_i) v)_p d phi / d v_p for the basis element x_i.
Polynomial apply_killing(const Representation& rep, std::size_t x_index, const Polynomial& phi,
                         std::span<const std::string> layout = {});

bool is_invariant(const Representation& rep, const Polynomial& phi, std::span<const std::string> layout = {});

/// Generators of invariant polynomials on V, checked at construction.
class InvariantFamily {
 public:
  InvariantFamily(const Representation& rep, std::vector<Polynomial> generators, std::string label);

  const std::vector<Polynomial>& generators() const noexcept { return generators_; }
  const std::string& label() const noexcept { return label_; }

 private:
  std::vector<Polynomial> generators_;
  std::string label_;
};

// Q_G(v) = 1/2 v^T G v over a single block.
Polynomial quadratic_form_polynomial(const Matrix& gram, const std::string& block = "x");

/// [Phi_0, ..., Phi_m] for phi over a single block: the t^k coefficients of
/// phi(f_0 + t f_1 + ... + t^m f_m), over the ring f0..fm. Refuses a phi that
/// is not invariant under the base representation unless allow_noninvariant.
std::vector<Polynomial> lift_invariant(const LiftedRepresentation& lifted, const Polynomial& phi,
                                       bool allow_noninvariant = false);

/// Same values as lift_invariant, computed from the partition expansion
/// Phi_k = sum 1/(q_1! ... q_k!) d^q phi(f_0)(f_1^[q_1], ..., f_k^[q_k]) over
/// q_1 + 2 q_2 + ... + k q_k = k. Multidifferentials are iterated directional
/// derivatives.
std::vector<Polynomial> faa_di_bruno_lift(const Polynomial& phi, unsigned m);

// Partitions (q_1, ..., q_k) with sum j q_j = k, in lexicographic order.
std::vector<std::vector<unsigned>> weighted_partitions(unsigned k);

// <d phi(base), vec> over target: sum_i (d_i phi)(base) vec_i.
Polynomial gradient_pairing(const Polynomial& phi, const RingPtr& target, const std::string& base_block,
                            std::span<const Polynomial> vec);

// <d phi(base), direction> over target, where base and direction name blocks
// of target and phi lives on a single block of the same size.
Polynomial differential_pairing(const Polynomial& phi, const RingPtr& target, const std::string& base_block,
                                const std::string& direction_block);

struct LinearSplit {
  Polynomial linear;     // part of f_k-degree 1
  Polynomial remainder;  // psi_k, free of f_k
};

// Throws InternalConsistencyError if Phi_k has terms of f_k-degree >= 2.
LinearSplit extract_linear_part(const Polynomial& phi_k, unsigned k);

struct CylindricalResult {
  bool invariant_at_level_m = false;
  bool invariant_at_level_m_minus_1 = false;
  bool agree() const noexcept { return invariant_at_level_m == invariant_at_level_m_minus_1; }
};

// theta over blocks f0..f{m-1}: its invariance as a function on V_m (not
// depending on f_m) and as a function on V_{m-1}.
CylindricalResult cylindrical_invariance_check(const LiftedRepresentation& lifted, const Polynomial& theta);

struct SamplePoint {
  std::vector<Scalar> state;   // one value per codomain coordinate
  std::vector<Scalar> params;  // values of the remaining ring variables, in ring order
};

struct TangencyPoint {
  bool member = false;
  std::vector<Scalar> value;                       // a(w, v)
  std::optional<std::vector<Scalar>> coefficients;  // c with sum c_i rho(x_i) v = a(w, v)
};

struct TangencyReport {
  std::vector<TangencyPoint> points;
  bool all_members() const noexcept;
};

// Exact per-point test a(w, v) in span{rho(x_i) v}. The field's codomain
// blocks are its state variables.
TangencyReport tangency_check(const Representation& rep, const PolyMap& field, std::span<const SamplePoint> points);

}  // namespace takiff
