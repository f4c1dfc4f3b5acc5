#pragma once

#include <cstddef>
#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "takiff/scalar.hpp"

namespace takiff {

enum class BlockRole { state, parameter };

std::string_view to_string(BlockRole role);
BlockRole parse_block_role(std::string_view text);

struct VariableBlock {
  std::string name;
  std::size_t size = 0;
  BlockRole role = BlockRole::state;

  bool operator==(const VariableBlock&) const = default;
};

/// An ordered list of named variable blocks. Variables are numbered globally
/// in block order; variable (block, i) has index offset(block) + i.
class Ring {
 public:
  explicit Ring(std::vector<VariableBlock> blocks);

  const std::vector<VariableBlock>& blocks() const noexcept { return blocks_; }
  std::size_t num_vars() const noexcept { return num_vars_; }

  bool has_block(std::string_view name) const noexcept;
  const VariableBlock& block(std::string_view name) const;
  std::size_t offset(std::string_view name) const;
  std::size_t var_index(std::string_view name, std::size_t index) const;
  // "f0.1" style name of a global variable index.
  std::string var_name(std::size_t var) const;
  // Inverse of var_name.
  std::size_t parse_var_name(std::string_view text) const;

  // Same block names and sizes in the same order. Roles are annotations and
  // do not affect compatibility.
  bool same_variables(const Ring& other) const noexcept;

  std::string describe() const;

 private:
  std::vector<VariableBlock> blocks_;
  std::vector<std::size_t> offsets_;
  std::size_t num_vars_ = 0;
};

using RingPtr = std::shared_ptr<const Ring>;

RingPtr make_ring(std::vector<VariableBlock> blocks);
// Copy of the ring with one block's role changed.
RingPtr with_role(const RingPtr& ring, std::string_view block, BlockRole role);

// Dense exponent vector indexed by global variable number.
using Monomial = std::vector<std::uint32_t>;

/// Exact sparse multivariate polynomial over the rationals. The term map never
/// holds a zero coefficient, so equality is structural.
class Polynomial {
 public:
  using Terms = std::map<Monomial, Scalar>;

  explicit Polynomial(RingPtr ring);

  static Polynomial constant(RingPtr ring, const Scalar& c);
  static Polynomial variable(RingPtr ring, std::string_view block, std::size_t index);
  static Polynomial variable(RingPtr ring, std::size_t var);

  const RingPtr& ring() const noexcept { return ring_; }
  const Terms& terms() const noexcept { return terms_; }
  bool is_zero() const noexcept { return terms_.empty(); }
  bool is_constant() const noexcept;
  // Constant coefficient (zero if absent).
  Scalar constant_term() const;

  // Accumulates c * monomial, dropping the term if it cancels.
  void add_term(const Monomial& m, const Scalar& c);

  unsigned total_degree() const;
  unsigned block_degree(std::string_view block) const;
  bool depends_on_block(std::string_view block) const;

  Polynomial& operator+=(const Polynomial& other);
  Polynomial& operator-=(const Polynomial& other);
  Polynomial& operator*=(const Scalar& c);

  friend Polynomial operator+(Polynomial a, const Polynomial& b) { return a += b; }
  friend Polynomial operator-(Polynomial a, const Polynomial& b) { return a -= b; }
  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(Polynomial a, const Scalar& c) { return a *= c; }
  friend Polynomial operator*(const Scalar& c, Polynomial a) { return a *= c; }
  Polynomial operator-() const;

  // Term-map equality; rings must share variables.
  bool operator==(const Polynomial& other) const;

  std::string to_string() const;

 private:
  void require_same_ring(const Polynomial& other, const char* op) const;

  RingPtr ring_;
  Terms terms_;
};

enum class ArithOp { add, sub, mul };
Polynomial poly_arith(const Polynomial& p, const Polynomial& q, ArithOp op);
Polynomial poly_scale(const Polynomial& p, const Scalar& c);

Polynomial partial_derivative(const Polynomial& p, std::string_view block, std::size_t index);
Polynomial partial_derivative(const Polynomial& p, std::size_t var);

// Grading by block-degree; other blocks count as constants. Absent degrees
// have zero component.
std::map<unsigned, Polynomial> homogeneous_components(const Polynomial& p, std::string_view block);

// Same polynomial expressed over another ring that contains every variable p
// uses (matched by block name and index).
Polynomial rebase(const Polynomial& p, const RingPtr& target);

// Replaces every variable of p by an image polynomial over target.
// images.size() must equal p's variable count.
Polynomial compose(const Polynomial& p, const RingPtr& target, std::span<const Polynomial> images);

// Replaces the variables of one block by images (over p's ring); other
// variables are left alone.
Polynomial substitute_block(const Polynomial& p, std::string_view block, std::span<const Polynomial> images);

// Replaces the variables of one block by rational values.
Polynomial evaluate_block(const Polynomial& p, std::string_view block, std::span<const Scalar> values);

// Value at a full assignment of every ring variable.
Scalar evaluate(const Polynomial& p, std::span<const Scalar> point);

// Variables of a block as polynomials over p's ring.
std::vector<Polynomial> block_variables(const RingPtr& ring, std::string_view block);

/// For phi over a single block of size n, returns the coefficients of
/// t^0..t^m in phi(f_0 + t f_1 + ... + t^m f_m), each over a fresh ring whose
/// blocks are the given names (each of size n, role state).
std::vector<Polynomial> substitute_curve(const Polynomial& phi, std::span<const std::string> block_names,
                                         unsigned truncation);

/// A polynomial map into a product of named coordinate blocks.
class PolyMap {
 public:
  struct CodomainBlock {
    std::string name;
    std::size_t size = 0;
    bool operator==(const CodomainBlock&) const = default;
  };

  PolyMap(RingPtr ring, std::vector<Polynomial> components, std::vector<CodomainBlock> codomain);

  const RingPtr& ring() const noexcept { return ring_; }
  const std::vector<Polynomial>& components() const noexcept { return components_; }
  const std::vector<CodomainBlock>& codomain() const noexcept { return codomain_; }
  std::size_t dimension() const noexcept { return components_.size(); }
  // Components belonging to one codomain block.
  std::span<const Polynomial> block(std::size_t b) const;

  bool operator==(const PolyMap& other) const;

 private:
  RingPtr ring_;
  std::vector<Polynomial> components_;
  std::vector<CodomainBlock> codomain_;
};

}  // namespace takiff
