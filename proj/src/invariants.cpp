#include "takiff/invariants.hpp"

#include <algorithm>

#include "takiff/errors.hpp"

namespace takiff {

std::vector<std::size_t> state_variables(const Ring& ring, std::span<const std::string> blocks,
                                         std::size_t expected_dim) {
  std::vector<std::size_t> vars;
  auto take = [&](const VariableBlock& b) {
    const auto off = ring.offset(b.name);
    for (std::size_t i = 0; i < b.size; ++i) vars.push_back(off + i);
  };
  if (blocks.empty()) {
    for (const auto& b : ring.blocks())
      if (b.role == BlockRole::state) take(b);
  } else {
    for (const auto& name : blocks) take(ring.block(name));
  }
  if (vars.size() != expected_dim)
    throw StructuralError("state layout of ring " + ring.describe() + " has " + std::to_string(vars.size()) +
                          " coordinates, representation acts on " + std::to_string(expected_dim));
  return vars;
}

namespace {

Polynomial apply_linear_field(const Matrix& a, const Polynomial& phi, std::span<const std::string> layout) {
  const auto& ring = phi.ring();
  const auto vars = state_variables(*ring, layout, a.rows());
  Polynomial out(ring);
  for (std::size_t p = 0; p < vars.size(); ++p) {
    const auto dphi = partial_derivative(phi, vars[p]);
    if (dphi.is_zero()) continue;
    Polynomial component(ring);
    for (std::size_t q = 0; q < vars.size(); ++q)
      if (a(p, q) != 0) component += Polynomial::variable(ring, vars[q]) * a(p, q);
    out += component * dphi;
  }
  return out;
}

}  // namespace

KillingField::KillingField(const Representation& rep, std::vector<Scalar> element)
    : element_(std::move(element)), matrix_(rep.image(element_)) {}

Polynomial KillingField::apply(const Polynomial& phi, std::span<const std::string> layout) const {
  return apply_linear_field(matrix_, phi, layout);
}

Polynomial apply_killing(const Representation& rep, std::size_t x_index, const Polynomial& phi,
                         std::span<const std::string> layout) {
  if (x_index >= rep.algebra().dim()) throw StructuralError("apply_killing: basis index out of range");
  return apply_linear_field(rep.matrix(x_index), phi, layout);
}

bool is_invariant(const Representation& rep, const Polynomial& phi, std::span<const std::string> layout) {
  for (std::size_t i = 0; i < rep.algebra().dim(); ++i)
    if (!apply_killing(rep, i, phi, layout).is_zero()) return false;
  return true;
}

InvariantFamily::InvariantFamily(const Representation& rep, std::vector<Polynomial> generators, std::string label)
    : generators_(std::move(generators)), label_(std::move(label)) {
  for (std::size_t g = 0; g < generators_.size(); ++g)
    if (!is_invariant(rep, generators_[g]))
      throw ValidationError("invariant family \"" + label_ + "\": generator " + std::to_string(g) +
                            " is not invariant");
}

Polynomial quadratic_form_polynomial(const Matrix& gram, const std::string& block) {
  if (!gram.is_symmetric()) throw ValidationError("quadratic form: Gram matrix is not symmetric");
  const auto n = gram.rows();
  auto ring = make_ring({{block, n, BlockRole::state}});
  Polynomial q(ring);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (gram(i, j) != 0)
        q += Polynomial::variable(ring, i) * Polynomial::variable(ring, j) * (gram(i, j) / 2);
  return q;
}

// ---------------------------------------------------------------- lifting

std::vector<Polynomial> lift_invariant(const LiftedRepresentation& lifted, const Polynomial& phi,
                                       bool allow_noninvariant) {
  const auto& ring = *phi.ring();
  if (ring.blocks().size() != 1 || ring.num_vars() != lifted.block_dim())
    throw StructuralError("lift_invariant: phi must live on a single block of size " +
                          std::to_string(lifted.block_dim()));
  if (!allow_noninvariant && !is_invariant(lifted.base_rep(), phi))
    throw ValidationError("lift_invariant: phi is not invariant under the base representation");
  const auto names = level_block_names(lifted.level());
  return substitute_curve(phi, names, lifted.level());
}

std::vector<std::vector<unsigned>> weighted_partitions(unsigned k) {
  std::vector<std::vector<unsigned>> out;
  std::vector<unsigned> q(k, 0);
  // Choose q_1, then q_2, ..., keeping the weight budget.
  auto rec = [&](auto&& self, unsigned part, unsigned remaining) -> void {
    if (part > k) {
      if (remaining == 0) out.push_back(q);
      return;
    }
    for (unsigned count = 0; count * part <= remaining; ++count) {
      q[part - 1] = count;
      self(self, part + 1, remaining - count * part);
    }
    q[part - 1] = 0;
  };
  rec(rec, 1, k);
  return out;
}

namespace {

// sum_i dir_i d/d(base_i)
Polynomial directional_derivative(const Polynomial& p, std::span<const std::size_t> base_vars,
                                  std::span<const Polynomial> direction) {
  Polynomial out(p.ring());
  for (std::size_t i = 0; i < base_vars.size(); ++i) {
    auto d = partial_derivative(p, base_vars[i]);
    if (!d.is_zero()) out += d * direction[i];
  }
  return out;
}

Scalar factorial(unsigned n) {
  Scalar f = 1;
  for (unsigned i = 2; i <= n; ++i) f *= i;
  return f;
}

}  // namespace

std::vector<Polynomial> faa_di_bruno_lift(const Polynomial& phi, unsigned m) {
  const auto& src = *phi.ring();
  if (src.blocks().size() != 1) throw StructuralError("faa_di_bruno_lift: phi must live on a single block");
  const std::size_t n = src.num_vars();
  const auto names = level_block_names(m);
  std::vector<VariableBlock> blocks;
  for (const auto& name : names) blocks.push_back({name, n, BlockRole::state});
  auto ring = make_ring(std::move(blocks));

  const auto f0 = block_variables(ring, names[0]);
  const Polynomial phi_at_f0 = compose(phi, ring, f0);
  std::vector<std::size_t> base_vars(n);
  for (std::size_t i = 0; i < n; ++i) base_vars[i] = ring->var_index(names[0], i);
  std::vector<std::vector<Polynomial>> directions;
  for (const auto& name : names) directions.push_back(block_variables(ring, name));

  std::vector<Polynomial> out;
  out.push_back(phi_at_f0);
  for (unsigned k = 1; k <= m; ++k) {
    Polynomial total(ring);
    for (const auto& q : weighted_partitions(k)) {
      Polynomial term = phi_at_f0;
      Scalar weight = 1;
      for (unsigned j = 1; j <= k && !term.is_zero(); ++j) {
        for (unsigned c = 0; c < q[j - 1]; ++c) term = directional_derivative(term, base_vars, directions[j]);
        weight /= factorial(q[j - 1]);
      }
      total += term * weight;
    }
    out.push_back(std::move(total));
  }
  return out;
}

Polynomial gradient_pairing(const Polynomial& phi, const RingPtr& target, const std::string& base_block,
                            std::span<const Polynomial> vec) {
  const auto& src = *phi.ring();
  if (src.blocks().size() != 1) throw StructuralError("gradient_pairing: phi must live on a single block");
  const auto n = src.num_vars();
  if (target->block(base_block).size != n || vec.size() != n)
    throw StructuralError("gradient_pairing: sizes do not match phi");
  const auto base = block_variables(target, base_block);
  Polynomial out(target);
  for (std::size_t i = 0; i < n; ++i) {
    if (vec[i].is_zero()) continue;
    auto d = partial_derivative(phi, i);
    if (!d.is_zero()) out += compose(d, target, base) * vec[i];
  }
  return out;
}

Polynomial differential_pairing(const Polynomial& phi, const RingPtr& target, const std::string& base_block,
                                const std::string& direction_block) {
  const auto dir = block_variables(target, direction_block);
  return gradient_pairing(phi, target, base_block, dir);
}

LinearSplit extract_linear_part(const Polynomial& phi_k, unsigned k) {
  const std::string block = "f" + std::to_string(k);
  auto comps = homogeneous_components(phi_k, block);
  LinearSplit split{Polynomial(phi_k.ring()), Polynomial(phi_k.ring())};
  for (auto& [d, c] : comps) {
    if (d == 0) {
      split.remainder = std::move(c);
    } else if (d == 1) {
      split.linear = std::move(c);
    } else {
      throw InternalConsistencyError("extract_linear_part: Phi_" + std::to_string(k) + " has " + block +
                                     "-degree " + std::to_string(d));
    }
  }
  return split;
}

CylindricalResult cylindrical_invariance_check(const LiftedRepresentation& lifted, const Polynomial& theta) {
  const auto m = lifted.level();
  if (m == 0) throw StructuralError("cylindrical_invariance_check needs level m >= 1");
  const auto n = lifted.block_dim();
  CylindricalResult result;

  const auto upper_ring = lifted_ring(n, m);
  const auto upper_names = level_block_names(m);
  result.invariant_at_level_m = is_invariant(lifted.rep(), rebase(theta, upper_ring), upper_names);

  const auto lower = lift_representation(build_takiff(lifted.context().base(), m - 1), lifted.base_rep());
  const auto lower_ring = lifted_ring(n, m - 1);
  const auto lower_names = level_block_names(m - 1);
  result.invariant_at_level_m_minus_1 = is_invariant(lower.rep(), rebase(theta, lower_ring), lower_names);
  return result;
}

bool TangencyReport::all_members() const noexcept {
  return std::all_of(points.begin(), points.end(), [](const auto& p) { return p.member; });
}

TangencyReport tangency_check(const Representation& rep, const PolyMap& field, std::span<const SamplePoint> points) {
  const auto& ring = *field.ring();
  std::vector<std::string> layout;
  for (const auto& b : field.codomain()) layout.push_back(b.name);
  const auto state = state_variables(ring, layout, rep.space_dim());
  std::vector<bool> is_state(ring.num_vars(), false);
  for (auto v : state) is_state[v] = true;
  std::vector<std::size_t> params;
  for (std::size_t v = 0; v < ring.num_vars(); ++v)
    if (!is_state[v]) params.push_back(v);

  TangencyReport report;
  for (const auto& pt : points) {
    if (pt.state.size() != state.size() || pt.params.size() != params.size())
      throw StructuralError("tangency_check: sample point has wrong dimension");
    std::vector<Scalar> full(ring.num_vars());
    for (std::size_t i = 0; i < state.size(); ++i) full[state[i]] = pt.state[i];
    for (std::size_t i = 0; i < params.size(); ++i) full[params[i]] = pt.params[i];

    TangencyPoint tp;
    for (const auto& c : field.components()) tp.value.push_back(evaluate(c, full));
    const auto d = rep.algebra().dim();
    Matrix orbit(rep.space_dim(), d);
    for (std::size_t i = 0; i < d; ++i) {
      const auto col = rep.matrix(i) * std::span<const Scalar>(pt.state);
      for (std::size_t r = 0; r < col.size(); ++r) orbit(r, i) = col[r];
    }
    tp.coefficients = orbit.solve(tp.value);
    tp.member = tp.coefficients.has_value();
    report.points.push_back(std::move(tp));
  }
  return report;
}

}  // namespace takiff
