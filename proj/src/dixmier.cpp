#include "takiff/dixmier.hpp"

#include <algorithm>
#include <set>

#include "takiff/errors.hpp"

namespace takiff {

VectorField make_vector_field(RingPtr ring, std::vector<Polynomial> components, std::size_t block_dim, unsigned m) {
  std::vector<PolyMap::CodomainBlock> codomain;
  for (const auto& name : level_block_names(m)) {
    if (ring->block(name).size != block_dim)
      throw StructuralError("vector field: block " + name + " does not have size " + std::to_string(block_dim));
    codomain.push_back({name, block_dim});
  }
  return VectorField(std::move(ring), std::move(components), std::move(codomain));
}

// ---------------------------------------------------------------- quadratic division

QuadraticSolution quadratic_base_solve(const Matrix& gram, std::span<const Polynomial> a,
                                       const std::string& state_block) {
  const auto n = gram.rows();
  if (!gram.is_square() || a.size() != n) throw StructuralError("quadratic_base_solve: field and Gram sizes differ");
  if (n == 0) return {};
  const auto& ring = a[0].ring();
  const auto x = block_variables(ring, state_block);
  if (x.size() != n) throw StructuralError("quadratic_base_solve: state block has wrong size");
  std::vector<std::size_t> xv(n);
  for (std::size_t i = 0; i < n; ++i) xv[i] = ring->var_index(state_block, i);

  const auto c = apply(gram, a);
  Polynomial constraint(ring);
  for (std::size_t j = 0; j < n; ++j) constraint += c[j] * x[j];
  if (!constraint.is_zero())
    throw RefusalError("field does not annihilate the quadratic invariant: B(a, v) != 0", constraint);

  std::vector<std::map<unsigned, Polynomial>> graded(n);
  std::set<unsigned> degrees;
  for (std::size_t i = 0; i < n; ++i) {
    graded[i] = homogeneous_components(c[i], state_block);
    for (const auto& [d, comp] : graded[i]) degrees.insert(d);
  }
  const Polynomial zero(ring);
  auto part = [&](std::size_t i, unsigned d) -> const Polynomial& {
    auto it = graded[i].find(d);
    return it == graded[i].end() ? zero : it->second;
  };

  PolyMatrix b(n, std::vector<Polynomial>(n, zero));
  for (unsigned d : degrees) {
    if (d == 0)
      for (std::size_t i = 0; i < n; ++i)
        if (!part(i, 0).is_zero())
          throw InternalConsistencyError("quadratic_base_solve: constant part survives the constraint");
    const Scalar scale = Scalar(1, d + 1);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j) {
        auto entry = partial_derivative(part(i, d), xv[j]) - partial_derivative(part(j, d), xv[i]);
        if (entry.is_zero()) continue;
        entry *= scale;
        b[j][i] -= entry;
        b[i][j] += entry;
      }
  }

  const Matrix ginv = gram.inverse();
  PolyMatrix m(n, std::vector<Polynomial>(n, zero));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k < n; ++k) {
      if (ginv(r, k) == 0) continue;
      for (std::size_t col = 0; col < n; ++col)
        if (!b[k][col].is_zero()) m[r][col] += b[k][col] * ginv(r, k);
    }
  return {std::move(b), std::move(m)};
}

namespace {

class QuadraticSolver final : public BaseSolver {
 public:
  QuadraticSolver(const Representation& rep, Matrix gram) : gram_(std::move(gram)), rep_(rep) {
    const auto n = rep.space_dim();
    const auto d = rep.algebra().dim();
    if (gram_.rows() != n || gram_.cols() != n) throw StructuralError("quadratic solver: Gram matrix has wrong size");
    if (!gram_.is_symmetric()) throw ValidationError("quadratic solver: Gram matrix is not symmetric");
    if (gram_.determinant() == 0) throw ValidationError("quadratic solver: Gram matrix is degenerate");
    for (std::size_t i = 0; i < d; ++i)
      if (!(rep.matrix(i).transpose() * gram_ + gram_ * rep.matrix(i)).is_zero())
        throw ValidationError("quadratic solver: rho(" + rep.algebra().names()[i] + ") does not preserve the form");
    if (d != n * (n - 1) / 2)
      throw ValidationError("quadratic solver: dim g = " + std::to_string(d) + " but dim so(G) = " +
                            std::to_string(n * (n - 1) / 2) + "; the solver would leave rho(g)");
    Matrix flat(n * n, d);
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) flat(r * n + c, k) = rep.matrix(k)(r, c);
    if (flat.rank() != d) throw ValidationError("quadratic solver: representation is not faithful");
    const auto ft = flat.transpose();
    projection_ = (ft * flat).inverse() * ft;
  }

  std::string name() const override { return "quadratic"; }

  std::vector<Polynomial> solve(std::span<const Polynomial> a, const std::string& state_block) const override {
    const auto sol = quadratic_base_solve(gram_, a, state_block);
    const auto n = rep_.space_dim();
    const auto d = rep_.algebra().dim();
    const auto& ring = a[0].ring();
    std::vector<Polynomial> coeffs(d, Polynomial(ring));
    for (std::size_t k = 0; k < d; ++k)
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = 0; c < n; ++c) {
          const auto& w = projection_(k, r * n + c);
          if (w != 0 && !sol.matrix[r][c].is_zero()) coeffs[k] += sol.matrix[r][c] * w;
        }
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        Polynomial back(ring);
        for (std::size_t k = 0; k < d; ++k)
          if (rep_.matrix(k)(r, c) != 0) back += coeffs[k] * rep_.matrix(k)(r, c);
        if (!(back == sol.matrix[r][c]))
          throw InternalConsistencyError("quadratic solver: division result is not in rho(g)");
      }
    return coeffs;
  }

 private:
  Matrix gram_;
  Representation rep_;
  Matrix projection_;  // left inverse of the flattened basis
};

class TrivialSolver final : public BaseSolver {
 public:
  explicit TrivialSolver(const Representation& rep) : dim_(rep.algebra().dim()) {
    for (const auto& m : rep.matrices())
      if (!m.is_zero()) throw ValidationError("trivial solver needs a representation acting by zero");
  }

  std::string name() const override { return "trivial"; }

  std::vector<Polynomial> solve(std::span<const Polynomial> a, const std::string&) const override {
    for (const auto& c : a)
      if (!c.is_zero()) throw RefusalError("only the zero field is a combination of zero Killing fields", c);
    return std::vector<Polynomial>(dim_, Polynomial(a[0].ring()));
  }

 private:
  std::size_t dim_;
};

}  // namespace

std::shared_ptr<const BaseSolver> make_quadratic_solver(const Representation& rep, const Matrix& gram) {
  return std::make_shared<QuadraticSolver>(rep, gram);
}

std::shared_ptr<const BaseSolver> make_trivial_solver(const Representation& rep) {
  return std::make_shared<TrivialSolver>(rep);
}

std::vector<Matrix> invariant_symmetric_forms(const Representation& rep) {
  const auto n = rep.space_dim();
  std::vector<std::pair<std::size_t, std::size_t>> unknowns;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) unknowns.emplace_back(i, j);
  auto unknown = [&](std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return static_cast<std::size_t>(std::find(unknowns.begin(), unknowns.end(), std::pair{i, j}) - unknowns.begin());
  };
  const auto d = rep.algebra().dim();
  Matrix eqs(d * n * n, unknowns.size());
  for (std::size_t x = 0; x < d; ++x) {
    const auto& rho = rep.matrix(x);
    for (std::size_t r = 0; r < n; ++r)
      for (std::size_t c = 0; c < n; ++c) {
        const auto row = (x * n + r) * n + c;
        for (std::size_t k = 0; k < n; ++k) {
          eqs(row, unknown(k, c)) += rho(k, r);
          eqs(row, unknown(r, k)) += rho(k, c);
        }
      }
  }
  std::vector<Matrix> forms;
  for (const auto& v : eqs.nullspace()) {
    Matrix g(n, n);
    for (std::size_t u = 0; u < unknowns.size(); ++u) {
      g(unknowns[u].first, unknowns[u].second) = v[u];
      g(unknowns[u].second, unknowns[u].first) = v[u];
    }
    forms.push_back(std::move(g));
  }
  return forms;
}

// ---------------------------------------------------------------- registry

SolverHandle SolverRegistry::register_solver(Representation rep, InvariantFamily family,
                                             std::shared_ptr<const BaseSolver> solver) {
  if (!solver) throw StructuralError("register_solver: null solver");
  if (find(rep)) throw ValidationError("a base solver is already registered for this representation");
  entries_.push_back({std::move(rep), std::move(family), std::move(solver)});
  return entries_.size() - 1;
}

const SolverEntry& SolverRegistry::get(SolverHandle handle) const {
  if (handle >= entries_.size()) throw StructuralError("unknown solver handle");
  return entries_[handle];
}

const SolverEntry* SolverRegistry::find(const Representation& rep) const {
  for (const auto& e : entries_)
    if (e.rep == rep) return &e;
  return nullptr;
}

SolverHandle register_base_solver(SolverRegistry& registry, const Representation& rep,
                                  const std::optional<Matrix>& gram) {
  const auto n = rep.space_dim();
  const bool acts_by_zero =
      std::all_of(rep.matrices().begin(), rep.matrices().end(), [](const Matrix& m) { return m.is_zero(); });
  if (acts_by_zero && !gram) {
    auto ring = make_ring({{"x", n, BlockRole::state}});
    std::vector<Polynomial> coords;
    for (std::size_t i = 0; i < n; ++i) coords.push_back(Polynomial::variable(ring, i));
    return registry.register_solver(rep, InvariantFamily(rep, std::move(coords), "coordinates"),
                                    make_trivial_solver(rep));
  }
  Matrix g;
  if (gram) {
    g = *gram;
  } else {
    auto forms = invariant_symmetric_forms(rep);
    if (forms.size() != 1)
      throw ValidationError("no built-in base solver: the representation has " + std::to_string(forms.size()) +
                            " independent invariant quadratic forms (need exactly one)");
    g = std::move(forms.front());
  }
  auto solver = make_quadratic_solver(rep, g);
  return registry.register_solver(rep, InvariantFamily(rep, {quadratic_form_polynomial(g)}, "quadratic"),
                                  std::move(solver));
}

// ---------------------------------------------------------------- annihilation

AnnihilationResult annihilates_invariants(const VectorField& field, std::span<const Polynomial> generators) {
  const auto& ring = *field.ring();
  std::vector<std::string> layout;
  for (const auto& b : field.codomain()) layout.push_back(b.name);
  const auto vars = state_variables(ring, layout, field.dimension());
  AnnihilationResult result;
  for (std::size_t g = 0; g < generators.size(); ++g) {
    Polynomial total(field.ring());
    for (std::size_t p = 0; p < vars.size(); ++p) {
      if (field.components()[p].is_zero()) continue;
      auto d = partial_derivative(generators[g], vars[p]);
      if (!d.is_zero()) total += field.components()[p] * d;
    }
    if (!total.is_zero()) {
      result.annihilates = false;
      result.generator = g;
      result.witness = std::move(total);
      return result;
    }
  }
  return result;
}

std::vector<Polynomial> lifted_generators(const LiftedRepresentation& lifted, const InvariantFamily& family,
                                          const RingPtr& ring) {
  std::vector<Polynomial> out;
  for (const auto& phi : family.generators())
    for (const auto& lift : lift_invariant(lifted, phi)) out.push_back(rebase(lift, ring));
  return out;
}

// ---------------------------------------------------------------- recursion

namespace {

using Blocks = std::vector<std::vector<Polynomial>>;

std::vector<Polynomial> rebase_all(std::span<const Polynomial> ps, const RingPtr& ring) {
  std::vector<Polynomial> out;
  out.reserve(ps.size());
  for (const auto& p : ps) out.push_back(rebase(p, ring));
  return out;
}

Blocks decompose_levels(const Representation& base_rep, const SolverEntry& base, const RingPtr& ring, const Blocks& a,
                        DecomposeStats* stats) {
  const unsigned k = static_cast<unsigned>(a.size() - 1);
  if (k == 0) {
    if (stats) ++stats->base_solves;
    return {base.solver->solve(a[0], "f0")};
  }
  // f_k becomes a parameter for the lower levels, then is restored.
  const auto top = "f" + std::to_string(k);
  const auto lower_ring = with_role(ring, top, BlockRole::parameter);
  Blocks lower_a;
  for (unsigned j = 0; j < k; ++j) lower_a.push_back(rebase_all(a[j], lower_ring));
  Blocks b;
  for (auto& br : decompose_levels(base_rep, base, lower_ring, lower_a, stats)) b.push_back(rebase_all(br, ring));

  std::vector<Polynomial> residual = a[k];
  for (unsigned r = 0; r < k; ++r) {
    const auto f = block_variables(ring, "f" + std::to_string(k - r));
    const auto term = base_rep.act(b[r], f);
    for (std::size_t p = 0; p < residual.size(); ++p) residual[p] -= term[p];
  }
  for (const auto& phi : base.family.generators()) {
    if (stats) ++stats->residual_checks;
    if (!gradient_pairing(phi, ring, "f0", residual).is_zero())
      throw InternalConsistencyError("residual identity <d phi(f_0), a_" + std::to_string(k) + " - c_" +
                                     std::to_string(k) + "> = 0 failed");
  }
  if (stats) ++stats->base_solves;
  try {
    b.push_back(base.solver->solve(residual, "f0"));
  } catch (const RefusalError& e) {
    throw RefusalError("base solver refused the level-" + std::to_string(k) + " residual: " + e.what(), e.witness());
  }
  return b;
}

}  // namespace

Decomposition takiff_decompose(const LiftedRepresentation& lifted, const SolverEntry& base, const VectorField& field,
                               DecomposeStats* stats) {
  const auto m = lifted.level();
  const auto n = lifted.block_dim();
  if (!(base.rep == lifted.base_rep()))
    throw StructuralError("takiff_decompose: base solver is registered for a different representation");
  const auto names = level_block_names(m);
  if (field.codomain().size() != names.size())
    throw StructuralError("takiff_decompose: field has " + std::to_string(field.codomain().size()) +
                          " codomain blocks, expected " + std::to_string(names.size()));
  for (std::size_t j = 0; j < names.size(); ++j)
    if (field.codomain()[j].name != names[j] || field.codomain()[j].size != n)
      throw StructuralError("takiff_decompose: codomain block " + std::to_string(j) + " must be " + names[j] + ":" +
                            std::to_string(n));

  const auto gens = lifted_generators(lifted, base.family, field.ring());
  auto ann = annihilates_invariants(field, gens);
  if (!ann.annihilates)
    throw RefusalError("field does not annihilate lifted invariant #" + std::to_string(*ann.generator), ann.witness);

  Blocks a;
  for (std::size_t j = 0; j <= m; ++j) {
    const auto blk = field.block(j);
    a.emplace_back(blk.begin(), blk.end());
  }
  return Decomposition{m, decompose_levels(lifted.base_rep(), base, field.ring(), a, stats)};
}

std::vector<Polynomial> reconstruct(const LiftedRepresentation& lifted, const Decomposition& dec, const RingPtr& ring) {
  if (dec.level != lifted.level() || dec.coefficients.size() != lifted.level() + 1u)
    throw StructuralError("reconstruct: decomposition level does not match representation");
  Blocks f;
  for (const auto& name : level_block_names(lifted.level())) f.push_back(block_variables(ring, name));
  Blocks coeffs;
  for (const auto& level : dec.coefficients) coeffs.push_back(rebase_all(level, ring));
  std::vector<Polynomial> out;
  for (auto& blk : lifted.act(coeffs, f))
    for (auto& p : blk) out.push_back(std::move(p));
  return out;
}

VerificationResult verify_decomposition(const LiftedRepresentation& lifted, const VectorField& field,
                                        const Decomposition& dec) {
  const auto rebuilt = reconstruct(lifted, dec, field.ring());
  if (rebuilt.size() != field.dimension()) throw StructuralError("verify_decomposition: field dimension mismatch");
  VerificationResult result;
  for (std::size_t p = 0; p < rebuilt.size(); ++p) {
    auto r = field.components()[p] - rebuilt[p];
    if (!r.is_zero() && result.ok) {
      result.ok = false;
      result.first_failure = p;
    }
    result.residuals.push_back(std::move(r));
  }
  return result;
}

// ---------------------------------------------------------------- transport

namespace {

std::vector<Polynomial> inverse_images(const RingPtr& ring, const std::string& block, const Matrix& theta) {
  const auto inv = theta.inverse();
  const auto x = block_variables(ring, block);
  return takiff::apply(inv, x);
}

}  // namespace

VectorField conjugate_field(const VectorField& field, const Matrix& theta) {
  if (field.codomain().size() != 1) throw StructuralError("conjugate_field: expects a single state block");
  const auto& block = field.codomain()[0].name;
  if (theta.rows() != field.dimension() || theta.cols() != field.dimension())
    throw StructuralError("conjugate_field: theta has wrong size");
  const auto images = inverse_images(field.ring(), block, theta);
  std::vector<Polynomial> pulled;
  for (const auto& c : field.components()) pulled.push_back(substitute_block(c, block, images));
  return VectorField(field.ring(), takiff::apply(theta, pulled), field.codomain());
}

Decomposition conjugate_decomposition(const Decomposition& dec, const std::string& state_block, const Matrix& theta) {
  if (dec.level != 0) throw StructuralError("conjugate_decomposition: level-0 decompositions only");
  Decomposition out{0, {}};
  for (const auto& level : dec.coefficients) {
    std::vector<Polynomial> moved;
    for (const auto& c : level) {
      const auto images = inverse_images(c.ring(), state_block, theta);
      moved.push_back(substitute_block(c, state_block, images));
    }
    out.coefficients.push_back(std::move(moved));
  }
  return out;
}

}  // namespace takiff
