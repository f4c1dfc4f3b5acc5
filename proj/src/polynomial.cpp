#include "takiff/polynomial.hpp"

#include <algorithm>
#include <charconv>
#include <numeric>
#include <sstream>
#include <unordered_set>

#include "takiff/errors.hpp"

namespace takiff {

Scalar parse_scalar(std::string_view text) {
  std::string s(text);
  auto bad = [&] { return ParseError("invalid rational \"" + s + "\""); };
  if (s.empty()) throw bad();
  const auto slash = s.find('/');
  auto is_int = [](std::string_view t, bool allow_sign) {
    if (!t.empty() && allow_sign && (t[0] == '-' || t[0] == '+')) t.remove_prefix(1);
    return !t.empty() && std::all_of(t.begin(), t.end(), [](char c) { return c >= '0' && c <= '9'; });
  };
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!is_int(num, true) || !is_int(den, false)) throw bad();
  if (num[0] == '+') num.erase(0, 1);
  mpz_class n(num, 10);
  mpz_class d(den, 10);
  if (d == 0) throw ParseError("zero denominator in \"" + s + "\"");
  Scalar q(n, d);
  q.canonicalize();
  return q;
}

std::string format_scalar(const Scalar& s) { return s.get_str(10); }

std::string_view to_string(BlockRole role) { return role == BlockRole::state ? "state" : "parameter"; }

BlockRole parse_block_role(std::string_view text) {
  if (text == "state") return BlockRole::state;
  if (text == "parameter") return BlockRole::parameter;
  throw ParseError("unknown block role \"" + std::string(text) + "\"");
}

// ---------------------------------------------------------------- Ring

Ring::Ring(std::vector<VariableBlock> blocks) : blocks_(std::move(blocks)) {
  std::unordered_set<std::string> seen;
  for (const auto& b : blocks_) {
    if (b.name.empty() || b.name.find('.') != std::string::npos)
      throw StructuralError("invalid block name \"" + b.name + "\"");
    if (b.size == 0) throw StructuralError("block \"" + b.name + "\" has size 0");
    if (!seen.insert(b.name).second) throw StructuralError("duplicate block name \"" + b.name + "\"");
    offsets_.push_back(num_vars_);
    num_vars_ += b.size;
  }
}

bool Ring::has_block(std::string_view name) const noexcept {
  return std::any_of(blocks_.begin(), blocks_.end(), [&](const auto& b) { return b.name == name; });
}

const VariableBlock& Ring::block(std::string_view name) const {
  for (const auto& b : blocks_)
    if (b.name == name) return b;
  throw StructuralError("unknown block \"" + std::string(name) + "\" in ring " + describe());
}

std::size_t Ring::offset(std::string_view name) const {
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    if (blocks_[i].name == name) return offsets_[i];
  throw StructuralError("unknown block \"" + std::string(name) + "\" in ring " + describe());
}

std::size_t Ring::var_index(std::string_view name, std::size_t index) const {
  const auto& b = block(name);
  if (index >= b.size)
    throw StructuralError("variable " + std::string(name) + "." + std::to_string(index) + " out of range");
  return offset(name) + index;
}

std::string Ring::var_name(std::size_t var) const {
  for (std::size_t i = blocks_.size(); i-- > 0;)
    if (var >= offsets_[i]) return blocks_[i].name + "." + std::to_string(var - offsets_[i]);
  throw StructuralError("variable index out of range");
}

std::size_t Ring::parse_var_name(std::string_view text) const {
  const auto dot = text.rfind('.');
  if (dot == std::string_view::npos) throw ParseError("variable name without block: \"" + std::string(text) + "\"");
  std::size_t idx = 0;
  const auto digits = text.substr(dot + 1);
  auto [ptr, ec] = std::from_chars(digits.data(), digits.data() + digits.size(), idx);
  if (ec != std::errc() || ptr != digits.data() + digits.size())
    throw ParseError("bad variable index in \"" + std::string(text) + "\"");
  return var_index(text.substr(0, dot), idx);
}

bool Ring::same_variables(const Ring& other) const noexcept {
  if (blocks_.size() != other.blocks_.size()) return false;
  for (std::size_t i = 0; i < blocks_.size(); ++i)
    if (blocks_[i].name != other.blocks_[i].name || blocks_[i].size != other.blocks_[i].size) return false;
  return true;
}

std::string Ring::describe() const {
  std::string out = "[";
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) out += ", ";
    out += blocks_[i].name + ":" + std::to_string(blocks_[i].size);
  }
  return out + "]";
}

RingPtr make_ring(std::vector<VariableBlock> blocks) { return std::make_shared<const Ring>(std::move(blocks)); }

RingPtr with_role(const RingPtr& ring, std::string_view block, BlockRole role) {
  auto blocks = ring->blocks();
  bool found = false;
  for (auto& b : blocks)
    if (b.name == block) {
      b.role = role;
      found = true;
    }
  if (!found) throw StructuralError("unknown block \"" + std::string(block) + "\" in ring " + ring->describe());
  return make_ring(std::move(blocks));
}

// ---------------------------------------------------------------- Polynomial

Polynomial::Polynomial(RingPtr ring) : ring_(std::move(ring)) {
  if (!ring_) throw StructuralError("polynomial without ring");
}

Polynomial Polynomial::constant(RingPtr ring, const Scalar& c) {
  Polynomial p(std::move(ring));
  p.add_term(Monomial(p.ring_->num_vars(), 0), c);
  return p;
}

Polynomial Polynomial::variable(RingPtr ring, std::string_view block, std::size_t index) {
  const auto var = ring->var_index(block, index);
  return variable(std::move(ring), var);
}

Polynomial Polynomial::variable(RingPtr ring, std::size_t var) {
  if (var >= ring->num_vars()) throw StructuralError("variable index out of range");
  Polynomial p(std::move(ring));
  Monomial m(p.ring_->num_vars(), 0);
  m[var] = 1;
  p.add_term(m, 1);
  return p;
}

bool Polynomial::is_constant() const noexcept {
  return terms_.empty() ||
         (terms_.size() == 1 &&
          std::all_of(terms_.begin()->first.begin(), terms_.begin()->first.end(), [](auto e) { return e == 0; }));
}

Scalar Polynomial::constant_term() const {
  auto it = terms_.find(Monomial(ring_->num_vars(), 0));
  return it == terms_.end() ? Scalar(0) : it->second;
}

void Polynomial::add_term(const Monomial& m, const Scalar& c) {
  if (m.size() != ring_->num_vars()) throw StructuralError("monomial length does not match ring");
  if (c == 0) return;
  auto [it, inserted] = terms_.try_emplace(m, c);
  if (!inserted) {
    it->second += c;
    if (it->second == 0) terms_.erase(it);
  }
}

unsigned Polynomial::total_degree() const {
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, std::accumulate(m.begin(), m.end(), 0u));
  return d;
}

unsigned Polynomial::block_degree(std::string_view block) const {
  const auto off = ring_->offset(block);
  const auto size = ring_->block(block).size;
  unsigned d = 0;
  for (const auto& [m, c] : terms_) d = std::max(d, std::accumulate(m.begin() + off, m.begin() + off + size, 0u));
  return d;
}

bool Polynomial::depends_on_block(std::string_view block) const { return !is_zero() && block_degree(block) > 0; }

void Polynomial::require_same_ring(const Polynomial& other, const char* op) const {
  if (ring_ != other.ring_ && !ring_->same_variables(*other.ring_))
    throw StructuralError(std::string("ring mismatch in ") + op + ": " + ring_->describe() + " vs " +
                          other.ring_->describe());
}

Polynomial& Polynomial::operator+=(const Polynomial& other) {
  require_same_ring(other, "add");
  for (const auto& [m, c] : other.terms_) add_term(m, c);
  return *this;
}

Polynomial& Polynomial::operator-=(const Polynomial& other) {
  require_same_ring(other, "sub");
  for (const auto& [m, c] : other.terms_) add_term(m, -c);
  return *this;
}

Polynomial& Polynomial::operator*=(const Scalar& c) {
  if (c == 0) {
    terms_.clear();
    return *this;
  }
  for (auto& [m, coeff] : terms_) coeff *= c;
  return *this;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  a.require_same_ring(b, "mul");
  Polynomial out(a.ring_);
  Monomial m(a.ring_->num_vars());
  for (const auto& [ma, ca] : a.terms_)
    for (const auto& [mb, cb] : b.terms_) {
      for (std::size_t i = 0; i < m.size(); ++i) m[i] = ma[i] + mb[i];
      out.add_term(m, ca * cb);
    }
  return out;
}

Polynomial Polynomial::operator-() const {
  Polynomial out(*this);
  for (auto& [m, c] : out.terms_) c = -c;
  return out;
}

bool Polynomial::operator==(const Polynomial& other) const {
  require_same_ring(other, "compare");
  return terms_ == other.terms_;
}

std::string Polynomial::to_string() const {
  if (terms_.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  // Graded lexicographic: higher total degree first, then larger exponents
  // on earlier variables.
  std::vector<const Terms::value_type*> order;
  for (const auto& t : terms_) order.push_back(&t);
  std::sort(order.begin(), order.end(), [](auto* x, auto* y) {
    const auto dx = std::accumulate(x->first.begin(), x->first.end(), 0u);
    const auto dy = std::accumulate(y->first.begin(), y->first.end(), 0u);
    if (dx != dy) return dx > dy;
    return x->first > y->first;
  });
  for (const auto* t : order) {
    const auto& [m, c] = *t;
    const bool unit_monomial = std::all_of(m.begin(), m.end(), [](auto e) { return e == 0; });
    Scalar mag = abs(c);
    if (first) {
      if (c < 0) os << "-";
    } else {
      os << (c < 0 ? " - " : " + ");
    }
    first = false;
    bool need_star = false;
    if (mag != 1 || unit_monomial) {
      os << format_scalar(mag);
      need_star = true;
    }
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (m[v] == 0) continue;
      if (need_star) os << "*";
      os << ring_->var_name(v);
      if (m[v] > 1) os << "^" << m[v];
      need_star = true;
    }
  }
  return os.str();
}

Polynomial poly_arith(const Polynomial& p, const Polynomial& q, ArithOp op) {
  switch (op) {
    case ArithOp::add:
      return p + q;
    case ArithOp::sub:
      return p - q;
    case ArithOp::mul:
      return p * q;
  }
  throw StructuralError("unknown arithmetic op");
}

Polynomial poly_scale(const Polynomial& p, const Scalar& c) { return p * c; }

// ---------------------------------------------------------------- calculus

Polynomial partial_derivative(const Polynomial& p, std::size_t var) {
  if (var >= p.ring()->num_vars()) throw StructuralError("derivative variable out of range");
  Polynomial out(p.ring());
  for (const auto& [m, c] : p.terms()) {
    if (m[var] == 0) continue;
    Monomial dm = m;
    dm[var] -= 1;
    out.add_term(dm, c * m[var]);
  }
  return out;
}

Polynomial partial_derivative(const Polynomial& p, std::string_view block, std::size_t index) {
  return partial_derivative(p, p.ring()->var_index(block, index));
}

std::map<unsigned, Polynomial> homogeneous_components(const Polynomial& p, std::string_view block) {
  const auto off = p.ring()->offset(block);
  const auto size = p.ring()->block(block).size;
  std::map<unsigned, Polynomial> out;
  for (const auto& [m, c] : p.terms()) {
    const unsigned d = std::accumulate(m.begin() + off, m.begin() + off + size, 0u);
    out.try_emplace(d, p.ring()).first->second.add_term(m, c);
  }
  return out;
}

Polynomial rebase(const Polynomial& p, const RingPtr& target) {
  const auto& src = *p.ring();
  std::vector<std::size_t> map(src.num_vars());
  std::vector<bool> present(src.num_vars(), false);
  for (const auto& b : src.blocks()) {
    if (!target->has_block(b.name)) continue;
    const auto& tb = target->block(b.name);
    if (tb.size != b.size)
      throw StructuralError("block \"" + b.name + "\" changes size between " + src.describe() + " and " +
                            target->describe());
    for (std::size_t i = 0; i < b.size; ++i) {
      map[src.offset(b.name) + i] = target->offset(b.name) + i;
      present[src.offset(b.name) + i] = true;
    }
  }
  Polynomial out(target);
  Monomial tm(target->num_vars());
  for (const auto& [m, c] : p.terms()) {
    std::fill(tm.begin(), tm.end(), 0);
    for (std::size_t v = 0; v < m.size(); ++v) {
      if (m[v] == 0) continue;
      if (!present[v])
        throw StructuralError("variable " + src.var_name(v) + " is not in target ring " + target->describe());
      tm[map[v]] = m[v];
    }
    out.add_term(tm, c);
  }
  return out;
}

namespace {

// images[v]^e with memoization, shared by compose and substitute_curve.
template <class Value, class Mul>
class PowerCache {
 public:
  PowerCache(std::span<const Value> base, Mul mul) : base_(base), mul_(mul), powers_(base.size()) {}

  const Value& get(std::size_t v, unsigned e) {
    auto& list = powers_[v];
    if (list.empty()) list.push_back(base_[v]);
    while (list.size() < e) list.push_back(mul_(list.back(), base_[v]));
    return list[e - 1];
  }

 private:
  std::span<const Value> base_;
  Mul mul_;
  std::vector<std::vector<Value>> powers_;
};

}  // namespace

Polynomial compose(const Polynomial& p, const RingPtr& target, std::span<const Polynomial> images) {
  if (images.size() != p.ring()->num_vars())
    throw StructuralError("compose: need one image per variable of " + p.ring()->describe());
  for (const auto& img : images)
    if (!img.ring()->same_variables(*target)) throw StructuralError("compose: image not over target ring");
  auto mul = [](const Polynomial& a, const Polynomial& b) { return a * b; };
  PowerCache<Polynomial, decltype(mul)> cache(images, mul);
  Polynomial out(target);
  for (const auto& [m, c] : p.terms()) {
    Polynomial term = Polynomial::constant(target, c);
    for (std::size_t v = 0; v < m.size() && !term.is_zero(); ++v)
      if (m[v] > 0) term = term * cache.get(v, m[v]);
    out += term;
  }
  return out;
}

std::vector<Polynomial> block_variables(const RingPtr& ring, std::string_view block) {
  const auto& b = ring->block(block);
  std::vector<Polynomial> out;
  out.reserve(b.size);
  for (std::size_t i = 0; i < b.size; ++i) out.push_back(Polynomial::variable(ring, block, i));
  return out;
}

Polynomial substitute_block(const Polynomial& p, std::string_view block, std::span<const Polynomial> images) {
  const auto& ring = p.ring();
  const auto& b = ring->block(block);
  if (images.size() != b.size) throw StructuralError("substitute_block: image count does not match block size");
  std::vector<Polynomial> all;
  all.reserve(ring->num_vars());
  for (std::size_t v = 0; v < ring->num_vars(); ++v) all.push_back(Polynomial::variable(ring, v));
  const auto off = ring->offset(block);
  for (std::size_t i = 0; i < b.size; ++i) all[off + i] = images[i];
  return compose(p, ring, all);
}

Polynomial evaluate_block(const Polynomial& p, std::string_view block, std::span<const Scalar> values) {
  const auto off = p.ring()->offset(block);
  const auto size = p.ring()->block(block).size;
  if (values.size() != size) throw StructuralError("evaluate_block: value count does not match block size");
  Polynomial out(p.ring());
  for (const auto& [m, c] : p.terms()) {
    Scalar coeff = c;
    Monomial rest = m;
    for (std::size_t i = 0; i < size; ++i) {
      for (unsigned e = 0; e < m[off + i]; ++e) coeff *= values[i];
      rest[off + i] = 0;
    }
    out.add_term(rest, coeff);
  }
  return out;
}

Scalar evaluate(const Polynomial& p, std::span<const Scalar> point) {
  if (point.size() != p.ring()->num_vars()) throw StructuralError("evaluate: point has wrong dimension");
  Scalar total = 0;
  for (const auto& [m, c] : p.terms()) {
    Scalar term = c;
    for (std::size_t v = 0; v < m.size(); ++v)
      for (unsigned e = 0; e < m[v]; ++e) term *= point[v];
    total += term;
  }
  return total;
}

// ---------------------------------------------------------------- curves

namespace {

// Polynomial coefficients of 1, t, ..., t^m; products drop t^{m+1} and above.
using Series = std::vector<Polynomial>;

Series series_mul(const Series& a, const Series& b) {
  Series out(a.size(), Polynomial(a.front().ring()));
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (a[i].is_zero()) continue;
    for (std::size_t j = 0; i + j < a.size(); ++j)
      if (!b[j].is_zero()) out[i + j] += a[i] * b[j];
  }
  return out;
}

}  // namespace

std::vector<Polynomial> substitute_curve(const Polynomial& phi, std::span<const std::string> block_names,
                                         unsigned truncation) {
  const auto& src = *phi.ring();
  if (src.blocks().size() != 1) throw StructuralError("substitute_curve: phi must live on a single block");
  if (block_names.size() != truncation + 1)
    throw StructuralError("substitute_curve: need m+1 = " + std::to_string(truncation + 1) + " block names");
  const std::size_t n = src.num_vars();
  std::vector<VariableBlock> blocks;
  for (const auto& name : block_names) blocks.push_back({name, n, BlockRole::state});
  auto target = make_ring(std::move(blocks));

  const std::size_t len = truncation + 1;
  std::vector<Series> curve(n, Series(len, Polynomial(target)));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t r = 0; r < len; ++r) curve[i][r] = Polynomial::variable(target, block_names[r], i);

  PowerCache<Series, Series (*)(const Series&, const Series&)> cache(curve, &series_mul);
  Series total(len, Polynomial(target));
  for (const auto& [m, c] : phi.terms()) {
    Series term(len, Polynomial(target));
    term[0] = Polynomial::constant(target, c);
    for (std::size_t v = 0; v < n; ++v)
      if (m[v] > 0) term = series_mul(term, cache.get(v, m[v]));
    for (std::size_t k = 0; k < len; ++k) total[k] += term[k];
  }
  return total;
}

// ---------------------------------------------------------------- PolyMap

PolyMap::PolyMap(RingPtr ring, std::vector<Polynomial> components, std::vector<CodomainBlock> codomain)
    : ring_(std::move(ring)), components_(std::move(components)), codomain_(std::move(codomain)) {
  std::size_t total = 0;
  for (const auto& b : codomain_) total += b.size;
  if (total != components_.size())
    throw StructuralError("PolyMap: " + std::to_string(components_.size()) + " components for codomain of dimension " +
                          std::to_string(total));
  for (const auto& c : components_)
    if (!c.ring()->same_variables(*ring_)) throw StructuralError("PolyMap: component over a different ring");
}

std::span<const Polynomial> PolyMap::block(std::size_t b) const {
  if (b >= codomain_.size()) throw StructuralError("PolyMap: codomain block out of range");
  std::size_t off = 0;
  for (std::size_t i = 0; i < b; ++i) off += codomain_[i].size;
  return std::span<const Polynomial>(components_).subspan(off, codomain_[b].size);
}

bool PolyMap::operator==(const PolyMap& other) const {
  return ring_->same_variables(*other.ring_) && codomain_ == other.codomain_ && components_ == other.components_;
}

}  // namespace takiff
