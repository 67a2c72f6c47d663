#include "rilab/spaces.hpp"

#include "rilab/jt_norm.hpp"

#include <algorithm>
#include <charconv>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>

namespace rilab {

namespace {

constexpr std::uint32_t kMaxTreeLevel = 62;

template <class... Ts>
struct overloaded : Ts... {
  using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

Decimal root_decimal(const Rational& r, const Rational& p) {
  if (r == 0) return Decimal(0);
  Decimal inv = to_decimal(Rational(1) / p);
  return boost::multiprecision::exp(boost::multiprecision::log(to_decimal(r)) * inv);
}

std::optional<unsigned> integral(const Rational& p) {
  if (den(p) != 1 || p < 1) return std::nullopt;
  return num(p).convert_to<unsigned>();
}

std::string trim(std::string_view s) {
  auto b = s.find_first_not_of(" \t\r");
  if (b == std::string_view::npos) return {};
  auto e = s.find_last_not_of(" \t\r");
  return std::string(s.substr(b, e - b + 1));
}

}  // namespace

bool DyadicNode::valid() const {
  if (level > kMaxTreeLevel) return false;
  return pos >= 1 && pos <= (std::uint64_t{1} << level);
}

bool DyadicNode::is_ancestor_or_self_of(const DyadicNode& d) const {
  if (d.level < level) return false;
  return ((d.pos - 1) >> (d.level - level)) + 1 == pos;
}

Rational DyadicNode::point() const { return Rational(Integer(2 * pos - 1)) * pow2(-static_cast<int>(level) - 1); }
Rational DyadicNode::range_lo() const { return Rational(Integer(pos - 1)) * pow2(-static_cast<int>(level)); }
Rational DyadicNode::range_hi() const { return Rational(Integer(pos)) * pow2(-static_cast<int>(level)); }

std::string to_string(const DyadicNode& node) {
  return std::to_string(node.level) + ":" + std::to_string(node.pos);
}

std::string to_string(const Index& index) {
  return std::visit(overloaded{[](std::uint64_t n) { return std::to_string(n); },
                               [](const DyadicNode& d) { return to_string(d); }},
                    index);
}

IndexUniverse IndexUniverse::labels(std::uint64_t count) {
  if (count < 1) throw DomainError("label universe needs at least one label");
  return IndexUniverse(Kind::FiniteLabels, count);
}

IndexUniverse IndexUniverse::dyadic(std::uint32_t max_level) {
  if (max_level > kMaxTreeLevel) throw DomainError("dyadic universe deeper than 62 levels");
  return IndexUniverse(Kind::DyadicTree, max_level);
}

bool IndexUniverse::contains(const Index& index) const {
  switch (kind_) {
    case Kind::Naturals:
      return std::holds_alternative<std::uint64_t>(index);
    case Kind::FiniteLabels:
      return std::holds_alternative<std::uint64_t>(index) && std::get<std::uint64_t>(index) < param_;
    case Kind::DyadicTree: {
      auto* node = std::get_if<DyadicNode>(&index);
      return node != nullptr && node->valid() && node->level <= param_;
    }
  }
  return false;
}

void IndexUniverse::check(const Index& index) const {
  if (!contains(index)) {
    throw UniverseError("index " + to_string(index) + " is not in universe " + rilab::to_string(*this));
  }
}

std::string to_string(const IndexUniverse& universe) {
  switch (universe.kind()) {
    case IndexUniverse::Kind::Naturals:
      return "naturals 0";
    case IndexUniverse::Kind::FiniteLabels:
      return "labels " + std::to_string(universe.param());
    case IndexUniverse::Kind::DyadicTree:
      return "dyadic " + std::to_string(universe.param());
  }
  return "?";
}

// ---------------------------------------------------------------------------

SparseVector SparseVector::basis(IndexUniverse universe, const Index& index, const Rational& value) {
  SparseVector v(universe);
  v.set(index, value);
  return v;
}

Rational SparseVector::get(const Index& index) const {
  auto it = entries_.find(index);
  return it == entries_.end() ? Rational(0) : it->second;
}

void SparseVector::set(const Index& index, const Rational& value) {
  universe_.check(index);
  if (value == 0) {
    entries_.erase(index);
  } else {
    entries_[index] = value;
  }
}

void SparseVector::add(const Index& index, const Rational& value) {
  if (value == 0) return;
  universe_.check(index);
  auto [it, inserted] = entries_.try_emplace(index, value);
  if (!inserted) {
    it->second += value;
    if (it->second == 0) entries_.erase(it);
  }
}

void SparseVector::check_compatible(const SparseVector& other) {
  if (universe_.kind() != other.universe_.kind()) {
    throw UniverseError("vectors over " + to_string(universe_) + " and " + to_string(other.universe_));
  }
  if (universe_.kind() == IndexUniverse::Kind::DyadicTree && other.universe_.param() > universe_.param()) {
    universe_ = other.universe_;
  }
  if (universe_.kind() == IndexUniverse::Kind::FiniteLabels && other.universe_.param() > universe_.param()) {
    universe_ = other.universe_;
  }
}

SparseVector& SparseVector::operator+=(const SparseVector& other) {
  check_compatible(other);
  for (const auto& [i, x] : other.entries_) add(i, x);
  return *this;
}

SparseVector& SparseVector::operator-=(const SparseVector& other) {
  check_compatible(other);
  for (const auto& [i, x] : other.entries_) add(i, -x);
  return *this;
}

SparseVector& SparseVector::operator*=(const Rational& c) {
  if (c == 0) {
    entries_.clear();
    return *this;
  }
  for (auto& [i, x] : entries_) x *= c;
  return *this;
}

// ---------------------------------------------------------------------------

std::string space_name(const SpaceSpec& space) {
  return std::visit(overloaded{[](const C0Space&) { return std::string("c0"); },
                               [](const LpSpace& s) { return "l" + to_string(s.p); },
                               [](const L1SumSpace&) { return std::string("l1-sum"); },
                               [](const JtSpace&) { return std::string("JT"); }},
                    space);
}

NormValue NormValue::exact(const Rational& r) {
  if (r < 0) throw DomainError("negative norm certificate");
  return NormValue(to_decimal(r), ExactRational{r});
}

NormValue NormValue::square(const Rational& sq) {
  if (sq < 0) throw DomainError("negative norm certificate");
  return NormValue(boost::multiprecision::sqrt(to_decimal(sq)), ExactSquare{sq});
}

NormValue NormValue::power(const Rational& r, const Rational& p) {
  if (r < 0) throw DomainError("negative norm certificate");
  if (p < 1) throw DomainError("exponent below 1");
  return NormValue(root_decimal(r, p), ExactPowerP{r, p});
}

std::optional<unsigned> NormValue::exact_power() const {
  return std::visit(overloaded{[](const ExactRational&) -> std::optional<unsigned> { return 1U; },
                               [](const ExactSquare&) -> std::optional<unsigned> { return 2U; },
                               [](const ExactPowerP& c) { return integral(c.p); }},
                    certificate_);
}

Rational NormValue::raised(unsigned m) const {
  auto own = exact_power();
  if (!own || m % *own != 0) throw DomainError("norm power not representable exactly");
  unsigned k = m / *own;
  return std::visit([&](const auto& c) { return pow(c.value, k); }, certificate_);
}

bool NormValue::is_zero() const {
  return std::visit([](const auto& c) { return c.value == 0; }, certificate_);
}

NormValue NormValue::scaled(const Rational& c) const {
  Rational a = abs(c);
  return std::visit(
      overloaded{[&](const ExactRational& x) { return exact(a * x.value); },
                 [&](const ExactSquare& x) { return square(a * a * x.value); },
                 [&](const ExactPowerP& x) {
                   if (auto k = integral(x.p)) return power(pow(a, *k) * x.value, x.p);
                   auto ap = exact_root(pow(a, num(x.p).convert_to<unsigned>()), den(x.p).convert_to<unsigned>());
                   if (!ap) throw DomainError("scaled power certificate not rational");
                   return power(*ap * x.value, x.p);
                 }},
      certificate_);
}

std::string NormValue::certificate_string() const {
  return std::visit(overloaded{[](const ExactRational& c) { return "exact:" + to_string(c.value); },
                               [](const ExactSquare& c) { return "square:" + to_string(c.value); },
                               [](const ExactPowerP& c) {
                                 return "power:" + to_string(c.value) + "^(1/" + to_string(c.p) + ")";
                               }},
                    certificate_);
}

std::partial_ordering compare(const NormValue& a, const NormValue& b) {
  auto pa = a.exact_power();
  auto pb = b.exact_power();
  if (pa && pb) {
    unsigned m = std::lcm(*pa, *pb);
    return cmp(a.raised(m), b.raised(m));
  }
  Decimal diff = a.value() - b.value();
  if (boost::multiprecision::abs(diff) <= kDecimalTolerance) return std::partial_ordering::equivalent;
  return diff < 0 ? std::partial_ordering::less : std::partial_ordering::greater;
}

std::partial_ordering compare(const NormValue& a, const Rational& r) {
  if (r < 0) return std::partial_ordering::greater;
  if (auto pa = a.exact_power()) return cmp(a.raised(*pa), pow(r, *pa));
  return compare(a, NormValue::exact(r));
}

void check_space(const IndexUniverse& universe, const SpaceSpec& space) {
  if (std::holds_alternative<JtSpace>(space) && universe.kind() != IndexUniverse::Kind::DyadicTree) {
    throw UniverseError("JT norm needs a dyadic tree universe, got " + to_string(universe));
  }
  if (auto* lp = std::get_if<LpSpace>(&space); lp && lp->p < 1) {
    throw DomainError("lp exponent must be >= 1");
  }
}

NormValue norm(const SparseVector& v, const SpaceSpec& space) {
  check_space(v.universe(), space);
  return std::visit(
      overloaded{
          [&](const C0Space&) {
            Rational m = 0;
            for (const auto& [i, x] : v.entries()) m = std::max(m, abs(x));
            return NormValue::exact(m);
          },
          [&](const LpSpace& s) {
            Rational total = 0;
            if (auto k = integral(s.p)) {
              for (const auto& [i, x] : v.entries()) total += pow(abs(x), *k);
              if (*k == 1) return NormValue::exact(total);
              if (*k == 2) return NormValue::square(total);
              return NormValue::power(total, s.p);
            }
            unsigned a = num(s.p).convert_to<unsigned>();
            unsigned b = den(s.p).convert_to<unsigned>();
            for (const auto& [i, x] : v.entries()) {
              auto term = exact_root(pow(abs(x), a), b);
              if (!term) {
                throw DomainError("l" + to_string(s.p) + " norm of this vector has no rational p-th power");
              }
              total += *term;
            }
            return NormValue::power(total, s.p);
          },
          [&](const L1SumSpace& s) {
            std::map<Index, Rational> blocks;
            for (const auto& [i, x] : v.entries()) {
              Rational& b = blocks[s.label(i)];
              b = s.inner == BlockNorm::Sup ? std::max(b, abs(x)) : b + abs(x);
            }
            Rational total = 0;
            for (const auto& [label, b] : blocks) total += b;
            return NormValue::exact(total);
          },
          [&](const JtSpace&) { return jt_norm_dp(v); }},
      space);
}

// ---------------------------------------------------------------------------

std::map<Index, Rational> functional_weights(const Functional& phi) {
  return std::visit(overloaded{[](const CoordinateFunctional& c) { return std::map<Index, Rational>{{c.index, 1}}; },
                               [](const BranchFunctional& b) {
                                 if (b.chain.empty()) throw DomainError("empty branch functional");
                                 std::map<Index, Rational> w;
                                 for (std::size_t j = 0; j < b.chain.size(); ++j) {
                                   if (j > 0 && !b.chain[j].is_successor_of(b.chain[j - 1])) {
                                     throw DomainError("branch functional: " + to_string(b.chain[j]) +
                                                       " does not follow " + to_string(b.chain[j - 1]));
                                   }
                                   w[b.chain[j]] = 1;
                                 }
                                 return w;
                               },
                               [](const CombinationFunctional& c) {
                                 std::map<Index, Rational> w;
                                 for (const auto& [i, x] : c.weights) {
                                   if (x != 0) w[i] = x;
                                 }
                                 return w;
                               }},
                    phi);
}

Rational apply_functional(const Functional& phi, const SparseVector& v) {
  Rational total = 0;
  for (const auto& [i, w] : functional_weights(phi)) {
    v.universe().check(i);
    total += w * v.get(i);
  }
  return total;
}

SparseVector project(const SparseVector& v, const std::set<Index>& keep) {
  SparseVector out(v.universe());
  for (const auto& [i, x] : v.entries()) {
    if (keep.count(i) != 0) out.set(i, x);
  }
  return out;
}

L1SumInequality l1sum_inequality_check(const SparseVector& x, const SparseVector& y, const std::set<Index>& a,
                                       const std::set<Index>& b, const L1SumSpace& space) {
  for (const auto& label : a) {
    if (b.count(label) != 0) throw DomainError("block sets overlap at " + to_string(label));
  }
  auto value = [&](const SparseVector& v) { return std::get<ExactRational>(norm(v, space).certificate()).value; };
  auto block_sum = [&](const SparseVector& v, const std::set<Index>& labels) {
    SparseVector restricted(v.universe());
    for (const auto& [i, c] : v.entries()) {
      if (labels.count(space.label(i)) != 0) restricted.set(i, c);
    }
    return value(restricted);
  };
  L1SumInequality out;
  out.lhs = std::max(value(x + y), value(x - y));
  out.rhs = block_sum(x, a) + block_sum(y, b);
  return out;
}

// ---------------------------------------------------------------------------

Index parse_index(const IndexUniverse& universe, std::string_view text) {
  auto parse_u64 = [&](std::string_view s) -> std::optional<std::uint64_t> {
    std::uint64_t value = 0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), value);
    if (ec != std::errc() || ptr != s.data() + s.size()) return std::nullopt;
    return value;
  };
  Index index;
  if (universe.kind() == IndexUniverse::Kind::DyadicTree) {
    auto colon = text.find(':');
    if (colon == std::string_view::npos) throw DomainError("tree index must be n:k, got '" + std::string(text) + "'");
    auto n = parse_u64(text.substr(0, colon));
    auto k = parse_u64(text.substr(colon + 1));
    if (!n || !k || *n > kMaxTreeLevel) throw DomainError("bad tree index '" + std::string(text) + "'");
    index = DyadicNode{static_cast<std::uint32_t>(*n), *k};
  } else {
    auto n = parse_u64(text);
    if (!n) throw DomainError("bad index '" + std::string(text) + "'");
    index = *n;
  }
  universe.check(index);
  return index;
}

SparseVector read_vector(std::istream& in, const std::optional<IndexUniverse>& fallback) {
  std::string raw;
  std::size_t line_no = 0;
  std::optional<SparseVector> v;
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = trim(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    std::istringstream fields(line);
    std::string a, b, extra;
    fields >> a >> b;
    if (!v && a != "universe" && fallback) v.emplace(*fallback);
    if (!v) {
      std::string param;
      if (a != "universe") throw ParseError(line_no, "expected 'universe <kind> <param>'");
      fields >> param;
      try {
        if (b == "naturals") {
          v.emplace(IndexUniverse::naturals());
        } else if (b == "labels") {
          v.emplace(IndexUniverse::labels(std::stoull(param)));
        } else if (b == "dyadic") {
          v.emplace(IndexUniverse::dyadic(static_cast<std::uint32_t>(std::stoul(param))));
        } else {
          throw ParseError(line_no, "unknown universe kind '" + b + "'");
        }
      } catch (const std::logic_error&) {
        throw ParseError(line_no, "bad universe parameter '" + param + "'");
      } catch (const DomainError& e) {
        throw ParseError(line_no, e.what());
      }
      continue;
    }
    if (b.empty() || (fields >> extra)) throw ParseError(line_no, "expected '<index> <p/q>', got '" + line + "'");
    auto value = try_parse_rational(b);
    if (!value) throw ParseError(line_no, "bad rational '" + b + "'");
    try {
      Index index = parse_index(v->universe(), a);
      if (v->entries().count(index) != 0) throw ParseError(line_no, "duplicate index " + a);
      v->set(index, *value);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!v && fallback) v.emplace(*fallback);
  if (!v) throw ParseError(line_no, "missing universe header");
  return *v;
}

void write_vector(std::ostream& out, const SparseVector& v) {
  out << "universe " << to_string(v.universe()) << '\n';
  for (const auto& [i, x] : v.entries()) out << to_string(i) << ' ' << to_string(x) << '\n';
}

}  // namespace rilab
