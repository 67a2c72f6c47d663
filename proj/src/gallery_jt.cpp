#include "rilab/gallery.hpp"

namespace rilab {

std::optional<DyadicNode> jt_node_of(const Rational& t) {
  check_unit_interval(t);
  auto e = dyadic_exponent(t);
  if (!e || *e == 0) return std::nullopt;
  if (*e - 1 > 62) throw DomainError("dyadic point " + to_string(t) + " is deeper than the tree universe");
  auto k = ((num(t) + 1) / 2).convert_to<std::uint64_t>();
  return DyadicNode{*e - 1, k};
}

SparseVector jt_function_eval(const Rational& t) {
  SparseVector v(IndexUniverse::dyadic(62));
  if (auto node = jt_node_of(t)) v.set(*node, 1);
  return v;
}

namespace {

void add_record(IntervalValueSummary& s, const DyadicNode& n) {
  s.records.push_back({n.point(), SparseVector::basis(IndexUniverse::dyadic(62), n)});
}

}  // namespace

IntervalValueSummary JtFunction::summary(const Rational& a, const Rational& b, const SpaceSpec&) const {
  IntervalValueSummary s;
  s.zero_attainable = true;
  bool truncated = false;
  std::vector<DyadicNode> stack{DyadicNode::root()};
  while (!stack.empty()) {
    DyadicNode n = stack.back();
    stack.pop_back();
    Rational lo = n.range_lo();
    Rational hi = n.range_hi();
    if (hi <= a || lo >= b) continue;
    if (lo >= a && hi <= b) {
      add_record(s, n);
      if (n.level < 62) {
        add_record(s, n.left());
        add_record(s, n.right());
      }
      continue;
    }
    if (a < n.point() && n.point() < b) add_record(s, n);
    if (n.level >= summary_depth_ || n.level >= 62) {
      truncated = true;
      continue;
    }
    stack.push_back(n.right());
    stack.push_back(n.left());
  }
  // An unlisted value is a unit vector, at distance 1 from the attainable 0.
  s.tail = truncated ? Rational(1) : Rational(0);
  return s;
}

IntervalValueSummary JtFunction::level_limited_summary(const Rational& a, const Rational& b,
                                                       std::uint32_t max_level) {
  IntervalValueSummary s;
  s.zero_attainable = true;
  s.tail = Rational(1);
  std::vector<DyadicNode> stack{DyadicNode::root()};
  while (!stack.empty()) {
    DyadicNode n = stack.back();
    stack.pop_back();
    if (n.range_hi() <= a || n.range_lo() >= b) continue;
    if (a < n.point() && n.point() < b) add_record(s, n);
    if (n.level < max_level) {
      stack.push_back(n.right());
      stack.push_back(n.left());
    }
  }
  return s;
}

TraceRange JtFunction::trace_range(const Functional& phi, const Rational& c, const Rational& d) const {
  if (d < c) throw DomainError("empty cell");
  if (c == d) {
    Rational x = apply_functional(phi, eval(c));
    return {x, x};
  }
  check_unit_interval(c);
  check_unit_interval(d);
  TraceRange r{0, 0};
  for (const auto& [index, w] : functional_weights(phi)) {
    universe().check(index);
    Rational pt = std::get<DyadicNode>(index).point();
    if (c <= pt && pt <= d) {
      r.lo = std::min(r.lo, w);
      r.hi = std::max(r.hi, w);
    }
  }
  return r;
}

SpecialPartition jt_special_partition(unsigned n) {
  if (n < 1 || n > 12) throw DomainError("special partition needs 1 <= N <= 12");
  Rational step = pow2(-static_cast<int>(n));
  Rational half = pow2(-2 * static_cast<int>(n) - 1);
  std::vector<Rational> t{Rational(0)};
  std::vector<bool> small;
  const unsigned count = 1U << n;
  for (unsigned k = 1; k < count; ++k) {
    Rational c = k * step;
    t.push_back(c - half);
    t.push_back(c + half);
    small.push_back(false);
    small.push_back(true);
  }
  t.emplace_back(1);
  small.push_back(false);
  return {Partition(std::move(t)), std::move(small)};
}

JtWorstCase jt_worstcase_bound(unsigned n) { return jt_worstcase_bound_at(n, n + 4); }

JtWorstCase jt_worstcase_bound_at(unsigned n, std::optional<std::uint32_t> tag_level) {
  if (n < 1 || n > 8) throw DomainError("worst-case bound needs 1 <= N <= 8");
  auto special = jt_special_partition(n);
  const Partition& p = special.partition;
  JtFunction f(62);
  std::vector<IntervalValueSummary> s;
  for (std::size_t i = 0; i < p.size(); ++i) {
    if (special.is_small[i] || !tag_level) {
      s.push_back(f.summary(p.lo(i), p.hi(i), JtSpace{}));
    } else {
      s.push_back(JtFunction::level_limited_summary(p.lo(i), p.hi(i), *tag_level));
    }
  }
  auto bounds = retag_sup(s, p, JtSpace{}, f.universe());
  Rational achieved = bounds.lower.raised(2);
  Rational bound = 4 * pow2(-static_cast<int>(n));
  return {bounds.lower, NormValue::square(bound), achieved, bound};
}

BranchWitness jt_branch_witness(const std::vector<int>& bits) {
  if (bits.empty() || bits.size() > 20) throw DomainError("branch witness needs 1..20 bits");
  BranchWitness w;
  for (std::size_t j = 0; j < bits.size(); ++j) {
    if (bits[j] != 0 && bits[j] != 1) throw DomainError("bits must be 0 or 1");
    w.chain.push_back(j == 0 ? DyadicNode::root() : w.chain.back().child(bits[j] == 1));
  }
  w.functional.chain = w.chain;
  for (const auto& node : w.chain) {
    w.points.push_back(node.point());
    w.pairings.push_back(apply_functional(w.functional, jt_function_eval(node.point())));
  }
  return w;
}

}  // namespace rilab
