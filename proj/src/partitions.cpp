#include "rilab/partitions.hpp"

#include "rilab/jt_norm.hpp"

#include <algorithm>
#include <istream>
#include <ostream>

namespace rilab {

Partition::Partition(std::vector<Rational> breakpoints) : t_(std::move(breakpoints)) {
  if (t_.size() < 2 || t_.front() != 0 || t_.back() != 1) {
    throw DomainError("partition must start at 0 and end at 1");
  }
  for (std::size_t i = 1; i < t_.size(); ++i) {
    if (!(t_[i - 1] < t_[i])) throw DomainError("partition breakpoints must increase strictly");
  }
}

Partition Partition::uniform(std::size_t n) {
  if (n == 0) throw DomainError("uniform partition needs at least one interval");
  std::vector<Rational> t;
  t.reserve(n + 1);
  for (std::size_t i = 0; i <= n; ++i) t.emplace_back(Integer(i), Integer(n));
  return Partition(std::move(t));
}

std::size_t Partition::locate(const Rational& x) const {
  check_unit_interval(x);
  auto it = std::lower_bound(t_.begin(), t_.end(), x);
  auto i = static_cast<std::size_t>(it - t_.begin());
  return i == 0 ? 0 : i - 1;
}

Rational mesh(const Partition& p) {
  Rational m = 0;
  for (std::size_t i = 0; i < p.size(); ++i) m = std::max(m, p.length(i));
  return m;
}

Partition common_refinement(const Partition& p, const Partition& q) {
  std::vector<Rational> t;
  std::set_union(p.breakpoints().begin(), p.breakpoints().end(), q.breakpoints().begin(), q.breakpoints().end(),
                 std::back_inserter(t));
  return Partition(std::move(t));
}

TaggedPartition::TaggedPartition(Partition p, std::vector<Rational> tags) : p_(std::move(p)), tags_(std::move(tags)) {
  if (tags_.size() != p_.size()) throw DomainError("one tag per interval required");
  for (std::size_t i = 0; i < tags_.size(); ++i) {
    if (!(p_.lo(i) < tags_[i] && tags_[i] < p_.hi(i))) {
      throw DomainError("tag " + to_string(tags_[i]) + " is not inside (" + to_string(p_.lo(i)) + ", " +
                        to_string(p_.hi(i)) + ")");
    }
  }
}

TaggedPartition TaggedPartition::midpoints(const Partition& p) {
  std::vector<Rational> tags;
  for (std::size_t i = 0; i < p.size(); ++i) tags.emplace_back((p.lo(i) + p.hi(i)) / 2);
  return TaggedPartition(p, std::move(tags));
}

void check_unit_interval(const Rational& t) {
  if (t < 0 || t > 1) throw DomainError("point " + to_string(t) + " outside [0,1]");
}

SparseVector ZeroFunction::eval(const Rational& t) const {
  check_unit_interval(t);
  return SparseVector(universe_);
}

IntervalValueSummary ZeroFunction::summary(const Rational&, const Rational&, const SpaceSpec&) const {
  return {{}, true, Rational(0)};
}

TraceRange ZeroFunction::trace_range(const Functional&, const Rational&, const Rational&) const { return {0, 0}; }

SparseVector ConstantFunction::eval(const Rational& t) const {
  check_unit_interval(t);
  return value_;
}

IntervalValueSummary ConstantFunction::summary(const Rational& a, const Rational& b, const SpaceSpec&) const {
  return {{{(a + b) / 2, value_}}, false, Rational(0)};
}

TraceRange ConstantFunction::trace_range(const Functional& phi, const Rational&, const Rational&) const {
  Rational x = apply_functional(phi, value_);
  return {x, x};
}

SparseVector riemann_sum(const VectorFunction& f, const TaggedPartition& p) {
  SparseVector total(f.universe());
  const Partition& part = p.partition();
  for (std::size_t i = 0; i < part.size(); ++i) total += part.length(i) * f.eval(p.tags()[i]);
  return total;
}

bool RetagBounds::upper_below(const Rational& eps) const {
  if (!tail_total) return false;
  Rational room = eps - *tail_total;
  return room > 0 && compare(lower, room) == std::partial_ordering::less;
}

bool RetagBounds::upper_at_most(const Rational& eps) const {
  if (!tail_total) return false;
  Rational room = eps - *tail_total;
  if (room < 0) return false;
  auto c = compare(lower, room);
  return c == std::partial_ordering::less || c == std::partial_ordering::equivalent;
}

std::optional<Decimal> RetagBounds::upper_decimal() const {
  if (!tail_total) return std::nullopt;
  return lower.value() + to_decimal(*tail_total);
}

namespace {

std::vector<std::vector<SparseVector>> options_of(const std::vector<IntervalValueSummary>& summaries,
                                                   const Partition& p, const IndexUniverse& universe) {
  if (summaries.size() != p.size()) throw DomainError("one summary per partition interval required");
  std::vector<std::vector<SparseVector>> out;
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    std::vector<SparseVector> opts;
    if (summaries[i].zero_attainable) opts.emplace_back(universe);
    for (const auto& r : summaries[i].records) {
      if (!(p.lo(i) < r.tag && r.tag < p.hi(i))) {
        throw DomainError("summary tag " + to_string(r.tag) + " outside its interval");
      }
      if (std::find(opts.begin(), opts.end(), r.value) == opts.end()) opts.push_back(r.value);
    }
    if (opts.empty()) throw DomainError("empty summary for interval " + std::to_string(i));
    out.push_back(std::move(opts));
  }
  return out;
}

std::optional<Rational> tail_total(const std::vector<IntervalValueSummary>& summaries, const Partition& p,
                                   const Rational& factor) {
  Rational total = 0;
  for (std::size_t i = 0; i < summaries.size(); ++i) {
    if (!summaries[i].tail) return std::nullopt;
    total += p.length(i) * *summaries[i].tail;
  }
  return factor * total;
}

// Per-coordinate extremes; the sup norm decouples across coordinates.
std::map<Index, std::pair<Rational, Rational>> coordinate_extremes(const std::vector<std::vector<SparseVector>>& opts,
                                                                   const Partition& p) {
  std::set<Index> coords;
  for (const auto& list : opts) {
    for (const auto& v : list) {
      for (const auto& [i, x] : v.entries()) coords.insert(i);
    }
  }
  std::map<Index, std::pair<Rational, Rational>> out;
  for (const auto& j : coords) {
    Rational lo = 0;
    Rational hi = 0;
    for (std::size_t i = 0; i < opts.size(); ++i) {
      Rational mn = opts[i].front().get(j);
      Rational mx = mn;
      for (const auto& v : opts[i]) {
        mn = std::min(mn, v.get(j));
        mx = std::max(mx, v.get(j));
      }
      lo += p.length(i) * mn;
      hi += p.length(i) * mx;
    }
    out.emplace(j, std::pair(lo, hi));
  }
  return out;
}

bool single_entries(const std::vector<std::vector<SparseVector>>& opts, const std::vector<IntervalValueSummary>& s) {
  for (std::size_t i = 0; i < opts.size(); ++i) {
    if (!s[i].zero_attainable) return false;
    for (const auto& v : opts[i]) {
      if (v.support_size() > 1) return false;
    }
  }
  return true;
}

std::optional<Rational> jt_selection(const std::vector<std::vector<SparseVector>>& opts, const Partition& p,
                                     bool gap) {
  std::vector<JtSelectChoice> choices;
  for (std::size_t i = 0; i < opts.size(); ++i) {
    for (const auto& v : opts[i]) {
      if (v.is_zero()) continue;
      const auto& [index, x] = *v.entries().begin();
      DyadicNode n = std::get<DyadicNode>(index);
      Rational w = p.length(i) * x;
      auto g = static_cast<std::uint32_t>(i);
      choices.push_back({n, w, g, 1});
      if (gap) choices.push_back({n, -w, g, 2});
    }
    if (!gap) continue;
    // Both tags of a pair may land on the same node with different values.
    for (const auto& a : opts[i]) {
      for (const auto& b : opts[i]) {
        if (a.is_zero() || b.is_zero() || a == b) continue;
        const auto& [ia, xa] = *a.entries().begin();
        const auto& [ib, xb] = *b.entries().begin();
        if (ia != ib) continue;
        choices.push_back({std::get<DyadicNode>(ia), p.length(i) * (xa - xb), static_cast<std::uint32_t>(i), 3});
      }
    }
  }
  return jt_select_max_square({}, choices);
}

NormValue exhaustive(const std::vector<std::vector<SparseVector>>& opts, const Partition& p, const SpaceSpec& space,
                     const IndexUniverse& universe, bool gap) {
  std::size_t combos = 1;
  for (const auto& list : opts) {
    std::size_t width = gap ? list.size() * list.size() : list.size();
    if (combos > kExhaustiveRetagCap / width) {
      throw SizingError("retagging search exceeds " + std::to_string(kExhaustiveRetagCap) + " combinations");
    }
    combos *= width;
  }
  std::vector<std::vector<SparseVector>> terms(opts.size());
  for (std::size_t i = 0; i < opts.size(); ++i) {
    for (const auto& a : opts[i]) {
      if (!gap) {
        terms[i].push_back(p.length(i) * a);
        continue;
      }
      for (const auto& b : opts[i]) terms[i].push_back(p.length(i) * (a - b));
    }
  }
  std::vector<std::size_t> digit(opts.size(), 0);
  std::optional<NormValue> best;
  for (std::size_t c = 0; c < combos; ++c) {
    SparseVector v(universe);
    for (std::size_t i = 0; i < terms.size(); ++i) v += terms[i][digit[i]];
    NormValue n = norm(v, space);
    if (!best || compare(n, *best) == std::partial_ordering::greater) best = n;
    for (std::size_t i = 0; i < digit.size(); ++i) {
      if (++digit[i] < terms[i].size()) break;
      digit[i] = 0;
    }
  }
  return *best;
}

RetagBounds retag(const std::vector<IntervalValueSummary>& summaries, const Partition& p, const SpaceSpec& space,
                  const IndexUniverse& universe, bool gap) {
  check_space(universe, space);
  auto opts = options_of(summaries, p, universe);
  auto tail = tail_total(summaries, p, gap ? Rational(2) : Rational(1));
  if (std::holds_alternative<C0Space>(space)) {
    Rational best = 0;
    for (const auto& [j, range] : coordinate_extremes(opts, p)) {
      const auto& [lo, hi] = range;
      best = std::max(best, gap ? Rational(hi - lo) : std::max(hi, Rational(-lo)));
    }
    return {NormValue::exact(best), tail};
  }
  if (std::holds_alternative<JtSpace>(space) && single_entries(opts, summaries)) {
    if (auto sq = jt_selection(opts, p, gap)) return {NormValue::square(*sq), tail};
  }
  return {exhaustive(opts, p, space, universe, gap), tail};
}

}  // namespace

RetagBounds retag_sup(const std::vector<IntervalValueSummary>& summaries, const Partition& p, const SpaceSpec& space,
                      const IndexUniverse& universe) {
  return retag(summaries, p, space, universe, false);
}

RetagBounds retag_gap(const std::vector<IntervalValueSummary>& summaries, const Partition& p, const SpaceSpec& space,
                      const IndexUniverse& universe) {
  return retag(summaries, p, space, universe, true);
}

std::vector<IntervalValueSummary> summaries(const VectorFunction& f, const Partition& p, const SpaceSpec& space) {
  std::vector<IntervalValueSummary> out;
  out.reserve(p.size());
  for (std::size_t i = 0; i < p.size(); ++i) out.push_back(f.summary(p.lo(i), p.hi(i), space));
  return out;
}

RetagBounds retag_sup(const VectorFunction& f, const Partition& p, const SpaceSpec& space) {
  return retag_sup(summaries(f, p, space), p, space, f.universe());
}

RetagBounds retag_gap(const VectorFunction& f, const Partition& p, const SpaceSpec& space) {
  return retag_gap(summaries(f, p, space), p, space, f.universe());
}

// ---------------------------------------------------------------------------

namespace {

struct PartitionLine {
  std::size_t line;
  Rational point;
  std::optional<Rational> tag;
};

std::vector<PartitionLine> read_lines(std::istream& in) {
  std::vector<PartitionLine> out;
  std::string raw;
  std::size_t line_no = 0;
  auto strip = [](std::string s) {
    auto b = s.find_first_not_of(" \t\r");
    auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
  };
  while (std::getline(in, raw)) {
    ++line_no;
    std::string line = strip(raw.substr(0, raw.find('#')));
    if (line.empty()) continue;
    auto at = line.find('@');
    std::string point = strip(line.substr(0, at));
    auto value = try_parse_rational(point);
    if (!value) throw ParseError(line_no, "bad breakpoint '" + point + "'");
    PartitionLine entry{line_no, *value, std::nullopt};
    if (at != std::string::npos) {
      std::string tag = strip(line.substr(at + 1));
      auto t = try_parse_rational(tag);
      if (!t) throw ParseError(line_no, "bad tag '" + tag + "'");
      entry.tag = *t;
    }
    out.push_back(std::move(entry));
  }
  return out;
}

template <class Build>
auto build_or_throw(const std::vector<PartitionLine>& lines, Build build) {
  try {
    return build();
  } catch (const DomainError& e) {
    throw ParseError(lines.empty() ? 0 : lines.back().line, e.what());
  }
}

}  // namespace

Partition read_partition(std::istream& in) {
  auto lines = read_lines(in);
  std::vector<Rational> t;
  for (const auto& l : lines) {
    if (l.tag) throw ParseError(l.line, "unexpected tag in an untagged partition");
    t.push_back(l.point);
  }
  return build_or_throw(lines, [&] { return Partition(t); });
}

TaggedPartition read_tagged_partition(std::istream& in) {
  auto lines = read_lines(in);
  std::vector<Rational> t;
  std::vector<Rational> tags;
  for (std::size_t i = 0; i < lines.size(); ++i) {
    bool last = i + 1 == lines.size();
    if (last && lines[i].tag) throw ParseError(lines[i].line, "the final breakpoint carries no tag");
    if (!last && !lines[i].tag) throw ParseError(lines[i].line, "missing '@ tag'");
    t.push_back(lines[i].point);
    if (lines[i].tag) tags.push_back(*lines[i].tag);
  }
  return build_or_throw(lines, [&] { return TaggedPartition(Partition(t), tags); });
}

void write_partition(std::ostream& out, const Partition& p) {
  for (const auto& t : p.breakpoints()) out << to_string(t) << '\n';
}

void write_tagged_partition(std::ostream& out, const TaggedPartition& p) {
  const auto& t = p.partition().breakpoints();
  for (std::size_t i = 0; i + 1 < t.size(); ++i) out << to_string(t[i]) << " @ " << to_string(p.tags()[i]) << '\n';
  out << to_string(t.back()) << '\n';
}

}  // namespace rilab
