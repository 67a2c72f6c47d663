#include "rilab/gallery.hpp"

#include <algorithm>

namespace rilab {

PiecewiseLinearScalar::PiecewiseLinearScalar(std::vector<std::pair<Rational, Rational>> points)
    : points_(std::move(points)) {
  if (points_.size() < 2 || points_.front().first != 0 || points_.back().first != 1) {
    throw DomainError("piecewise-linear scalar needs breakpoints from 0 to 1");
  }
  for (std::size_t i = 1; i < points_.size(); ++i) {
    if (!(points_[i - 1].first < points_[i].first)) throw DomainError("breakpoints must increase strictly");
  }
}

Rational PiecewiseLinearScalar::eval(const Rational& t) const {
  check_unit_interval(t);
  auto it = std::lower_bound(points_.begin(), points_.end(), t,
                             [](const auto& p, const Rational& x) { return p.first < x; });
  if (it->first == t) return it->second;
  const auto& [t1, v1] = *(it - 1);
  const auto& [t2, v2] = *it;
  return v1 + (v2 - v1) * (t - t1) / (t2 - t1);
}

Rational PiecewiseLinearScalar::sup_norm() const {
  Rational m = 0;
  for (const auto& [t, v] : points_) m = std::max(m, abs(v));
  return m;
}

Rational PiecewiseLinearScalar::integral() const {
  Rational total = 0;
  for (std::size_t i = 1; i < points_.size(); ++i) {
    total += (points_[i].first - points_[i - 1].first) * (points_[i].second + points_[i - 1].second) / 2;
  }
  return total;
}

bool PiecewiseLinearScalar::antisymmetric() const {
  if (points_.front().second != 0 || points_.back().second != 0) return false;
  return std::all_of(points_.begin(), points_.end(),
                     [&](const auto& p) { return eval(Rational(1 - p.first)) == -p.second; });
}

Rational PiecewiseLinearScalar::peak() const {
  Rational m = sup_norm();
  for (const auto& [t, v] : points_) {
    if (abs(v) == m) return t;
  }
  return points_.front().first;
}

PiecewiseLinearScalar PiecewiseLinearScalar::combine(const Rational& c1, const PiecewiseLinearScalar& g1,
                                                     const Rational& c2, const PiecewiseLinearScalar& g2) {
  std::vector<Rational> ts;
  for (const auto& [t, v] : g1.points_) ts.push_back(t);
  for (const auto& [t, v] : g2.points_) ts.push_back(t);
  std::sort(ts.begin(), ts.end());
  ts.erase(std::unique(ts.begin(), ts.end()), ts.end());
  std::vector<std::pair<Rational, Rational>> pts;
  for (const auto& t : ts) pts.emplace_back(t, c1 * g1.eval(t) + c2 * g2.eval(t));
  return PiecewiseLinearScalar(std::move(pts));
}

PiecewiseLinearScalar hat_g() {
  return PiecewiseLinearScalar(
      {{Rational(0), Rational(0)}, {Rational(1, 4), Rational(1)}, {Rational(1, 2), Rational(0)},
       {Rational(3, 4), Rational(-1)}, {Rational(1), Rational(0)}});
}

VectorSequence canonical_l2_basis() {
  auto universe = IndexUniverse::naturals();
  return {[universe](unsigned n) { return SparseVector::basis(universe, std::uint64_t{n}); }, universe, LpSpace{2},
          Rational(1)};
}

LinearMap identity_map(const VectorSequence& xs) {
  return {[](const SparseVector& v) { return v; }, xs.universe, xs.space};
}

SparseVector kadets_eval(const PiecewiseLinearScalar& g, const Rational& t, const CantorSetDescriptor& k,
                         const VectorSequence& xs) {
  check_unit_interval(t);
  const RemovedInterval* r = k.removed_containing(t);
  if (r == nullptr) return SparseVector(xs.universe);
  Rational u = (t - r->lo) / (r->hi - r->lo);
  return g.eval(u) * xs.at(r->stage);
}

namespace {

// Breakpoints of g plus the zeros of g between breakpoints, in [0,1].
std::vector<Rational> g_features(const PiecewiseLinearScalar& g) {
  std::vector<Rational> out;
  const auto& pts = g.points();
  for (std::size_t i = 0; i < pts.size(); ++i) {
    out.push_back(pts[i].first);
    if (i + 1 < pts.size() && pts[i].second * pts[i + 1].second < 0) {
      const auto& [t1, v1] = pts[i];
      const auto& [t2, v2] = pts[i + 1];
      out.push_back(t1 + (t2 - t1) * v1 / (v1 - v2));
    }
  }
  return out;
}

std::vector<Rational> g_zeros(const PiecewiseLinearScalar& g) {
  std::vector<Rational> out;
  for (const auto& u : g_features(g)) {
    if (g.eval(u) == 0) out.push_back(u);
  }
  return out;
}

Rational image(const RemovedInterval& r, const Rational& u) { return r.lo + (r.hi - r.lo) * u; }

bool survivors_meet_open(const CantorSetDescriptor& k, const Rational& a, const Rational& b) {
  return std::any_of(k.survivors.begin(), k.survivors.end(), [&](const auto& s) { return s.first < b && s.second > a; });
}

}  // namespace

IntervalValueSummary KadetsFunction::summary(const Rational& a, const Rational& b, const SpaceSpec&) const {
  IntervalValueSummary s;
  std::vector<Rational> tags{(a + b) / 2};
  bool zero = survivors_meet_open(k_, a, b);
  auto features = g_features(g_);
  auto zeros = g_zeros(g_);
  for (const auto& r : k_.removed) {
    if (r.hi <= a || r.lo >= b) continue;
    for (const auto& u : features) {
      Rational t = image(r, u);
      if (a < t && t < b) tags.push_back(t);
    }
    for (const auto& u : zeros) {
      Rational t = image(r, u);
      zero = zero || (a < t && t < b);
    }
  }
  std::sort(tags.begin(), tags.end());
  tags.erase(std::unique(tags.begin(), tags.end()), tags.end());
  for (const auto& t : tags) s.records.push_back({t, eval(t)});
  s.zero_attainable = zero;
  Rational reach = g_.sup_norm() * xs_.bound;
  s.tail = zero ? reach : Rational(2 * reach);
  return s;
}

std::vector<Rational> KadetsFunction::trace_breakpoints(const Rational& c, const Rational& d) const {
  std::vector<Rational> out{c, d};
  auto first = std::lower_bound(k_.removed.begin(), k_.removed.end(), c,
                                [](const RemovedInterval& r, const Rational& x) { return r.hi < x; });
  for (auto it = first; it != k_.removed.end() && !(it->lo > d); ++it) {
    const auto& r = *it;
    for (const auto& [u, v] : g_.points()) {
      Rational t = image(r, u);
      if (c <= t && t <= d) out.push_back(t);
    }
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

TraceRange KadetsFunction::trace_range(const Functional& phi, const Rational& c, const Rational& d) const {
  if (d < c) throw DomainError("empty cell");
  std::optional<TraceRange> r;
  for (const auto& t : trace_breakpoints(c, d)) {
    Rational x = apply_functional(phi, eval(t));
    if (!r) {
      r = TraceRange{x, x};
    } else {
      r->lo = std::min(r->lo, x);
      r->hi = std::max(r->hi, x);
    }
  }
  return *r;
}

Rational KadetsFunction::trace_integral(const Functional& phi) const {
  Rational g_integral = g_.integral();
  Rational total = 0;
  for (const auto& r : k_.removed) total += (r.hi - r.lo) * g_integral * apply_functional(phi, xs_.at(r.stage));
  return total;
}

KadetsLowerBound kadets_sum_lowerbound(const KadetsFunction& f, const Partition& p, const LinearMap& t) {
  const auto& k = f.set();
  const auto& g = f.g();
  Rational threshold = g.sup_norm() / 3;
  Rational u_peak = g.peak();
  auto zeros = g_zeros(g);

  // Zero tags, by preference: a point of the set, a zero of some g_I, the midpoint.
  std::vector<Rational> fallback;
  std::vector<bool> meets_set;
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Rational& a = p.lo(i);
    const Rational& b = p.hi(i);
    std::optional<Rational> tag;
    for (const auto& [s1, s2] : k.survivors) {
      Rational lo = std::max(a, s1);
      Rational hi = std::min(b, s2);
      if (lo < hi) {
        tag = (lo + hi) / 2;
        break;
      }
    }
    if (!tag) {
      for (const auto& r : k.removed) {
        if (r.hi <= a || r.lo >= b) continue;
        for (const auto& u : zeros) {
          Rational x = image(r, u);
          if (a < x && x < b) {
            tag = x;
            break;
          }
        }
        if (tag) break;
      }
    }
    fallback.push_back(tag.value_or((a + b) / 2));
    meets_set.push_back(std::any_of(k.survivors.begin(), k.survivors.end(),
                                    [&](const auto& s) { return s.first <= b && s.second >= a; }));
  }

  std::optional<KadetsLowerBound> best;
  for (unsigned m = 1; m <= k.stages; ++m) {
    std::vector<Rational> peaks;
    for (const auto& r : k.removed) {
      if (r.stage == m) peaks.push_back(image(r, u_peak));
    }
    std::sort(peaks.begin(), peaks.end());
    std::vector<Rational> tags = fallback;
    bool every = true;
    for (std::size_t i = 0; i < p.size(); ++i) {
      auto it = std::upper_bound(peaks.begin(), peaks.end(), p.lo(i));
      if (it != peaks.end() && *it < p.hi(i)) {
        tags[i] = *it;
      } else if (meets_set[i]) {
        every = false;
      }
    }
    TaggedPartition tagged(p, tags);
    NormValue achieved = norm(t.apply(riemann_sum(f, tagged)), t.space);
    KadetsLowerBound candidate{achieved, threshold, m, every, tagged};
    if (!best) {
      best = candidate;
      continue;
    }
    if (best->full_coverage) break;
    if (every || compare(achieved, best->achieved) == std::partial_ordering::greater) best = candidate;
    if (every) break;
  }
  if (!best) throw DomainError("Cantor descriptor has no stages");
  return *best;
}

IsometryCheck phi_isometry_check(const PiecewiseLinearScalar& g1, const PiecewiseLinearScalar& g2,
                                 const Rational& c1, const Rational& c2, const CantorSetDescriptor& k,
                                 const VectorSequence& xs) {
  auto g = PiecewiseLinearScalar::combine(c1, g1, c2, g2);
  std::vector<Rational> probes;
  for (int j = 0; j <= 64; ++j) probes.emplace_back(j, 64);
  for (const auto& r : k.removed) {
    const auto& pts = g.points();
    for (std::size_t i = 0; i < pts.size(); ++i) {
      probes.push_back(image(r, pts[i].first));
      if (i + 1 < pts.size()) probes.push_back(image(r, (pts[i].first + pts[i + 1].first) / 2));
    }
  }
  std::sort(probes.begin(), probes.end());
  probes.erase(std::unique(probes.begin(), probes.end()), probes.end());

  IsometryCheck out{true, NormValue::exact(0), g.sup_norm(), false, probes.size()};
  for (const auto& t : probes) {
    SparseVector lhs = kadets_eval(g, t, k, xs);
    SparseVector rhs = c1 * kadets_eval(g1, t, k, xs) + c2 * kadets_eval(g2, t, k, xs);
    out.linear = out.linear && lhs == rhs;
    NormValue n = norm(lhs, xs.space);
    if (compare(n, out.sup_norm) == std::partial_ordering::greater) out.sup_norm = n;
  }
  std::optional<NormValue> seq_sup;
  for (unsigned n = 1; n <= k.stages; ++n) {
    NormValue x = norm(xs.at(n), xs.space);
    if (!seq_sup || compare(x, *seq_sup) == std::partial_ordering::greater) seq_sup = x;
  }
  out.isometric = compare(out.sup_norm, seq_sup->scaled(out.g_sup)) == std::partial_ordering::equivalent;
  return out;
}

}  // namespace rilab
