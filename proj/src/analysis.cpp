#include "rilab/analysis.hpp"

#include "rilab/intervals.hpp"

#include <algorithm>

namespace rilab {

OscillationCover oscillation_cover(const ScalarTrace& trace, const Rational& threshold, unsigned resolution) {
  if (resolution > kMaxResolution) {
    throw SizingError("oscillation grid limited to resolution " + std::to_string(kMaxResolution));
  }
  const std::size_t cells = std::size_t{1} << resolution;
  const Rational width = pow2(-static_cast<int>(resolution));
  std::vector<TraceRange> ranges;
  ranges.reserve(cells);
  std::vector<bool> marked(cells);
  for (std::size_t k = 0; k < cells; ++k) {
    ranges.push_back(trace.range(k * width, (k + 1) * width));
    marked[k] = ranges.back().oscillation() > threshold;
  }
  std::vector<std::pair<Rational, Rational>> pieces;
  for (std::size_t k = 0; k < cells; ++k) {
    if (marked[k]) {
      if (!pieces.empty() && k > 0 && marked[k - 1]) {
        pieces.back().second = (k + 1) * width;
      } else {
        pieces.emplace_back(k * width, (k + 1) * width);
      }
      continue;
    }
    if (k > 0 && !marked[k - 1]) {
      const auto& l = ranges[k - 1];
      const auto& r = ranges[k];
      if (std::max(l.hi, r.hi) - std::min(l.lo, r.lo) > threshold) pieces.emplace_back(k * width, k * width);
    }
  }
  OscillationCover out{std::move(pieces), 0};
  for (const auto& [a, b] : out.intervals) out.length += b - a;
  return out;
}

DiscontinuityReport weak_discontinuity_report(const VectorFunction& f, const std::vector<Functional>& phis,
                                              unsigned resolution, unsigned levels) {
  DiscontinuityReport out;
  for (unsigned n = 1; n <= levels; ++n) out.thresholds.emplace_back(1, n);
  out.covers.resize(phis.size());
  for (std::size_t j = 0; j < phis.size(); ++j) {
    ScalarTrace trace(f, phis[j]);
    for (const auto& th : out.thresholds) out.covers[j].push_back(oscillation_cover(trace, th, resolution));
  }
  for (std::size_t k = 0; k < out.thresholds.size(); ++k) {
    std::vector<std::pair<Rational, Rational>> all;
    for (const auto& per : out.covers) all.insert(all.end(), per[k].intervals.begin(), per[k].intervals.end());
    out.union_length.push_back(IntervalSet::union_of_closed(std::move(all)).length());
  }
  return out;
}

std::string verdict_name(const IntegrabilityVerdict& v) {
  switch (v.index()) {
    case 0:
      return "integrable-witness";
    case 1:
      return "non-integrable-witness";
    default:
      return "inconclusive";
  }
}

IntegrabilityVerdict integrability_probe(const VectorFunction& f, const SpaceSpec& space, const Rational& eps,
                                         unsigned budget) {
  if (eps <= 0) throw DomainError("eps must be positive");
  check_space(f.universe(), space);

  std::string family;
  std::vector<Partition> candidates;
  if (dynamic_cast<const JtFunction*>(&f) != nullptr) {
    family = "special";
    for (unsigned n = 1; n <= std::min(budget, 12U); ++n) candidates.push_back(jt_special_partition(n).partition);
  } else if (auto* ch = dynamic_cast<const CharFamilyFunction*>(&f)) {
    family = "triadic";
    std::size_t cells = 1;
    for (unsigned k = 1; k <= std::min(budget, ch->family().base.stages); ++k) {
      cells *= 3;
      candidates.push_back(Partition::uniform(cells));
    }
  } else {
    family = "dyadic";
    for (unsigned k = 1; k <= std::min(budget, 16U); ++k) candidates.push_back(Partition::uniform(std::size_t{1} << k));
  }

  for (const auto& p : candidates) {
    auto s = summaries(f, p, space);
    Rational tail = 0;
    bool bounded = true;
    for (std::size_t i = 0; i < s.size() && bounded; ++i) {
      if (!s[i].tail) {
        bounded = false;
      } else {
        tail += p.length(i) * *s[i].tail;
      }
    }
    if (!bounded || tail >= eps) continue;
    try {
      auto b = retag_sup(s, p, space, f.universe());
      if (b.upper_below(eps)) return IntegrableWitness{p, b, SparseVector(f.universe()), family};
    } catch (const SizingError&) {
      continue;
    }
  }

  if (auto* kf = dynamic_cast<const KadetsFunction*>(&f)) {
    Rational delta = kf->g().sup_norm() / 3;
    if (eps <= delta) {
      LinearMap id{[](const SparseVector& v) { return v; }, f.universe(), space};
      NonIntegrableWitness w{delta, {}, {}};
      bool all = true;
      for (unsigned k = 1; k <= std::min(budget, 16U) && all; ++k) {
        Partition p = Partition::uniform(std::size_t{1} << k);
        auto lb = kadets_sum_lowerbound(*kf, p, id);
        all = lb.exceeds();
        w.family.push_back(p);
        w.adversarial.push_back(lb.achieved);
      }
      if (all) return w;
    }
  }
  return Inconclusive{"no certificate within " + std::to_string(candidates.size()) + " " + family +
                      " partitions for eps " + to_string(eps)};
}

}  // namespace rilab
