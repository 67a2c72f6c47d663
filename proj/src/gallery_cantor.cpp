#include "rilab/gallery.hpp"

#include <algorithm>

namespace rilab {

namespace {

using Span = std::pair<Rational, Rational>;

template <class RemovedLength>
CantorSetDescriptor build_cantor(std::string kind, unsigned stages, RemovedLength removed_length) {
  if (stages < 1 || stages > 12) throw DomainError("Cantor construction needs 1..12 stages");
  CantorSetDescriptor d;
  d.kind = std::move(kind);
  d.stages = stages;
  d.remaining_measure.emplace_back(1);
  std::vector<Span> survivors{{Rational(0), Rational(1)}};
  for (unsigned n = 1; n <= stages; ++n) {
    std::vector<Span> next;
    next.reserve(2 * survivors.size());
    Rational removed_total = 0;
    for (const auto& [a, b] : survivors) {
      Rational len = removed_length(n, b - a);
      if (!(len > 0 && len < b - a)) throw DomainError("removed interval does not fit its stage interval");
      Rational c = (a + b) / 2;
      Rational lo = c - len / 2;
      Rational hi = c + len / 2;
      d.removed.push_back({lo, hi, n});
      next.emplace_back(a, lo);
      next.emplace_back(hi, b);
      removed_total += len;
    }
    d.remaining_measure.push_back(d.remaining_measure.back() - removed_total);
    survivors = std::move(next);
  }
  std::sort(d.removed.begin(), d.removed.end(), [](const auto& x, const auto& y) { return x.lo < y.lo; });
  d.survivors = std::move(survivors);
  return d;
}

}  // namespace

CantorSetDescriptor fat_cantor(unsigned stages) {
  return build_cantor("fat", stages, [](unsigned n, const Rational&) { return pow(Rational(1, 8), n); });
}

CantorSetDescriptor null_cantor(unsigned stages) {
  return build_cantor("middle-thirds", stages, [](unsigned, const Rational& width) { return width / 3; });
}

const RemovedInterval* CantorSetDescriptor::removed_containing(const Rational& t) const {
  auto it = std::upper_bound(removed.begin(), removed.end(), t,
                             [](const Rational& x, const RemovedInterval& r) { return x <= r.lo; });
  if (it == removed.begin()) return nullptr;
  --it;
  return t < it->hi ? &*it : nullptr;
}

bool CantorSetDescriptor::survives(const Rational& t) const {
  return t >= 0 && t <= 1 && removed_containing(t) == nullptr;
}

IntervalSet CantorSetDescriptor::survivor_set() const { return IntervalSet::union_of_closed(survivors); }

Rational CantorSetDescriptor::min_survivor_length() const {
  Rational m = 1;
  for (const auto& [a, b] : survivors) m = std::min(m, Rational(b - a));
  return m;
}

void validate_descriptor(const CantorSetDescriptor& d) {
  if (d.remaining_measure.size() != d.stages + 1) throw DomainError("measure list does not match the stage count");
  for (std::size_t i = 1; i < d.removed.size(); ++i) {
    if (!(d.removed[i - 1].hi < d.removed[i].lo)) throw DomainError("removed intervals overlap or touch");
  }
  std::vector<Span> survivors{{Rational(0), Rational(1)}};
  Rational measure = 1;
  for (unsigned n = 1; n <= d.stages; ++n) {
    std::vector<Span> next;
    std::size_t used = 0;
    for (const auto& [a, b] : survivors) {
      bool split = false;
      for (const auto& r : d.removed) {
        if (r.stage != n || !(a < r.lo && r.hi < b)) continue;
        if (split) throw DomainError("two removed intervals in one stage interval");
        split = true;
        ++used;
        measure -= r.hi - r.lo;
        next.emplace_back(a, r.lo);
        next.emplace_back(r.hi, b);
      }
      if (!split) next.emplace_back(a, b);
    }
    auto at_stage = std::count_if(d.removed.begin(), d.removed.end(), [&](const auto& r) { return r.stage == n; });
    if (static_cast<std::size_t>(at_stage) != used) {
      throw DomainError("a stage-" + std::to_string(n) + " interval is not inside a surviving interval");
    }
    if (measure != d.remaining_measure[n]) throw DomainError("remaining measure mismatch at stage " + std::to_string(n));
    survivors = std::move(next);
  }
  if (survivors != d.survivors) throw DomainError("survivor list mismatch");
}

// ---------------------------------------------------------------------------

std::vector<Rational> default_translates() {
  std::vector<Rational> out;
  for (int k = 0; k < 16; ++k) out.emplace_back(k, 17);
  return out;
}

CharFamily make_char_family(CantorSetDescriptor base, std::vector<Rational> translates) {
  if (translates.empty()) throw DomainError("character family needs at least one translate");
  CharFamily fam{std::move(base), std::move(translates), {}, {}};
  IntervalSet f = fam.base.survivor_set();
  IntervalSet unit = IntervalSet::closed(0, 1);
  for (const auto& x : fam.translates) {
    IntervalSet shifted = f.translated(x) & unit;
    fam.pieces.push_back(shifted - fam.all);
    fam.all = fam.all | shifted;
  }
  return fam;
}

SparseVector char_family_eval(const CharFamily& fam, const Rational& t) {
  check_unit_interval(t);
  SparseVector v(IndexUniverse::labels(fam.translates.size()));
  for (std::size_t a = 0; a < fam.pieces.size(); ++a) {
    if (fam.pieces[a].contains(t)) {
      v.set(std::uint64_t{a}, 1);
      break;
    }
  }
  return v;
}

IntervalValueSummary CharFamilyFunction::summary(const Rational& a, const Rational& b, const SpaceSpec&) const {
  IntervalValueSummary s;
  IntervalSet cell = IntervalSet::open(a, b);
  for (std::size_t alpha = 0; alpha < fam_.pieces.size(); ++alpha) {
    if (!fam_.pieces[alpha].meets_open(a, b)) continue;
    auto piece = (fam_.pieces[alpha] & cell).pieces().front();
    Rational tag = piece.lo == piece.hi ? piece.lo : Rational((piece.lo + piece.hi) / 2);
    s.records.push_back({tag, SparseVector::basis(universe(), std::uint64_t{alpha})});
  }
  s.zero_attainable = !(cell - fam_.all).empty();
  s.tail = Rational(0);
  return s;
}

TraceRange CharFamilyFunction::trace_range(const Functional& phi, const Rational& c, const Rational& d) const {
  if (d < c) throw DomainError("empty cell");
  auto weights = functional_weights(phi);
  auto weight = [&](std::size_t alpha) {
    auto it = weights.find(Index{std::uint64_t{alpha}});
    return it == weights.end() ? Rational(0) : it->second;
  };
  std::optional<TraceRange> r;
  auto include = [&](const Rational& x) {
    if (!r) {
      r = TraceRange{x, x};
    } else {
      r->lo = std::min(r->lo, x);
      r->hi = std::max(r->hi, x);
    }
  };
  for (std::size_t alpha = 0; alpha < fam_.pieces.size(); ++alpha) {
    if (fam_.pieces[alpha].meets_closed(c, d)) include(weight(alpha));
  }
  if (!fam_.all.covers_closed(c, d)) include(0);
  return *r;
}

CharSum char_family_sum_sup(const CharFamily& fam, const Partition& p, const SpaceSpec& space) {
  std::optional<unsigned> power;
  if (std::holds_alternative<C0Space>(space)) {
    power = 0;
  } else if (auto* lp = std::get_if<LpSpace>(&space); lp && den(lp->p) == 1 && lp->p >= 1) {
    power = num(lp->p).convert_to<unsigned>();
  }
  if (!power) throw DomainError("character family sums support c0 and lp with integral p");
  if (mesh(p) < fam.base.min_survivor_length()) {
    throw DomainError("insufficient stage depth: mesh " + to_string(mesh(p)) + " is below the stage interval length " +
                      to_string(fam.base.min_survivor_length()));
  }
  CharSum out{NormValue::exact(0), std::vector<Rational>(fam.pieces.size(), Rational(0)), 0, 0};
  for (std::size_t i = 0; i < p.size(); ++i) {
    const Rational& a = p.lo(i);
    const Rational& b = p.hi(i);
    if (!fam.all.meets_open(a, b)) continue;
    out.union_cover += p.length(i);
    for (std::size_t alpha = 0; alpha < fam.pieces.size(); ++alpha) {
      if (fam.pieces[alpha].meets_open(a, b)) out.covers[alpha] += p.length(i);
    }
  }
  for (const auto& c : out.covers) out.max_cover = std::max(out.max_cover, c);
  if (*power == 0) {
    out.value = NormValue::exact(out.max_cover);
    return out;
  }
  // Each tag lands in at most one F_alpha, so the alpha-th coordinate of f(P)
  // is at most covers[alpha] and the coordinates sum to at most union_cover.
  Rational sum_of_powers = 0;
  for (const auto& c : out.covers) sum_of_powers += pow(c, *power);
  Rational chain = pow(out.max_cover, *power - 1) * out.union_cover;
  Rational bound = std::min(sum_of_powers, chain);
  out.value = *power == 1 ? NormValue::exact(bound)
              : *power == 2 ? NormValue::square(bound)
                            : NormValue::power(bound, Rational(*power));
  return out;
}

}  // namespace rilab
