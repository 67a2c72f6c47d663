#include "rilab/analysis.hpp"

#include <gtest/gtest.h>

using namespace rilab;

namespace {

// f(t) = t e_0, a continuous function with a known trace.
class Ramp final : public VectorFunction {
 public:
  std::string name() const override { return "ramp"; }
  IndexUniverse universe() const override { return IndexUniverse::naturals(); }
  SparseVector eval(const Rational& t) const override {
    return SparseVector::basis(universe(), std::uint64_t{0}, t);
  }
  IntervalValueSummary summary(const Rational& a, const Rational& b, const SpaceSpec&) const override {
    return {{{(a + b) / 2, eval((a + b) / 2)}}, false, Rational(b - a)};
  }
  TraceRange trace_range(const Functional& phi, const Rational& c, const Rational& d) const override {
    Rational x = apply_functional(phi, eval(c));
    Rational y = apply_functional(phi, eval(d));
    return {std::min(x, y), std::max(x, y)};
  }
};

IntervalSet as_set(const OscillationCover& c) { return IntervalSet::union_of_closed(c.intervals); }

KadetsFunction standard_kadets() { return KadetsFunction(hat_g(), fat_cantor(8), canonical_l2_basis()); }

}  // namespace

TEST(OscillationCover, ConstantTraceHasEmptyCover) {
  SparseVector v(IndexUniverse::naturals());
  v.set(std::uint64_t{0}, 5);
  ConstantFunction f(v);
  auto c = oscillation_cover(ScalarTrace(f, CoordinateFunctional{std::uint64_t{0}}), 0, 6);
  EXPECT_TRUE(c.intervals.empty());
  EXPECT_EQ(c.length, 0);
}

TEST(OscillationCover, JtBranchTraceMatchesCellOracle) {
  JtFunction f;
  auto w = jt_branch_witness({1, 0, 1, 1, 0});
  ScalarTrace trace(f, w.functional);
  for (unsigned r = 0; r <= 10; ++r) {
    Rational width = pow2(-static_cast<int>(r));
    std::vector<std::pair<Rational, Rational>> cells;
    for (std::size_t k = 0; k < (std::size_t{1} << r); ++k) {
      Rational lo = k * width;
      Rational hi = lo + width;
      for (const auto& x : w.points) {
        if (lo <= x && x <= hi) {
          cells.emplace_back(lo, hi);
          break;
        }
      }
    }
    auto expected = IntervalSet::union_of_closed(cells);
    for (const Rational& th : {Rational(0), Rational(1, 2), Rational(99, 100)}) {
      auto c = oscillation_cover(trace, th, r);
      EXPECT_EQ(as_set(c), expected) << "r=" << r;
      EXPECT_EQ(c.length, expected.length());
    }
    EXPECT_TRUE(oscillation_cover(trace, 1, r).intervals.empty());
  }
}

TEST(OscillationCover, AddsSharedEndpointWhenOnlyTheUnionOscillates) {
  Ramp f;
  ScalarTrace trace(f, CoordinateFunctional{std::uint64_t{0}});
  auto c = oscillation_cover(trace, Rational(3, 4), 1);
  ASSERT_EQ(c.intervals.size(), 1U);
  EXPECT_EQ(c.intervals[0].first, Rational(1, 2));
  EXPECT_EQ(c.intervals[0].second, Rational(1, 2));
  EXPECT_EQ(c.length, 0);
  auto marked = oscillation_cover(trace, Rational(1, 4), 1);
  ASSERT_EQ(marked.intervals.size(), 1U);
  EXPECT_EQ(marked.length, 1);
}

TEST(OscillationCover, ResolutionIsCapped) {
  Ramp f;
  ScalarTrace trace(f, CoordinateFunctional{std::uint64_t{0}});
  EXPECT_THROW(oscillation_cover(trace, 0, kMaxResolution + 1), SizingError);
}

TEST(OscillationCoverProperty, FinerGridsGiveNestedCovers) {
  JtFunction jt;
  auto kf = standard_kadets();
  Ramp ramp;
  std::vector<ScalarTrace> traces{
      ScalarTrace(jt, jt_branch_witness({1, 1, 0}).functional),
      ScalarTrace(kf, CoordinateFunctional{std::uint64_t{1}}),
      ScalarTrace(kf, CombinationFunctional{{{Index{std::uint64_t{2}}, Rational(3)}, {Index{std::uint64_t{3}}, Rational(-5)}}}),
      ScalarTrace(ramp, CoordinateFunctional{std::uint64_t{0}}),
  };
  for (const auto& trace : traces) {
    for (const Rational& th : {Rational(1, 10), Rational(1, 3), Rational(2, 3)}) {
      auto coarse = oscillation_cover(trace, th, 2);
      for (unsigned r = 3; r <= 9; ++r) {
        auto fine = oscillation_cover(trace, th, r);
        EXPECT_TRUE((as_set(fine) - as_set(coarse)).empty()) << "r=" << r;
        EXPECT_LE(fine.length, coarse.length);
        coarse = std::move(fine);
      }
    }
  }
}

TEST(DiscontinuityReport, ContinuousKadetsTraceVanishesOnFineGrids) {
  auto kf = standard_kadets();
  std::vector<Functional> phis{CoordinateFunctional{std::uint64_t{1}}, CoordinateFunctional{std::uint64_t{2}}};
  auto coarse = weak_discontinuity_report(kf, phis, 3);
  ASSERT_EQ(coarse.thresholds.size(), 4U);
  EXPECT_EQ(coarse.thresholds[3], Rational(1, 4));
  EXPECT_GT(coarse.union_length[3], 0);
  for (std::size_t k = 1; k < coarse.union_length.size(); ++k) {
    EXPECT_GE(coarse.union_length[k], coarse.union_length[k - 1]);
  }
  // Stage-2 slopes are 4 * 64; cells of width 2^-12 move the trace by at most 1/16.
  auto fine = weak_discontinuity_report(kf, phis, 12);
  for (const auto& len : fine.union_length) EXPECT_EQ(len, 0);
}

TEST(DiscontinuityReport, JtCoverShrinksWithResolution) {
  JtFunction f;
  std::vector<Functional> phis;
  for (const auto& bits : std::vector<std::vector<int>>{{1, 0, 0}, {1, 1, 1, 0}, {1, 0, 1, 0, 1}}) {
    phis.push_back(jt_branch_witness(bits).functional);
  }
  for (unsigned r = 4; r <= 12; r += 4) {
    auto rep = weak_discontinuity_report(f, phis, r, 2);
    // 12 chain points, each inside at most two closed cells.
    EXPECT_LE(rep.union_length[1], 24 * pow2(-static_cast<int>(r)));
    EXPECT_GT(rep.union_length[1], 0);
  }
}

TEST(IntegrabilityProbe, JtFindsTheFirstSufficientSpecialPartition) {
  JtFunction f;
  auto v = integrability_probe(f, JtSpace{}, Rational(1, 2));
  ASSERT_EQ(verdict_name(v), "integrable-witness");
  const auto& w = std::get<IntegrableWitness>(v);
  EXPECT_EQ(w.family, "special");
  EXPECT_EQ(w.partition, jt_special_partition(3).partition);
  EXPECT_TRUE(w.integral.is_zero());
  EXPECT_TRUE(w.bounds.upper_below(Rational(1, 2)));
  EXPECT_EQ(w.bounds.lower.raised(2), Rational(1049, 8192));
  EXPECT_FALSE(jt_worstcase_bound_at(2, std::nullopt).achieved_square < Rational(1, 4));
}

TEST(IntegrabilityProbe, CharFamilyInC0) {
  CharFamilyFunction f(make_char_family(null_cantor(6)));
  auto v = integrability_probe(f, C0Space{}, Rational(1, 4));
  ASSERT_EQ(verdict_name(v), "integrable-witness");
  const auto& w = std::get<IntegrableWitness>(v);
  EXPECT_EQ(w.family, "triadic");
  EXPECT_EQ(w.partition, Partition::uniform(243));
  EXPECT_EQ(w.bounds.lower.raised(1), Rational(56, 243));
}

TEST(IntegrabilityProbe, KadetsBelowThresholdIsNotIntegrable) {
  auto kf = standard_kadets();
  auto v = integrability_probe(kf, LpSpace{2}, Rational(1, 4));
  ASSERT_EQ(verdict_name(v), "non-integrable-witness");
  const auto& w = std::get<NonIntegrableWitness>(v);
  EXPECT_EQ(w.delta, Rational(1, 3));
  EXPECT_EQ(w.family.size(), kDefaultBudget);
  for (const auto& a : w.adversarial) EXPECT_EQ(compare(a, w.delta), std::partial_ordering::greater);
  EXPECT_EQ(verdict_name(integrability_probe(kf, LpSpace{2}, Rational(1, 2))), "inconclusive");
}

TEST(IntegrabilityProbe, ZeroFunctionAndErrors) {
  ZeroFunction z(IndexUniverse::naturals());
  auto v = integrability_probe(z, LpSpace{1}, Rational(1, 1000));
  ASSERT_EQ(verdict_name(v), "integrable-witness");
  EXPECT_EQ(std::get<IntegrableWitness>(v).partition, Partition::uniform(2));
  EXPECT_THROW(integrability_probe(z, LpSpace{1}, 0), DomainError);
  CharFamilyFunction ch(make_char_family(null_cantor(2)));
  EXPECT_THROW(integrability_probe(ch, JtSpace{}, Rational(1, 2)), UniverseError);
}
