#pragma once

// Concrete constructions: the dyadic-point function into JT, Cantor-type sets,
// characteristic-function families into c0/lp, and the hat-function map into
// sequence spaces built on a fat Cantor set.

#include "rilab/intervals.hpp"
#include "rilab/partitions.hpp"

#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace rilab {

// ---------------------------------------------------------------------------
// JT function: f(t) = e_{(n-1,k)} at t = (2k-1)/2^n, 0 elsewhere.

SparseVector jt_function_eval(const Rational& t);

/// Node carrying the dyadic point t, if t is one.
std::optional<DyadicNode> jt_node_of(const Rational& t);

class JtFunction final : public VectorFunction {
 public:
  /// Levels explored when an endpoint of a summary interval is not dyadic.
  explicit JtFunction(std::uint32_t summary_depth = 40) : summary_depth_(summary_depth) {}

  std::string name() const override { return "jt"; }
  IndexUniverse universe() const override { return IndexUniverse::dyadic(62); }
  SparseVector eval(const Rational& t) const override { return jt_function_eval(t); }
  /// Lists the tree nodes inside (a, b) up to equivalence: a subtree whose
  /// whole range lies in [a, b] is represented by its root and two children.
  IntervalValueSummary summary(const Rational& a, const Rational& b, const SpaceSpec& space) const override;
  TraceRange trace_range(const Functional& phi, const Rational& c, const Rational& d) const override;

  /// Only the nodes of level <= max_level inside (a, b).
  static IntervalValueSummary level_limited_summary(const Rational& a, const Rational& b, std::uint32_t max_level);

 private:
  std::uint32_t summary_depth_;
};

struct SpecialPartition {
  Partition partition;
  /// is_small[i]: interval i is one of the short intervals around n/2^N.
  std::vector<bool> is_small;
};

/// Short intervals [n/2^N - 2^{-2N-1}, n/2^N + 2^{-2N-1}] for n = 1..2^N-1 and
/// the closed gaps between them; 1 <= N <= 12.
SpecialPartition jt_special_partition(unsigned n);

struct JtWorstCase {
  NormValue achieved;
  NormValue bound;
  Rational achieved_square;
  Rational bound_square;
  bool holds() const { return achieved_square <= bound_square; }
};

/// Largest ||f(P)|| over retaggings of the special partition: long intervals
/// take dyadic tags of level <= N + 4, short ones any tag. 1 <= N <= 8.
JtWorstCase jt_worstcase_bound(unsigned n);
/// Same with long-interval tags of level <= tag_level; nullopt allows every tag.
JtWorstCase jt_worstcase_bound_at(unsigned n, std::optional<std::uint32_t> tag_level);

struct BranchWitness {
  std::vector<DyadicNode> chain;
  BranchFunctional functional;
  std::vector<Rational> points;
  std::vector<Rational> pairings;
};

/// bits[0] addresses the root, each later bit picks a child (0 left, 1 right).
BranchWitness jt_branch_witness(const std::vector<int>& bits);

// ---------------------------------------------------------------------------
// Cantor-type sets.

struct RemovedInterval {
  Rational lo;
  Rational hi;
  unsigned stage;
};

struct CantorSetDescriptor {
  std::string kind;
  unsigned stages = 0;
  /// Sorted by position; open intervals.
  std::vector<RemovedInterval> removed;
  /// remaining_measure[s]: measure left after stage s, s = 0..stages.
  std::vector<Rational> remaining_measure;
  /// Closed survivor intervals after the last stage, sorted.
  std::vector<std::pair<Rational, Rational>> survivors;

  const RemovedInterval* removed_containing(const Rational& t) const;
  bool survives(const Rational& t) const;
  IntervalSet survivor_set() const;
  Rational min_survivor_length() const;
};

/// Stage n removes a centered open interval of length 8^{-n} from each of the
/// 2^{n-1} intervals left by stage n-1; 1 <= stages <= 12.
CantorSetDescriptor fat_cantor(unsigned stages);
/// Middle thirds; 1 <= stages <= 12.
CantorSetDescriptor null_cantor(unsigned stages = 6);

/// Throws DomainError when the geometry or the measure bookkeeping is off.
void validate_descriptor(const CantorSetDescriptor& d);

// ---------------------------------------------------------------------------
// Characteristic-function families: f(t) = e_alpha for t in F_alpha, where
// F_alpha is the translate x_alpha + F cut to [0,1] minus earlier translates.

std::vector<Rational> default_translates();

struct CharFamily {
  CantorSetDescriptor base;
  std::vector<Rational> translates;
  std::vector<IntervalSet> pieces;
  /// Union of all pieces.
  IntervalSet all;
};

CharFamily make_char_family(CantorSetDescriptor base, std::vector<Rational> translates = default_translates());

SparseVector char_family_eval(const CharFamily& fam, const Rational& t);

class CharFamilyFunction final : public VectorFunction {
 public:
  explicit CharFamilyFunction(CharFamily fam) : fam_(std::move(fam)) {}
  const CharFamily& family() const { return fam_; }

  std::string name() const override { return "char-family"; }
  IndexUniverse universe() const override { return IndexUniverse::labels(fam_.translates.size()); }
  SparseVector eval(const Rational& t) const override { return char_family_eval(fam_, t); }
  IntervalValueSummary summary(const Rational& a, const Rational& b, const SpaceSpec& space) const override;
  TraceRange trace_range(const Functional& phi, const Rational& c, const Rational& d) const override;

 private:
  CharFamily fam_;
};

struct CharSum {
  /// c0: the exact sup over tags. lp: a certified upper bound on it, as norm^p.
  NormValue value;
  /// Total length of the intervals whose interior meets F_alpha.
  std::vector<Rational> covers;
  Rational max_cover;
  /// Total length of the intervals whose interior meets some F_alpha.
  Rational union_cover;
};

/// Space must be C0Space or LpSpace with integral p. Throws DomainError when
/// mesh(P) is below the shortest stage interval of the family's base set.
CharSum char_family_sum_sup(const CharFamily& fam, const Partition& p, const SpaceSpec& space);

// ---------------------------------------------------------------------------
// Piecewise-linear scalars and the hat-function construction.

class PiecewiseLinearScalar {
 public:
  /// Breakpoints (t, value) with t strictly increasing from 0 to 1.
  explicit PiecewiseLinearScalar(std::vector<std::pair<Rational, Rational>> points);

  const std::vector<std::pair<Rational, Rational>>& points() const { return points_; }
  Rational eval(const Rational& t) const;
  Rational sup_norm() const;
  Rational integral() const;
  /// g(0) = g(1) = 0 and g(1-t) = -g(t) at every breakpoint.
  bool antisymmetric() const;
  /// First breakpoint where |g| attains its sup.
  Rational peak() const;

  static PiecewiseLinearScalar combine(const Rational& c1, const PiecewiseLinearScalar& g1, const Rational& c2,
                                       const PiecewiseLinearScalar& g2);

 private:
  std::vector<std::pair<Rational, Rational>> points_;
};

/// Breakpoints (0,0), (1/4,1), (1/2,0), (3/4,-1), (1,0).
PiecewiseLinearScalar hat_g();

/// x_1, x_2, ... with values in a fixed space; `bound` is a declared bound on
/// the norms.
struct VectorSequence {
  std::function<SparseVector(unsigned)> at;
  IndexUniverse universe;
  SpaceSpec space;
  Rational bound;
};

/// x_n = e_n in l2 over the naturals.
VectorSequence canonical_l2_basis();

/// A linear map given as a function together with its codomain.
struct LinearMap {
  std::function<SparseVector(const SparseVector&)> apply;
  IndexUniverse codomain;
  SpaceSpec space;
};

LinearMap identity_map(const VectorSequence& xs);

/// f_g(t) = g_I(t) x_n on a removed interval I of stage n, 0 elsewhere, where
/// g_I is g rescaled to I.
SparseVector kadets_eval(const PiecewiseLinearScalar& g, const Rational& t, const CantorSetDescriptor& k,
                         const VectorSequence& xs);

class KadetsFunction final : public VectorFunction {
 public:
  KadetsFunction(PiecewiseLinearScalar g, CantorSetDescriptor k, VectorSequence xs)
      : g_(std::move(g)), k_(std::move(k)), xs_(std::move(xs)) {}

  const PiecewiseLinearScalar& g() const { return g_; }
  const CantorSetDescriptor& set() const { return k_; }
  const VectorSequence& sequence() const { return xs_; }

  std::string name() const override { return "kadets"; }
  IndexUniverse universe() const override { return xs_.universe; }
  SparseVector eval(const Rational& t) const override { return kadets_eval(g_, t, k_, xs_); }
  IntervalValueSummary summary(const Rational& a, const Rational& b, const SpaceSpec& space) const override;
  TraceRange trace_range(const Functional& phi, const Rational& c, const Rational& d) const override;

  /// Points of [c, d] where phi o f_g may change slope, plus c and d.
  std::vector<Rational> trace_breakpoints(const Rational& c, const Rational& d) const;
  /// Exact integral of phi o f_g over [0,1].
  Rational trace_integral(const Functional& phi) const;

 private:
  PiecewiseLinearScalar g_;
  CantorSetDescriptor k_;
  VectorSequence xs_;
};

struct KadetsLowerBound {
  NormValue achieved;
  Rational threshold;
  unsigned stage = 0;
  /// True when every interval meeting the set holds a peak of the chosen stage.
  bool full_coverage = false;
  TaggedPartition tags;
  bool exceeds() const { return compare(achieved, threshold) == std::partial_ordering::greater; }
};

/// Adversarial tags: a peak of g on a stage-m removed interval in every
/// interval that has one, a zero of f_g elsewhere when available.
KadetsLowerBound kadets_sum_lowerbound(const KadetsFunction& f, const Partition& p, const LinearMap& t);

struct IsometryCheck {
  bool linear = false;
  NormValue sup_norm;
  Rational g_sup;
  bool isometric = false;
  std::size_t probes = 0;
};

/// Compares phi(c1 g1 + c2 g2) with c1 phi(g1) + c2 phi(g2) on a probe set and
/// the sup norm of phi(c1 g1 + c2 g2) with ||c1 g1 + c2 g2|| sup ||x_n||.
IsometryCheck phi_isometry_check(const PiecewiseLinearScalar& g1, const PiecewiseLinearScalar& g2,
                                 const Rational& c1, const Rational& c2, const CantorSetDescriptor& k,
                                 const VectorSequence& xs);

}  // namespace rilab
