#pragma once

// Partitions of [0,1], tagged partitions, Riemann sums and certified bounds on
// the spread of Riemann sums over all retaggings of a fixed partition.

#include "rilab/spaces.hpp"

#include <iosfwd>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace rilab {

/// Breakpoints 0 = t_0 < t_1 < ... < t_N = 1.
class Partition {
 public:
  explicit Partition(std::vector<Rational> breakpoints);
  static Partition trivial() { return Partition({Rational(0), Rational(1)}); }
  static Partition uniform(std::size_t n);

  const std::vector<Rational>& breakpoints() const { return t_; }
  std::size_t size() const { return t_.size() - 1; }
  const Rational& lo(std::size_t i) const { return t_[i]; }
  const Rational& hi(std::size_t i) const { return t_[i + 1]; }
  Rational length(std::size_t i) const { return t_[i + 1] - t_[i]; }
  /// Interval index containing x in its closure (the left one at a breakpoint).
  std::size_t locate(const Rational& x) const;

  bool operator==(const Partition&) const = default;

 private:
  std::vector<Rational> t_;
};

Rational mesh(const Partition& p);
Partition common_refinement(const Partition& p, const Partition& q);

/// Tags must lie strictly inside their intervals.
class TaggedPartition {
 public:
  TaggedPartition(Partition p, std::vector<Rational> tags);
  /// Midpoint tags.
  static TaggedPartition midpoints(const Partition& p);

  const Partition& partition() const { return p_; }
  const std::vector<Rational>& tags() const { return tags_; }
  bool operator==(const TaggedPartition&) const = default;

 private:
  Partition p_;
  std::vector<Rational> tags_;
};

struct EvaluationRecord {
  Rational tag;
  SparseVector value;
};

/// Attainable values of f on the interior of one interval. Every value f(t)
/// for an interior t lies within `tail` (in the target norm) of a listed value,
/// or of 0 when zero is attainable. A missing tail means no such bound.
struct IntervalValueSummary {
  std::vector<EvaluationRecord> records;
  bool zero_attainable = false;
  std::optional<Rational> tail = Rational(0);
};

struct TraceRange {
  Rational lo;
  Rational hi;
  Rational oscillation() const { return hi - lo; }
};

/// A function [0,1] -> finitely supported vectors over a fixed universe.
class VectorFunction {
 public:
  virtual ~VectorFunction() = default;
  virtual std::string name() const = 0;
  virtual IndexUniverse universe() const = 0;
  virtual SparseVector eval(const Rational& t) const = 0;
  /// Summary over the open interval (a, b), sound for `space`.
  virtual IntervalValueSummary summary(const Rational& a, const Rational& b, const SpaceSpec& space) const = 0;
  /// Exact range of phi(f(t)) over the closed cell [c, d].
  virtual TraceRange trace_range(const Functional& phi, const Rational& c, const Rational& d) const = 0;
};

/// f(t) = 0.
class ZeroFunction final : public VectorFunction {
 public:
  explicit ZeroFunction(IndexUniverse universe) : universe_(universe) {}
  std::string name() const override { return "zero"; }
  IndexUniverse universe() const override { return universe_; }
  SparseVector eval(const Rational& t) const override;
  IntervalValueSummary summary(const Rational& a, const Rational& b, const SpaceSpec& space) const override;
  TraceRange trace_range(const Functional& phi, const Rational& c, const Rational& d) const override;

 private:
  IndexUniverse universe_;
};

/// f(t) = v for every t.
class ConstantFunction final : public VectorFunction {
 public:
  explicit ConstantFunction(SparseVector value) : value_(std::move(value)) {}
  std::string name() const override { return "constant"; }
  IndexUniverse universe() const override { return value_.universe(); }
  SparseVector eval(const Rational& t) const override;
  IntervalValueSummary summary(const Rational& a, const Rational& b, const SpaceSpec& space) const override;
  TraceRange trace_range(const Functional& phi, const Rational& c, const Rational& d) const override;

 private:
  SparseVector value_;
};

void check_unit_interval(const Rational& t);

SparseVector riemann_sum(const VectorFunction& f, const TaggedPartition& p);

/// Certified interval [lower, lower + tail_total] for a supremum over
/// retaggings; tail_total is absent when the upper side is unbounded.
struct RetagBounds {
  NormValue lower;
  std::optional<Rational> tail_total;

  bool bounded() const { return tail_total.has_value(); }
  /// upper < eps, exactly.
  bool upper_below(const Rational& eps) const;
  /// upper <= eps, exactly.
  bool upper_at_most(const Rational& eps) const;
  std::optional<Decimal> upper_decimal() const;
};

inline constexpr std::size_t kExhaustiveRetagCap = std::size_t{1} << 20;

/// Supremum of ||f(P)|| over tags drawn from the summaries.
RetagBounds retag_sup(const std::vector<IntervalValueSummary>& summaries, const Partition& p, const SpaceSpec& space,
                      const IndexUniverse& universe);
/// Supremum of ||f(P1) - f(P2)|| over pairs of tag choices from the summaries.
RetagBounds retag_gap(const std::vector<IntervalValueSummary>& summaries, const Partition& p, const SpaceSpec& space,
                      const IndexUniverse& universe);

std::vector<IntervalValueSummary> summaries(const VectorFunction& f, const Partition& p, const SpaceSpec& space);
RetagBounds retag_sup(const VectorFunction& f, const Partition& p, const SpaceSpec& space);
RetagBounds retag_gap(const VectorFunction& f, const Partition& p, const SpaceSpec& space);

// Partition file: one breakpoint per line; the tagged form writes `t_{i-1} @ s_i`
// on each interval's first line and the final breakpoint alone.
Partition read_partition(std::istream& in);
TaggedPartition read_tagged_partition(std::istream& in);
void write_partition(std::ostream& out, const Partition& p);
void write_tagged_partition(std::ostream& out, const TaggedPartition& p);

}  // namespace rilab
