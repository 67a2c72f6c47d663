#pragma once

// Oscillation covers of scalar traces and a verdict engine that searches for
// certificates of Riemann integrability or of its failure.

#include "rilab/gallery.hpp"
#include "rilab/partitions.hpp"

#include <string>
#include <variant>
#include <vector>

namespace rilab {

/// t -> phi(f(t)).
class ScalarTrace {
 public:
  ScalarTrace(const VectorFunction& f, Functional phi) : f_(&f), phi_(std::move(phi)) {}
  Rational eval(const Rational& t) const { return apply_functional(phi_, f_->eval(t)); }
  TraceRange range(const Rational& c, const Rational& d) const { return f_->trace_range(phi_, c, d); }
  const Functional& functional() const { return phi_; }

 private:
  const VectorFunction* f_;
  Functional phi_;
};

inline constexpr unsigned kMaxResolution = 16;

struct OscillationCover {
  /// Closed, disjoint, increasing; a point appears as [x, x].
  std::vector<std::pair<Rational, Rational>> intervals;
  Rational length;
};

/// Closed dyadic cells of width 2^-resolution whose oscillation exceeds the
/// threshold, merged, plus shared cell endpoints where the two neighbouring
/// cells together exceed it.
OscillationCover oscillation_cover(const ScalarTrace& trace, const Rational& threshold, unsigned resolution);

struct DiscontinuityReport {
  std::vector<Rational> thresholds;
  /// covers[j][k]: functional j at threshold k.
  std::vector<std::vector<OscillationCover>> covers;
  /// Union over functionals, per threshold.
  std::vector<Rational> union_length;
};

/// Thresholds 1/n for n = 1..levels.
DiscontinuityReport weak_discontinuity_report(const VectorFunction& f, const std::vector<Functional>& phis,
                                              unsigned resolution, unsigned levels = 4);

struct IntegrableWitness {
  Partition partition;
  /// sup over tags of ||f(P) - integral||.
  RetagBounds bounds;
  SparseVector integral;
  std::string family;
};

struct NonIntegrableWitness {
  Rational delta;
  std::vector<Partition> family;
  std::vector<NormValue> adversarial;
};

struct Inconclusive {
  std::string report;
};

using IntegrabilityVerdict = std::variant<IntegrableWitness, NonIntegrableWitness, Inconclusive>;

std::string verdict_name(const IntegrabilityVerdict& v);

inline constexpr unsigned kDefaultBudget = 8;

/// Searches partitions suited to the construction (special partitions for
/// the JT function, triadic grids for characteristic families, dyadic grids
/// otherwise) up to `budget` refinement steps. Candidate integral: 0.
IntegrabilityVerdict integrability_probe(const VectorFunction& f, const SpaceSpec& space, const Rational& eps,
                                         unsigned budget = kDefaultBudget);

}  // namespace rilab
