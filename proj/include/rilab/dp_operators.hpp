#pragma once

// Finite matrix operators between truncated sequence spaces, a horizon-bounded
// Dunford-Pettis test and the Riemann-sum demo built on the hat-function map.

#include "rilab/gallery.hpp"

#include <iosfwd>
#include <map>
#include <string>
#include <vector>

namespace rilab {

/// Sparse rows x cols matrix over naturals indices 0..rows-1 and 0..cols-1.
struct MatrixOperator {
  std::size_t rows = 0;
  std::size_t cols = 0;
  SpaceSpec domain = LpSpace{2};
  SpaceSpec codomain = LpSpace{2};
  /// (i, j) -> entry; zeros are not stored.
  std::map<std::pair<std::uint64_t, std::uint64_t>, Rational> entries;

  static MatrixOperator identity(std::size_t dim, SpaceSpec space = LpSpace{2});
  static MatrixOperator zero(std::size_t dim, SpaceSpec space = LpSpace{2});
  /// diag(d_0, d_1, ...).
  static MatrixOperator diagonal(const std::vector<Rational>& d, SpaceSpec space = LpSpace{2});
  /// diag(2^-n) for n = 0..dim-1.
  static MatrixOperator dyadic_diagonal(std::size_t dim, SpaceSpec space = LpSpace{2});

  void set(std::uint64_t i, std::uint64_t j, const Rational& x);
  LinearMap as_map() const;
};

SparseVector matrix_apply(const MatrixOperator& t, const SparseVector& v);

/// `rows cols` then `i j p/q` lines; '#' starts a comment.
MatrixOperator read_matrix(std::istream& in, SpaceSpec domain = LpSpace{2}, SpaceSpec codomain = LpSpace{2});
void write_matrix(std::ostream& out, const MatrixOperator& t);

/// x_1, x_2, ... over the naturals with a declared norm bound and the
/// functionals it is declared null against.
struct SequenceSpec {
  std::string name;
  std::function<SparseVector(unsigned)> at;
  Rational bound;
  std::vector<Functional> null_against;
};

/// x_n = e_n, bound 1, null against e_0..e_3.
SequenceSpec canonical_basis_sequence();
/// x_n = c_n e_n.
SequenceSpec scaled_basis_sequence(std::function<Rational(unsigned)> scale, Rational bound);
/// x_n = list[n-1]; only the first list.size() terms exist.
SequenceSpec user_sequence(std::vector<SparseVector> list, Rational bound, std::vector<Functional> null_against);

/// Checks ||x_n|| <= bound for n = 1..horizon and, for each declared
/// functional, that its pairings on the tail window [ceil(h/2), h] are all 0 or
/// have a smaller maximum than on 1..ceil(h/2)-1. Throws DomainError.
void validate_sequence(const SequenceSpec& xs, const SpaceSpec& space, unsigned horizon);

struct DpVerdict {
  bool pass = false;
  unsigned horizon = 0;
  Rational eta;
  /// ||T x_n|| over the tail window, in order.
  std::vector<std::pair<unsigned, NormValue>> tail;
  /// First tail index with ||T x_n|| >= eta, when failing.
  unsigned witness = 0;
  std::optional<NormValue> witness_norm;
};

/// Horizon-relative surrogate: passes when ||T x_n|| < eta on [ceil(h/2), h].
DpVerdict dp_test(const MatrixOperator& t, const SequenceSpec& xs, unsigned horizon, const Rational& eta);

struct DpDemoRow {
  std::size_t cells = 0;
  /// ||T f_g(P)|| with the adversarial tags of kadets_sum_lowerbound.
  NormValue value;
  /// Pass branch: max over later rows j of ||T f_g(P_i) - T f_g(P_j)||; absent on the last row.
  std::optional<NormValue> gap;
  bool ok = false;
};

struct DpDemoReport {
  DpVerdict verdict;
  bool fail_branch = false;
  Rational threshold;
  unsigned stages = 0;
  std::vector<DpDemoRow> rows;
  /// Fail branch: every row exceeds the threshold. Pass branch: gaps never increase.
  bool consistent = false;
  /// Pass branch: gaps strictly decrease.
  bool strictly_decreasing = false;
};

/// Runs dp_test, then builds f_g on fat_cantor(stages). On failure the
/// sequence is shifted to the witness and renormalized so ||T x_n|| = 1.
DpDemoReport dp_riemann_demo(const MatrixOperator& t, const SequenceSpec& xs, const PiecewiseLinearScalar& g,
                             const std::vector<Partition>& partitions, unsigned horizon, const Rational& eta,
                             unsigned stages = 8);

}  // namespace rilab
