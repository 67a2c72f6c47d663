#pragma once

#include "rilab/rational.hpp"

#include <vector>

namespace rilab {

/// Finite union of intervals of the real line with exact endpoints, each end
/// open or closed. Stored as sorted critical points with the membership of
/// every point and of every open gap between consecutive points.
class IntervalSet {
 public:
  struct Piece {
    Rational lo;
    Rational hi;
    bool lo_closed;
    bool hi_closed;
  };

  IntervalSet() : gaps_{false} {}

  static IntervalSet closed(const Rational& a, const Rational& b);
  static IntervalSet open(const Rational& a, const Rational& b);
  static IntervalSet point(const Rational& a) { return closed(a, a); }
  /// Union of closed intervals given in any order.
  static IntervalSet union_of_closed(std::vector<std::pair<Rational, Rational>> intervals);

  bool contains(const Rational& x) const;
  bool empty() const;
  /// Has a point strictly between c and d.
  bool meets_open(const Rational& c, const Rational& d) const;
  bool meets_closed(const Rational& c, const Rational& d) const;
  /// Every point of [c, d] belongs to the set.
  bool covers_closed(const Rational& c, const Rational& d) const;

  IntervalSet operator|(const IntervalSet& o) const;
  IntervalSet operator&(const IntervalSet& o) const;
  IntervalSet operator-(const IntervalSet& o) const;
  IntervalSet translated(const Rational& x) const;

  /// Maximal connected pieces in increasing order; requires a bounded set.
  std::vector<Piece> pieces() const;
  Rational length() const;
  std::size_t critical_points() const { return points_.size(); }

  bool operator==(const IntervalSet&) const = default;

 private:
  template <class Op>
  static IntervalSet combine(const IntervalSet& a, const IntervalSet& b, Op op);
  void normalize();

  std::vector<Rational> points_;
  std::vector<bool> at_;    // membership of points_[i]
  std::vector<bool> gaps_;  // gaps_[i]: membership of (points_[i-1], points_[i]); unbounded at both ends
};

}  // namespace rilab
