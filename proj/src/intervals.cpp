#include "rilab/intervals.hpp"

#include <algorithm>

namespace rilab {

IntervalSet IntervalSet::closed(const Rational& a, const Rational& b) {
  if (b < a) throw DomainError("interval with hi < lo");
  IntervalSet s;
  if (a == b) {
    s.points_ = {a};
    s.at_ = {true};
    s.gaps_ = {false, false};
  } else {
    s.points_ = {a, b};
    s.at_ = {true, true};
    s.gaps_ = {false, true, false};
  }
  return s;
}

IntervalSet IntervalSet::open(const Rational& a, const Rational& b) {
  if (b < a) throw DomainError("interval with hi < lo");
  IntervalSet s;
  if (a == b) return s;
  s.points_ = {a, b};
  s.at_ = {false, false};
  s.gaps_ = {false, true, false};
  return s;
}

IntervalSet IntervalSet::union_of_closed(std::vector<std::pair<Rational, Rational>> intervals) {
  std::sort(intervals.begin(), intervals.end());
  std::vector<std::pair<Rational, Rational>> merged;
  for (auto& [a, b] : intervals) {
    if (b < a) throw DomainError("interval with hi < lo");
    if (!merged.empty() && a <= merged.back().second) {
      merged.back().second = std::max(merged.back().second, b);
    } else {
      merged.emplace_back(std::move(a), std::move(b));
    }
  }
  IntervalSet s;
  for (auto& [a, b] : merged) {
    bool degenerate = a == b;
    s.points_.push_back(std::move(a));
    s.at_.push_back(true);
    if (degenerate) {
      s.gaps_.push_back(false);
      continue;
    }
    s.gaps_.push_back(true);
    s.points_.push_back(std::move(b));
    s.at_.push_back(true);
    s.gaps_.push_back(false);
  }
  return s;
}

bool IntervalSet::contains(const Rational& x) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), x);
  auto i = static_cast<std::size_t>(it - points_.begin());
  if (it != points_.end() && *it == x) return at_[i];
  return gaps_[i];
}

bool IntervalSet::empty() const {
  return std::none_of(at_.begin(), at_.end(), [](bool b) { return b; }) &&
         std::none_of(gaps_.begin(), gaps_.end(), [](bool b) { return b; });
}

bool IntervalSet::meets_open(const Rational& c, const Rational& d) const {
  if (!(c < d)) return false;
  auto i0 = static_cast<std::size_t>(std::upper_bound(points_.begin(), points_.end(), c) - points_.begin());
  auto i1 = static_cast<std::size_t>(std::lower_bound(points_.begin(), points_.end(), d) - points_.begin());
  for (std::size_t i = i0; i < i1; ++i) {
    if (at_[i]) return true;
  }
  for (std::size_t g = i0; g <= i1; ++g) {
    if (gaps_[g]) return true;
  }
  return false;
}

bool IntervalSet::meets_closed(const Rational& c, const Rational& d) const {
  return contains(c) || contains(d) || meets_open(c, d);
}

bool IntervalSet::covers_closed(const Rational& c, const Rational& d) const {
  if (d < c) throw DomainError("interval with hi < lo");
  if (!contains(c) || !contains(d)) return false;
  auto i0 = static_cast<std::size_t>(std::lower_bound(points_.begin(), points_.end(), c) - points_.begin());
  auto i1 = static_cast<std::size_t>(std::upper_bound(points_.begin(), points_.end(), d) - points_.begin());
  for (std::size_t i = i0; i < i1; ++i) {
    if (!at_[i]) return false;
  }
  for (std::size_t g = i0 + 1; g < i1; ++g) {
    if (!gaps_[g]) return false;
  }
  return true;
}

template <class Op>
IntervalSet IntervalSet::combine(const IntervalSet& a, const IntervalSet& b, Op op) {
  IntervalSet out;
  out.points_.reserve(a.points_.size() + b.points_.size());
  std::merge(a.points_.begin(), a.points_.end(), b.points_.begin(), b.points_.end(), std::back_inserter(out.points_));
  out.points_.erase(std::unique(out.points_.begin(), out.points_.end()), out.points_.end());
  const auto& p = out.points_;
  const std::size_t k = p.size();
  out.at_.resize(k);
  out.gaps_.assign(k + 1, false);
  for (std::size_t i = 0; i < k; ++i) out.at_[i] = op(a.contains(p[i]), b.contains(p[i]));
  for (std::size_t g = 0; g <= k; ++g) {
    Rational sample = k == 0 ? Rational(0) : g == 0 ? Rational(p[0] - 1) : g == k ? Rational(p[k - 1] + 1)
                                                                                  : Rational((p[g - 1] + p[g]) / 2);
    out.gaps_[g] = op(a.contains(sample), b.contains(sample));
  }
  out.normalize();
  return out;
}

void IntervalSet::normalize() {
  std::vector<Rational> points;
  std::vector<bool> at;
  std::vector<bool> gaps{gaps_[0]};
  for (std::size_t i = 0; i < points_.size(); ++i) {
    if (at_[i] == gaps.back() && gaps_[i + 1] == gaps.back()) continue;
    points.push_back(points_[i]);
    at.push_back(at_[i]);
    gaps.push_back(gaps_[i + 1]);
  }
  points_ = std::move(points);
  at_ = std::move(at);
  gaps_ = std::move(gaps);
}

IntervalSet IntervalSet::operator|(const IntervalSet& o) const {
  return combine(*this, o, [](bool x, bool y) { return x || y; });
}

IntervalSet IntervalSet::operator&(const IntervalSet& o) const {
  return combine(*this, o, [](bool x, bool y) { return x && y; });
}

IntervalSet IntervalSet::operator-(const IntervalSet& o) const {
  return combine(*this, o, [](bool x, bool y) { return x && !y; });
}

IntervalSet IntervalSet::translated(const Rational& x) const {
  IntervalSet s = *this;
  for (auto& p : s.points_) p += x;
  return s;
}

std::vector<IntervalSet::Piece> IntervalSet::pieces() const {
  if (gaps_.front() || gaps_.back()) throw DomainError("unbounded interval set");
  std::vector<Piece> out;
  Rational lo;
  bool lo_closed = false;
  for (std::size_t i = 0; i < points_.size(); ++i) {
    bool left = gaps_[i];
    bool here = at_[i];
    bool right = gaps_[i + 1];
    if (left) {
      if (here && right) continue;
      out.push_back({lo, points_[i], lo_closed, here});
      if (!here && right) {
        lo = points_[i];
        lo_closed = false;
      }
    } else if (here || right) {
      lo = points_[i];
      lo_closed = here;
      if (!right) out.push_back({lo, lo, true, true});
    }
  }
  return out;
}

Rational IntervalSet::length() const {
  Rational total = 0;
  for (const auto& piece : pieces()) total += piece.hi - piece.lo;
  return total;
}

}  // namespace rilab
