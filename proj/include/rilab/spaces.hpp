#pragma once

// Exact finitely supported vectors over the index universes used by the
// constructions (naturals, finite label sets, the dyadic tree), the four norm
// families with exact certificates, and functionals.

#include "rilab/rational.hpp"

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <variant>
#include <vector>

namespace rilab {

/// Node (n, k) of the dyadic tree: level n >= 0, position 1 <= k <= 2^n.
struct DyadicNode {
  std::uint32_t level = 0;
  std::uint64_t pos = 1;

  auto operator<=>(const DyadicNode&) const = default;

  static DyadicNode root() { return {0, 1}; }
  bool valid() const;
  DyadicNode left() const { return {level + 1, 2 * pos - 1}; }
  DyadicNode right() const { return {level + 1, 2 * pos}; }
  DyadicNode child(bool right_side) const { return right_side ? right() : left(); }
  DyadicNode parent() const { return {level - 1, (pos + 1) / 2}; }
  bool is_successor_of(const DyadicNode& p) const {
    return level == p.level + 1 && (pos + 1) / 2 == p.pos;
  }
  bool is_ancestor_or_self_of(const DyadicNode& d) const;

  /// The dyadic point (2k-1)/2^{n+1} carried by this node; the tree is a
  /// binary search tree on these points.
  Rational point() const;
  /// Open range (k-1)/2^n .. k/2^n covered by the subtree's points.
  Rational range_lo() const;
  Rational range_hi() const;
};

std::string to_string(const DyadicNode& node);

/// Natural numbers and finite labels are plain integers; tree nodes are DyadicNode.
using Index = std::variant<std::uint64_t, DyadicNode>;

std::string to_string(const Index& index);

class IndexUniverse {
 public:
  enum class Kind { Naturals, FiniteLabels, DyadicTree };

  static IndexUniverse naturals() { return IndexUniverse(Kind::Naturals, 0); }
  static IndexUniverse labels(std::uint64_t count);
  static IndexUniverse dyadic(std::uint32_t max_level);

  Kind kind() const { return kind_; }
  std::uint64_t param() const { return param_; }
  bool contains(const Index& index) const;
  void check(const Index& index) const;

  bool operator==(const IndexUniverse&) const = default;

 private:
  IndexUniverse(Kind kind, std::uint64_t param) : kind_(kind), param_(param) {}
  Kind kind_;
  std::uint64_t param_;
};

std::string to_string(const IndexUniverse& universe);

/// Finite-support vector with exact rational entries. Zeros are never stored,
/// so equality is structural.
class SparseVector {
 public:
  using Entries = std::map<Index, Rational>;

  explicit SparseVector(IndexUniverse universe) : universe_(universe) {}
  static SparseVector basis(IndexUniverse universe, const Index& index, const Rational& value = 1);

  const IndexUniverse& universe() const { return universe_; }
  const Entries& entries() const { return entries_; }
  std::size_t support_size() const { return entries_.size(); }
  bool is_zero() const { return entries_.empty(); }

  Rational get(const Index& index) const;
  void set(const Index& index, const Rational& value);
  void add(const Index& index, const Rational& value);

  SparseVector& operator+=(const SparseVector& other);
  SparseVector& operator-=(const SparseVector& other);
  SparseVector& operator*=(const Rational& c);

  friend SparseVector operator+(SparseVector a, const SparseVector& b) { return a += b; }
  friend SparseVector operator-(SparseVector a, const SparseVector& b) { return a -= b; }
  friend SparseVector operator*(const Rational& c, SparseVector v) { return v *= c; }
  friend SparseVector operator-(SparseVector v) { return v *= Rational(-1); }

  bool operator==(const SparseVector& other) const {
    return universe_.kind() == other.universe_.kind() && entries_ == other.entries_;
  }

 private:
  void check_compatible(const SparseVector& other);

  IndexUniverse universe_;
  Entries entries_;
};

// ---------------------------------------------------------------------------
// Norm families

struct C0Space {};
struct LpSpace {
  Rational p;
};
/// Block norm inside an l1-sum.
enum class BlockNorm { Sup, L1 };
/// l1-sum of blocks. An index without an explicit label forms its own block.
struct L1SumSpace {
  std::map<Index, Index> block_of;
  BlockNorm inner = BlockNorm::Sup;

  Index label(const Index& index) const {
    auto it = block_of.find(index);
    return it == block_of.end() ? index : it->second;
  }
};
struct JtSpace {};

using SpaceSpec = std::variant<C0Space, LpSpace, L1SumSpace, JtSpace>;

std::string space_name(const SpaceSpec& space);

struct ExactRational {
  Rational value;
};
/// value = norm^p
struct ExactPowerP {
  Rational value;
  Rational p;
};
/// value = norm^2
struct ExactSquare {
  Rational value;
};
using Certificate = std::variant<ExactRational, ExactPowerP, ExactSquare>;

/// A norm value carried by an exact certificate, with a 100-digit decimal evaluation.
class NormValue {
 public:
  static NormValue exact(const Rational& r);
  static NormValue square(const Rational& sq);
  static NormValue power(const Rational& r, const Rational& p);

  const Decimal& value() const { return value_; }
  const Certificate& certificate() const { return certificate_; }

  /// Exact integer power m with norm^m rational, when one exists (1, 2 or integral p).
  std::optional<unsigned> exact_power() const;
  /// norm^m as a rational; m must be a multiple of exact_power().
  Rational raised(unsigned m) const;
  bool is_zero() const;
  /// Certificate of |c| * norm in the same family.
  NormValue scaled(const Rational& c) const;

  std::string certificate_string() const;

 private:
  NormValue(Decimal value, Certificate cert) : value_(std::move(value)), certificate_(std::move(cert)) {}
  Decimal value_;
  Certificate certificate_;
};

/// Exact whenever both certificates share a common integral power; otherwise
/// a decimal comparison where differences within kDecimalTolerance are equal.
std::partial_ordering compare(const NormValue& a, const NormValue& b);
std::partial_ordering compare(const NormValue& a, const Rational& r);

NormValue norm(const SparseVector& v, const SpaceSpec& space);

/// Throws UniverseError when the universe cannot carry the space.
void check_space(const IndexUniverse& universe, const SpaceSpec& space);

// ---------------------------------------------------------------------------
// Functionals

struct CoordinateFunctional {
  Index index;
};
/// Sum of the coordinate functionals along a successor chain.
struct BranchFunctional {
  std::vector<DyadicNode> chain;
};
struct CombinationFunctional {
  std::map<Index, Rational> weights;
};
using Functional = std::variant<CoordinateFunctional, BranchFunctional, CombinationFunctional>;

/// Coefficient map of the functional; validates branch chains.
std::map<Index, Rational> functional_weights(const Functional& phi);

Rational apply_functional(const Functional& phi, const SparseVector& v);

SparseVector project(const SparseVector& v, const std::set<Index>& keep);

struct L1SumInequality {
  Rational lhs;  // max{|x+y|, |x-y|}
  Rational rhs;  // sum over A of |pi_i x| + sum over B of |pi_i y|
  bool holds() const { return lhs >= rhs; }
};

/// A and B are sets of block labels and must be disjoint.
L1SumInequality l1sum_inequality_check(const SparseVector& x, const SparseVector& y,
                                       const std::set<Index>& a, const std::set<Index>& b,
                                       const L1SumSpace& space);

// ---------------------------------------------------------------------------
// Vector file format:
//   universe <naturals|labels|dyadic> <param>
//   <index> <p/q>       (tree nodes written n:k)

/// Without a header line the vector lives in `fallback`, when given.
SparseVector read_vector(std::istream& in, const std::optional<IndexUniverse>& fallback = std::nullopt);
void write_vector(std::ostream& out, const SparseVector& v);

Index parse_index(const IndexUniverse& universe, std::string_view text);

}  // namespace rilab
