#include "rilab/spaces.hpp"

#include "generators.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace rilab;
using rilab::testing::Rng;

namespace {

SparseVector nat(std::initializer_list<std::pair<std::uint64_t, Rational>> entries) {
  SparseVector v(IndexUniverse::naturals());
  for (const auto& [i, x] : entries) v.set(i, x);
  return v;
}

Index at(std::uint64_t i) { return Index{i}; }

bool same(const NormValue& a, const NormValue& b) { return compare(a, b) == std::partial_ordering::equivalent; }

}  // namespace

TEST(DyadicNode, Geometry) {
  DyadicNode n{2, 3};
  EXPECT_EQ(n.point(), Rational(5, 8));
  EXPECT_EQ(n.range_lo(), Rational(1, 2));
  EXPECT_EQ(n.range_hi(), Rational(3, 4));
  EXPECT_EQ(n.parent(), (DyadicNode{1, 2}));
  EXPECT_TRUE(n.is_successor_of({1, 2}));
  EXPECT_FALSE(n.is_successor_of({1, 1}));
  EXPECT_TRUE(DyadicNode::root().is_ancestor_or_self_of(n));
  EXPECT_TRUE((DyadicNode{1, 2}).is_ancestor_or_self_of(n));
  EXPECT_FALSE((DyadicNode{1, 1}).is_ancestor_or_self_of(n));
  EXPECT_FALSE((DyadicNode{2, 5}).valid());
  EXPECT_FALSE((DyadicNode{1, 0}).valid());
}

TEST(Universe, Membership) {
  auto labels = IndexUniverse::labels(3);
  EXPECT_TRUE(labels.contains(Index{std::uint64_t{2}}));
  EXPECT_FALSE(labels.contains(Index{std::uint64_t{3}}));
  EXPECT_FALSE(labels.contains(Index{DyadicNode{0, 1}}));
  auto tree = IndexUniverse::dyadic(2);
  EXPECT_TRUE(tree.contains(Index{DyadicNode{2, 4}}));
  EXPECT_FALSE(tree.contains(Index{DyadicNode{3, 1}}));
  EXPECT_THROW(IndexUniverse::dyadic(63), DomainError);
  SparseVector v(labels);
  EXPECT_THROW(v.set(std::uint64_t{7}, 1), UniverseError);
}

TEST(SparseVector, ArithmeticDropsZeros) {
  auto a = nat({{1, 2}, {3, Rational(1, 2)}});
  auto b = nat({{1, -2}, {4, 1}});
  auto s = a + b;
  EXPECT_EQ(s.support_size(), 2U);
  EXPECT_EQ(s.get(at(1)), 0);
  EXPECT_EQ(s.get(at(4)), 1);
  EXPECT_EQ(a - a, SparseVector(IndexUniverse::naturals()));
  EXPECT_TRUE((Rational(0) * a).is_zero());
  EXPECT_EQ((Rational(2) * a).get(at(3)), 1);
}

TEST(SparseVector, MixedUniversesRejected) {
  auto a = nat({{1, 1}});
  auto b = SparseVector::basis(IndexUniverse::dyadic(3), DyadicNode{1, 1});
  EXPECT_THROW(a + b, UniverseError);
}

TEST(Norms, Examples) {
  auto v = nat({{0, 3}, {1, -4}});
  EXPECT_EQ(std::get<ExactRational>(norm(v, C0Space{}).certificate()).value, 4);
  EXPECT_EQ(std::get<ExactRational>(norm(v, LpSpace{1}).certificate()).value, 7);
  EXPECT_EQ(std::get<ExactSquare>(norm(v, LpSpace{2}).certificate()).value, 25);
  EXPECT_TRUE(same(norm(v, LpSpace{2}), NormValue::exact(5)));
  auto p3 = norm(v, LpSpace{3});
  EXPECT_EQ(std::get<ExactPowerP>(p3.certificate()).value, 91);
  EXPECT_TRUE(compare(p3, Rational(4)) == std::partial_ordering::greater);
  EXPECT_TRUE(compare(p3, Rational(5)) == std::partial_ordering::less);
}

TEST(Norms, FractionalExponentNeedsRationalPowers) {
  auto squares = nat({{0, 4}, {1, 9}});
  auto n = norm(squares, LpSpace{Rational(3, 2)});
  EXPECT_EQ(std::get<ExactPowerP>(n.certificate()).value, 35);
  EXPECT_THROW(norm(nat({{0, 2}}), LpSpace{Rational(3, 2)}), DomainError);
  EXPECT_THROW(norm(squares, LpSpace{Rational(1, 2)}), DomainError);
}

TEST(Norms, L1SumBlocks) {
  L1SumSpace space;
  space.block_of[Index{std::uint64_t{0}}] = Index{std::uint64_t{100}};
  space.block_of[Index{std::uint64_t{1}}] = Index{std::uint64_t{100}};
  auto v = nat({{0, 2}, {1, -3}, {2, 5}});
  EXPECT_EQ(std::get<ExactRational>(norm(v, space).certificate()).value, 8);
  space.inner = BlockNorm::L1;
  EXPECT_EQ(std::get<ExactRational>(norm(v, space).certificate()).value, 10);
}

TEST(Norms, JtRequiresTree) {
  EXPECT_THROW(norm(nat({{0, 1}}), JtSpace{}), UniverseError);
  auto e = SparseVector::basis(IndexUniverse::dyadic(4), DyadicNode{0, 1});
  EXPECT_EQ(std::get<ExactSquare>(norm(e, JtSpace{}).certificate()).value, 1);
}

TEST(Norms, CompareAcrossFamilies) {
  EXPECT_TRUE(compare(NormValue::square(2), NormValue::exact(Rational(3, 2))) == std::partial_ordering::less);
  EXPECT_TRUE(compare(NormValue::square(4), NormValue::exact(2)) == std::partial_ordering::equivalent);
  EXPECT_TRUE(compare(NormValue::power(8, 3), NormValue::square(4)) == std::partial_ordering::equivalent);
  EXPECT_TRUE(compare(NormValue::square(2), Rational(-1)) == std::partial_ordering::greater);
  auto fractional = NormValue::power(8, Rational(3, 2));
  EXPECT_TRUE(compare(fractional, NormValue::exact(4)) == std::partial_ordering::equivalent);
}

TEST(Norms, ScalingKeepsFamily) {
  EXPECT_EQ(std::get<ExactSquare>(NormValue::square(2).scaled(Rational(-1, 2)).certificate()).value, Rational(1, 2));
  EXPECT_EQ(std::get<ExactPowerP>(NormValue::power(5, 3).scaled(2).certificate()).value, 40);
}

TEST(NormProperties, TriangleAndHomogeneity) {
  Rng rng(7);
  std::vector<SpaceSpec> spaces{C0Space{}, LpSpace{1}, LpSpace{2}, LpSpace{3}};
  for (int trial = 0; trial < 300; ++trial) {
    SparseVector x(IndexUniverse::naturals());
    SparseVector y(IndexUniverse::naturals());
    for (int k = 0; k < 6; ++k) {
      x.set(at(rilab::testing::uniform(rng, 0, 9)), rilab::testing::small_rational(rng, 9, 5));
      y.set(at(rilab::testing::uniform(rng, 0, 9)), rilab::testing::small_rational(rng, 9, 5));
    }
    Rational c = rilab::testing::small_rational(rng, 7, 4);
    for (const auto& space : spaces) {
      auto nx = norm(x, space);
      auto ny = norm(y, space);
      auto nxy = norm(x + y, space);
      EXPECT_LE(nxy.value(), nx.value() + ny.value() + kDecimalTolerance);
      EXPECT_TRUE(same(norm(c * x, space), nx.scaled(c)));
    }
  }
}

TEST(Functionals, BranchAndCoordinate) {
  auto v = SparseVector::basis(IndexUniverse::dyadic(4), DyadicNode{0, 1}, 2);
  v.set(DyadicNode{1, 2}, 3);
  v.set(DyadicNode{1, 1}, 5);
  BranchFunctional branch{{{0, 1}, {1, 2}, {2, 4}}};
  EXPECT_EQ(apply_functional(branch, v), 5);
  EXPECT_EQ(apply_functional(CoordinateFunctional{DyadicNode{1, 1}}, v), 5);
  EXPECT_THROW(apply_functional(BranchFunctional{{{0, 1}, {2, 1}}}, v), DomainError);
  EXPECT_THROW(apply_functional(BranchFunctional{{}}, v), DomainError);
  CombinationFunctional mix{{{Index{DyadicNode{0, 1}}, Rational(1, 2)}, {Index{DyadicNode{1, 2}}, -1}}};
  EXPECT_EQ(apply_functional(mix, v), -2);
  EXPECT_THROW(apply_functional(CoordinateFunctional{DyadicNode{9, 1}}, v), UniverseError);
}

TEST(Functionals, Projection) {
  auto v = nat({{0, 1}, {1, 2}, {2, 3}});
  auto p = project(v, {Index{std::uint64_t{1}}, Index{std::uint64_t{5}}});
  EXPECT_EQ(p, nat({{1, 2}}));
}

TEST(L1Sum, InequalityExample) {
  L1SumSpace space;
  for (std::uint64_t i = 0; i < 4; ++i) space.block_of[Index{i}] = Index{i / 2};
  auto x = nat({{0, 1}, {1, -1}});
  auto y = nat({{2, 2}});
  auto r = l1sum_inequality_check(x, y, {Index{std::uint64_t{0}}}, {Index{std::uint64_t{1}}}, space);
  EXPECT_EQ(r.lhs, 3);
  EXPECT_EQ(r.rhs, 3);
  EXPECT_TRUE(r.holds());
  EXPECT_THROW(l1sum_inequality_check(x, y, {Index{std::uint64_t{0}}}, {Index{std::uint64_t{0}}}, space),
               DomainError);
}

TEST(VectorFile, RoundTrip) {
  auto v = SparseVector::basis(IndexUniverse::dyadic(5), DyadicNode{3, 5}, Rational(-2, 7));
  v.set(DyadicNode{0, 1}, 1);
  std::stringstream s;
  write_vector(s, v);
  EXPECT_EQ(read_vector(s), v);
}

TEST(VectorFile, ParseErrorsNameTheLine) {
  std::istringstream bad("universe dyadic 4\n# comment\n0:1 1\n1:1 x\n");
  try {
    read_vector(bad);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 4U);
  }
  std::istringstream missing("0:1 1\n");
  EXPECT_THROW(read_vector(missing), ParseError);
  std::istringstream outside("universe dyadic 1\n2:1 1\n");
  EXPECT_THROW(read_vector(outside), ParseError);
  std::istringstream duplicate("universe naturals 0\n3 1\n3 2\n");
  EXPECT_THROW(read_vector(duplicate), ParseError);
}
