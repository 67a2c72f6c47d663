#include "rilab/dp_operators.hpp"

#include "generators.hpp"

#include <gtest/gtest.h>

#include <sstream>

using namespace rilab;
namespace gen = rilab::testing;

namespace {

SparseVector nat(std::initializer_list<std::pair<std::uint64_t, Rational>> entries) {
  SparseVector v(IndexUniverse::naturals());
  for (const auto& [i, x] : entries) v.set(i, x);
  return v;
}

SparseVector random_vector(gen::Rng& rng, std::size_t dim) {
  SparseVector v(IndexUniverse::naturals());
  for (int k = 0; k < 4; ++k) {
    v.set(static_cast<std::uint64_t>(gen::uniform(rng, 0, static_cast<std::int64_t>(dim) - 1)),
          gen::small_rational(rng, 5, 4));
  }
  return v;
}

MatrixOperator random_matrix(gen::Rng& rng, std::size_t dim) {
  MatrixOperator t = MatrixOperator::zero(dim);
  for (int k = 0; k < 12; ++k) {
    t.set(static_cast<std::uint64_t>(gen::uniform(rng, 0, static_cast<std::int64_t>(dim) - 1)),
          static_cast<std::uint64_t>(gen::uniform(rng, 0, static_cast<std::int64_t>(dim) - 1)),
          gen::small_rational(rng, 4, 3));
  }
  return t;
}

// Dense product as the reference.
SparseVector dense_apply(const MatrixOperator& t, const SparseVector& v) {
  std::vector<std::vector<Rational>> a(t.rows, std::vector<Rational>(t.cols, Rational(0)));
  for (const auto& [ij, x] : t.entries) a[ij.first][ij.second] = x;
  SparseVector out(IndexUniverse::naturals());
  for (std::size_t i = 0; i < t.rows; ++i) {
    Rational s = 0;
    for (std::size_t j = 0; j < t.cols; ++j) s += a[i][j] * v.get(std::uint64_t{j});
    out.set(std::uint64_t{i}, s);
  }
  return out;
}

std::vector<Partition> doubling(std::size_t from, std::size_t to) {
  std::vector<Partition> out;
  for (std::size_t n = from; n <= to; n *= 2) out.push_back(Partition::uniform(n));
  return out;
}

}  // namespace

TEST(MatrixApply, Examples) {
  auto v = nat({{0, Rational(2)}, {5, Rational(-1, 3)}});
  EXPECT_EQ(matrix_apply(MatrixOperator::identity(8), v), v);
  EXPECT_EQ(matrix_apply(MatrixOperator::dyadic_diagonal(8), nat({{3, Rational(1)}})), nat({{3, Rational(1, 8)}}));
  EXPECT_TRUE(matrix_apply(MatrixOperator::zero(8), v).is_zero());
  EXPECT_THROW(matrix_apply(MatrixOperator::identity(4), v), UniverseError);
  EXPECT_THROW(matrix_apply(MatrixOperator::identity(4), SparseVector(IndexUniverse::dyadic(3))), UniverseError);
  auto t = MatrixOperator::zero(3);
  EXPECT_THROW(t.set(3, 0, 1), UniverseError);
}

TEST(MatrixApplyProperty, MatchesDenseProductAndIsLinear) {
  gen::Rng rng(41);
  for (int trial = 0; trial < 200; ++trial) {
    auto t = random_matrix(rng, 6);
    auto x = random_vector(rng, 6);
    auto y = random_vector(rng, 6);
    Rational a = gen::small_rational(rng, 5, 5);
    EXPECT_EQ(matrix_apply(t, x), dense_apply(t, x));
    EXPECT_EQ(matrix_apply(t, a * x + y), a * matrix_apply(t, x) + matrix_apply(t, y));
  }
}

TEST(MatrixFile, RoundTripAndErrors) {
  gen::Rng rng(42);
  auto t = random_matrix(rng, 5);
  std::stringstream ss;
  write_matrix(ss, t);
  auto back = read_matrix(ss);
  EXPECT_EQ(back.rows, t.rows);
  EXPECT_EQ(back.cols, t.cols);
  EXPECT_EQ(back.entries, t.entries);

  auto line_of = [](const std::string& text) -> std::size_t {
    std::stringstream in(text);
    try {
      read_matrix(in);
    } catch (const ParseError& e) {
      return e.line();
    }
    return 0;
  };
  EXPECT_EQ(line_of("2 2\n0 0 1\n0 1 x\n"), 3U);
  EXPECT_EQ(line_of("# header next\n2 2 2\n"), 2U);
  EXPECT_EQ(line_of("2 2\n2 0 1\n"), 2U);
  EXPECT_EQ(line_of("2 2\n0 0 1\n0 0 2\n"), 3U);
  EXPECT_EQ(line_of("2 2\n0 -1 1\n"), 2U);
  EXPECT_NE(line_of(""), 1U);
  std::stringstream empty("");
  EXPECT_THROW(read_matrix(empty), ParseError);
}

TEST(SequenceSpec, Validation) {
  EXPECT_NO_THROW(validate_sequence(canonical_basis_sequence(), LpSpace{2}, 16));
  auto growing = scaled_basis_sequence([](unsigned n) { return Rational(n); }, Rational(4));
  EXPECT_THROW(validate_sequence(growing, LpSpace{2}, 8), DomainError);
  auto bounded = scaled_basis_sequence([](unsigned n) { return Rational(n); }, Rational(8));
  EXPECT_NO_THROW(validate_sequence(bounded, LpSpace{2}, 8));
  // At horizon 4 the pairings with e_2 and e_3 sit in the tail window.
  EXPECT_THROW(validate_sequence(bounded, LpSpace{2}, 4), DomainError);
  auto e0 = nat({{0, Rational(1)}});
  auto stuck = user_sequence(std::vector<SparseVector>(8, e0), Rational(1), {CoordinateFunctional{std::uint64_t{0}}});
  EXPECT_THROW(validate_sequence(stuck, LpSpace{2}, 8), DomainError);
  EXPECT_THROW(validate_sequence(stuck, LpSpace{2}, 9), DomainError);
  EXPECT_THROW(validate_sequence(canonical_basis_sequence(), LpSpace{2}, 1), DomainError);
}

TEST(DpTest, Examples) {
  auto xs = canonical_basis_sequence();
  auto pass = dp_test(MatrixOperator::dyadic_diagonal(32), xs, 16, Rational(1, 100));
  EXPECT_TRUE(pass.pass);
  ASSERT_EQ(pass.tail.size(), 9U);
  for (const auto& [n, y] : pass.tail) {
    EXPECT_EQ(y.raised(2), pow2(-2 * static_cast<int>(n)));
    EXPECT_NE(compare(y, pow2(-8)), std::partial_ordering::greater);
  }

  auto fail = dp_test(MatrixOperator::identity(32), xs, 16, Rational(1, 100));
  EXPECT_FALSE(fail.pass);
  EXPECT_EQ(fail.witness, 8U);
  ASSERT_TRUE(fail.witness_norm);
  EXPECT_EQ(compare(*fail.witness_norm, Rational(1)), std::partial_ordering::equivalent);

  auto zero = dp_test(MatrixOperator::zero(32), xs, 16, Rational(1, 100));
  EXPECT_TRUE(zero.pass);
  for (const auto& [n, y] : zero.tail) EXPECT_TRUE(y.is_zero());

  EXPECT_THROW(dp_test(MatrixOperator::identity(32), xs, 16, 0), DomainError);
}

TEST(DpTestProperty, VerdictIsMonotoneInEta) {
  gen::Rng rng(43);
  auto xs = canonical_basis_sequence();
  for (int trial = 0; trial < 60; ++trial) {
    std::vector<Rational> d;
    for (int n = 0; n < 20; ++n) d.emplace_back(gen::uniform(rng, 0, 8), gen::uniform(rng, 1, 64));
    auto t = MatrixOperator::diagonal(d);
    Rational eta(gen::uniform(rng, 1, 16), 16);
    bool at_eta = dp_test(t, xs, 16, eta).pass;
    for (int k = 1; k <= 4; ++k) {
      if (at_eta) EXPECT_TRUE(dp_test(t, xs, 16, eta + Rational(k, 7)).pass);
    }
    bool all_small = true;
    for (unsigned n = 8; n <= 16; ++n) all_small = all_small && abs(d[n]) < eta;
    EXPECT_EQ(at_eta, all_small);
  }
}

TEST(DpDemo, IdentityReproducesTheKadetsThreshold) {
  auto report = dp_riemann_demo(MatrixOperator::identity(64), canonical_basis_sequence(), hat_g(), doubling(4, 256),
                                16, Rational(1, 100));
  EXPECT_TRUE(report.fail_branch);
  EXPECT_TRUE(report.consistent);
  EXPECT_EQ(report.threshold, Rational(1, 3));
  const std::vector<Rational> frozen{1, 1, Rational(49, 64), Rational(49, 64), Rational(49, 64), Rational(169, 256),
                                     Rational(1, 4)};
  ASSERT_EQ(report.rows.size(), frozen.size());
  for (std::size_t i = 0; i < frozen.size(); ++i) {
    EXPECT_EQ(report.rows[i].value.raised(2), frozen[i]);
    EXPECT_EQ(compare(report.rows[i].value, Rational(1, 3)), std::partial_ordering::greater);
  }
}

TEST(DpDemo, ScaledWitnessesAreRenormalized) {
  std::vector<Rational> d(64, Rational(1, 2));
  auto report = dp_riemann_demo(MatrixOperator::diagonal(d), canonical_basis_sequence(), hat_g(), doubling(4, 64), 16,
                                Rational(1, 100));
  EXPECT_TRUE(report.fail_branch);
  EXPECT_TRUE(report.consistent);
  EXPECT_EQ(report.rows.front().value.raised(2), 1);
}

TEST(DpDemo, DyadicDiagonalGivesStrictlyDecreasingGaps) {
  auto report = dp_riemann_demo(MatrixOperator::dyadic_diagonal(64), canonical_basis_sequence(), hat_g(),
                                doubling(4, 256), 16, Rational(1, 100));
  EXPECT_FALSE(report.fail_branch);
  EXPECT_TRUE(report.consistent);
  EXPECT_TRUE(report.strictly_decreasing);
  const std::vector<Rational> gaps{Rational(5, 256),   Rational(5, 1024), Rational(65, 65536),
                                   Rational(17, 65536), Rational(5, 65536), Rational(1, 262144)};
  ASSERT_EQ(report.rows.size(), gaps.size() + 1);
  for (std::size_t i = 0; i < gaps.size(); ++i) {
    ASSERT_TRUE(report.rows[i].gap);
    EXPECT_EQ(report.rows[i].gap->raised(2), gaps[i]);
  }
  EXPECT_FALSE(report.rows.back().gap);
}

TEST(DpDemo, ZeroOperatorSumsVanish) {
  auto report = dp_riemann_demo(MatrixOperator::zero(64), canonical_basis_sequence(), hat_g(), doubling(4, 64), 16,
                                Rational(1, 100));
  EXPECT_FALSE(report.fail_branch);
  for (const auto& row : report.rows) {
    EXPECT_TRUE(row.value.is_zero());
    if (row.gap) EXPECT_TRUE(row.gap->is_zero());
  }
  EXPECT_FALSE(report.strictly_decreasing);
}

TEST(DpDemo, RenormalizationErrors) {
  std::vector<Rational> d(64, Rational(1));
  for (std::size_t n = 10; n < 64; ++n) d[n] = 0;
  EXPECT_THROW(dp_riemann_demo(MatrixOperator::diagonal(d), canonical_basis_sequence(), hat_g(), doubling(4, 8), 16,
                               Rational(1, 100)),
               DomainError);
  auto t = MatrixOperator::identity(64);
  for (std::uint64_t n = 8; n < 20; ++n) t.set(n + 30, n, 1);
  EXPECT_THROW(dp_riemann_demo(t, canonical_basis_sequence(), hat_g(), doubling(4, 8), 16, Rational(1, 100)),
               DomainError);
}
