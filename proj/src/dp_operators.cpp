#include "rilab/dp_operators.hpp"

#include <algorithm>
#include <charconv>
#include <future>
#include <istream>
#include <memory>
#include <ostream>
#include <set>
#include <sstream>

namespace rilab {

namespace {

std::uint64_t natural_index(const Index& index) {
  const auto* n = std::get_if<std::uint64_t>(&index);
  if (n == nullptr) throw UniverseError("matrix operators act on naturals indices, got " + to_string(index));
  return *n;
}

std::optional<Rational> rational_norm(const NormValue& v) {
  auto m = v.exact_power();
  if (!m) return std::nullopt;
  return exact_root(v.raised(*m), *m);
}

}  // namespace

MatrixOperator MatrixOperator::identity(std::size_t dim, SpaceSpec space) {
  return diagonal(std::vector<Rational>(dim, Rational(1)), std::move(space));
}

MatrixOperator MatrixOperator::zero(std::size_t dim, SpaceSpec space) {
  MatrixOperator t;
  t.rows = t.cols = dim;
  t.domain = space;
  t.codomain = std::move(space);
  return t;
}

MatrixOperator MatrixOperator::diagonal(const std::vector<Rational>& d, SpaceSpec space) {
  MatrixOperator t = zero(d.size(), std::move(space));
  for (std::size_t n = 0; n < d.size(); ++n) t.set(n, n, d[n]);
  return t;
}

MatrixOperator MatrixOperator::dyadic_diagonal(std::size_t dim, SpaceSpec space) {
  std::vector<Rational> d;
  for (std::size_t n = 0; n < dim; ++n) d.push_back(pow2(-static_cast<int>(n)));
  return diagonal(d, std::move(space));
}

void MatrixOperator::set(std::uint64_t i, std::uint64_t j, const Rational& x) {
  if (i >= rows || j >= cols) {
    throw UniverseError("entry (" + std::to_string(i) + ", " + std::to_string(j) + ") outside a " +
                        std::to_string(rows) + "x" + std::to_string(cols) + " matrix");
  }
  if (x == 0) {
    entries.erase({i, j});
  } else {
    entries[{i, j}] = x;
  }
}

LinearMap MatrixOperator::as_map() const {
  MatrixOperator copy = *this;
  return {[copy](const SparseVector& v) { return matrix_apply(copy, v); }, IndexUniverse::naturals(), codomain};
}

SparseVector matrix_apply(const MatrixOperator& t, const SparseVector& v) {
  if (v.universe().kind() != IndexUniverse::Kind::Naturals) {
    throw UniverseError("matrix operators act on naturals vectors, got " + to_string(v.universe()));
  }
  std::map<std::uint64_t, std::vector<std::pair<std::uint64_t, const Rational*>>> by_col;
  for (const auto& [ij, x] : t.entries) by_col[ij.second].emplace_back(ij.first, &x);
  SparseVector out(IndexUniverse::naturals());
  for (const auto& [index, x] : v.entries()) {
    std::uint64_t j = natural_index(index);
    if (j >= t.cols) throw UniverseError("coordinate " + std::to_string(j) + " outside the operator's domain");
    auto it = by_col.find(j);
    if (it == by_col.end()) continue;
    for (const auto& [i, a] : it->second) out.add(i, *a * x);
  }
  return out;
}

MatrixOperator read_matrix(std::istream& in, SpaceSpec domain, SpaceSpec codomain) {
  std::string raw;
  std::size_t line_no = 0;
  std::optional<MatrixOperator> t;
  std::set<std::pair<std::uint64_t, std::uint64_t>> seen;
  while (std::getline(in, raw)) {
    ++line_no;
    std::istringstream line(raw.substr(0, raw.find('#')));
    std::vector<std::string> words;
    for (std::string w; line >> w;) words.push_back(w);
    if (words.empty()) continue;
    auto number = [&](const std::string& w) {
      std::uint64_t n = 0;
      auto [p, ec] = std::from_chars(w.data(), w.data() + w.size(), n);
      if (ec != std::errc() || p != w.data() + w.size()) throw ParseError(line_no, "bad index '" + w + "'");
      return n;
    };
    if (!t) {
      if (words.size() != 2) throw ParseError(line_no, "expected header `rows cols`");
      t = MatrixOperator::zero(0, domain);
      t->rows = number(words[0]);
      t->cols = number(words[1]);
      t->codomain = codomain;
      continue;
    }
    if (words.size() != 3) throw ParseError(line_no, "expected `i j p/q`");
    auto x = try_parse_rational(words[2]);
    if (!x) throw ParseError(line_no, "bad entry '" + words[2] + "'");
    std::uint64_t i = number(words[0]);
    std::uint64_t j = number(words[1]);
    if (!seen.insert({i, j}).second) throw ParseError(line_no, "duplicate entry");
    try {
      t->set(i, j, *x);
    } catch (const UniverseError& e) {
      throw ParseError(line_no, e.what());
    }
  }
  if (!t) throw ParseError(line_no, "missing header");
  return *t;
}

void write_matrix(std::ostream& out, const MatrixOperator& t) {
  out << t.rows << ' ' << t.cols << '\n';
  for (const auto& [ij, x] : t.entries) out << ij.first << ' ' << ij.second << ' ' << to_string(x) << '\n';
}

// ---------------------------------------------------------------------------

SequenceSpec canonical_basis_sequence() {
  std::vector<Functional> phis;
  for (std::uint64_t k = 0; k < 4; ++k) phis.emplace_back(CoordinateFunctional{k});
  return {"canonical", [](unsigned n) { return SparseVector::basis(IndexUniverse::naturals(), std::uint64_t{n}); },
          Rational(1), std::move(phis)};
}

SequenceSpec scaled_basis_sequence(std::function<Rational(unsigned)> scale, Rational bound) {
  std::vector<Functional> phis;
  for (std::uint64_t k = 0; k < 4; ++k) phis.emplace_back(CoordinateFunctional{k});
  return {"scaled",
          [scale](unsigned n) { return SparseVector::basis(IndexUniverse::naturals(), std::uint64_t{n}, scale(n)); },
          std::move(bound), std::move(phis)};
}

SequenceSpec user_sequence(std::vector<SparseVector> list, Rational bound, std::vector<Functional> null_against) {
  auto shared = std::make_shared<const std::vector<SparseVector>>(std::move(list));
  return {"user",
          [shared](unsigned n) {
            if (n < 1 || n > shared->size()) {
              throw DomainError("user sequence has " + std::to_string(shared->size()) + " terms, asked for " +
                                std::to_string(n));
            }
            return (*shared)[n - 1];
          },
          std::move(bound), std::move(null_against)};
}

namespace {

unsigned tail_start(unsigned horizon) { return (horizon + 1) / 2; }

}  // namespace

void validate_sequence(const SequenceSpec& xs, const SpaceSpec& space, unsigned horizon) {
  if (horizon < 2) throw DomainError("horizon must be at least 2");
  std::vector<SparseVector> terms;
  for (unsigned n = 1; n <= horizon; ++n) {
    terms.push_back(xs.at(n));
    if (compare(norm(terms.back(), space), xs.bound) == std::partial_ordering::greater) {
      throw DomainError("bound violation: ||x_" + std::to_string(n) + "|| exceeds the declared " + to_string(xs.bound));
    }
  }
  const unsigned start = tail_start(horizon);
  for (std::size_t k = 0; k < xs.null_against.size(); ++k) {
    Rational head = 0;
    Rational tail = 0;
    for (unsigned n = 1; n <= horizon; ++n) {
      Rational x = abs(apply_functional(xs.null_against[k], terms[n - 1]));
      Rational& side = n < start ? head : tail;
      side = std::max(side, x);
    }
    if (tail != 0 && !(tail < head)) {
      throw DomainError("sequence '" + xs.name + "' is not null against declared functional " + std::to_string(k) +
                        " up to horizon " + std::to_string(horizon));
    }
  }
}

DpVerdict dp_test(const MatrixOperator& t, const SequenceSpec& xs, unsigned horizon, const Rational& eta) {
  if (eta <= 0) throw DomainError("eta must be positive");
  validate_sequence(xs, t.domain, horizon);
  DpVerdict v;
  v.horizon = horizon;
  v.eta = eta;
  v.pass = true;
  for (unsigned n = tail_start(horizon); n <= horizon; ++n) {
    NormValue y = norm(matrix_apply(t, xs.at(n)), t.codomain);
    if (v.pass && compare(y, eta) != std::partial_ordering::less) {
      v.pass = false;
      v.witness = n;
      v.witness_norm = y;
    }
    v.tail.emplace_back(n, std::move(y));
  }
  return v;
}

DpDemoReport dp_riemann_demo(const MatrixOperator& t, const SequenceSpec& xs, const PiecewiseLinearScalar& g,
                             const std::vector<Partition>& partitions, unsigned horizon, const Rational& eta,
                             unsigned stages) {
  DpDemoReport report;
  report.verdict = dp_test(t, xs, horizon, eta);
  report.fail_branch = !report.verdict.pass;
  report.stages = stages;
  report.threshold = g.sup_norm() / 3;
  const LinearMap tmap = t.as_map();

  if (report.fail_branch) {
    const unsigned first = report.verdict.witness;
    std::vector<SparseVector> renormalized;
    for (unsigned m = 1; m <= stages; ++m) {
      SparseVector x = xs.at(first + m - 1);
      NormValue y = norm(matrix_apply(t, x), t.codomain);
      if (y.is_zero()) {
        throw DomainError("renormalization impossible: ||T x_" + std::to_string(first + m - 1) + "|| = 0");
      }
      auto r = rational_norm(y);
      if (!r) throw DomainError("renormalization needs a rational norm ||T x_" + std::to_string(first + m - 1) + "||");
      renormalized.push_back((1 / *r) * x);
    }
    auto shared = std::make_shared<const std::vector<SparseVector>>(std::move(renormalized));
    VectorSequence seq{[shared](unsigned n) { return (*shared)[n - 1]; }, IndexUniverse::naturals(), t.domain,
                       xs.bound};
    KadetsFunction f(g, fat_cantor(stages), seq);
    std::vector<std::future<DpDemoRow>> jobs;
    for (const auto& p : partitions) {
      jobs.push_back(std::async(std::launch::async, [&f, &tmap, &p] {
        auto lb = kadets_sum_lowerbound(f, p, tmap);
        return DpDemoRow{p.size(), lb.achieved, std::nullopt, lb.exceeds()};
      }));
    }
    for (auto& j : jobs) report.rows.push_back(j.get());
    report.consistent = std::all_of(report.rows.begin(), report.rows.end(), [](const auto& r) { return r.ok; });
    return report;
  }

  VectorSequence seq{xs.at, IndexUniverse::naturals(), t.domain, xs.bound};
  KadetsFunction f(g, fat_cantor(stages), seq);
  std::vector<std::future<SparseVector>> jobs;
  for (const auto& p : partitions) {
    jobs.push_back(std::async(std::launch::async, [&f, &tmap, &p] {
      return tmap.apply(riemann_sum(f, kadets_sum_lowerbound(f, p, tmap).tags));
    }));
  }
  std::vector<SparseVector> sums;
  for (auto& j : jobs) sums.push_back(j.get());
  report.consistent = true;
  report.strictly_decreasing = true;
  for (std::size_t i = 0; i < sums.size(); ++i) {
    DpDemoRow row{partitions[i].size(), norm(sums[i], t.codomain), std::nullopt, true};
    for (std::size_t j = i + 1; j < sums.size(); ++j) {
      NormValue d = norm(sums[i] - sums[j], t.codomain);
      if (!row.gap || compare(d, *row.gap) == std::partial_ordering::greater) row.gap = d;
    }
    if (row.gap && i > 0 && report.rows.back().gap) {
      auto c = compare(*row.gap, *report.rows.back().gap);
      row.ok = c != std::partial_ordering::greater;
      report.strictly_decreasing = report.strictly_decreasing && c == std::partial_ordering::less;
    }
    report.consistent = report.consistent && row.ok;
    report.rows.push_back(std::move(row));
  }
  if (sums.size() < 3) report.strictly_decreasing = false;
  return report;
}

}  // namespace rilab
