#include "rilab/commands.hpp"

#include "rilab/dp_operators.hpp"
#include "rilab/gallery.hpp"
#include "rilab/jt_norm.hpp"

#include <algorithm>
#include <charconv>
#include <chrono>
#include <future>
#include <istream>
#include <ostream>
#include <set>

namespace rilab {

namespace {

constexpr unsigned kJtMaxN = 8;
constexpr std::size_t kJtOracleSupport = 12;
constexpr unsigned kDpDim = 64;
constexpr unsigned kDpHorizon = 16;
constexpr int kL1SumCases = 1000;
constexpr int kL1SumBlocks = 8;
constexpr const char* kDefaultKadetsPartitions = "uniform:4..256+random:20";
constexpr const char* kDefaultDpPartitions = "uniform:4..256";

std::uint64_t parse_count(std::string_view text, std::string_view spec) {
  std::uint64_t n = 0;
  auto [p, ec] = std::from_chars(text.data(), text.data() + text.size(), n);
  if (ec != std::errc() || p != text.data() + text.size()) {
    throw DomainError("bad number '" + std::string(text) + "' in partition spec '" + std::string(spec) + "'");
  }
  return n;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  while (true) {
    auto at = s.find(sep);
    out.push_back(s.substr(0, at));
    if (at == std::string_view::npos) return out;
    s.remove_prefix(at + 1);
  }
}

class Stopwatch {
 public:
  std::uint64_t elapsed_ms() const {
    auto d = std::chrono::steady_clock::now() - start_;
    return static_cast<std::uint64_t>(std::chrono::duration_cast<std::chrono::milliseconds>(d).count());
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

RunReport new_report(const CommandOptions& opts) {
  RunReport r;
  r.version = RILAB_VERSION;
  r.command = opts.command_line;
  return r;
}

void finish(RunReport& r, const Stopwatch& clock) {
  r.timing_ms = clock.elapsed_ms();
  r.notes.emplace_back(kLimitationNote);
}

Rational square_of(const NormValue& v) { return v.raised(2); }

unsigned positive_or(const std::optional<unsigned>& x, unsigned fallback, const char* flag, unsigned lo,
                     unsigned hi) {
  unsigned v = x.value_or(fallback);
  if (v < lo || v > hi) {
    throw DomainError(std::string("--") + flag + " must lie in " + std::to_string(lo) + ".." + std::to_string(hi));
  }
  return v;
}

std::string partition_label(std::size_t i) { return "partition-" + std::to_string(i + 1); }

KadetsFunction standard_kadets(unsigned stages) {
  return KadetsFunction(hat_g(), fat_cantor(stages), canonical_l2_basis());
}

// ---------------------------------------------------------------------------

RunReport verify_jt(const CommandOptions& opts) {
  Stopwatch clock;
  RunReport r = new_report(opts);
  const unsigned n = positive_or(opts.n, kJtMaxN, "N", 1, kJtMaxN);
  r.params.emplace_back("N", std::to_string(n));
  std::vector<std::future<JtWorstCase>> jobs;
  for (unsigned k = 1; k <= n; ++k) jobs.push_back(std::async(std::launch::async, [k] { return jt_worstcase_bound(k); }));
  std::vector<Rational> achieved;
  for (unsigned k = 1; k <= n; ++k) {
    JtWorstCase w = jobs[k - 1].get();
    r.add_check("bound-N" + std::to_string(k), w.holds()).values = {{"achieved2", w.achieved_square},
                                                                      {"bound2", w.bound_square}};
    achieved.push_back(w.achieved_square);
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < achieved.size(); ++i) decreasing = decreasing && achieved[i] < achieved[i - 1];
  r.add_check("achieved-decreasing", decreasing).values = {{"first2", achieved.front()}, {"last2", achieved.back()}};
  finish(r, clock);
  return r;
}

RunReport verify_kadets(const CommandOptions& opts) {
  Stopwatch clock;
  RunReport r = new_report(opts);
  const unsigned stages = positive_or(opts.stages, 8, "stages", 1, 8);
  const std::string spec = opts.partitions.value_or(kDefaultKadetsPartitions);
  r.params.emplace_back("stages", std::to_string(stages));
  r.params.emplace_back("partitions", spec);
  r.params.emplace_back("seed", std::to_string(opts.seed));
  const auto partitions = parse_partition_spec(spec, opts.seed);
  const KadetsFunction f = standard_kadets(stages);
  const LinearMap id = identity_map(f.sequence());
  std::vector<std::future<KadetsLowerBound>> jobs;
  for (const auto& p : partitions) {
    jobs.push_back(std::async(std::launch::async, [&f, &id, &p] { return kadets_sum_lowerbound(f, p, id); }));
  }
  for (std::size_t i = 0; i < partitions.size(); ++i) {
    KadetsLowerBound lb = jobs[i].get();
    r.add_check(partition_label(i), lb.exceeds()).values = {{"cells", Rational(partitions[i].size())},
                                                           {"achieved2", square_of(lb.achieved)},
                                                           {"threshold", lb.threshold},
                                                           {"stage", Rational(lb.stage)}};
  }
  for (std::uint64_t k = 1; k <= stages; ++k) {
    Rational integral = f.trace_integral(CoordinateFunctional{k});
    r.add_check("trace-integral-e" + std::to_string(k), integral == 0).values = {{"integral", integral}};
  }
  finish(r, clock);
  return r;
}

Rational char_c0_bound(unsigned m) {
  return pow(Rational(2, 3), m) + 2 * pow(Rational(2), m) * pow(Rational(1, 3), m);
}

CharSum char_sum_at(unsigned m, const SpaceSpec& space) {
  std::size_t cells = 1;
  for (unsigned i = 0; i < m; ++i) cells *= 3;
  return char_family_sum_sup(make_char_family(null_cantor(m)), Partition::uniform(cells), space);
}

RunReport verify_char_c0(const CommandOptions& opts) {
  Stopwatch clock;
  RunReport r = new_report(opts);
  const unsigned stages = positive_or(opts.stages, 6, "stages", 2, 8);
  r.params.emplace_back("stages", std::to_string(stages));
  std::vector<Rational> values;
  for (unsigned m = 2; m <= stages; ++m) {
    CharSum s = char_sum_at(m, C0Space{});
    Rational v = s.value.raised(1);
    Rational bound = char_c0_bound(m);
    r.add_check("sup-m" + std::to_string(m), v <= bound).values = {
        {"value", v}, {"bound", bound}, {"max_cover", s.max_cover}, {"union_cover", s.union_cover}};
    values.push_back(v);
  }
  bool decreasing = true;
  for (std::size_t i = 1; i < values.size(); ++i) decreasing = decreasing && values[i] < values[i - 1];
  r.add_check("sup-decreasing", decreasing);
  finish(r, clock);
  return r;
}

RunReport verify_char_lp(const CommandOptions& opts) {
  Stopwatch clock;
  RunReport r = new_report(opts);
  const unsigned p = positive_or(opts.p, 2, "p", 1, 8);
  const Rational eps = opts.eps.value_or(Rational(1, 16));
  if (eps <= 0 || eps > 1) throw DomainError("--eps must lie in (0, 1]");
  r.params.emplace_back("p", std::to_string(p));
  r.params.emplace_back("eps", to_string(eps));
  const Rational bound = pow(eps, p - 1);
  for (unsigned m = 1; m <= 12; ++m) {
    CharSum s = char_sum_at(m, LpSpace{Rational(p)});
    if (!(s.max_cover < eps)) continue;
    r.add_check("covers-below-eps", true).values = {{"m", Rational(m)}, {"max_cover", s.max_cover}, {"eps", eps}};
    Rational agg = s.value.raised(p);
    r.add_check("aggregation", agg <= bound).values = {{"value_p", agg}, {"bound_p", bound}};
    finish(r, clock);
    return r;
  }
  r.add_check("covers-below-eps", false).values = {{"eps", eps}};
  finish(r, clock);
  return r;
}

RunReport verify_l1sum(const CommandOptions& opts) {
  Stopwatch clock;
  RunReport r = new_report(opts);
  r.params.emplace_back("seed", std::to_string(opts.seed));
  r.params.emplace_back("cases", std::to_string(kL1SumCases));
  r.params.emplace_back("blocks", std::to_string(kL1SumBlocks));
  std::mt19937_64 rng(opts.seed);
  auto uniform = [&rng](std::int64_t lo, std::int64_t hi) {
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
  };
  auto random_vector = [&] {
    SparseVector v(IndexUniverse::naturals());
    for (std::uint64_t i = 0; i < 3 * kL1SumBlocks; ++i) {
      if (uniform(0, 1) == 0) v.set(i, Rational(uniform(-9, 9), uniform(1, 6)));
    }
    return v;
  };
  int failures = 0;
  std::optional<Rational> min_slack;
  for (int c = 0; c < kL1SumCases; ++c) {
    L1SumSpace space;
    space.inner = uniform(0, 1) == 0 ? BlockNorm::Sup : BlockNorm::L1;
    for (std::uint64_t i = 0; i < 3 * kL1SumBlocks; ++i) space.block_of[Index{i}] = Index{i / 3};
    SparseVector x = random_vector();
    SparseVector y = random_vector();
    std::set<Index> a;
    std::set<Index> b;
    for (std::uint64_t blk = 0; blk < kL1SumBlocks; ++blk) {
      switch (uniform(0, 2)) {
        case 0: a.insert(Index{blk}); break;
        case 1: b.insert(Index{blk}); break;
        default: break;
      }
    }
    L1SumInequality q = l1sum_inequality_check(x, y, a, b, space);
    if (!q.holds()) ++failures;
    Rational slack = q.lhs - q.rhs;
    if (!min_slack || slack < *min_slack) min_slack = slack;
  }
  r.add_check("inequality", failures == 0).values = {{"cases", Rational(kL1SumCases)},
                                                     {"failures", Rational(failures)},
                                                     {"min_slack", *min_slack}};
  finish(r, clock);
  return r;
}

RunReport verify_dp(const CommandOptions& opts) {
  Stopwatch clock;
  RunReport r = new_report(opts);
  const unsigned stages = positive_or(opts.stages, 8, "stages", 1, 8);
  const Rational eta = opts.eps.value_or(Rational(1, 100));
  if (eta <= 0) throw DomainError("--eps (eta) must be positive");
  const std::string spec = opts.partitions.value_or(kDefaultDpPartitions);
  r.params.emplace_back("stages", std::to_string(stages));
  r.params.emplace_back("eta", to_string(eta));
  r.params.emplace_back("horizon", std::to_string(kDpHorizon));
  r.params.emplace_back("partitions", spec);
  const auto partitions = parse_partition_spec(spec, opts.seed);
  const auto xs = canonical_basis_sequence();
  const auto diag = MatrixOperator::dyadic_diagonal(kDpDim);
  const auto id = MatrixOperator::identity(kDpDim);

  DpVerdict pass = dp_test(diag, xs, kDpHorizon, eta);
  Rational tail_max2 = 0;
  for (const auto& [n, y] : pass.tail) tail_max2 = std::max(tail_max2, square_of(y));
  r.add_check("dp-dyadic-diagonal-passes", pass.pass).values = {{"tail_max2", tail_max2}, {"eta", eta}};

  DpVerdict fail = dp_test(id, xs, kDpHorizon, eta);
  bool unit_witness = !fail.pass && fail.witness_norm && compare(*fail.witness_norm, Rational(1)) == std::partial_ordering::equivalent;
  auto& idc = r.add_check("dp-identity-fails", unit_witness);
  idc.values = {{"witness", Rational(fail.witness)}};
  if (fail.witness_norm) idc.values.emplace_back("witness_norm2", square_of(*fail.witness_norm));

  const auto g = hat_g();
  DpDemoReport fail_demo = dp_riemann_demo(id, xs, g, partitions, kDpHorizon, eta, stages);
  auto& fc = r.add_check("fail-branch-threshold", fail_demo.fail_branch && fail_demo.consistent);
  fc.values.emplace_back("threshold", fail_demo.threshold);
  for (const auto& row : fail_demo.rows) fc.values.emplace_back("achieved2_" + std::to_string(row.cells), square_of(row.value));

  DpDemoReport pass_demo = dp_riemann_demo(diag, xs, g, partitions, kDpHorizon, eta, stages);
  auto& pc = r.add_check("pass-branch-gaps-decrease", !pass_demo.fail_branch && pass_demo.strictly_decreasing);
  for (const auto& row : pass_demo.rows) {
    if (row.gap) pc.values.emplace_back("gap2_" + std::to_string(row.cells), square_of(*row.gap));
  }
  finish(r, clock);
  return r;
}

}  // namespace

Partition random_partition(std::mt19937_64& rng) {
  auto cuts = std::uniform_int_distribution<int>(1, 80)(rng);
  std::uniform_int_distribution<int> at(1, 9999);
  std::set<Rational> points{Rational(0), Rational(1)};
  while (points.size() < static_cast<std::size_t>(cuts) + 2) points.insert(Rational(at(rng), 10000));
  return Partition(std::vector<Rational>(points.begin(), points.end()));
}

std::vector<Partition> parse_partition_spec(std::string_view spec, std::uint64_t seed) {
  std::vector<Partition> out;
  if (spec.empty()) return out;
  std::mt19937_64 rng(seed);
  for (std::string_view term : split(spec, '+')) {
    auto colon = term.find(':');
    if (colon == std::string_view::npos) throw DomainError("partition term '" + std::string(term) + "' lacks a kind");
    std::string_view kind = term.substr(0, colon);
    std::string_view arg = term.substr(colon + 1);
    if (kind == "random") {
      std::uint64_t k = parse_count(arg, spec);
      for (std::uint64_t i = 0; i < k; ++i) out.push_back(random_partition(rng));
    } else if (kind == "uniform") {
      auto dots = arg.find("..");
      if (dots != std::string_view::npos) {
        std::uint64_t lo = parse_count(arg.substr(0, dots), spec);
        std::uint64_t hi = parse_count(arg.substr(dots + 2), spec);
        if (lo == 0 || hi > (std::uint64_t{1} << 20)) throw DomainError("uniform range must lie in 1..2^20");
        for (std::uint64_t n = lo; n <= hi; n *= 2) out.push_back(Partition::uniform(n));
      } else {
        for (std::string_view item : split(arg, ',')) {
          std::uint64_t n = parse_count(item, spec);
          if (n == 0 || n > (std::uint64_t{1} << 20)) throw DomainError("uniform cell counts must lie in 1..2^20");
          out.push_back(Partition::uniform(n));
        }
      }
    } else {
      throw DomainError("unknown partition kind '" + std::string(kind) + "'");
    }
  }
  return out;
}

RunReport cmd_jt_norm(std::istream& in, const CommandOptions& opts) {
  Stopwatch clock;
  RunReport r = new_report(opts);
  SparseVector v = read_vector(in, IndexUniverse::dyadic(kDpLevelCap));
  if (v.universe().kind() != IndexUniverse::Kind::DyadicTree) {
    throw UniverseError("jt-norm needs a dyadic tree vector, got " + to_string(v.universe()));
  }
  NormValue dp = jt_norm_dp(v);
  r.add_check("jt-norm", true).values = {{"norm2", square_of(dp)}, {"support", Rational(v.support_size())}};
  if (v.support_size() <= kJtOracleSupport) {
    NormValue brute = jt_norm_bruteforce(v);
    r.add_check("oracle-agreement", square_of(brute) == square_of(dp)).values = {{"dp2", square_of(dp)},
                                                                                 {"bruteforce2", square_of(brute)}};
  }
  finish(r, clock);
  return r;
}

RunReport cmd_verify(const std::string& name, const CommandOptions& opts) {
  if (name == "jt") return verify_jt(opts);
  if (name == "kadets") return verify_kadets(opts);
  if (name == "char-c0") return verify_char_c0(opts);
  if (name == "char-lp") return verify_char_lp(opts);
  if (name == "l1sum") return verify_l1sum(opts);
  if (name == "dp") return verify_dp(opts);
  throw DomainError("unknown construction '" + name + "'");
}

PlotTable cmd_plotdata(const std::string& construction, const CommandOptions& opts) {
  PlotTable t;
  if (construction == "jt") {
    t.parameter = "N";
    t.series = {"achieved", "bound"};
    const unsigned n = positive_or(opts.n, kJtMaxN, "N", 0, kJtMaxN);
    std::vector<std::future<JtWorstCase>> jobs;
    for (unsigned k = 1; k <= n; ++k) jobs.push_back(std::async(std::launch::async, [k] { return jt_worstcase_bound(k); }));
    for (unsigned k = 1; k <= n; ++k) {
      JtWorstCase w = jobs[k - 1].get();
      t.rows.push_back({std::to_string(k), {w.achieved, w.bound}});
    }
  } else if (construction == "char-c0" || construction == "char-lp") {
    const bool c0 = construction == "char-c0";
    const unsigned stages = positive_or(opts.stages, 6, "stages", 0, 9);
    const unsigned p = positive_or(opts.p, 2, "p", 1, 8);
    t.parameter = "m";
    t.series = {"sup", "max_cover", "union_cover"};
    const SpaceSpec space = c0 ? SpaceSpec{C0Space{}} : SpaceSpec{LpSpace{Rational(p)}};
    for (unsigned m = 2; m <= stages; ++m) {
      CharSum s = char_sum_at(m, space);
      t.rows.push_back({std::to_string(m), {s.value, NormValue::exact(s.max_cover), NormValue::exact(s.union_cover)}});
    }
  } else if (construction == "kadets") {
    const unsigned stages = positive_or(opts.stages, 8, "stages", 1, 8);
    t.parameter = "cells";
    t.series = {"achieved", "threshold"};
    const auto partitions = parse_partition_spec(opts.partitions.value_or(kDefaultDpPartitions), opts.seed);
    const KadetsFunction f = standard_kadets(stages);
    const LinearMap id = identity_map(f.sequence());
    for (const auto& p : partitions) {
      KadetsLowerBound lb = kadets_sum_lowerbound(f, p, id);
      t.rows.push_back({std::to_string(p.size()), {lb.achieved, NormValue::exact(lb.threshold)}});
    }
  } else {
    throw DomainError("unknown plot construction '" + construction + "'");
  }
  return t;
}

void write_plot_csv(std::ostream& out, const PlotTable& t) {
  out << t.parameter;
  for (const auto& s : t.series) out << ',' << s << ',' << s << "_exact," << s << "_power";
  out << '\n';
  for (const auto& row : t.rows) {
    out << row.parameter;
    for (const auto& v : row.values) {
      out << ',' << to_decimal_string(v.value(), 12) << ',';
      if (auto m = v.exact_power()) {
        out << to_string(v.raised(*m)) << ',' << *m;
      } else {
        out << ',';
      }
    }
    out << '\n';
  }
}

}  // namespace rilab
