#pragma once

// The command layer behind tools/rilab: each command returns a RunReport or a
// plot table and never touches stdout itself.

#include "rilab/partitions.hpp"
#include "rilab/report.hpp"

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <random>
#include <string>
#include <vector>

namespace rilab {

inline constexpr std::uint64_t kDefaultSeed = 20240601;

/// Flags shared by the commands; unset fields take per-construction defaults.
struct CommandOptions {
  std::optional<unsigned> n;
  std::optional<unsigned> p;
  std::optional<Rational> eps;
  std::optional<unsigned> stages;
  std::optional<std::string> partitions;
  std::uint64_t seed = kDefaultSeed;
  /// Echoed into the report.
  std::string command_line;
};

/// Between 1 and 80 cuts at multiples of 1/10000.
Partition random_partition(std::mt19937_64& rng);

/// Terms joined by '+': `uniform:A..B` (A, 2A, 4A, ... up to B), `uniform:a,b,c`
/// and `random:K` (K partitions drawn from `seed`). Throws DomainError.
std::vector<Partition> parse_partition_spec(std::string_view spec, std::uint64_t seed);

/// Reads a tree vector (header optional) and reports its JT norm; when the
/// support has at most 12 nodes the exhaustive search must agree.
RunReport cmd_jt_norm(std::istream& in, const CommandOptions& opts = {});

inline const std::vector<std::string> kVerifyNames{"jt", "kadets", "char-c0", "char-lp", "l1sum", "dp"};

/// Throws DomainError for an unknown name or out-of-range parameters.
RunReport cmd_verify(const std::string& name, const CommandOptions& opts = {});

struct PlotTable {
  std::string parameter;
  std::vector<std::string> series;
  struct Row {
    std::string parameter;
    std::vector<NormValue> values;
  };
  std::vector<Row> rows;
};

/// Constructions: jt (N = 1..--N), char-c0 and char-lp (m = 2..--stages),
/// kadets (over --partitions).
PlotTable cmd_plotdata(const std::string& construction, const CommandOptions& opts = {});

/// Each series s gives columns s (12-digit decimal), s_exact (p/q) and s_power,
/// where s = s_exact^(1/s_power).
void write_plot_csv(std::ostream& out, const PlotTable& t);

}  // namespace rilab
