#pragma once

// Line-oriented run reports:
//
//   schema 1
//   version <artifact version>
//   command <echo of the invocation>
//   param <key> <value>
//   check <name> <pass|fail> [key=p/q ...]
//   timing_ms <n>
//   note <text>
//
// Names and keys are single tokens; values are exact rationals.

#include "rilab/rational.hpp"

#include <iosfwd>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace rilab {

inline constexpr int kReportSchema = 1;

inline constexpr std::string_view kLimitationNote =
    "set-theoretic results (cov(M), non(SN), WLP of l1-sums and L1) are not reproducible at desk scale; "
    "finite shadows only";

enum class Verdict { Pass, Fail };

std::string_view verdict_string(Verdict v);
std::optional<Verdict> parse_verdict(std::string_view text);

struct CheckRecord {
  std::string name;
  Verdict verdict = Verdict::Fail;
  std::vector<std::pair<std::string, Rational>> values;

  bool operator==(const CheckRecord&) const = default;
};

struct RunReport {
  int schema = kReportSchema;
  std::string version;
  std::string command;
  std::vector<std::pair<std::string, std::string>> params;
  std::vector<CheckRecord> checks;
  std::uint64_t timing_ms = 0;
  std::vector<std::string> notes;

  /// True when no check failed.
  bool ok() const;
  CheckRecord& add_check(std::string name, bool passed);

  bool operator==(const RunReport&) const = default;
};

/// Throws DomainError for names, keys or text that would not survive a round trip.
std::string serialize(const RunReport& r);
void write_report(std::ostream& out, const RunReport& r);
/// Throws ParseError with the offending line.
RunReport parse_report(std::string_view text);

/// One row per check value: name,verdict,key,value.
void write_checks_csv(std::ostream& out, const RunReport& r);

}  // namespace rilab
