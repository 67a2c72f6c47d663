#include "rilab/report.hpp"

#include <algorithm>
#include <charconv>
#include <ostream>
#include <sstream>

namespace rilab {

namespace {

bool is_token(std::string_view s) {
  return !s.empty() && std::none_of(s.begin(), s.end(), [](char c) { return c == ' ' || c == '\t' || c == '\n' || c == '\r'; });
}

// Text that survives a `key rest-of-line` round trip.
bool is_line_text(std::string_view s) {
  if (s.find_first_of("\n\r") != std::string_view::npos) return false;
  return s.empty() || (s.front() != ' ' && s.back() != ' ');
}

}  // namespace

std::string_view verdict_string(Verdict v) { return v == Verdict::Pass ? "pass" : "fail"; }

std::optional<Verdict> parse_verdict(std::string_view text) {
  if (text == "pass") return Verdict::Pass;
  if (text == "fail") return Verdict::Fail;
  return std::nullopt;
}

bool RunReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const CheckRecord& c) { return c.verdict == Verdict::Pass; });
}

CheckRecord& RunReport::add_check(std::string name, bool passed) {
  checks.push_back({std::move(name), passed ? Verdict::Pass : Verdict::Fail, {}});
  return checks.back();
}

std::string serialize(const RunReport& r) {
  std::ostringstream out;
  write_report(out, r);
  return out.str();
}

void write_report(std::ostream& out, const RunReport& r) {
  auto require = [](bool ok, const std::string& what) {
    if (!ok) throw DomainError("report field cannot be serialized: " + what);
  };
  require(is_token(r.version), "version '" + r.version + "'");
  require(is_line_text(r.command), "command");
  out << "schema " << r.schema << '\n';
  out << "version " << r.version << '\n';
  out << "command " << r.command << '\n';
  for (const auto& [k, v] : r.params) {
    require(is_token(k) && is_line_text(v), "param '" + k + "'");
    out << "param " << k << ' ' << v << '\n';
  }
  for (const auto& c : r.checks) {
    require(is_token(c.name), "check name '" + c.name + "'");
    out << "check " << c.name << ' ' << verdict_string(c.verdict);
    for (const auto& [k, x] : c.values) {
      require(is_token(k) && k.find('=') == std::string::npos, "value key '" + k + "'");
      out << ' ' << k << '=' << to_string(x);
    }
    out << '\n';
  }
  out << "timing_ms " << r.timing_ms << '\n';
  for (const auto& n : r.notes) {
    require(is_line_text(n), "note");
    out << "note " << n << '\n';
  }
}

RunReport parse_report(std::string_view text) {
  RunReport r;
  r.version.clear();
  bool seen_schema = false;
  std::size_t line_no = 0;
  std::istringstream in{std::string(text)};
  for (std::string raw; std::getline(in, raw);) {
    ++line_no;
    if (raw.empty()) continue;
    auto space = raw.find(' ');
    std::string key = raw.substr(0, space);
    std::string rest = space == std::string::npos ? std::string() : raw.substr(space + 1);
    if (!seen_schema) {
      if (key != "schema") throw ParseError(line_no, "expected 'schema <n>'");
      int n = 0;
      auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), n);
      if (ec != std::errc() || p != rest.data() + rest.size()) throw ParseError(line_no, "bad schema '" + rest + "'");
      if (n != kReportSchema) throw ParseError(line_no, "unsupported schema " + rest);
      r.schema = n;
      seen_schema = true;
    } else if (key == "version") {
      r.version = rest;
    } else if (key == "command") {
      r.command = rest;
    } else if (key == "param") {
      auto sp = rest.find(' ');
      if (sp == std::string::npos) {
        r.params.emplace_back(rest, "");
      } else {
        r.params.emplace_back(rest.substr(0, sp), rest.substr(sp + 1));
      }
    } else if (key == "check") {
      std::istringstream fields(rest);
      CheckRecord c;
      std::string verdict;
      if (!(fields >> c.name >> verdict)) throw ParseError(line_no, "expected 'check <name> <verdict>'");
      auto v = parse_verdict(verdict);
      if (!v) throw ParseError(line_no, "unknown verdict '" + verdict + "'");
      c.verdict = *v;
      for (std::string kv; fields >> kv;) {
        auto eq = kv.find('=');
        if (eq == std::string::npos || eq == 0) throw ParseError(line_no, "expected key=p/q, got '" + kv + "'");
        auto x = try_parse_rational(std::string_view(kv).substr(eq + 1));
        if (!x) throw ParseError(line_no, "bad rational in '" + kv + "'");
        c.values.emplace_back(kv.substr(0, eq), *x);
      }
      r.checks.push_back(std::move(c));
    } else if (key == "timing_ms") {
      std::uint64_t ms = 0;
      auto [p, ec] = std::from_chars(rest.data(), rest.data() + rest.size(), ms);
      if (ec != std::errc() || p != rest.data() + rest.size()) throw ParseError(line_no, "bad timing '" + rest + "'");
      r.timing_ms = ms;
    } else if (key == "note") {
      r.notes.push_back(rest);
    } else {
      throw ParseError(line_no, "unknown record '" + key + "'");
    }
  }
  if (!seen_schema) throw ParseError(line_no, "missing schema line");
  return r;
}

void write_checks_csv(std::ostream& out, const RunReport& r) {
  out << "check,verdict,key,value\n";
  for (const auto& c : r.checks) {
    if (c.values.empty()) out << c.name << ',' << verdict_string(c.verdict) << ",,\n";
    for (const auto& [k, x] : c.values) out << c.name << ',' << verdict_string(c.verdict) << ',' << k << ',' << to_string(x) << '\n';
  }
}

}  // namespace rilab
