#include "rilab/commands.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

namespace {

struct Flags {
  std::optional<unsigned> n;
  std::optional<unsigned> p;
  std::optional<std::string> eps;
  std::optional<unsigned> stages;
  std::optional<std::string> partitions;
  std::uint64_t seed = rilab::kDefaultSeed;
  std::string out;
  std::string format;
};

void add_shared_flags(CLI::App* cmd, Flags& f, const std::string& default_format) {
  cmd->add_option("--N", f.n, "Size parameter (JT partition level)");
  cmd->add_option("--p", f.p, "Integral exponent of the lp space");
  cmd->add_option("--eps", f.eps, "Tolerance as p/q (eta for dp)");
  cmd->add_option("--stages", f.stages, "Cantor-set stages");
  cmd->add_option("--partitions", f.partitions, "e.g. uniform:4..256+random:20");
  cmd->add_option("--seed", f.seed, "Seed for randomized suites");
  cmd->add_option("--out", f.out, "Write to this file instead of stdout");
  f.format = default_format;
  cmd->add_option("--format", f.format, "Output format")->check(CLI::IsMember({"report", "csv"}));
}

rilab::CommandOptions to_options(const Flags& f, const std::string& command_line) {
  rilab::CommandOptions o;
  o.n = f.n;
  o.p = f.p;
  if (f.eps) o.eps = rilab::parse_rational(*f.eps);
  o.stages = f.stages;
  o.partitions = f.partitions;
  o.seed = f.seed;
  o.command_line = command_line;
  return o;
}

void emit(const Flags& f, const std::string& text) {
  if (f.out.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream file(f.out);
  if (!file) throw rilab::Error("cannot write " + f.out);
  file << text;
}

std::string render(const rilab::RunReport& r, const std::string& format) {
  std::ostringstream os;
  if (format == "csv") {
    rilab::write_checks_csv(os, r);
  } else {
    rilab::write_report(os, r);
  }
  return os.str();
}

}  // namespace

int main(int argc, char** argv) {
  std::string command_line = "rilab";
  for (int i = 1; i < argc; ++i) command_line += std::string(" ") + argv[i];

  CLI::App app{"Exact finite experiments on Riemann integrability in Banach spaces"};
  app.require_subcommand(1);

  Flags jt_flags;
  std::string vector_file;
  auto* jt = app.add_subcommand("jt-norm", "JT norm of a tree vector file, cross-checked when small");
  jt->add_option("file", vector_file, "Vector file ('-' for stdin)")->required();
  add_shared_flags(jt, jt_flags, "report");

  Flags verify_flags;
  std::string construction;
  auto* verify = app.add_subcommand("verify", "Run a construction's invariant suite");
  verify->add_option("name", construction, "Construction")->required()->check(CLI::IsMember(rilab::kVerifyNames));
  add_shared_flags(verify, verify_flags, "report");

  Flags plot_flags;
  std::string plot_name;
  auto* plot = app.add_subcommand("plotdata", "CSV sweep for external plotting");
  plot->add_option("construction", plot_name, "jt, char-c0, char-lp or kadets")
      ->required()
      ->check(CLI::IsMember({"jt", "char-c0", "char-lp", "kadets"}));
  add_shared_flags(plot, plot_flags, "csv");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*jt) {
      auto opts = to_options(jt_flags, command_line);
      rilab::RunReport r;
      if (vector_file == "-") {
        r = rilab::cmd_jt_norm(std::cin, opts);
      } else {
        std::ifstream in(vector_file);
        if (!in) throw rilab::Error("cannot open " + vector_file);
        r = rilab::cmd_jt_norm(in, opts);
      }
      emit(jt_flags, render(r, jt_flags.format));
      return r.ok() ? 0 : 1;
    }
    if (*verify) {
      auto r = rilab::cmd_verify(construction, to_options(verify_flags, command_line));
      emit(verify_flags, render(r, verify_flags.format));
      return r.ok() ? 0 : 1;
    }
    if (plot_flags.format != "csv") throw rilab::DomainError("plotdata only emits csv");
    auto table = rilab::cmd_plotdata(plot_name, to_options(plot_flags, command_line));
    std::ostringstream os;
    rilab::write_plot_csv(os, table);
    emit(plot_flags, os.str());
    return 0;
  } catch (const rilab::ParseError& e) {
    std::cerr << "parse error: " << e.what() << '\n';
  } catch (const rilab::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
  }
  return 2;
}
