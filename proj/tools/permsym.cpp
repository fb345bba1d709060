// permsym: exchange phases of order-dependent multi-particle state vectors.

#include "permsym/commands.hpp"
#include "permsym/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace permsym;

int main(int argc, char **argv) {
  CLI::App app{"Exchange phases of ranked permutation-symmetric state vectors"};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", std::string(kToolVersion));

  std::string config_path;
  std::string format_name = "json";
  std::string output_path;
  double tolerance = Tolerances{}.geometric;
  app.add_option("--config", config_path, "Particle configuration (JSON)");
  app.add_option("--format", format_name, "Report format")
      ->check(CLI::IsMember({"json", "markdown"}));
  app.add_option("--tolerance", tolerance, "Geometric tolerance")
      ->check(CLI::PositiveNumber);
  app.add_option("--output", output_path, "Write the report here instead of stdout");

  auto *verify = app.add_subcommand("verify", "Check geometry and ranking invariants");
  std::string pair;
  auto *exch = app.add_subcommand("exchange", "Exchange two particles");
  exch->add_option("--pair", pair, "Particle ids as a,b")->required();
  auto *csp = app.add_subcommand("csp", "Phase table against the conventional postulate");
  auto *imp = app.add_subcommand("impossibility", "Parity certificate for three fermions");
  std::size_t max_rank = 1;
  SearchOptions search_opts;
  auto *search = app.add_subcommand("search", "Enumerate schemes that emulate the postulate");
  search->add_option("--max-rank", max_rank, "Longest predecessor chain")->required();
  search->add_option("--budget", search_opts.budget, "Candidate limit");
  search->add_option("--threads", search_opts.threads, "Worker threads (0 = all)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError &e) {
    const int code = app.exit(e);
    return code == 0 ? exit_code::ok : exit_code::validation;
  }

  Tolerances tol;
  tol.geometric = tolerance;
  const Format format = *parse_format(format_name);

  CommandOutput out = run_guarded("cli", [&]() -> CommandOutput {
    if (imp->parsed()) {
      return cmd_impossibility();
    }
    if (config_path.empty())
      throw Error(ErrorKind::Validation, "--config is required for this command");
    const ParticleConfig cfg = load_config(config_path);
    if (verify->parsed())
      return cmd_verify(cfg, tol);
    if (exch->parsed())
      return cmd_exchange(cfg, pair, tol);
    if (csp->parsed())
      return cmd_csp(cfg, tol);
    (void)search;
    return cmd_search(cfg, max_rank, search_opts, tol);
  });
  if (out.exit_code != exit_code::ok && out.report["results"].contains("error")) {
    out.report["command"] = app.get_subcommands().front()->get_name();
    std::cerr << "permsym: " << out.report["results"]["error"]["message"].get<std::string>()
              << "\n";
  }

  const std::string text = render(out.report, format);
  if (output_path.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(output_path, std::ios::binary);
    if (!file) {
      std::cerr << "permsym: cannot write " << output_path << "\n";
      return exit_code::validation;
    }
    file << text;
  }
  return out.exit_code;
}
