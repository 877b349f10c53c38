#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "ktcy/errors.hpp"
#include "ktcy_cli/commands.hpp"
#include "ktcy_cli/problem_spec.hpp"

namespace {

struct CommonArgs {
  std::string config;
  std::optional<int> n;
  std::string preset;
  std::string out_dir = ".";
  std::optional<std::uint64_t> seed;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
  cmd->add_option("--config", args.config, "Problem file (key=value text or JSON)");
  cmd->add_option("--n", args.n, "Grid resolution (even, >= 4)");
  cmd->add_option("--preset", args.preset, "Density preset: zero, oneD, checker or skew");
  cmd->add_option("--out-dir", args.out_dir, "Directory for reports and dumps")->capture_default_str();
  cmd->add_option("--seed", args.seed, "Seed for perturbation probes");
}

ktcy::cli::ProblemSpec make_spec(const CommonArgs& args) {
  ktcy::cli::ProblemSpec spec;
  if (!args.config.empty()) spec = ktcy::cli::load_config(args.config);
  if (!args.preset.empty()) {
    spec.preset = args.preset;
    spec.fourier.clear();
    spec.density_file.clear();
  }
  if (args.n) spec.grid_n = *args.n;
  if (args.seed) spec.solver.seed = *args.seed;
  return spec;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Solver and verification suite for the T^2-invariant Calabi-Yau equation on the Kodaira-Thurston "
               "manifold"};
  app.require_subcommand(1);

  CommonArgs common;
  bool dump = false;
  std::string suite = "all";
  int starts = 4;
  std::vector<int> resolutions{32, 64, 128};

  auto* solve = app.add_subcommand("solve", "Run the continuity path to t = 1 and write report.json");
  add_common(solve, common);
  solve->add_flag("--dump-fields", dump, "Write KTCY dumps per accepted t, CSV fields and form exports");

  auto* verify = app.add_subcommand("verify", "Run a property suite and write verify.json");
  add_common(verify, common);
  verify->add_option("--suite", suite, "identities, lemma22, connection, uniqueness or all")->capture_default_str();
  verify->add_option("--starts", starts, "Perturbed starts for the uniqueness probe")->capture_default_str();

  auto* sweep = app.add_subcommand("sweep", "Solve at several resolutions and write sweep.json");
  add_common(sweep, common);
  sweep->add_option("--resolutions", resolutions, "Increasing even grid sizes")->delimiter(',')->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForAllHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return ktcy::cli::kInvalidInput;
  }

  ktcy::cli::RunOptions opts;
  opts.out_dir = common.out_dir;
  opts.dump_fields = dump;
  opts.log = &std::cout;
  try {
    const auto spec = make_spec(common);
    if (*solve) return ktcy::cli::run_solve(spec, opts);
    if (*verify) return ktcy::cli::run_verify(spec, ktcy::cli::parse_suite(suite), starts, opts);
    return ktcy::cli::run_sweep(spec, resolutions, opts);
  } catch (const ktcy::cli::InputError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return ktcy::cli::kInvalidInput;
  } catch (const ktcy::FormatError& e) {
    std::cerr << "invalid input: " << e.what() << '\n';
    return ktcy::cli::kInvalidInput;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return ktcy::cli::kStalled;
  }
}
