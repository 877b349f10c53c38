#pragma once

// solve / verify / sweep entry points. Each returns a process exit code and
// writes its JSON report into the output directory.

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "ktcy_cli/problem_spec.hpp"

namespace ktcy::cli {

enum ExitCode : int { kOk = 0, kInvalidInput = 1, kStalled = 2, kCheckFailed = 3 };

enum class Suite { identities, lemma22, connection, uniqueness, all };

/// Throws InputError for an unknown name.
Suite parse_suite(const std::string& name);
std::string suite_name(Suite s);

struct RunOptions {
  std::filesystem::path out_dir = ".";
  bool dump_fields = false;
  /// Progress and pass/fail lines.
  std::ostream* log = nullptr;
};

/// Writes report.json (and, with dump_fields, KTCY/CSV field dumps).
int run_solve(const ProblemSpec& spec, const RunOptions& opts);

/// Writes verify.json with one record per check.
int run_verify(const ProblemSpec& spec, Suite suite, int starts, const RunOptions& opts);

/// Writes sweep.json. Resolutions must be even, >= 4 and increasing.
int run_sweep(const ProblemSpec& spec, const std::vector<int>& resolutions, const RunOptions& opts);

/// Bound below which key_identity_sup is indistinguishable from round-off:
/// 10 eps (pi n)^3 sup|phi|, the amplification of coefficient noise by
/// third spectral derivatives.
double roundoff_floor(int n, double phi_sup);

}  // namespace ktcy::cli
