// invmetric --job job.json [--out dir] [--seed n] [--tol x]

#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "invmetric/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Invariant metrics of planar domains: batch jobs from JSON."};
  std::string job_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  double tol = 0.0;
  app.add_option("--job", job_path, "JSON job file ('-' reads standard input)")->required();
  auto* out_opt = app.add_option("--out", out_dir, "Output directory (overrides the job's \"output\")");
  auto* seed_opt = app.add_option("--seed", seed, "Seed for randomized suites (overrides the job)");
  auto* tol_opt = app.add_option("--tol", tol, "Tolerance (overrides the job)")->check(CLI::PositiveNumber);
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : invmetric::cli::kValidation;
  }

  std::stringstream text;
  if (job_path == "-") {
    text << std::cin.rdbuf();
  } else {
    std::ifstream in(job_path);
    if (!in) {
      invmetric::cli::report_error(std::cerr, "io", "cannot read job file " + job_path, invmetric::cli::kValidation);
      return invmetric::cli::kValidation;
    }
    text << in.rdbuf();
  }

  invmetric::cli::Overrides ov;
  if (*out_opt) ov.out_dir = out_dir;
  if (*seed_opt) ov.seed = seed;
  if (*tol_opt) ov.tol = tol;
  const auto result = invmetric::cli::run_job_text(text.str(), ov, std::cerr);
  for (const auto& p : result.written) std::cout << p.string() << '\n';
  return result.exit_code;
}
