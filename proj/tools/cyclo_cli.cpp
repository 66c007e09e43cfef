// Batch runner: cyclo-cli --job job.txt [overrides]
//
// Exit status: 0 on success (certification gaps are reported, not fatal),
// 1 on a hard failure (route mismatch, invariant violation), 2 on bad input.

#include "cyclo/job.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

int main(int argc, char** argv) {
  CLI::App app{"cyclic homology jobs"};
  std::string job_file, window, machine_out;
  std::optional<int> trunc, hodge_max, adic_levels, persistence;
  bool verbose = false;
  app.add_option("--job", job_file, "job description")->required()->check(CLI::ExistingFile);
  app.add_option("--window", window, "degree window lo..hi");
  app.add_option("--trunc", trunc, "first polynomial truncation")->check(CLI::PositiveNumber);
  app.add_option("--hodge-max", hodge_max, "Hodge completion level")->check(CLI::PositiveNumber);
  app.add_option("--adic-levels", adic_levels, "levels of the adic tower")->check(CLI::PositiveNumber);
  app.add_option("--persistence", persistence, "equal persistent ranks required")->check(CLI::PositiveNumber);
  app.add_flag("--verbose", verbose, "also print sample details");
  app.add_option("--machine-out", machine_out, "write the sorted key-value report here");
  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 2;
  }

  std::ifstream in(job_file);
  std::stringstream buf;
  buf << in.rdbuf();
  cyclo::JobSpec job;
  try {
    job = cyclo::parse_job(buf.str());
    if (!window.empty()) std::tie(job.lo, job.hi) = cyclo::parse_window(window);
  } catch (const cyclo::JobParseError& e) {
    std::cerr << job_file << ":" << e.line() << ":" << e.column() << ": " << e.detail() << "\n";
    return 2;
  } catch (const std::invalid_argument& e) {
    std::cerr << "--window: " << e.what() << "\n";
    return 2;
  }
  if (trunc) job.trunc = *trunc;
  if (hodge_max) job.hodge_max = *hodge_max;
  if (adic_levels) job.adic_levels = *adic_levels;
  if (persistence) job.persistence = *persistence;

  cyclo::Report report;
  try {
    report = cyclo::run_job(job, verbose);
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::logic_error& e) {
    // a violated identity inside a module
    std::cerr << "invariant violation: " << e.what() << "\n";
    return 1;
  }
  std::cout << cyclo::human_text(report, verbose);
  if (!machine_out.empty()) {
    std::ofstream out(machine_out, std::ios::binary);
    out << cyclo::machine_text(report);
  }
  return report.hard_failure ? 1 : 0;
}
