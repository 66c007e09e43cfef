#pragma once

// Declarative batch jobs: a line-oriented key-value document with
// [algebra], [cover] and [task] sections, and the reports they produce.
//
//   [algebra]
//   vars = x, y
//   relations = x^3 - y^2
//   weights = 2, 3
//
//   [cover]                  # principal: D(f_1) ∪ ... on [algebra]
//   kind = principal
//   elements = x, x - 1
//
//   [cover]                  # two-patch: U, V glued along an overlap
//   kind = two-patch
//   patch.U.vars = s
//   patch.U.weights = 1
//   patch.V.vars = r
//   patch.V.weights = -1
//   overlap.vars = x, t
//   overlap.relations = x*t - 1
//   overlap.weights = 1, -1
//   map.U = x
//   map.V = t
//
//   [task]
//   task = hp
//   window = -4..4

#include "cyclo/fpalgebra.hpp"
#include "cyclo/qlinalg.hpp"
#include "cyclo/scheme.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace cyclo {

class JobParseError : public std::runtime_error {
public:
  JobParseError(int line, int column, const std::string& what);
  int line() const { return line_; }
  int column() const { return column_; }
  /// The message without the position prefix.
  const std::string& detail() const { return detail_; }

private:
  int line_;
  int column_;
  std::string detail_;
};

struct JobSpec {
  std::optional<FpAlgebra> algebra;
  std::optional<AffineCover> cover;
  std::string task;
  int lo = -4;
  int hi = 4;
  int trunc = 4;
  int hodge_max = 3;
  int adic_levels = 4;
  int persistence = 2;
  int bar_cap = 4;
  int weight_bound = 3;
  std::optional<std::vector<int>> weights;  // explicit weight list
  int i_lo = -2, i_hi = 2;                  // hkr
  int level = 1;                            // ring-check
  int samples = 20;
  std::uint32_t seed = 1;
  std::vector<std::string> inverse_pair;    // ring-check: u, v with u·v = 1
  std::string invariant = "hp";             // glue: hh, hp, derham
  bool augmented = false;                   // glue
};

extern const std::vector<std::string> job_tasks;

/// Throws JobParseError with a 1-based line and column.
JobSpec parse_job(const std::string& text);

/// Parses "lo..hi"; throws std::invalid_argument.
std::pair<int, int> parse_window(const std::string& s);

struct Report {
  std::string title;
  std::map<std::string, std::map<int, Index>> tables;  // name -> degree -> dim
  std::map<std::string, std::string> values;           // verdicts, certificates
  std::vector<std::string> diagnostics;
  std::vector<std::string> verbose;                    // representatives, only with --verbose
  bool hard_failure = false;
};

Report run_job(const JobSpec& job, bool verbose = false);

/// Sorted "key = value" lines, LF endings. Deterministic.
std::string machine_text(const Report& r);
/// Tables and verdicts for reading; same numbers as machine_text.
std::string human_text(const Report& r, bool verbose = false);

}  // namespace cyclo
