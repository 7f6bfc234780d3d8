#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

#include "twoiso/analysis.hpp"

namespace twoiso::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitMismatch = 1;
inline constexpr int kExitInputError = 2;

enum class OutputFormat { Text, Json };

struct RunConfig {
  std::string command;
  /// Example name, search space or input path, depending on the command.
  std::string target;
  Tolerances tol;
  /// Truncation degree (reproduce) or dimension (search c2-rankone).
  std::optional<int> dim;
  std::uint64_t seed = 20240611;
  OutputFormat format = OutputFormat::Text;
  bool allow_non_2iso_base = false;

  // reproduce dirichlet-n0
  Complex alpha = 1.0;

  // search dirichlet-alpha
  int power = 1;
  double re_min = -3.0;
  double re_max = 1.0;
  double im_min = -3.0;
  double im_max = 1.0;
  double step = 0.05;

  // search c2-rankone
  int trials = 10;
};

/// Throws InvalidArgument if tolerances or dimensions are out of range.
void validate(const RunConfig& config);

/// Each command writes its report to out, diagnostics to err, and returns an exit code.
int cmd_reproduce(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_analyze(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_search(const RunConfig& config, std::ostream& out, std::ostream& err);
int cmd_defect(const RunConfig& config, std::ostream& out, std::ostream& err);

/// Dispatches on config.command and maps library errors to kExitInputError.
int run(const RunConfig& config, std::ostream& out, std::ostream& err);

}  // namespace twoiso::cli
