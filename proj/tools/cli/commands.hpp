#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace stgp::cli {

/// Process exit codes of the stgp tool.
enum ExitCode : int {
  kSuccess = 0,
  kConfigError = 1,  ///< bad arguments, bad config, missing or malformed inputs
  kSolverFailure = 2,  ///< non-converged solve, or a failed verify check
  kIoError = 3,
};

/// Environment variable overriding the config's thread cap.
inline constexpr const char* kThreadsEnv = "STGP_THREADS";

struct ProjectOptions {
  /// Takes precedence over both the config and STGP_THREADS.
  std::optional<unsigned> threads;
};

int cmd_project(const std::filesystem::path& config, std::ostream& out, std::ostream& err,
                const ProjectOptions& options = {});

int cmd_meshgen(const std::string& kind, long long n, double mu, const std::filesystem::path& output,
                std::ostream& err);

struct VerifyOptions {
  /// Perturbs every solver result; the suite must then fail.
  bool tamper_solver = false;
};

int cmd_verify(const std::string& level, std::ostream& out, std::ostream& err,
               const VerifyOptions& options = {});

int cmd_info(const std::filesystem::path& file, std::ostream& out, std::ostream& err);

}  // namespace stgp::cli
