#pragma once

// Subcommands of the gvar tool. Each reads a JSON config (unknown fields are
// rejected), writes its outputs under `out_dir` and returns the exit code:
// 0 success, 1 failed assertion or refused construction, 2 config error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>

namespace gvar {

inline constexpr int kExitOk = 0;
inline constexpr int kExitAssertion = 1;
inline constexpr int kExitConfig = 2;

struct CommandOptions {
  std::string config_path;  // empty: defaults only
  std::string out_dir = "out";
  std::optional<std::uint64_t> seed;
  std::optional<int> budget_depth;
  std::optional<int> k;
  std::optional<std::uint64_t> n_max;
};

enum class LogLevel { quiet, error, info, debug };
/// From GVAR_LOG (quiet | error | info | debug); error when unset or unknown.
LogLevel log_level_from_env();

int cmd_conditions(const CommandOptions& opts, std::ostream& log);
int cmd_construct(const CommandOptions& opts, std::ostream& log);
int cmd_variation(const CommandOptions& opts, std::ostream& log);
int cmd_verify(const CommandOptions& opts, std::ostream& log);
int cmd_oracle_check(const CommandOptions& opts, std::ostream& log);

}  // namespace gvar
