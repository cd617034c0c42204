#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include <json.hpp>

namespace motionsimp::cli {

enum ExitCode : int { kOk = 0, kUsage = 1, kIo = 2, kInvalidData = 3 };

/// Entry point behind the `motionsimp` binary; `args` excludes the program name.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

/// key=value lines; blank lines and lines starting with '#' are ignored.
std::map<std::string, std::string> read_config_file(const std::filesystem::path& path);

/// Converts flat overrides (k, lambda, tau_c1, min_len_c3, flip=-1,1,1, ...)
/// into the JSON config document accepted by config_from_json.
nlohmann::json overrides_to_json(const std::map<std::string, std::string>& overrides);

/// Worker count from MOTIONSIMP_JOBS, or 1.
unsigned default_jobs();

}  // namespace motionsimp::cli
