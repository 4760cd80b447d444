#pragma once

#include <cstdint>
#include <filesystem>
#include <span>
#include <string>
#include <vector>

namespace vidshift::detail {

struct ProcessResult {
  int exit_code = -1;
  std::vector<std::uint8_t> stdout_bytes;
};

/// Spawns argv[0] (already resolved to a path), feeds `stdin_bytes`, collects
/// stdout when asked, and sends stderr to `stderr_path`. Throws IoError when
/// the process cannot be started.
ProcessResult run_process(const std::vector<std::string>& argv, std::span<const std::uint8_t> stdin_bytes,
                          bool capture_stdout, const std::filesystem::path& stderr_path);

/// Last `max_bytes` of a text file, for error messages.
std::string file_tail(const std::filesystem::path& path, std::size_t max_bytes = 2000);

}  // namespace vidshift::detail
