#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "jt/config.hpp"

namespace jt {

inline constexpr const char* kVersion = "jtdyn 0.1.0";

struct RunSummary {
  int exit_status = 0;
  std::vector<std::filesystem::path> files;
  std::vector<std::string> warnings;
  std::string error;
};

/// Runs the configured engine and writes its outputs plus `metadata.txt`
/// into `config.output.dir`. Engine failures produce a nonzero exit status
/// and metadata flagged `status = partial`; they are not rethrown.
RunSummary run(const RunConfig& config);

}  // namespace jt
