#pragma once

#include "hyperframe/io.hpp"

#include <json.hpp>

#include <filesystem>
#include <set>
#include <string>

namespace hyperframe {

inline constexpr const char* kToolVersion = "0.1.0";

struct PipelineOptions {
  std::filesystem::path out_dir = ".";
  // Empty: the spec's outputs, or every product when the spec lists none.
  std::set<std::string> products;
  bool timestamp = false;
};

struct RunReport {
  nlohmann::json json;
  std::vector<std::string> written;
  bool numeric_failure = false;
  bool checks_failed = false;
};

RunReport run_pipeline(const CurveSpec& spec, const PipelineOptions& options);

}  // namespace hyperframe
