#pragma once

#include <filesystem>
#include <stdexcept>
#include <string>
#include <vector>

#include "leoroute/sim_engine.hpp"

namespace leoroute {

/// Malformed or invalid scenario document. The message names the key (or
/// the line/column for syntax errors).
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Parses a JSON scenario. Optional keys that were left out are reported in
/// `defaulted` as dotted paths. Unknown keys are rejected.
Scenario parse_scenario_text(const std::string& text, std::vector<std::string>* defaulted = nullptr);
Scenario parse_scenario(const std::filesystem::path& path, std::vector<std::string>* defaulted = nullptr);

/// Canonical JSON with every key spelled out; parses back to an equal Scenario.
std::string dump_scenario(const Scenario& sc);

}  // namespace leoroute
