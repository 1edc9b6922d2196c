#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "blanketlab/graph.hpp"

namespace blanketlab {

enum class Setting { S1, S2, S3, S4, S5 };

std::string_view to_string(Setting s);
std::optional<Setting> parse_setting(std::string_view text);

struct Violation {
  std::string rule;
  std::string message;
  std::vector<NodeIndex> witnesses;
};

struct ValidationReport {
  Setting setting = Setting::S1;
  bool ok = true;
  std::vector<Violation> violations;
};

/// Checks the structural assumptions of `setting`. Throws NoResponse or
/// MultipleResponses.
ValidationReport validate_setting(const MixedGraph& g, Setting setting);

/// Throws SettingViolation carrying the first violation when `g` fails.
void require_setting(const MixedGraph& g, Setting setting);

}  // namespace blanketlab
