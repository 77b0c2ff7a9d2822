#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace cuecomb {

/// Config text of a bundled preset (presets/<name>.conf), if it exists.
std::optional<std::string_view> find_preset(std::string_view name);

std::vector<std::string_view> preset_names();

}  // namespace cuecomb
