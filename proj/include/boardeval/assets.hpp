#pragma once

#include <optional>
#include <string_view>
#include <vector>

namespace boardeval {

/// Text assets compiled into the library, keyed by path relative to assets/
/// ("prompts/qa/chess.txt").
std::optional<std::string_view> embedded_asset(std::string_view path);
std::vector<std::string_view> embedded_asset_names();

}  // namespace boardeval
