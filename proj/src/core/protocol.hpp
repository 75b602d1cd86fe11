#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "layout.hpp"
#include "metrics.hpp"

namespace intercept {

// Layout protocol document. Reals carry 9 significant digits. When
// `version` is set it is emitted as a top-level "version" field.
std::string layout_to_json(const Layout& layout,
                           std::optional<std::uint64_t> version = std::nullopt);

std::string report_to_json(const ComparisonReport& report);

std::string topk_to_json(const LayoutConfig& resolved, const Layout& layout);

}  // namespace intercept
