#pragma once

#include <cstdint>
#include <optional>
#include <string>

#include "rbsc/kernel.hpp"
#include "rbsc/model.hpp"

namespace rbsc {

enum class Format { Text, JsonLines };

Format parse_format(const std::string& s);

// Text: `verdict`, `reds`, `objects`, `covered_reds`, then `nodes` and
// `optimum` when known. JSON lines: the same fields as one object.
std::string render_solution(const Solution& s, Format f, std::optional<std::uint64_t> nodes = std::nullopt);

std::string render_trace(const KernelTrace& t, Format f);
std::string render_bounds(const BoundReport& b, Format f);

}  // namespace rbsc
