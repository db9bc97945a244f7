#pragma once

namespace mealy {

inline constexpr const char* kToolName = "mealyburn";
inline constexpr const char* kToolVersion = "0.1.0";

}  // namespace mealy
