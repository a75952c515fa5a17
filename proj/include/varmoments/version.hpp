#pragma once

namespace varmoments {

inline constexpr const char* kVersion = "0.1.0";
/// Report schema tag embedded in every CLI report.
inline constexpr const char* kSchema = "varmoments/1";

}  // namespace varmoments
