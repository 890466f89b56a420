#pragma once

namespace coloc {

inline constexpr const char* kVersion = "0.1.0";

} // namespace coloc
