#pragma once

namespace qrep {

inline constexpr const char* kVersion = "0.1.0";

}  // namespace qrep
