#pragma once

namespace smb {

inline constexpr const char* kVersion = "smb 0.1.0";

}  // namespace smb
