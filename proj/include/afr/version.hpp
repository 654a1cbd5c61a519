#pragma once

namespace afr {

/// Bumped whenever the fusion-table algorithm or cache layout changes;
/// part of every on-disk cache key.
inline constexpr const char* kCodeVersion = "1";

inline constexpr int kReportSchemaVersion = 1;

}  // namespace afr
