#pragma once

namespace kstruct {

inline constexpr const char* kVersion = "0.1.0";

// Version tag written into the corpus file header. Bump only on
// incompatible schema changes; the loader refuses mismatched files.
inline constexpr int kCorpusSchemaVersion = 1;

} // namespace kstruct
