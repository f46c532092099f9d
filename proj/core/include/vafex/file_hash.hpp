#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <string_view>

namespace vafex {

/// FNV-1a 64-bit over a byte range. A content fingerprint for run manifests,
/// not a cryptographic hash.
std::uint64_t fnv1a64(std::string_view bytes);

/// Hash of the file's bytes, rendered as 16 lowercase hex digits.
std::string file_fingerprint(const std::filesystem::path& path);

}  // namespace vafex
