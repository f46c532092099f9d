#include "vafex/file_hash.hpp"

#include <fstream>
#include <sstream>

#include "vafex/errors.hpp"

namespace vafex {

std::uint64_t fnv1a64(std::string_view bytes) {
  std::uint64_t hash = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    hash ^= c;
    hash *= 0x100000001b3ull;
  }
  return hash;
}

std::string file_fingerprint(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot read file for hashing: " + path.string());
  std::ostringstream buffer;
  buffer << in.rdbuf();
  const std::uint64_t hash = fnv1a64(buffer.str());

  static const char* hex = "0123456789abcdef";
  std::string out(16, '0');
  for (int i = 0; i < 16; ++i) {
    out[15 - i] = hex[(hash >> (4 * i)) & 0xf];
  }
  return out;
}

}  // namespace vafex
