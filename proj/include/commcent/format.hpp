#pragma once

#include <cstdint>
#include <string>
#include <string_view>

namespace commcent {

// Shortest decimal representation that parses back to the same double.
std::string format_double(double value);

// 64-bit FNV-1a, rendered as 16 lowercase hex digits.
std::uint64_t fnv1a(std::string_view bytes, std::uint64_t state = 0xcbf29ce484222325ULL);
std::string hex64(std::uint64_t value);

// Mixes a seed with a stream index into an independent 64-bit seed.
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);

}  // namespace commcent
