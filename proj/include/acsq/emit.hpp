#pragma once

#include <cstdint>
#include <string>

// Locale-free, bit-reproducible text output helpers shared by the CLI.

namespace acsq {

// 17 significant digits (round-trip exact for binary64), '.' separator.
std::string format_sig17(double v);

// FNV-1a 64-bit hash of a byte string; used to stamp outputs with the
// configuration they came from.
std::uint64_t fnv1a64(const std::string& bytes);

// fnv1a64 rendered as 16 lowercase hex digits.
std::string fnv1a64_hex(const std::string& bytes);

}  // namespace acsq
