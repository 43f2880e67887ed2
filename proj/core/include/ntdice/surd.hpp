#pragma once

// Quadratic surds (a + b*sqrt(d)) / c with exact comparisons against
// rationals. No floating point is involved anywhere in this header.

#include <compare>
#include <cstdint>
#include <optional>
#include <string>

#include "ntdice/dice.hpp"

namespace ntdice {

__extension__ using Int128 = __int128;
__extension__ using UInt128 = unsigned __int128;

struct Surd {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t c = 1;  // > 0
  std::int64_t d = 0;  // >= 0

  bool operator==(const Surd&) const = default;
};

std::string to_string(const Surd& s);

/// floor(sqrt(x)).
std::uint64_t isqrt(std::uint64_t x);
UInt128 isqrt(UInt128 x);

/// Sign of u + v*sqrt(d), decided on integers.
int sign_of(Int128 u, Int128 v, std::int64_t d);

/// Exact three-way comparison of a surd with a rational.
std::strong_ordering compare(const Surd& s, const Probability& r);

/// Exact three-way comparison of two rationals (128-bit cross products).
std::strong_ordering compare(const Probability& x, const Probability& y);

/// Rational interval [lo, hi] containing the surd, width <= |b| / (c * 10^digits).
struct Enclosure {
  Probability lo;
  Probability hi;
};

/// digits in [1, 16].
Enclosure enclose(const Surd& s, int digits);

/// Decides value < threshold from an enclosure when it can.
std::optional<bool> below_from_enclosure(const Enclosure& e, const Probability& threshold);

/// Decimal digits of a non-negative rational, truncated (round_up = false) or
/// rounded toward +infinity.
std::string to_decimal(const Probability& r, int digits, bool round_up);

}  // namespace ntdice
