#include "ntdice/surd.hpp"

#include <sstream>

#include "ntdice/errors.hpp"

namespace ntdice {
namespace {

Int128 pow10(int k) {
  Int128 r = 1;
  for (int i = 0; i < k; ++i) r *= 10;
  return r;
}

std::string int128_to_string(Int128 v) {
  if (v == 0) return "0";
  const bool neg = v < 0;
  UInt128 u = neg ? static_cast<UInt128>(-v) : static_cast<UInt128>(v);
  std::string s;
  while (u > 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  return {s.rbegin(), s.rend()};
}

}  // namespace

std::string to_string(const Surd& s) {
  std::ostringstream out;
  out << '(' << s.a << (s.b < 0 ? " - " : " + ") << (s.b < 0 ? -s.b : s.b) << "*sqrt(" << s.d
      << "))/" << s.c;
  return out.str();
}

std::uint64_t isqrt(std::uint64_t x) {
  return static_cast<std::uint64_t>(isqrt(static_cast<UInt128>(x)));
}

UInt128 isqrt(UInt128 x) {
  if (x < 2) return x;
  // Newton iteration from an upper bound; monotonically decreasing to floor(sqrt(x)).
  UInt128 r = x;
  UInt128 next = (r + x / r) / 2;
  while (next < r) {
    r = next;
    next = (r + x / r) / 2;
  }
  return r;
}

int sign_of(Int128 u, Int128 v, std::int64_t d) {
  if (d < 0) throw DomainError("sqrt of a negative number");
  if (d == 0 || v == 0) return (u > 0) - (u < 0);
  const int su = (u > 0) - (u < 0);
  const int sv = v > 0 ? 1 : -1;
  if (su == 0) return sv;
  if (su == sv) return su;
  // Opposite signs: compare u^2 with v^2 d.
  const Int128 lhs = u * u;
  const Int128 rhs = v * v * d;
  if (lhs == rhs) return 0;
  return lhs > rhs ? su : sv;
}

std::strong_ordering compare(const Surd& s, const Probability& r) {
  if (s.c <= 0) throw DomainError("surd denominator must be positive");
  // (a + b sqrt d)/c vs p/q  <=>  (a q - p c) + b q sqrt d vs 0.
  const Int128 u = static_cast<Int128>(s.a) * r.denominator() -
                     static_cast<Int128>(r.numerator()) * s.c;
  const Int128 v = static_cast<Int128>(s.b) * r.denominator();
  const int sg = sign_of(u, v, s.d);
  return sg < 0 ? std::strong_ordering::less
                : (sg > 0 ? std::strong_ordering::greater : std::strong_ordering::equal);
}

std::strong_ordering compare(const Probability& x, const Probability& y) {
  const Int128 lhs = static_cast<Int128>(x.numerator()) * y.denominator();
  const Int128 rhs = static_cast<Int128>(y.numerator()) * x.denominator();
  return lhs <=> rhs;
}

Enclosure enclose(const Surd& s, int digits) {
  if (digits < 1 || digits > 16) throw DomainError("enclosure digits must be in 1..16");
  if (s.c <= 0 || s.d < 0) throw DomainError("malformed surd " + to_string(s));
  const Int128 scale = pow10(digits);
  // root <= sqrt(d) * 10^digits < root + 1
  const Int128 root = static_cast<Int128>(
      isqrt(static_cast<UInt128>(s.d) * static_cast<UInt128>(scale * scale)));
  const bool exact = root * root == static_cast<Int128>(s.d) * scale * scale;
  Int128 lo = static_cast<Int128>(s.a) * scale + static_cast<Int128>(s.b) * root;
  Int128 hi = lo;
  if (!exact) {
    if (s.b > 0) hi += s.b;
    else lo += s.b;
  }
  const Int128 den = static_cast<Int128>(s.c) * scale;
  auto narrow = [&](Int128 num) {
    return Probability(static_cast<std::int64_t>(num), static_cast<std::int64_t>(den));
  };
  return {narrow(lo), narrow(hi)};
}

std::optional<bool> below_from_enclosure(const Enclosure& e, const Probability& threshold) {
  if (compare(e.hi, threshold) < 0) return true;
  if (compare(e.lo, threshold) >= 0) return false;
  return std::nullopt;
}

std::string to_decimal(const Probability& r, int digits, bool round_up) {
  if (r < Probability(0)) throw DomainError("to_decimal expects a non-negative value");
  const Int128 num = r.numerator();
  const Int128 den = r.denominator();
  const Int128 scaled_num = num * pow10(digits);
  Int128 q = scaled_num / den;
  if (round_up && q * den != scaled_num) ++q;
  const Int128 unit = pow10(digits);
  std::string frac = int128_to_string(q % unit);
  frac.insert(frac.begin(), static_cast<std::size_t>(digits) - frac.size(), '0');
  return int128_to_string(q / unit) + "." + frac;
}

}  // namespace ntdice
