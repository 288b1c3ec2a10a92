#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace selfnest {

// Exact rational with 128-bit numerator and denominator, always reduced,
// denominator positive. Wide limbs because numerators like 2n - N can sit
// far outside 64 bits when N is a node count near the uint64 ceiling.
class Rational {
 public:
  Rational() = default;

  Rational(__int128 num, __int128 den) {
    if (den == 0) throw std::invalid_argument("zero denominator");
    if (den < 0) {
      num = -num;
      den = -den;
    }
    __int128 g = gcd128(num < 0 ? -num : num, den);
    if (g > 1) {
      num /= g;
      den /= g;
    }
    num_ = num;
    den_ = den;
  }

  __int128 num() const { return num_; }
  __int128 den() const { return den_; }

  bool operator==(const Rational&) const = default;

  bool operator<(const Rational& o) const { return num_ * o.den_ < o.num_ * den_; }
  bool operator<=(const Rational& o) const { return num_ * o.den_ <= o.num_ * den_; }

  std::string to_string() const { return int128_to_string(num_) + "/" + int128_to_string(den_); }

 private:
  static __int128 gcd128(__int128 a, __int128 b) {
    while (b != 0) {
      __int128 r = a % b;
      a = b;
      b = r;
    }
    return a;
  }

  static std::string int128_to_string(__int128 v) {
    if (v == 0) return "0";
    bool neg = v < 0;
    unsigned __int128 u = neg ? -static_cast<unsigned __int128>(v) : static_cast<unsigned __int128>(v);
    std::string digits;
    while (u > 0) {
      digits.push_back(static_cast<char>('0' + static_cast<int>(u % 10)));
      u /= 10;
    }
    if (neg) digits.push_back('-');
    return std::string(digits.rbegin(), digits.rend());
  }

  __int128 num_ = 0;
  __int128 den_ = 1;
};

}  // namespace selfnest
