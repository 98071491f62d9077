#pragma once

#include <compare>
#include <cstdint>
#include <string>
#include <vector>

namespace prefopt {

/// Arbitrary-precision signed integer. Only the operations needed by
/// Rational are provided.
class BigInt {
 public:
  BigInt() = default;
  BigInt(long long v);
  static BigInt from_digits(const std::string& digits);

  bool is_zero() const { return sign_ == 0; }
  bool is_negative() const { return sign_ < 0; }
  BigInt negated() const;
  BigInt abs() const;

  BigInt operator+(const BigInt& o) const;
  BigInt operator-(const BigInt& o) const;
  BigInt operator*(const BigInt& o) const;
  /// Truncated division; remainder has the sign of the dividend.
  static void divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r);

  static BigInt gcd(BigInt a, BigInt b);

  int compare(const BigInt& o) const;
  bool operator==(const BigInt& o) const { return compare(o) == 0; }
  bool operator<(const BigInt& o) const { return compare(o) < 0; }

  bool fits_int64() const;
  std::int64_t to_int64() const;
  std::string to_string() const;

 private:
  static constexpr std::uint32_t kBase = 1000000000u;
  int sign_ = 0;                    // -1, 0, +1
  std::vector<std::uint32_t> mag_;  // little-endian base-1e9 limbs

  void trim();
  static int cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> add_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  // requires |a| >= |b|
  static std::vector<std::uint32_t> sub_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
  static std::vector<std::uint32_t> mul_mag(const std::vector<std::uint32_t>& a,
                                            const std::vector<std::uint32_t>& b);
};

/// Exact rational number. Always normalized: positive denominator,
/// gcd(num, den) = 1, zero is 0/1. Decimal literals convert exactly.
class Rational {
 public:
  Rational() : num_(0), den_(1) {}
  Rational(long long v) : num_(v), den_(1) {}
  Rational(BigInt num, BigInt den);

  /// Accepts "-12", "3.50", "7/2", "-7/2".
  static Rational parse(const std::string& text);

  const BigInt& num() const { return num_; }
  const BigInt& den() const { return den_; }
  bool is_zero() const { return num_.is_zero(); }

  int compare(const Rational& o) const;
  bool operator==(const Rational& o) const { return compare(o) == 0; }
  bool operator!=(const Rational& o) const { return compare(o) != 0; }
  bool operator<(const Rational& o) const { return compare(o) < 0; }
  bool operator<=(const Rational& o) const { return compare(o) <= 0; }
  bool operator>(const Rational& o) const { return compare(o) > 0; }
  bool operator>=(const Rational& o) const { return compare(o) >= 0; }

  Rational operator+(const Rational& o) const;
  Rational operator-(const Rational& o) const;
  static Rational midpoint(const Rational& a, const Rational& b);

  /// Shortest exact form: decimal when the denominator is 2^a*5^b,
  /// "p/q" otherwise.
  std::string to_string() const;

 private:
  BigInt num_;
  BigInt den_;
  void normalize();
};

}  // namespace prefopt
