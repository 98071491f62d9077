#include "prefopt/rational.hpp"

#include <stdexcept>

namespace prefopt {

BigInt::BigInt(long long v) {
  if (v == 0) return;
  sign_ = v < 0 ? -1 : 1;
  unsigned long long m = v < 0 ? -static_cast<unsigned long long>(v) : static_cast<unsigned long long>(v);
  while (m != 0) {
    mag_.push_back(static_cast<std::uint32_t>(m % kBase));
    m /= kBase;
  }
}

BigInt BigInt::from_digits(const std::string& digits) {
  if (digits.empty()) throw std::invalid_argument("empty digit string");
  BigInt r;
  for (std::size_t i = digits.size(); i > 0;) {
    std::size_t chunk = i >= 9 ? 9 : i;
    std::size_t start = i - chunk;
    std::uint32_t limb = 0;
    for (std::size_t j = start; j < i; ++j) {
      char c = digits[j];
      if (c < '0' || c > '9') throw std::invalid_argument("bad digit");
      limb = limb * 10 + static_cast<std::uint32_t>(c - '0');
    }
    r.mag_.push_back(limb);
    i = start;
  }
  r.sign_ = 1;
  r.trim();
  return r;
}

void BigInt::trim() {
  while (!mag_.empty() && mag_.back() == 0) mag_.pop_back();
  if (mag_.empty()) sign_ = 0;
}

int BigInt::cmp_mag(const std::vector<std::uint32_t>& a, const std::vector<std::uint32_t>& b) {
  if (a.size() != b.size()) return a.size() < b.size() ? -1 : 1;
  for (std::size_t i = a.size(); i > 0; --i) {
    if (a[i - 1] != b[i - 1]) return a[i - 1] < b[i - 1] ? -1 : 1;
  }
  return 0;
}

std::vector<std::uint32_t> BigInt::add_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> r;
  r.reserve(std::max(a.size(), b.size()) + 1);
  std::uint32_t carry = 0;
  for (std::size_t i = 0; i < a.size() || i < b.size() || carry; ++i) {
    std::uint64_t s = carry;
    if (i < a.size()) s += a[i];
    if (i < b.size()) s += b[i];
    r.push_back(static_cast<std::uint32_t>(s % kBase));
    carry = static_cast<std::uint32_t>(s / kBase);
  }
  return r;
}

std::vector<std::uint32_t> BigInt::sub_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  std::vector<std::uint32_t> r = a;
  std::int64_t borrow = 0;
  for (std::size_t i = 0; i < r.size(); ++i) {
    std::int64_t cur = static_cast<std::int64_t>(r[i]) - borrow - (i < b.size() ? b[i] : 0);
    if (cur < 0) {
      cur += kBase;
      borrow = 1;
    } else {
      borrow = 0;
    }
    r[i] = static_cast<std::uint32_t>(cur);
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

std::vector<std::uint32_t> BigInt::mul_mag(const std::vector<std::uint32_t>& a,
                                           const std::vector<std::uint32_t>& b) {
  if (a.empty() || b.empty()) return {};
  std::vector<std::uint32_t> r(a.size() + b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i) {
    std::uint64_t carry = 0;
    for (std::size_t j = 0; j < b.size() || carry; ++j) {
      std::uint64_t cur = r[i + j] + carry;
      if (j < b.size()) cur += static_cast<std::uint64_t>(a[i]) * b[j];
      r[i + j] = static_cast<std::uint32_t>(cur % kBase);
      carry = cur / kBase;
    }
  }
  while (!r.empty() && r.back() == 0) r.pop_back();
  return r;
}

BigInt BigInt::negated() const {
  BigInt r = *this;
  r.sign_ = -r.sign_;
  return r;
}

BigInt BigInt::abs() const {
  BigInt r = *this;
  if (r.sign_ < 0) r.sign_ = 1;
  return r;
}

BigInt BigInt::operator+(const BigInt& o) const {
  if (sign_ == 0) return o;
  if (o.sign_ == 0) return *this;
  BigInt r;
  if (sign_ == o.sign_) {
    r.mag_ = add_mag(mag_, o.mag_);
    r.sign_ = sign_;
  } else {
    int c = cmp_mag(mag_, o.mag_);
    if (c == 0) return BigInt();
    if (c > 0) {
      r.mag_ = sub_mag(mag_, o.mag_);
      r.sign_ = sign_;
    } else {
      r.mag_ = sub_mag(o.mag_, mag_);
      r.sign_ = o.sign_;
    }
  }
  r.trim();
  return r;
}

BigInt BigInt::operator-(const BigInt& o) const { return *this + o.negated(); }

BigInt BigInt::operator*(const BigInt& o) const {
  BigInt r;
  r.mag_ = mul_mag(mag_, o.mag_);
  r.sign_ = sign_ * o.sign_;
  r.trim();
  return r;
}

void BigInt::divmod(const BigInt& a, const BigInt& b, BigInt& q, BigInt& r) {
  if (b.sign_ == 0) throw std::domain_error("division by zero");
  if (cmp_mag(a.mag_, b.mag_) < 0) {
    q = BigInt();
    r = a;
    return;
  }
  // Schoolbook long division over base-1e9 limbs; quotient digits found by
  // binary search against the divisor magnitude.
  std::vector<std::uint32_t> rem;
  std::vector<std::uint32_t> quot(a.mag_.size(), 0);
  for (std::size_t i = a.mag_.size(); i > 0; --i) {
    rem.insert(rem.begin(), a.mag_[i - 1]);
    while (!rem.empty() && rem.back() == 0) rem.pop_back();
    std::uint32_t lo = 0, hi = kBase - 1, digit = 0;
    while (lo <= hi) {
      std::uint32_t mid = lo + (hi - lo) / 2;
      std::vector<std::uint32_t> prod = mul_mag(b.mag_, {mid});
      if (cmp_mag(prod, rem) <= 0) {
        digit = mid;
        if (mid == kBase - 1) break;
        lo = mid + 1;
      } else {
        if (mid == 0) break;
        hi = mid - 1;
      }
    }
    quot[i - 1] = digit;
    if (digit != 0) rem = sub_mag(rem, mul_mag(b.mag_, {digit}));
  }
  q = BigInt();
  q.mag_ = std::move(quot);
  q.sign_ = a.sign_ * b.sign_;
  q.trim();
  r = BigInt();
  r.mag_ = std::move(rem);
  r.sign_ = a.sign_;
  r.trim();
}

BigInt BigInt::gcd(BigInt a, BigInt b) {
  a = a.abs();
  b = b.abs();
  while (!b.is_zero()) {
    BigInt q, r;
    divmod(a, b, q, r);
    a = b;
    b = r;
  }
  if (a.is_zero()) return BigInt(1);
  return a;
}

int BigInt::compare(const BigInt& o) const {
  if (sign_ != o.sign_) return sign_ < o.sign_ ? -1 : 1;
  int c = cmp_mag(mag_, o.mag_);
  return sign_ >= 0 ? c : -c;
}

bool BigInt::fits_int64() const {
  if (mag_.size() > 3) return false;
  unsigned long long v = 0;
  for (std::size_t i = mag_.size(); i > 0; --i) {
    if (v > (~0ull - mag_[i - 1]) / kBase) return false;
    v = v * kBase + mag_[i - 1];
  }
  return v <= (sign_ < 0 ? 9223372036854775808ull : 9223372036854775807ull);
}

std::int64_t BigInt::to_int64() const {
  unsigned long long v = 0;
  for (std::size_t i = mag_.size(); i > 0; --i) v = v * kBase + mag_[i - 1];
  return static_cast<std::int64_t>(sign_ < 0 ? -v : v);
}

std::string BigInt::to_string() const {
  if (sign_ == 0) return "0";
  std::string s = sign_ < 0 ? "-" : "";
  s += std::to_string(mag_.back());
  for (std::size_t i = mag_.size() - 1; i > 0; --i) {
    std::string limb = std::to_string(mag_[i - 1]);
    s += std::string(9 - limb.size(), '0') + limb;
  }
  return s;
}

Rational::Rational(BigInt num, BigInt den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_.is_zero()) throw std::domain_error("zero denominator");
  normalize();
}

void Rational::normalize() {
  if (den_.is_negative()) {
    num_ = num_.negated();
    den_ = den_.negated();
  }
  if (num_.is_zero()) {
    den_ = BigInt(1);
    return;
  }
  BigInt g = BigInt::gcd(num_, den_);
  BigInt q, r;
  BigInt::divmod(num_, g, q, r);
  num_ = q;
  BigInt::divmod(den_, g, q, r);
  den_ = q;
}

Rational Rational::parse(const std::string& text) {
  if (text.empty()) throw std::invalid_argument("empty number");
  std::size_t pos = 0;
  bool neg = false;
  if (text[pos] == '+' || text[pos] == '-') {
    neg = text[pos] == '-';
    ++pos;
  }
  std::string int_part, frac_part, den_part;
  bool saw_slash = false, saw_dot = false;
  std::string* cur = &int_part;
  for (; pos < text.size(); ++pos) {
    char c = text[pos];
    if (c >= '0' && c <= '9') {
      cur->push_back(c);
    } else if (c == '.' && !saw_dot && !saw_slash) {
      saw_dot = true;
      cur = &frac_part;
    } else if (c == '/' && !saw_slash && !saw_dot) {
      saw_slash = true;
      cur = &den_part;
    } else {
      throw std::invalid_argument("bad number: " + text);
    }
  }
  if (int_part.empty()) throw std::invalid_argument("bad number: " + text);
  if (saw_slash) {
    if (den_part.empty()) throw std::invalid_argument("bad number: " + text);
    BigInt n = BigInt::from_digits(int_part);
    BigInt d = BigInt::from_digits(den_part);
    if (neg) n = n.negated();
    return Rational(std::move(n), std::move(d));
  }
  BigInt n = BigInt::from_digits(int_part + frac_part);
  BigInt d(1);
  for (std::size_t i = 0; i < frac_part.size(); ++i) d = d * BigInt(10);
  if (neg) n = n.negated();
  return Rational(std::move(n), std::move(d));
}

int Rational::compare(const Rational& o) const {
  // Fast path covers virtually all engine data.
  if (num_.fits_int64() && den_.fits_int64() && o.num_.fits_int64() && o.den_.fits_int64()) {
    __int128 lhs = static_cast<__int128>(num_.to_int64()) * o.den_.to_int64();
    __int128 rhs = static_cast<__int128>(o.num_.to_int64()) * den_.to_int64();
    return lhs < rhs ? -1 : (lhs > rhs ? 1 : 0);
  }
  return (num_ * o.den_).compare(o.num_ * den_);
}

Rational Rational::operator+(const Rational& o) const {
  return Rational(num_ * o.den_ + o.num_ * den_, den_ * o.den_);
}

Rational Rational::operator-(const Rational& o) const {
  return Rational(num_ * o.den_ - o.num_ * den_, den_ * o.den_);
}

Rational Rational::midpoint(const Rational& a, const Rational& b) {
  return Rational(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_ * BigInt(2));
}

std::string Rational::to_string() const {
  if (den_ == BigInt(1)) return num_.to_string();
  // Strip factors of 2 and 5; a trivial remainder means a finite decimal.
  BigInt rest = den_;
  int twos = 0, fives = 0;
  BigInt q, r;
  for (;;) {
    BigInt::divmod(rest, BigInt(2), q, r);
    if (!r.is_zero()) break;
    rest = q;
    ++twos;
  }
  for (;;) {
    BigInt::divmod(rest, BigInt(5), q, r);
    if (!r.is_zero()) break;
    rest = q;
    ++fives;
  }
  if (!(rest == BigInt(1))) return num_.to_string() + "/" + den_.to_string();
  int digits = twos > fives ? twos : fives;
  BigInt scale(1);
  for (int i = 0; i < digits; ++i) scale = scale * BigInt(10);
  BigInt::divmod(scale, den_, q, r);
  BigInt scaled = num_.abs() * q;
  std::string s = scaled.to_string();
  if (static_cast<int>(s.size()) <= digits) s = std::string(digits + 1 - s.size(), '0') + s;
  s.insert(s.size() - digits, ".");
  while (s.back() == '0') s.pop_back();
  if (s.back() == '.') s.pop_back();
  return (num_.is_negative() ? "-" : "") + s;
}

}  // namespace prefopt
