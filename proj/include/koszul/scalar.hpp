#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace koszul {

/// Arbitrary-precision rational, the default coefficient field.
/// boost keeps values fully reduced with positive denominator.
using Rational = boost::multiprecision::cpp_rational;
using Integer = boost::multiprecision::cpp_int;

/// Element of F_p for a runtime prime p. The modulus is process-global:
/// set it once (PrimeField::set_modulus) before doing any arithmetic.
class PrimeField {
public:
  PrimeField() : v_(0) {}
  PrimeField(long long x) : v_(normalize(x)) {}

  static void set_modulus(long long p) {
    if (p < 2) throw std::invalid_argument("PrimeField: modulus must be >= 2");
    modulus_ = p;
  }
  static long long modulus() { return modulus_; }

  long long value() const { return v_; }

  friend PrimeField operator+(PrimeField a, PrimeField b) {
    return PrimeField(a.v_ + b.v_);
  }
  friend PrimeField operator-(PrimeField a, PrimeField b) {
    return PrimeField(a.v_ - b.v_);
  }
  friend PrimeField operator*(PrimeField a, PrimeField b) {
    return PrimeField(a.v_ * b.v_);
  }
  friend PrimeField operator/(PrimeField a, PrimeField b) {
    return a * b.inverse();
  }
  PrimeField operator-() const { return PrimeField(-v_); }
  PrimeField& operator+=(PrimeField o) { return *this = *this + o; }
  PrimeField& operator-=(PrimeField o) { return *this = *this - o; }
  PrimeField& operator*=(PrimeField o) { return *this = *this * o; }
  PrimeField& operator/=(PrimeField o) { return *this = *this / o; }
  friend bool operator==(PrimeField a, PrimeField b) { return a.v_ == b.v_; }
  friend bool operator!=(PrimeField a, PrimeField b) { return a.v_ != b.v_; }

  PrimeField inverse() const {
    if (v_ == 0) throw std::domain_error("PrimeField: division by zero");
    // extended Euclid
    long long a = v_, b = modulus_, x0 = 1, x1 = 0;
    while (b != 0) {
      long long q = a / b;
      long long t = a - q * b; a = b; b = t;
      t = x0 - q * x1; x0 = x1; x1 = t;
    }
    return PrimeField(x0);
  }

private:
  static long long normalize(long long x) {
    long long p = modulus_;
    x %= p;
    if (x < 0) x += p;
    return x;
  }
  static inline long long modulus_ = 2;
  long long v_;
};

/// Parse "a" or "a/b" with optional sign.
inline Rational parse_rational(const std::string& s) {
  auto slash = s.find('/');
  if (slash == std::string::npos) return Rational(Integer(s));
  Integer num(s.substr(0, slash));
  Integer den(s.substr(slash + 1));
  if (den == 0) throw std::domain_error("rational with zero denominator");
  return Rational(num, den);
}

template <class F>
F field_from_rational(const Rational& r);

template <>
inline Rational field_from_rational<Rational>(const Rational& r) {
  return r;
}

template <>
inline PrimeField field_from_rational<PrimeField>(const Rational& r) {
  Integer p(PrimeField::modulus());
  Integer num = numerator(r) % p;
  Integer den = denominator(r) % p;
  PrimeField n(static_cast<long long>(num));
  PrimeField d(static_cast<long long>(den));
  return n / d;
}

inline std::string field_str(const Rational& r) { return r.str(); }
inline std::string field_str(const PrimeField& x) { return std::to_string(x.value()); }

}  // namespace koszul
