#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace sepgraph {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Integers modulo a prime P.
template <std::uint32_t P>
class ModP {
  static_assert(P >= 2, "modulus must be at least 2");

 public:
  ModP() = default;
  ModP(long long x) : v_(reduce(x)) {}  // NOLINT: implicit like the integers

  static constexpr std::uint32_t modulus() { return P; }
  std::uint32_t value() const { return v_; }
  bool is_zero() const { return v_ == 0; }

  ModP& operator+=(ModP o) {
    v_ = static_cast<std::uint32_t>((std::uint64_t{v_} + o.v_) % P);
    return *this;
  }
  ModP& operator-=(ModP o) {
    v_ = static_cast<std::uint32_t>((std::uint64_t{v_} + P - o.v_) % P);
    return *this;
  }
  ModP& operator*=(ModP o) {
    v_ = static_cast<std::uint32_t>((std::uint64_t{v_} * o.v_) % P);
    return *this;
  }
  ModP& operator/=(ModP o) { return *this *= o.inverse(); }

  ModP inverse() const {
    if (v_ == 0) throw std::domain_error("division by zero modulo " + std::to_string(P));
    ModP r(1), b = *this;
    for (std::uint64_t e = P - 2; e; e >>= 1) {
      if (e & 1) r *= b;
      b *= b;
    }
    return r;
  }

  friend ModP operator+(ModP a, ModP b) { return a += b; }
  friend ModP operator-(ModP a, ModP b) { return a -= b; }
  friend ModP operator*(ModP a, ModP b) { return a *= b; }
  friend ModP operator/(ModP a, ModP b) { return a /= b; }
  friend ModP operator-(ModP a) { return ModP(0) - a; }
  friend bool operator==(ModP a, ModP b) { return a.v_ == b.v_; }

 private:
  static std::uint32_t reduce(long long x) {
    long long r = x % static_cast<long long>(P);
    if (r < 0) r += P;
    return static_cast<std::uint32_t>(r);
  }
  std::uint32_t v_ = 0;
};

template <class S>
struct ScalarTraits;

template <>
struct ScalarTraits<Rational> {
  static Rational from_decimal(const std::string& num, const std::string& den) {
    BigInt n(num), d(den);
    if (d == 0) throw std::domain_error("zero denominator");
    return Rational(n, d);
  }
  static bool is_zero(const Rational& x) { return x == 0; }
  static bool is_one(const Rational& x) { return x == 1; }
  static bool is_negative(const Rational& x) { return x < 0; }
  static std::string format_abs(const Rational& x) {
    Rational a = abs(x);
    if (denominator(a) == 1) return numerator(a).str();
    return "(" + numerator(a).str() + "/" + denominator(a).str() + ")";
  }
  static std::string field_name() { return "QQ"; }
};

template <std::uint32_t P>
struct ScalarTraits<ModP<P>> {
  static ModP<P> from_decimal(const std::string& num, const std::string& den) {
    return parse(num) / parse(den);
  }
  static bool is_zero(const ModP<P>& x) { return x.is_zero(); }
  static bool is_one(const ModP<P>& x) { return x.value() == 1; }
  // residues above P/2 print as negatives
  static bool is_negative(const ModP<P>& x) { return x.value() > P / 2; }
  static std::string format_abs(const ModP<P>& x) { return std::to_string(x.value()); }
  static std::string field_name() { return "GF(" + std::to_string(P) + ")"; }

 private:
  static ModP<P> parse(const std::string& s) {
    ModP<P> r(0);
    for (char c : s) r = r * ModP<P>(10) + ModP<P>(c - '0');
    return r;
  }
};

}  // namespace sepgraph
