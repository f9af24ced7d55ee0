#pragma once

// Exact coefficient scalars: arbitrary-precision rationals (GMP) and prime residue
// fields with a runtime modulus. Generic code treats the scalar type K as an opaque
// field element and funnels every construction through the helpers at the bottom,
// passing a prototype element that pins the field. Prototypes are ignored for
// rationals; for PrimeField they carry the modulus.

#include <gmpxx.h>

#include <cstdint>
#include <stdexcept>
#include <string>

#include "qha/errors.hpp"

namespace qha {

using Integer = mpz_class;
using Rational = mpq_class;

struct FieldError : std::runtime_error {
  explicit FieldError(const std::string& what) : std::runtime_error(what) {}
};

// Largest allowed prime modulus; keeps products of reduced residues inside int64.
inline constexpr std::int64_t kMaxPrimeModulus = std::int64_t(1) << 31;

inline bool is_prime_modulus(std::int64_t p) {
  if (p < 2 || p >= kMaxPrimeModulus) return false;
  if (p % 2 == 0) return p == 2;
  for (std::int64_t d = 3; d * d <= p; d += 2)
    if (p % d == 0) return false;
  return true;
}

// Element of F_p. A modulus of 0 marks an "unpinned" value (produced by generic
// zero/one initialisation before any field context is known); arithmetic with a
// pinned operand adopts its modulus and reduces. Unpinned values stay small
// integers by construction, so their plain int64 arithmetic is exact.
class PrimeField {
 public:
  PrimeField() = default;
  PrimeField(std::int64_t value, std::int64_t modulus) : v_(value), p_(modulus) {
    if (p_ < 0 || p_ >= kMaxPrimeModulus)
      throw FieldError("prime field modulus out of range");
    reduce();
  }

  std::int64_t value() const { return v_; }
  std::int64_t modulus() const { return p_; }
  bool pinned() const { return p_ != 0; }

  friend PrimeField operator+(const PrimeField& a, const PrimeField& b) {
    std::int64_t p = reconcile(a.p_, b.p_);
    return PrimeField(a.v_ + b.v_, p);
  }
  friend PrimeField operator-(const PrimeField& a, const PrimeField& b) {
    std::int64_t p = reconcile(a.p_, b.p_);
    return PrimeField(a.v_ - b.v_, p);
  }
  friend PrimeField operator-(const PrimeField& a) {
    return PrimeField(-a.v_, a.p_);
  }
  friend PrimeField operator*(const PrimeField& a, const PrimeField& b) {
    std::int64_t p = reconcile(a.p_, b.p_);
    if (p == 0) return PrimeField(a.v_ * b.v_, 0);
    std::int64_t av = canonical(a.v_, p), bv = canonical(b.v_, p);
    return PrimeField((av * bv) % p, p);
  }
  friend PrimeField operator/(const PrimeField& a, const PrimeField& b) {
    return a * b.inverse();
  }
  PrimeField& operator+=(const PrimeField& o) { return *this = *this + o; }
  PrimeField& operator-=(const PrimeField& o) { return *this = *this - o; }
  PrimeField& operator*=(const PrimeField& o) { return *this = *this * o; }
  PrimeField& operator/=(const PrimeField& o) { return *this = *this / o; }

  PrimeField inverse() const {
    if (p_ == 0) {
      if (v_ == 1 || v_ == -1) return *this;
      throw FieldError("cannot invert an unpinned prime field element");
    }
    std::int64_t a = canonical(v_, p_);
    if (a == 0) throw FieldError("division by zero in prime field");
    // Extended Euclid: find x with a*x = 1 mod p.
    std::int64_t r0 = p_, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
      std::int64_t q = r0 / r1;
      std::int64_t r2 = r0 - q * r1;
      std::int64_t s2 = s0 - q * s1;
      r0 = r1; r1 = r2; s0 = s1; s1 = s2;
    }
    return PrimeField(s0, p_);
  }

  friend bool operator==(const PrimeField& a, const PrimeField& b) {
    std::int64_t p = reconcile(a.p_, b.p_);
    if (p == 0) return a.v_ == b.v_;
    return canonical(a.v_, p) == canonical(b.v_, p);
  }
  friend bool operator!=(const PrimeField& a, const PrimeField& b) { return !(a == b); }

 private:
  static std::int64_t canonical(std::int64_t v, std::int64_t p) {
    std::int64_t r = v % p;
    return r < 0 ? r + p : r;
  }
  static std::int64_t reconcile(std::int64_t pa, std::int64_t pb) {
    if (pa == 0) return pb;
    if (pb == 0) return pa;
    if (pa != pb) throw FieldError("mixed prime field moduli");
    return pa;
  }
  void reduce() {
    if (p_ != 0) v_ = canonical(v_, p_);
  }

  std::int64_t v_ = 0;
  std::int64_t p_ = 0;
};

// Names a coefficient field: the rationals or F_p for a prime p.
struct FieldSpec {
  enum class Kind { rationals, prime_field };
  Kind kind = Kind::rationals;
  std::int64_t p = 0;

  static FieldSpec make_rationals() { return FieldSpec{Kind::rationals, 0}; }
  static FieldSpec make_prime(std::int64_t p) {
    if (!is_prime_modulus(p))
      throw FieldError("modulus " + std::to_string(p) + " is not a prime below 2^31");
    return FieldSpec{Kind::prime_field, p};
  }
  friend bool operator==(const FieldSpec& a, const FieldSpec& b) {
    return a.kind == b.kind && a.p == b.p;
  }
  friend bool operator!=(const FieldSpec& a, const FieldSpec& b) { return !(a == b); }
  std::string to_string() const {
    return kind == Kind::rationals ? "Q" : "F_" + std::to_string(p);
  }
};

// --- helpers over Rational ---

inline bool is_zero(const Rational& x) { return sgn(x) == 0; }
inline Rational scalar_one(const Rational&) { return Rational(1); }
inline Rational scalar_from_int(long long n, const Rational&) {
  Rational r;
  r = Integer(static_cast<long>(n));
  return r;
}
inline Rational scalar_from_integer(const Integer& n, const Rational&) { return Rational(n); }

// Canonical text form: "n" for integers, "n/d" otherwise, always reduced.
inline std::string scalar_to_string(const Rational& x) { return x.get_str(); }

inline Rational scalar_parse(const std::string& s, const Rational&) {
  mpq_class q;
  if (s.empty() || mpq_set_str(q.get_mpq_t(), s.c_str(), 10) != 0)
    throw FieldError("malformed rational literal: '" + s + "'");
  if (sgn(q.get_den()) == 0) throw FieldError("zero denominator in rational literal: '" + s + "'");
  q.canonicalize();
  return q;
}

inline FieldSpec field_spec_of(const Rational&) { return FieldSpec::make_rationals(); }
inline Rational field_prototype(const FieldSpec& spec, const Rational&) {
  if (spec.kind != FieldSpec::Kind::rationals)
    throw FieldError("rational scalar requested for a prime field spec");
  return Rational(0);
}

// --- helpers over PrimeField ---

inline bool is_zero(const PrimeField& x) { return x == PrimeField(); }
inline PrimeField scalar_one(const PrimeField& proto) { return PrimeField(1, proto.modulus()); }
inline PrimeField scalar_from_int(long long n, const PrimeField& proto) {
  if (!proto.pinned()) throw FieldError("prime field prototype is unpinned");
  return PrimeField(static_cast<std::int64_t>(n % proto.modulus()), proto.modulus());
}
inline PrimeField scalar_from_integer(const Integer& n, const PrimeField& proto) {
  if (!proto.pinned()) throw FieldError("prime field prototype is unpinned");
  Integer r = n % Integer(static_cast<long>(proto.modulus()));
  return PrimeField(r.get_si(), proto.modulus());
}
inline std::string scalar_to_string(const PrimeField& x) { return std::to_string(x.value()); }

inline PrimeField scalar_parse(const std::string& s, const PrimeField& proto) {
  if (!proto.pinned()) throw FieldError("prime field prototype is unpinned");
  auto slash = s.find('/');
  std::string num = slash == std::string::npos ? s : s.substr(0, slash);
  Integer n;
  if (num.empty() || mpz_set_str(n.get_mpz_t(), num.c_str(), 10) != 0)
    throw FieldError("malformed field literal: '" + s + "'");
  PrimeField result = scalar_from_integer(n, proto);
  if (slash != std::string::npos) {
    std::string den = s.substr(slash + 1);
    Integer d;
    if (den.empty() || mpz_set_str(d.get_mpz_t(), den.c_str(), 10) != 0)
      throw FieldError("malformed field literal: '" + s + "'");
    result = result / scalar_from_integer(d, proto);
  }
  return result;
}

inline FieldSpec field_spec_of(const PrimeField& x) {
  if (!x.pinned()) throw FieldError("field spec of an unpinned prime field element");
  return FieldSpec::make_prime(x.modulus());
}
inline PrimeField field_prototype(const FieldSpec& spec, const PrimeField&) {
  if (spec.kind != FieldSpec::Kind::prime_field)
    throw FieldError("prime field scalar requested for a rational spec");
  return PrimeField(0, spec.p);
}

}  // namespace qha
