#pragma once

#include <cstdint>
#include <iosfwd>
#include <memory>
#include <string>

#include <gmpxx.h>

namespace excon {

class Scalar;

/// The base field: the rationals or a prime field F_p (p < 2^31).
class Field {
 public:
  enum class Kind { Rationals, PrimeField };

  Field() = default;  // the rationals
  static Field rationals() { return Field(); }
  /// Throws Error(NotPrime) when p is not a prime below 2^31.
  static Field prime(std::uint64_t p);
  /// Parses "Q" or "Fp:<p>".
  static Field parse(const std::string& text);

  Kind kind() const { return modulus_ == 0 ? Kind::Rationals : Kind::PrimeField; }
  bool is_rational() const { return modulus_ == 0; }
  std::uint32_t characteristic() const { return modulus_; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long value) const;
  /// Maps an exact rational into this field; throws DivisionByZero when the
  /// denominator vanishes mod p.
  Scalar from_rational(const mpq_class& value) const;

  std::string to_string() const;

  friend bool operator==(const Field& a, const Field& b) { return a.modulus_ == b.modulus_; }
  friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

 private:
  explicit Field(std::uint32_t p) : modulus_(p) {}
  std::uint32_t modulus_ = 0;
};

/// An exact field element. Rationals keep an int64 numerator/denominator
/// pair and promote to GMP only when a result leaves that range; prime-field
/// elements are residues in [0, p).
///
/// A default-constructed Scalar is a field-agnostic zero: it adopts the
/// field of the other operand in binary operations.
class Scalar {
 public:
  Scalar() = default;

  static Scalar residue(std::uint32_t p, std::uint64_t r);
  static Scalar rational(std::int64_t num, std::int64_t den = 1);
  static Scalar rational(const mpq_class& q);

  bool is_zero() const { return big_ == nullptr && num_ == 0; }
  bool is_one() const { return big_ == nullptr && num_ == 1 && den_ == 1; }
  std::uint32_t modulus() const { return mod_; }
  bool is_small() const { return big_ == nullptr; }

  mpq_class to_mpq() const;
  /// "p/q" for rationals, the residue for F_p.
  std::string to_string() const;

  Scalar operator-() const;
  Scalar inverse() const;

  friend Scalar operator+(const Scalar& a, const Scalar& b);
  friend Scalar operator-(const Scalar& a, const Scalar& b);
  friend Scalar operator*(const Scalar& a, const Scalar& b);
  friend Scalar operator/(const Scalar& a, const Scalar& b);
  Scalar& operator+=(const Scalar& b) { return *this = *this + b; }
  Scalar& operator-=(const Scalar& b) { return *this = *this - b; }
  Scalar& operator*=(const Scalar& b) { return *this = *this * b; }
  Scalar& operator/=(const Scalar& b) { return *this = *this / b; }

  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

 private:
  static Scalar from_mpq(mpq_class q);
  static std::uint32_t common_modulus(const Scalar& a, const Scalar& b);

  std::int64_t num_ = 0;  // numerator, or the residue mod p
  std::int64_t den_ = 1;
  std::shared_ptr<const mpq_class> big_;
  std::uint32_t mod_ = 0;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace excon
