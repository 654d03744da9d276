#include "excon/field.hpp"

#include <limits>
#include <numeric>
#include <ostream>

#include "excon/error.hpp"

namespace excon {

namespace {

using i128 = __int128;

constexpr std::int64_t kMin = std::numeric_limits<std::int64_t>::min();

bool fits(i128 v) {
  // INT64_MIN is excluded so that negation never overflows.
  return v > static_cast<i128>(kMin) && v <= static_cast<i128>(std::numeric_limits<std::int64_t>::max());
}

i128 gcd128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b != 0) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

std::uint64_t pow_mod(std::uint64_t base, std::uint64_t exp, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (exp > 0) {
    if (exp & 1U) result = result * base % p;
    base = base * base % p;
    exp >>= 1U;
  }
  return result;
}

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d) {
    if (n % d == 0) return false;
  }
  return true;
}

}  // namespace

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::NotPrime: return "NotPrime";
    case ErrorCode::DivisionByZero: return "DivisionByZero";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NonAssociative: return "NonAssociative";
    case ErrorCode::BadUnit: return "BadUnit";
    case ErrorCode::NotAMorphism: return "NotAMorphism";
    case ErrorCode::NotClosed: return "NotClosed";
    case ErrorCode::UnitMissing: return "UnitMissing";
    case ErrorCode::InvalidModule: return "InvalidModule";
    case ErrorCode::InvalidBimodule: return "InvalidBimodule";
    case ErrorCode::AlgebraMismatch: return "AlgebraMismatch";
    case ErrorCode::NotStable: return "NotStable";
    case ErrorCode::CharacteristicTooSmall: return "CharacteristicTooSmall";
    case ErrorCode::NotExact: return "NotExact";
    case ErrorCode::InternalInconsistency: return "InternalInconsistency";
    case ErrorCode::NotRigid: return "NotRigid";
    case ErrorCode::NotInjective: return "NotInjective";
    case ErrorCode::DegenerateQuotient: return "DegenerateQuotient";
    case ErrorCode::IncompatiblePairings: return "IncompatiblePairings";
    case ErrorCode::NotIdeal: return "NotIdeal";
    case ErrorCode::NotBimoduleSplitting: return "NotBimoduleSplitting";
    case ErrorCode::NeitherSurjective: return "NeitherSurjective";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::Inconclusive: return "Inconclusive";
    case ErrorCode::SyntaxError: return "SyntaxError";
    case ErrorCode::DuplicateName: return "DuplicateName";
    case ErrorCode::UnresolvedReference: return "UnresolvedReference";
    case ErrorCode::TypeMismatch: return "TypeMismatch";
    case ErrorCode::NotFiniteDimensional: return "NotFiniteDimensional";
    case ErrorCode::BadRelation: return "BadRelation";
    case ErrorCode::OracleMismatch: return "OracleMismatch";
    case ErrorCode::DimensionCap: return "DimensionCap";
  }
  return "Unknown";
}

// ---------------------------------------------------------------- Field

Field Field::prime(std::uint64_t p) {
  if (p >= (1ULL << 31U) || !is_prime(p)) {
    throw Error(ErrorCode::NotPrime, "field modulus " + std::to_string(p) + " is not a prime below 2^31");
  }
  return Field(static_cast<std::uint32_t>(p));
}

Field Field::parse(const std::string& text) {
  if (text == "Q") return rationals();
  const std::string prefix = "Fp:";
  if (text.rfind(prefix, 0) == 0 && text.size() > prefix.size()) {
    std::uint64_t p = 0;
    for (std::size_t i = prefix.size(); i < text.size(); ++i) {
      char c = text[i];
      if (c < '0' || c > '9' || p > (1ULL << 40U)) {
        throw Error(ErrorCode::InvalidArgument, "bad field specification '" + text + "'");
      }
      p = p * 10 + static_cast<std::uint64_t>(c - '0');
    }
    return prime(p);
  }
  throw Error(ErrorCode::InvalidArgument, "bad field specification '" + text + "' (expected Q or Fp:<p>)");
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(long long value) const {
  if (modulus_ == 0) return Scalar::rational(value);
  long long r = value % static_cast<long long>(modulus_);
  if (r < 0) r += modulus_;
  return Scalar::residue(modulus_, static_cast<std::uint64_t>(r));
}

Scalar Field::from_rational(const mpq_class& value) const {
  if (modulus_ == 0) return Scalar::rational(value);
  mpz_class p(static_cast<unsigned long>(modulus_));
  mpz_class num = value.get_num() % p;
  mpz_class den = value.get_den() % p;
  if (num < 0) num += p;
  if (den == 0) {
    throw Error(ErrorCode::DivisionByZero, "denominator of " + value.get_str() + " vanishes in " + to_string());
  }
  Scalar n = Scalar::residue(modulus_, num.get_ui());
  Scalar d = Scalar::residue(modulus_, den.get_ui());
  return n / d;
}

std::string Field::to_string() const {
  return modulus_ == 0 ? std::string("Q") : "Fp:" + std::to_string(modulus_);
}

// ---------------------------------------------------------------- Scalar

Scalar Scalar::residue(std::uint32_t p, std::uint64_t r) {
  Scalar s;
  s.mod_ = p;
  s.num_ = static_cast<std::int64_t>(r % p);
  return s;
}

Scalar Scalar::rational(std::int64_t num, std::int64_t den) {
  if (den == 0) throw Error(ErrorCode::DivisionByZero, "zero denominator");
  if (num == kMin || den == kMin) return from_mpq(mpq_class(mpz_class(std::to_string(num)), mpz_class(std::to_string(den))));
  i128 n = num;
  i128 d = den;
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 g = gcd128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  Scalar s;
  s.num_ = static_cast<std::int64_t>(n);
  s.den_ = static_cast<std::int64_t>(d);
  return s;
}

Scalar Scalar::rational(const mpq_class& q) { return from_mpq(q); }

Scalar Scalar::from_mpq(mpq_class q) {
  q.canonicalize();
  if (q.get_num().fits_slong_p() && q.get_den().fits_slong_p()) {
    long n = q.get_num().get_si();
    long d = q.get_den().get_si();
    if (n != kMin) {
      Scalar s;
      s.num_ = n;
      s.den_ = d;
      return s;
    }
  }
  Scalar s;
  s.big_ = std::make_shared<const mpq_class>(std::move(q));
  return s;
}

mpq_class Scalar::to_mpq() const {
  if (big_) return *big_;
  return mpq_class(mpz_class(static_cast<long>(num_)), mpz_class(static_cast<long>(den_)));
}

std::string Scalar::to_string() const {
  if (mod_ != 0) return std::to_string(num_);
  if (big_) return big_->get_str();
  if (den_ == 1) return std::to_string(num_);
  return std::to_string(num_) + "/" + std::to_string(den_);
}

std::uint32_t Scalar::common_modulus(const Scalar& a, const Scalar& b) {
  if (a.mod_ == b.mod_) return a.mod_;
  // A field-agnostic zero adopts the other operand's field.
  if (a.mod_ == 0 && a.is_zero()) return b.mod_;
  if (b.mod_ == 0 && b.is_zero()) return a.mod_;
  throw Error(ErrorCode::FieldMismatch, "scalars from different fields");
}

Scalar Scalar::operator-() const {
  if (mod_ != 0) return residue(mod_, num_ == 0 ? 0 : mod_ - static_cast<std::uint64_t>(num_));
  if (big_) return from_mpq(-*big_);
  Scalar s = *this;
  s.num_ = -num_;
  return s;
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw Error(ErrorCode::DivisionByZero, "inverse of zero");
  if (mod_ != 0) return residue(mod_, pow_mod(static_cast<std::uint64_t>(num_), mod_ - 2, mod_));
  if (big_) return from_mpq(1 / *big_);
  return rational(den_, num_);
}

Scalar operator+(const Scalar& a, const Scalar& b) {
  std::uint32_t p = Scalar::common_modulus(a, b);
  if (p != 0) {
    std::uint64_t x = a.mod_ == 0 ? 0 : static_cast<std::uint64_t>(a.num_);
    std::uint64_t y = b.mod_ == 0 ? 0 : static_cast<std::uint64_t>(b.num_);
    return Scalar::residue(p, (x + y) % p);
  }
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) {
      i128 s = static_cast<i128>(a.num_) + b.num_;
      if (fits(s)) {
        Scalar r;
        r.num_ = static_cast<std::int64_t>(s);
        return r;
      }
    } else {
      i128 n = static_cast<i128>(a.num_) * b.den_ + static_cast<i128>(b.num_) * a.den_;
      i128 d = static_cast<i128>(a.den_) * b.den_;
      i128 g = gcd128(n, d);
      if (g > 1) {
        n /= g;
        d /= g;
      }
      if (fits(n) && fits(d)) {
        Scalar r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
      }
    }
  }
  return Scalar::from_mpq(a.to_mpq() + b.to_mpq());
}

Scalar operator-(const Scalar& a, const Scalar& b) { return a + (-b); }

Scalar operator*(const Scalar& a, const Scalar& b) {
  std::uint32_t p = Scalar::common_modulus(a, b);
  if (a.is_zero() || b.is_zero()) {
    return p == 0 ? Scalar() : Scalar::residue(p, 0);
  }
  if (p != 0) {
    return Scalar::residue(p, static_cast<std::uint64_t>(a.num_) * static_cast<std::uint64_t>(b.num_) % p);
  }
  if (!a.big_ && !b.big_) {
    if (a.den_ == 1 && b.den_ == 1) {
      i128 n = static_cast<i128>(a.num_) * b.num_;
      if (fits(n)) {
        Scalar r;
        r.num_ = static_cast<std::int64_t>(n);
        return r;
      }
    } else {
      i128 g1 = gcd128(a.num_, b.den_);
      i128 g2 = gcd128(b.num_, a.den_);
      i128 n = (static_cast<i128>(a.num_) / g1) * (static_cast<i128>(b.num_) / g2);
      i128 d = (static_cast<i128>(a.den_) / g2) * (static_cast<i128>(b.den_) / g1);
      if (fits(n) && fits(d)) {
        Scalar r;
        r.num_ = static_cast<std::int64_t>(n);
        r.den_ = static_cast<std::int64_t>(d);
        return r;
      }
    }
  }
  return Scalar::from_mpq(a.to_mpq() * b.to_mpq());
}

Scalar operator/(const Scalar& a, const Scalar& b) { return a * b.inverse(); }

bool operator==(const Scalar& a, const Scalar& b) {
  if (a.mod_ != b.mod_) return a.is_zero() && b.is_zero();
  if (a.big_ || b.big_) {
    if (!a.big_ || !b.big_) return false;  // representations are canonical
    return *a.big_ == *b.big_;
  }
  return a.num_ == b.num_ && a.den_ == b.den_;
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace excon
