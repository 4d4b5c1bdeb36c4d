#pragma once

#include <gmpxx.h>

#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <variant>

namespace pencilrank {

class Scalar;

// Ground field descriptor: Q, F_p, or Q[i].
class Field {
 public:
  enum class Kind { Rationals, PrimeField, GaussianRationals };

  static Field rationals() { return Field(Kind::Rationals, 0); }
  // Throws PreconditionViolation unless p is prime.
  static Field prime(std::uint64_t p);
  static Field gaussian() { return Field(Kind::GaussianRationals, 0); }

  // Accepts "Q", "Qi" and "Fp:<p>".
  static Field parse(std::string_view text);

  Kind kind() const { return kind_; }
  // 0 in characteristic zero.
  std::uint64_t characteristic() const { return p_; }
  bool is_prime_field() const { return kind_ == Kind::PrimeField; }
  bool has_conjugation() const { return kind_ == Kind::GaussianRationals; }

  Scalar zero() const;
  Scalar one() const;
  Scalar from_int(long long value) const;
  Scalar from_integer(const mpz_class& value) const;
  // Throws DivisionByZero over F_p when the denominator vanishes mod p.
  Scalar from_rational(const mpq_class& value) const;
  // Requires GaussianRationals.
  Scalar imaginary_unit() const;

  std::string to_string() const;

  friend bool operator==(const Field& a, const Field& b) {
    return a.kind_ == b.kind_ && a.p_ == b.p_;
  }
  friend bool operator!=(const Field& a, const Field& b) { return !(a == b); }

 private:
  friend class Scalar;
  Field(Kind kind, std::uint64_t p) : kind_(kind), p_(p) {}

  Kind kind_;
  std::uint64_t p_;
};

// Trial division; adequate for the moduli this library is used with.
bool is_prime(std::uint64_t n);

// Exact field element. Values are immutable in spirit: every operation
// returns a canonical result (reduced fraction, residue in [0,p)).
class Scalar {
 public:
  struct Residue {
    std::uint64_t value;
    std::uint64_t modulus;
  };
  struct Gaussian {
    mpq_class re;
    mpq_class im;
  };

  // Zero of Q.
  Scalar() : value_(mpq_class(0)) {}

  static Scalar rational(mpq_class value);
  static Scalar residue(std::int64_t value, std::uint64_t modulus);
  static Scalar gaussian(mpq_class re, mpq_class im);

  // Parses the textual scalar format for the given field.
  static Scalar parse(std::string_view text, const Field& field);

  Field field() const;
  bool is_zero() const;
  bool is_one() const;

  Scalar operator-() const;
  Scalar& operator+=(const Scalar& other);
  Scalar& operator-=(const Scalar& other);
  Scalar& operator*=(const Scalar& other);
  Scalar& operator/=(const Scalar& other);

  friend Scalar operator+(Scalar a, const Scalar& b) { return a += b; }
  friend Scalar operator-(Scalar a, const Scalar& b) { return a -= b; }
  friend Scalar operator*(Scalar a, const Scalar& b) { return a *= b; }
  friend Scalar operator/(Scalar a, const Scalar& b) { return a /= b; }
  friend bool operator==(const Scalar& a, const Scalar& b);
  friend bool operator!=(const Scalar& a, const Scalar& b) { return !(a == b); }

  Scalar inverse() const;
  Scalar conj() const;
  // Exponent may be negative for nonzero values.
  Scalar pow(const mpz_class& exponent) const;
  Scalar pow(long long exponent) const { return pow(mpz_class(static_cast<long>(exponent))); }

  // Accessors; each throws FieldMismatch on the wrong kind.
  const mpq_class& as_rational() const;
  std::uint64_t as_residue() const;
  const Gaussian& as_gaussian() const;

  std::string to_string() const;

 private:
  using Storage = std::variant<mpq_class, Residue, Gaussian>;
  explicit Scalar(Storage value) : value_(std::move(value)) {}

  void require_same_field(const Scalar& other) const;

  Storage value_;
};

std::ostream& operator<<(std::ostream& os, const Scalar& s);

}  // namespace pencilrank
