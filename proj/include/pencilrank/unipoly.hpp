#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "pencilrank/field.hpp"

namespace pencilrank {

// Dense univariate polynomial, coefficients lowest degree first. The zero
// polynomial has no coefficients; otherwise the leading coefficient is nonzero.
class UniPoly {
 public:
  explicit UniPoly(Field field) : field_(field) {}
  UniPoly(Field field, std::vector<Scalar> coefficients);

  static UniPoly constant(const Scalar& c);
  static UniPoly x(const Field& field);
  // c * x^k
  static UniPoly monomial(const Scalar& c, std::size_t k);

  const Field& field() const { return field_; }
  // -1 for the zero polynomial.
  int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  bool is_one() const { return coeffs_.size() == 1 && coeffs_[0].is_one(); }
  const std::vector<Scalar>& coefficients() const { return coeffs_; }
  Scalar coefficient(std::size_t k) const;
  // Throws on the zero polynomial.
  const Scalar& leading() const;

  UniPoly monic() const;
  UniPoly derivative() const;
  UniPoly conj() const;
  Scalar evaluate(const Scalar& at) const;
  // f(x + c)
  UniPoly shift(const Scalar& c) const;

  UniPoly operator-() const;
  UniPoly& operator+=(const UniPoly& other);
  UniPoly& operator-=(const UniPoly& other);
  friend UniPoly operator+(UniPoly a, const UniPoly& b) { return a += b; }
  friend UniPoly operator-(UniPoly a, const UniPoly& b) { return a -= b; }
  friend UniPoly operator*(const UniPoly& a, const UniPoly& b);
  friend UniPoly operator*(const Scalar& c, const UniPoly& a);
  friend bool operator==(const UniPoly& a, const UniPoly& b);
  friend bool operator!=(const UniPoly& a, const UniPoly& b) { return !(a == b); }

  // Quotient and remainder; throws DivisionByZero on a zero divisor.
  std::pair<UniPoly, UniPoly> divmod(const UniPoly& divisor) const;
  UniPoly operator/(const UniPoly& divisor) const { return divmod(divisor).first; }
  UniPoly operator%(const UniPoly& divisor) const { return divmod(divisor).second; }

  std::string to_string(const std::string& var = "x") const;

 private:
  void normalize();

  Field field_;
  std::vector<Scalar> coeffs_;
};

UniPoly pow_mod(const UniPoly& base, const mpz_class& exponent, const UniPoly& modulus);

// Monic gcd; gcd(0, 0) = 0.
UniPoly poly_gcd(const UniPoly& f, const UniPoly& g);

struct ExtendedGcd {
  UniPoly gcd;  // monic
  UniPoly s;
  UniPoly t;    // s*f + t*g = gcd
};
ExtendedGcd extended_gcd(const UniPoly& f, const UniPoly& g);

using FactorList = std::vector<std::pair<UniPoly, int>>;

// Yun's algorithm. Returns monic, pairwise coprime, squarefree parts with
// f = lc(f) * prod g_i^{m_i}. Over F_p requires p > deg f.
FactorList squarefree_decomposition(const UniPoly& f);

// Product of the distinct monic irreducible factors.
UniPoly squarefree_part(const UniPoly& f);

struct FactorOptions {
  std::uint64_t seed = 0;
  int rational_degree_limit = 64;
};

// Monic irreducible factors with multiplicities, sorted by degree and then
// by coefficient text. Over F_p uses Cantor-Zassenhaus; over Q, Hensel
// lifting from a random good prime with naive recombination; over Q[i],
// Trager's norm method on top of the Q factorization.
FactorList factor(const UniPoly& f, const FactorOptions& options = {});

// Product of lc and the listed factors raised to their multiplicities.
UniPoly expand(const Scalar& leading, const FactorList& factors);

}  // namespace pencilrank
