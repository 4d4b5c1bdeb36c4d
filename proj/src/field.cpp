#include "pencilrank/field.hpp"

#include <ostream>

#include "pencilrank/errors.hpp"

namespace pencilrank {

namespace {

using u128 = unsigned __int128;

std::uint64_t mul_mod(std::uint64_t a, std::uint64_t b, std::uint64_t p) {
  return static_cast<std::uint64_t>(static_cast<u128>(a) * b % p);
}

std::uint64_t pow_mod(std::uint64_t base, mpz_class e, std::uint64_t p) {
  std::uint64_t result = 1 % p;
  base %= p;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = mul_mod(result, base, p);
    base = mul_mod(base, base, p);
    e >>= 1;
  }
  return result;
}

std::uint64_t reduce(const mpz_class& value, std::uint64_t p) {
  mpz_class r;
  mpz_fdiv_r_ui(r.get_mpz_t(), value.get_mpz_t(), p);
  return r.get_ui();
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

// Parses "[+-]digits[/digits]" exactly; returns false on anything else.
bool parse_fraction(std::string_view text, mpq_class& out) {
  if (text.empty()) return false;
  std::size_t pos = 0;
  bool negative = false;
  if (text[0] == '+' || text[0] == '-') {
    negative = text[0] == '-';
    pos = 1;
  }
  auto digits = [&](std::string& dst) {
    std::size_t start = pos;
    while (pos < text.size() && is_digit(text[pos])) ++pos;
    dst.assign(text.substr(start, pos - start));
    return !dst.empty();
  };
  std::string num, den = "1";
  if (!digits(num)) return false;
  if (pos < text.size() && text[pos] == '/') {
    ++pos;
    if (!digits(den)) return false;
  }
  if (pos != text.size()) return false;
  mpz_class n(num, 10), d(den, 10);
  if (d == 0) throw DivisionByZero("zero denominator in '" + std::string(text) + "'");
  out = mpq_class(n, d);
  out.canonicalize();
  if (negative) out = -out;
  return true;
}

}  // namespace

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::uint64_t d = 3; d <= n / d; d += 2)
    if (n % d == 0) return false;
  return true;
}

Field Field::prime(std::uint64_t p) {
  if (!is_prime(p)) throw PreconditionViolation(std::to_string(p) + " is not prime");
  return Field(Kind::PrimeField, p);
}

Field Field::parse(std::string_view text) {
  if (text == "Q") return rationals();
  if (text == "Qi") return gaussian();
  if (text.substr(0, 3) == "Fp:" && text.size() > 3) {
    std::uint64_t p = 0;
    for (char c : text.substr(3)) {
      if (!is_digit(c)) throw ParseError("invalid field '" + std::string(text) + "'", 1, 1);
      p = p * 10 + static_cast<std::uint64_t>(c - '0');
      if (p > (std::uint64_t{1} << 62)) throw ParseError("modulus too large", 1, 1);
    }
    return prime(p);
  }
  throw ParseError("invalid field '" + std::string(text) + "'", 1, 1);
}

std::string Field::to_string() const {
  switch (kind_) {
    case Kind::Rationals:
      return "Q";
    case Kind::PrimeField:
      return "Fp:" + std::to_string(p_);
    case Kind::GaussianRationals:
      return "Qi";
  }
  return "?";
}

Scalar Field::zero() const { return from_int(0); }
Scalar Field::one() const { return from_int(1); }

Scalar Field::from_int(long long value) const {
  return from_integer(mpz_class(static_cast<long>(value)));
}

Scalar Field::from_integer(const mpz_class& value) const {
  return from_rational(mpq_class(value));
}

Scalar Field::from_rational(const mpq_class& value) const {
  switch (kind_) {
    case Kind::Rationals:
      return Scalar::rational(value);
    case Kind::GaussianRationals:
      return Scalar::gaussian(value, 0);
    case Kind::PrimeField: {
      std::uint64_t den = reduce(value.get_den(), p_);
      if (den == 0) throw DivisionByZero("denominator vanishes modulo " + std::to_string(p_));
      std::uint64_t num = reduce(value.get_num(), p_);
      std::uint64_t inv = pow_mod(den, mpz_class(static_cast<unsigned long>(p_ - 2)), p_);
      return Scalar::residue(static_cast<std::int64_t>(mul_mod(num, inv, p_)), p_);
    }
  }
  return Scalar();
}

Scalar Field::imaginary_unit() const {
  if (kind_ != Kind::GaussianRationals) throw FieldMismatch("imaginary unit requires Qi");
  return Scalar::gaussian(0, 1);
}

Scalar Scalar::rational(mpq_class value) {
  value.canonicalize();
  return Scalar(Storage(std::move(value)));
}

Scalar Scalar::residue(std::int64_t value, std::uint64_t modulus) {
  std::int64_t m = static_cast<std::int64_t>(modulus);
  std::int64_t r = value % m;
  if (r < 0) r += m;
  return Scalar(Storage(Residue{static_cast<std::uint64_t>(r), modulus}));
}

Scalar Scalar::gaussian(mpq_class re, mpq_class im) {
  re.canonicalize();
  im.canonicalize();
  return Scalar(Storage(Gaussian{std::move(re), std::move(im)}));
}

Scalar Scalar::parse(std::string_view text, const Field& field) {
  auto fail = [&]() -> ParseError {
    return ParseError("invalid scalar '" + std::string(text) + "' for field " + field.to_string(),
                      1, 1);
  };
  for (char c : text)
    if (static_cast<unsigned char>(c) > 127) throw fail();
  mpq_class q;
  if (field.kind() != Field::Kind::GaussianRationals) {
    if (!parse_fraction(text, q)) throw fail();
    return field.from_rational(q);
  }
  if (text.empty()) throw fail();
  if (text.back() != 'i') {
    if (!parse_fraction(text, q)) throw fail();
    return Scalar::gaussian(q, 0);
  }
  std::string_view body = text.substr(0, text.size() - 1);
  // Split "re(+|-)im" at the last sign that is not the leading one.
  std::size_t split = std::string_view::npos;
  for (std::size_t k = body.size(); k-- > 1;) {
    if (body[k] == '+' || body[k] == '-') {
      split = k;
      break;
    }
  }
  mpq_class re = 0, im;
  std::string_view im_text = body;
  if (split != std::string_view::npos) {
    if (!parse_fraction(body.substr(0, split), re)) throw fail();
    im_text = body.substr(split);
  }
  if (im_text.empty() || im_text == "+") {
    im = 1;
  } else if (im_text == "-") {
    im = -1;
  } else if (!parse_fraction(im_text, im)) {
    throw fail();
  }
  return Scalar::gaussian(re, im);
}

Field Scalar::field() const {
  switch (value_.index()) {
    case 0:
      return Field::rationals();
    case 1:
      return Field(Field::Kind::PrimeField, std::get<Residue>(value_).modulus);
    default:
      return Field::gaussian();
  }
}

void Scalar::require_same_field(const Scalar& other) const {
  if (value_.index() != other.value_.index() ||
      (value_.index() == 1 &&
       std::get<Residue>(value_).modulus != std::get<Residue>(other.value_).modulus))
    throw FieldMismatch("scalars from different fields");
}

bool Scalar::is_zero() const {
  switch (value_.index()) {
    case 0:
      return sgn(std::get<mpq_class>(value_)) == 0;
    case 1:
      return std::get<Residue>(value_).value == 0;
    default: {
      const auto& g = std::get<Gaussian>(value_);
      return sgn(g.re) == 0 && sgn(g.im) == 0;
    }
  }
}

bool Scalar::is_one() const {
  switch (value_.index()) {
    case 0:
      return std::get<mpq_class>(value_) == 1;
    case 1:
      return std::get<Residue>(value_).value == 1 % std::get<Residue>(value_).modulus;
    default: {
      const auto& g = std::get<Gaussian>(value_);
      return g.re == 1 && sgn(g.im) == 0;
    }
  }
}

Scalar Scalar::operator-() const {
  switch (value_.index()) {
    case 0:
      return Scalar(Storage(mpq_class(-std::get<mpq_class>(value_))));
    case 1: {
      const auto& r = std::get<Residue>(value_);
      return Scalar(Storage(Residue{r.value == 0 ? 0 : r.modulus - r.value, r.modulus}));
    }
    default: {
      const auto& g = std::get<Gaussian>(value_);
      return Scalar(Storage(Gaussian{-g.re, -g.im}));
    }
  }
}

Scalar& Scalar::operator+=(const Scalar& other) {
  require_same_field(other);
  switch (value_.index()) {
    case 0:
      std::get<mpq_class>(value_) += std::get<mpq_class>(other.value_);
      break;
    case 1: {
      auto& r = std::get<Residue>(value_);
      std::uint64_t s = r.value + std::get<Residue>(other.value_).value;
      if (s >= r.modulus || s < r.value) s -= r.modulus;
      r.value = s;
      break;
    }
    default: {
      auto& g = std::get<Gaussian>(value_);
      const auto& h = std::get<Gaussian>(other.value_);
      g.re += h.re;
      g.im += h.im;
    }
  }
  return *this;
}

Scalar& Scalar::operator-=(const Scalar& other) { return *this += -other; }

Scalar& Scalar::operator*=(const Scalar& other) {
  require_same_field(other);
  switch (value_.index()) {
    case 0:
      std::get<mpq_class>(value_) *= std::get<mpq_class>(other.value_);
      break;
    case 1: {
      auto& r = std::get<Residue>(value_);
      r.value = mul_mod(r.value, std::get<Residue>(other.value_).value, r.modulus);
      break;
    }
    default: {
      auto& g = std::get<Gaussian>(value_);
      const auto& h = std::get<Gaussian>(other.value_);
      mpq_class re = g.re * h.re - g.im * h.im;
      mpq_class im = g.re * h.im + g.im * h.re;
      g.re = std::move(re);
      g.im = std::move(im);
    }
  }
  return *this;
}

Scalar& Scalar::operator/=(const Scalar& other) {
  require_same_field(other);
  return *this *= other.inverse();
}

bool operator==(const Scalar& a, const Scalar& b) {
  a.require_same_field(b);
  switch (a.value_.index()) {
    case 0:
      return std::get<mpq_class>(a.value_) == std::get<mpq_class>(b.value_);
    case 1:
      return std::get<Scalar::Residue>(a.value_).value == std::get<Scalar::Residue>(b.value_).value;
    default: {
      const auto& g = std::get<Scalar::Gaussian>(a.value_);
      const auto& h = std::get<Scalar::Gaussian>(b.value_);
      return g.re == h.re && g.im == h.im;
    }
  }
}

Scalar Scalar::inverse() const {
  if (is_zero()) throw DivisionByZero("inverse of zero");
  switch (value_.index()) {
    case 0:
      return Scalar(Storage(mpq_class(1 / std::get<mpq_class>(value_))));
    case 1: {
      const auto& r = std::get<Residue>(value_);
      return Scalar(Storage(
          Residue{pow_mod(r.value, mpz_class(static_cast<unsigned long>(r.modulus - 2)), r.modulus),
                  r.modulus}));
    }
    default: {
      const auto& g = std::get<Gaussian>(value_);
      mpq_class norm = g.re * g.re + g.im * g.im;
      return Scalar(Storage(Gaussian{g.re / norm, -g.im / norm}));
    }
  }
}

Scalar Scalar::conj() const {
  if (value_.index() != 2) return *this;
  const auto& g = std::get<Gaussian>(value_);
  return Scalar(Storage(Gaussian{g.re, -g.im}));
}

Scalar Scalar::pow(const mpz_class& exponent) const {
  if (exponent < 0) return inverse().pow(-exponent);
  if (value_.index() == 1) {
    const auto& r = std::get<Residue>(value_);
    return Scalar(Storage(Residue{pow_mod(r.value, exponent, r.modulus), r.modulus}));
  }
  Scalar result = field().one();
  Scalar base = *this;
  mpz_class e = exponent;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result *= base;
    e >>= 1;
    if (e > 0) base *= base;
  }
  return result;
}

const mpq_class& Scalar::as_rational() const {
  if (value_.index() != 0) throw FieldMismatch("scalar is not rational");
  return std::get<mpq_class>(value_);
}

std::uint64_t Scalar::as_residue() const {
  if (value_.index() != 1) throw FieldMismatch("scalar is not a residue");
  return std::get<Residue>(value_).value;
}

const Scalar::Gaussian& Scalar::as_gaussian() const {
  if (value_.index() != 2) throw FieldMismatch("scalar is not Gaussian");
  return std::get<Gaussian>(value_);
}

std::string Scalar::to_string() const {
  switch (value_.index()) {
    case 0:
      return std::get<mpq_class>(value_).get_str();
    case 1:
      return std::to_string(std::get<Residue>(value_).value);
    default: {
      const auto& g = std::get<Gaussian>(value_);
      if (sgn(g.im) == 0) return g.re.get_str();
      std::string im = g.im.get_str() + "i";
      if (sgn(g.re) == 0) return im;
      return g.re.get_str() + (sgn(g.im) > 0 ? "+" : "") + im;
    }
  }
}

std::ostream& operator<<(std::ostream& os, const Scalar& s) { return os << s.to_string(); }

}  // namespace pencilrank
