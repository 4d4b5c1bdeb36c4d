#include "pencilrank/unipoly.hpp"

#include "pencilrank/errors.hpp"

namespace pencilrank {

UniPoly::UniPoly(Field field, std::vector<Scalar> coefficients)
    : field_(field), coeffs_(std::move(coefficients)) {
  for (const auto& c : coeffs_)
    if (c.field() != field_) throw FieldMismatch("polynomial coefficient from another field");
  normalize();
}

void UniPoly::normalize() {
  while (!coeffs_.empty() && coeffs_.back().is_zero()) coeffs_.pop_back();
}

UniPoly UniPoly::constant(const Scalar& c) { return UniPoly(c.field(), {c}); }

UniPoly UniPoly::x(const Field& field) { return UniPoly(field, {field.zero(), field.one()}); }

UniPoly UniPoly::monomial(const Scalar& c, std::size_t k) {
  std::vector<Scalar> coeffs(k + 1, c.field().zero());
  coeffs[k] = c;
  return UniPoly(c.field(), std::move(coeffs));
}

Scalar UniPoly::coefficient(std::size_t k) const {
  return k < coeffs_.size() ? coeffs_[k] : field_.zero();
}

const Scalar& UniPoly::leading() const {
  if (coeffs_.empty()) throw PreconditionViolation("leading coefficient of zero polynomial");
  return coeffs_.back();
}

UniPoly UniPoly::monic() const {
  if (is_zero()) return *this;
  Scalar inv = leading().inverse();
  return inv * *this;
}

UniPoly UniPoly::derivative() const {
  std::vector<Scalar> d;
  for (std::size_t k = 1; k < coeffs_.size(); ++k)
    d.push_back(field_.from_int(static_cast<long long>(k)) * coeffs_[k]);
  return UniPoly(field_, std::move(d));
}

UniPoly UniPoly::conj() const {
  std::vector<Scalar> c;
  c.reserve(coeffs_.size());
  for (const auto& a : coeffs_) c.push_back(a.conj());
  return UniPoly(field_, std::move(c));
}

Scalar UniPoly::evaluate(const Scalar& at) const {
  Scalar acc = field_.zero();
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * at + *it;
  return acc;
}

UniPoly UniPoly::shift(const Scalar& c) const {
  // Horner in the ring: acc = acc * (x + c) + a_k.
  UniPoly lin(field_, {c, field_.one()});
  UniPoly acc(field_);
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
    acc = acc * lin + UniPoly::constant(*it);
  return acc;
}

UniPoly UniPoly::operator-() const {
  UniPoly r = *this;
  for (auto& c : r.coeffs_) c = -c;
  return r;
}

UniPoly& UniPoly::operator+=(const UniPoly& other) {
  if (other.field_ != field_) throw FieldMismatch("polynomials from different fields");
  if (coeffs_.size() < other.coeffs_.size()) coeffs_.resize(other.coeffs_.size(), field_.zero());
  for (std::size_t k = 0; k < other.coeffs_.size(); ++k) coeffs_[k] += other.coeffs_[k];
  normalize();
  return *this;
}

UniPoly& UniPoly::operator-=(const UniPoly& other) { return *this += -other; }

UniPoly operator*(const UniPoly& a, const UniPoly& b) {
  if (a.field_ != b.field_) throw FieldMismatch("polynomials from different fields");
  if (a.is_zero() || b.is_zero()) return UniPoly(a.field_);
  std::vector<Scalar> c(a.coeffs_.size() + b.coeffs_.size() - 1, a.field_.zero());
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i) {
    if (a.coeffs_[i].is_zero()) continue;
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  }
  return UniPoly(a.field_, std::move(c));
}

UniPoly operator*(const Scalar& c, const UniPoly& a) {
  UniPoly r = a;
  for (auto& x : r.coeffs_) x *= c;
  r.normalize();
  return r;
}

bool operator==(const UniPoly& a, const UniPoly& b) {
  return a.field_ == b.field_ && a.coeffs_ == b.coeffs_;
}

std::pair<UniPoly, UniPoly> UniPoly::divmod(const UniPoly& divisor) const {
  if (divisor.field_ != field_) throw FieldMismatch("polynomials from different fields");
  if (divisor.is_zero()) throw DivisionByZero("polynomial division by zero");
  std::vector<Scalar> rem = coeffs_;
  const int dd = divisor.degree();
  if (degree() < dd) return {UniPoly(field_), *this};
  std::vector<Scalar> quot(static_cast<std::size_t>(degree() - dd + 1), field_.zero());
  const Scalar inv = divisor.leading().inverse();
  for (int k = degree(); k >= dd; --k) {
    const Scalar& top = rem[static_cast<std::size_t>(k)];
    if (top.is_zero()) continue;
    Scalar factor = top * inv;
    quot[static_cast<std::size_t>(k - dd)] = factor;
    for (int j = 0; j <= dd; ++j)
      rem[static_cast<std::size_t>(k - dd + j)] -= factor * divisor.coeffs_[static_cast<std::size_t>(j)];
  }
  return {UniPoly(field_, std::move(quot)), UniPoly(field_, std::move(rem))};
}

std::string UniPoly::to_string(const std::string& var) const {
  if (is_zero()) return "0";
  std::string out;
  for (int k = degree(); k >= 0; --k) {
    const Scalar& c = coeffs_[static_cast<std::size_t>(k)];
    if (c.is_zero()) continue;
    std::string cs = c.to_string();
    if (field_.has_conjugation() && sgn(c.as_gaussian().re) != 0 && sgn(c.as_gaussian().im) != 0)
      cs = "(" + cs + ")";
    if (!out.empty()) {
      if (cs[0] == '-') {
        out += " - ";
        cs.erase(0, 1);
      } else {
        out += " + ";
      }
    }
    std::string mono = k == 0 ? "" : (k == 1 ? var : var + "^" + std::to_string(k));
    if (k == 0)
      out += cs;
    else if (cs == "1")
      out += mono;
    else if (cs == "-1")
      out += "-" + mono;
    else
      out += cs + "*" + mono;
  }
  return out;
}

UniPoly pow_mod(const UniPoly& base, const mpz_class& exponent, const UniPoly& modulus) {
  UniPoly result = UniPoly::constant(base.field().one()) % modulus;
  UniPoly b = base % modulus;
  mpz_class e = exponent;
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) result = (result * b) % modulus;
    e >>= 1;
    if (e > 0) b = (b * b) % modulus;
  }
  return result;
}

UniPoly poly_gcd(const UniPoly& f, const UniPoly& g) {
  UniPoly a = f, b = g;
  while (!b.is_zero()) {
    UniPoly r = a % b;
    a = std::move(b);
    b = std::move(r);
  }
  return a.monic();
}

ExtendedGcd extended_gcd(const UniPoly& f, const UniPoly& g) {
  const Field& k = f.field();
  UniPoly r0 = f, r1 = g;
  UniPoly s0 = UniPoly::constant(k.one()), s1(k);
  UniPoly t0(k), t1 = UniPoly::constant(k.one());
  while (!r1.is_zero()) {
    auto [q, r] = r0.divmod(r1);
    r0 = std::move(r1);
    r1 = std::move(r);
    UniPoly s2 = s0 - q * s1;
    s0 = std::move(s1);
    s1 = std::move(s2);
    UniPoly t2 = t0 - q * t1;
    t0 = std::move(t1);
    t1 = std::move(t2);
  }
  if (r0.is_zero()) return {r0, s0, t0};
  Scalar inv = r0.leading().inverse();
  return {inv * r0, inv * s0, inv * t0};
}

namespace {

void require_characteristic(const UniPoly& f) {
  const std::uint64_t p = f.field().characteristic();
  if (p != 0 && p <= static_cast<std::uint64_t>(f.degree()))
    throw CharacteristicTooSmall("characteristic " + std::to_string(p) +
                                 " does not exceed degree " + std::to_string(f.degree()));
}

}  // namespace

FactorList squarefree_decomposition(const UniPoly& f) {
  if (f.is_zero()) throw PreconditionViolation("squarefree decomposition of zero");
  require_characteristic(f);
  FactorList out;
  if (f.degree() == 0) return out;
  UniPoly fm = f.monic();
  UniPoly df = fm.derivative();
  UniPoly a = poly_gcd(fm, df);
  UniPoly b = fm / a;
  UniPoly c = df / a;
  UniPoly d = c - b.derivative();
  int i = 1;
  while (b.degree() > 0) {
    UniPoly ai = poly_gcd(b, d);
    b = b / ai;
    c = d / ai;
    d = c - b.derivative();
    if (ai.degree() > 0) out.emplace_back(ai.monic(), i);
    ++i;
  }
  return out;
}

UniPoly squarefree_part(const UniPoly& f) {
  UniPoly acc = UniPoly::constant(f.field().one());
  for (const auto& [g, m] : squarefree_decomposition(f)) acc = acc * g;
  return acc;
}

UniPoly expand(const Scalar& leading, const FactorList& factors) {
  UniPoly acc = UniPoly::constant(leading);
  for (const auto& [g, m] : factors)
    for (int k = 0; k < m; ++k) acc = acc * g;
  return acc;
}

}  // namespace pencilrank
