#include <algorithm>

#include "pencilrank/errors.hpp"
#include "pencilrank/random.hpp"
#include "pencilrank/unipoly.hpp"

namespace pencilrank {

namespace {

// ---------------------------------------------------------------------------
// Integer polynomials, lowest degree first.

using ZPoly = std::vector<mpz_class>;

void ztrim(ZPoly& f) {
  while (!f.empty() && sgn(f.back()) == 0) f.pop_back();
}

int zdeg(const ZPoly& f) { return static_cast<int>(f.size()) - 1; }

ZPoly zmul(const ZPoly& a, const ZPoly& b) {
  if (a.empty() || b.empty()) return {};
  ZPoly c(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) c[i + j] += a[i] * b[j];
  ztrim(c);
  return c;
}

ZPoly zsub(const ZPoly& a, const ZPoly& b) {
  ZPoly c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] -= b[i];
  ztrim(c);
  return c;
}

ZPoly zadd_scaled(const ZPoly& a, const ZPoly& b, const mpz_class& scale) {
  ZPoly c(std::max(a.size(), b.size()));
  for (std::size_t i = 0; i < a.size(); ++i) c[i] += a[i];
  for (std::size_t i = 0; i < b.size(); ++i) c[i] += scale * b[i];
  ztrim(c);
  return c;
}

// Residues in [0, m).
ZPoly zmod(const ZPoly& a, const mpz_class& m) {
  ZPoly c(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) mpz_fdiv_r(c[i].get_mpz_t(), a[i].get_mpz_t(), m.get_mpz_t());
  ztrim(c);
  return c;
}

// Residues in (-m/2, m/2].
ZPoly zmod_symmetric(const ZPoly& a, const mpz_class& m) {
  ZPoly c = zmod(a, m);
  mpz_class half = m / 2;
  for (auto& x : c)
    if (x > half) x -= m;
  ztrim(c);
  return c;
}

ZPoly zprimitive(ZPoly f) {
  ztrim(f);
  if (f.empty()) return f;
  mpz_class g = 0;
  for (const auto& c : f) mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), c.get_mpz_t());
  for (auto& c : f) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), g.get_mpz_t());
  if (sgn(f.back()) < 0)
    for (auto& c : f) c = -c;
  return f;
}

// Exact division over Z; false when g does not divide f.
bool zdivides(const ZPoly& g, const ZPoly& f, ZPoly& quotient) {
  if (zdeg(g) > zdeg(f)) return false;
  ZPoly rem = f;
  quotient.assign(static_cast<std::size_t>(zdeg(f) - zdeg(g) + 1), 0);
  const mpz_class& lc = g.back();
  for (int k = zdeg(f); k >= zdeg(g); --k) {
    mpz_class& top = rem[static_cast<std::size_t>(k)];
    if (sgn(top) == 0) continue;
    if (!mpz_divisible_p(top.get_mpz_t(), lc.get_mpz_t())) return false;
    mpz_class q;
    mpz_divexact(q.get_mpz_t(), top.get_mpz_t(), lc.get_mpz_t());
    quotient[static_cast<std::size_t>(k - zdeg(g))] = q;
    for (int j = 0; j <= zdeg(g); ++j)
      rem[static_cast<std::size_t>(k - zdeg(g) + j)] -= q * g[static_cast<std::size_t>(j)];
  }
  ztrim(rem);
  ztrim(quotient);
  return rem.empty();
}

UniPoly to_field(const ZPoly& f, const Field& k) {
  std::vector<Scalar> c;
  c.reserve(f.size());
  for (const auto& x : f) c.push_back(k.from_integer(x));
  return UniPoly(k, std::move(c));
}

ZPoly from_residues(const UniPoly& f) {
  ZPoly z;
  for (const auto& c : f.coefficients()) z.emplace_back(static_cast<unsigned long>(c.as_residue()));
  return z;
}

// Primitive integer polynomial proportional to a rational one.
ZPoly clear_denominators(const UniPoly& f) {
  mpz_class l = 1;
  for (const auto& c : f.coefficients())
    mpz_lcm(l.get_mpz_t(), l.get_mpz_t(), c.as_rational().get_den_mpz_t());
  ZPoly z;
  for (const auto& c : f.coefficients()) z.push_back(mpz_class(c.as_rational() * l));
  return zprimitive(z);
}

mpz_class max_abs(const ZPoly& f) {
  mpz_class m = 0;
  for (const auto& c : f) m = std::max<mpz_class>(m, abs(c));
  return m;
}

// ---------------------------------------------------------------------------
// Cantor-Zassenhaus over F_p.

void equal_degree_split(const UniPoly& g, int d, Rng& rng, std::vector<UniPoly>& out) {
  if (g.degree() == d) {
    out.push_back(g.monic());
    return;
  }
  const Field& k = g.field();
  const std::uint64_t p = k.characteristic();
  mpz_class pd;
  mpz_ui_pow_ui(pd.get_mpz_t(), p, static_cast<unsigned long>(d));
  const mpz_class exponent = (pd - 1) / 2;
  const UniPoly one = UniPoly::constant(k.one());
  for (;;) {
    std::vector<Scalar> coeffs;
    for (int j = 0; j < g.degree(); ++j) coeffs.push_back(random_scalar(k, rng, 0));
    UniPoly a(k, std::move(coeffs));
    if (a.degree() <= 0) continue;
    UniPoly c = poly_gcd(a, g);
    if (c.degree() <= 0 || c.degree() >= g.degree()) c = poly_gcd(pow_mod(a, exponent, g) - one, g);
    if (c.degree() > 0 && c.degree() < g.degree()) {
      equal_degree_split(c, d, rng, out);
      equal_degree_split(g / c, d, rng, out);
      return;
    }
  }
}

// f monic squarefree over F_p with p > deg f.
std::vector<UniPoly> factor_squarefree_prime(const UniPoly& f, Rng& rng) {
  std::vector<UniPoly> out;
  const Field& k = f.field();
  const mpz_class p(static_cast<unsigned long>(k.characteristic()));
  const UniPoly x = UniPoly::x(k);
  UniPoly rest = f.monic();
  UniPoly h = x % rest;
  for (int d = 1; 2 * d <= rest.degree(); ++d) {
    h = pow_mod(h, p, rest);
    UniPoly g = poly_gcd(h - x, rest);
    if (g.degree() > 0) {
      equal_degree_split(g, d, rng, out);
      rest = rest / g;
      h = h % rest;
    }
  }
  if (rest.degree() > 0) out.push_back(rest.monic());
  return out;
}

// ---------------------------------------------------------------------------
// Zassenhaus over Z.

// Lifts F = a*b (mod p), a monic, to F = a*b (mod p^k).
void hensel_lift(const ZPoly& f, ZPoly& a, ZPoly& b, std::uint64_t p, unsigned k) {
  const Field fp = Field::prime(p);
  const UniPoly ap = to_field(a, fp);
  const UniPoly bp = to_field(b, fp);
  const ExtendedGcd eg = extended_gcd(ap, bp);
  if (!eg.gcd.is_one()) throw InternalError("Hensel lifting of non-coprime factors");
  mpz_class q(static_cast<unsigned long>(p));
  for (unsigned j = 1; j < k; ++j) {
    ZPoly diff = zsub(f, zmul(a, b));
    for (auto& c : diff) mpz_divexact(c.get_mpz_t(), c.get_mpz_t(), q.get_mpz_t());
    const UniPoly e = to_field(diff, fp);
    const UniPoly da = (eg.t * e) % ap;
    const auto [db, rem] = (e - bp * da).divmod(ap);
    if (!rem.is_zero()) throw InternalError("Hensel step left a remainder");
    a = zadd_scaled(a, from_residues(da), q);
    b = zadd_scaled(b, from_residues(db), q);
    q *= p;
    a = zmod(a, q);
    b = zmod(b, q);
  }
}

// Monic lifts mod p^k of the modular factors of f.
std::vector<ZPoly> lift_all(const ZPoly& f, const std::vector<UniPoly>& factors, std::uint64_t p,
                            unsigned k, const mpz_class& pk) {
  const Field fp = Field::prime(p);
  if (factors.size() == 1) {
    mpz_class inv;
    mpz_invert(inv.get_mpz_t(), f.back().get_mpz_t(), pk.get_mpz_t());
    ZPoly g = f;
    for (auto& c : g) c *= inv;
    return {zmod(g, pk)};
  }
  const std::size_t mid = factors.size() / 2;
  std::vector<UniPoly> left(factors.begin(), factors.begin() + static_cast<std::ptrdiff_t>(mid));
  std::vector<UniPoly> right(factors.begin() + static_cast<std::ptrdiff_t>(mid), factors.end());
  UniPoly a0 = UniPoly::constant(fp.one());
  for (const auto& g : left) a0 = a0 * g;
  UniPoly b0 = UniPoly::constant(fp.from_integer(f.back()));
  for (const auto& g : right) b0 = b0 * g;
  ZPoly a = from_residues(a0), b = from_residues(b0);
  hensel_lift(f, a, b, p, k);
  std::vector<ZPoly> out = lift_all(a, left, p, k, pk);
  std::vector<ZPoly> rest = lift_all(b, right, p, k, pk);
  out.insert(out.end(), rest.begin(), rest.end());
  return out;
}

std::uint64_t random_prime(Rng& rng, std::uint64_t lo, std::uint64_t hi) {
  std::uint64_t n = lo + rng.below(hi - lo);
  while (!is_prime(n)) ++n;
  return n;
}

// f primitive, squarefree, positive leading coefficient.
std::vector<ZPoly> factor_squarefree_integer(const ZPoly& f, Rng& rng) {
  const int n = zdeg(f);
  if (n <= 1) return {f};
  std::uint64_t p = 0;
  std::vector<UniPoly> modular;
  for (int attempt = 0;; ++attempt) {
    if (attempt > 200) throw InternalError("no good prime found for factorization");
    p = random_prime(rng, std::max<std::uint64_t>(1000, static_cast<std::uint64_t>(n) + 2), 30000);
    if (mpz_divisible_ui_p(f.back().get_mpz_t(), static_cast<unsigned long>(p))) continue;
    const UniPoly fp = to_field(f, Field::prime(p));
    if (poly_gcd(fp, fp.derivative()).degree() != 0) continue;
    modular = factor_squarefree_prime(fp.monic(), rng);
    break;
  }
  if (modular.size() == 1) return {f};

  mpz_class bound = abs(f.back()) * max_abs(f) * (n + 1);
  bound <<= static_cast<unsigned>(n);
  mpz_class pk(static_cast<unsigned long>(p));
  unsigned k = 1;
  while (pk <= 2 * bound) {
    pk *= p;
    ++k;
  }
  std::vector<ZPoly> lifted = lift_all(zmod(f, pk), modular, p, k, pk);

  std::vector<ZPoly> out;
  ZPoly rest = f;
  std::size_t s = 1;
  while (2 * s <= lifted.size()) {
    bool found = false;
    std::vector<std::size_t> idx(s);
    for (std::size_t j = 0; j < s; ++j) idx[j] = j;
    for (;;) {
      ZPoly g{rest.back()};
      for (std::size_t j : idx) g = zmul(g, lifted[j]);
      g = zprimitive(zmod_symmetric(g, pk));
      ZPoly quotient;
      if (zdeg(g) > 0 && zdivides(g, rest, quotient)) {
        out.push_back(g);
        rest = quotient;
        for (std::size_t j = s; j-- > 0;) lifted.erase(lifted.begin() + static_cast<std::ptrdiff_t>(idx[j]));
        found = true;
        break;
      }
      // Next combination in lexicographic order.
      std::size_t j = s;
      while (j > 0 && idx[j - 1] == lifted.size() - s + j - 1) --j;
      if (j == 0) break;
      ++idx[j - 1];
      for (std::size_t t = j; t < s; ++t) idx[t] = idx[t - 1] + 1;
    }
    if (!found) ++s;
  }
  rest = zprimitive(rest);
  if (zdeg(rest) > 0) out.push_back(rest);
  return out;
}

std::vector<UniPoly> factor_squarefree_rational(const UniPoly& f, Rng& rng) {
  std::vector<UniPoly> out;
  for (const auto& g : factor_squarefree_integer(clear_denominators(f), rng))
    out.push_back(to_field(g, Field::rationals()).monic());
  return out;
}

// Trager: factor over Q[i] through a squarefree norm over Q.
std::vector<UniPoly> factor_squarefree_gaussian(const UniPoly& f, Rng& rng) {
  if (f.degree() <= 1) return {f.monic()};
  const Field qi = Field::gaussian();
  const Field q = Field::rationals();
  for (long s = 0;; s = s > 0 ? -s : 1 - s) {
    const Scalar shift = Scalar::gaussian(0, s);
    const UniPoly fs = f.shift(shift);
    const UniPoly norm = fs * fs.conj();
    std::vector<Scalar> coeffs;
    for (const auto& c : norm.coefficients()) coeffs.push_back(Scalar::rational(c.as_gaussian().re));
    const UniPoly nq(q, std::move(coeffs));
    if (poly_gcd(nq, nq.derivative()).degree() != 0) continue;
    std::vector<UniPoly> out;
    for (const auto& h : factor_squarefree_rational(nq, rng)) {
      std::vector<Scalar> hc;
      for (const auto& c : h.coefficients()) hc.push_back(Scalar::gaussian(c.as_rational(), 0));
      const UniPoly g = poly_gcd(fs, UniPoly(qi, std::move(hc)));
      if (g.degree() > 0) out.push_back(g.shift(-shift).monic());
    }
    return out;
  }
}

}  // namespace

FactorList factor(const UniPoly& f, const FactorOptions& options) {
  if (f.is_zero()) throw PreconditionViolation("factorization of zero polynomial");
  const Field& k = f.field();
  if (k.kind() != Field::Kind::PrimeField && f.degree() > options.rational_degree_limit)
    throw DegreeLimitExceeded("degree " + std::to_string(f.degree()) + " exceeds limit " +
                              std::to_string(options.rational_degree_limit));
  Rng rng(options.seed);
  FactorList out;
  for (const auto& [g, m] : squarefree_decomposition(f)) {
    std::vector<UniPoly> parts;
    switch (k.kind()) {
      case Field::Kind::PrimeField:
        parts = factor_squarefree_prime(g, rng);
        break;
      case Field::Kind::Rationals:
        parts = factor_squarefree_rational(g, rng);
        break;
      case Field::Kind::GaussianRationals:
        parts = factor_squarefree_gaussian(g, rng);
        break;
    }
    for (auto& h : parts) out.emplace_back(std::move(h), m);
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) {
    if (a.first.degree() != b.first.degree()) return a.first.degree() < b.first.degree();
    return a.first.to_string() < b.first.to_string();
  });
  return out;
}

}  // namespace pencilrank
