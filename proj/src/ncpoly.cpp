#include "pencilrank/ncpoly.hpp"

#include <algorithm>
#include <cctype>

#include "pencilrank/errors.hpp"

namespace pencilrank {

NcPoly NcPoly::constant(const Scalar& c) {
  NcPoly p(c.field());
  p.add_term({}, c);
  return p;
}

NcPoly NcPoly::variable(const Field& field, std::size_t index) {
  NcPoly p(field);
  p.add_term({index}, field.one());
  return p;
}

int NcPoly::degree() const {
  int d = -1;
  for (const auto& [w, c] : terms_) d = std::max(d, static_cast<int>(w.size()));
  return d;
}

Scalar NcPoly::coefficient(const Word& w) const {
  auto it = terms_.find(w);
  return it == terms_.end() ? field_.zero() : it->second;
}

void NcPoly::add_term(const Word& w, const Scalar& c) {
  if (c.field() != field_) throw FieldMismatch("coefficient from another field");
  if (c.is_zero()) return;
  auto [it, inserted] = terms_.try_emplace(w, c);
  if (inserted) return;
  it->second += c;
  if (it->second.is_zero()) terms_.erase(it);
}

NcPoly NcPoly::operator-() const {
  NcPoly r = *this;
  for (auto& [w, c] : r.terms_) c = -c;
  return r;
}

NcPoly& NcPoly::operator+=(const NcPoly& other) {
  if (other.field_ != field_) throw FieldMismatch("polynomials from different fields");
  for (const auto& [w, c] : other.terms_) add_term(w, c);
  return *this;
}

NcPoly& NcPoly::operator-=(const NcPoly& other) { return *this += -other; }

NcPoly operator*(const NcPoly& a, const NcPoly& b) {
  if (a.field_ != b.field_) throw FieldMismatch("polynomials from different fields");
  NcPoly r(a.field_);
  for (const auto& [u, c] : a.terms_)
    for (const auto& [v, d] : b.terms_) {
      Word w = u;
      w.insert(w.end(), v.begin(), v.end());
      r.add_term(w, c * d);
    }
  return r;
}

NcPoly operator*(const Scalar& c, const NcPoly& a) {
  NcPoly r(a.field_);
  for (const auto& [w, d] : a.terms_) r.add_term(w, c * d);
  return r;
}

namespace {

bool needs_parentheses(const Scalar& c) {
  if (!c.field().has_conjugation()) return false;
  const auto& g = c.as_gaussian();
  return sgn(g.re) != 0 && sgn(g.im) != 0;
}

}  // namespace

std::string NcPoly::to_string() const {
  if (terms_.empty()) return "0";
  std::vector<const std::pair<const Word, Scalar>*> order;
  for (const auto& t : terms_) order.push_back(&t);
  std::stable_sort(order.begin(), order.end(),
                   [](auto* a, auto* b) { return a->first.size() > b->first.size(); });
  std::string out;
  for (const auto* term : order) {
    const Word& w = term->first;
    std::string cs = term->second.to_string();
    bool negative = false;
    if (needs_parentheses(term->second)) {
      cs = "(" + cs + ")";
    } else if (cs[0] == '-') {
      negative = true;
      cs.erase(0, 1);
    }
    if (out.empty())
      out += negative ? "-" : "";
    else
      out += negative ? " - " : " + ";
    std::string mono;
    for (std::size_t k = 0; k < w.size(); ++k) mono += (k ? "*x" : "x") + std::to_string(w[k] + 1);
    if (w.empty())
      out += cs;
    else if (cs == "1")
      out += mono;
    else
      out += cs + "*" + mono;
  }
  return out;
}

NcMatPoly::NcMatPoly(Field field, std::size_t rows, std::size_t cols)
    : field_(field), rows_(rows), cols_(cols), entries_(rows * cols, NcPoly(field)) {}

NcMatPoly::NcMatPoly(Field field, std::size_t rows, std::size_t cols, std::vector<NcPoly> entries)
    : field_(field), rows_(rows), cols_(cols), entries_(std::move(entries)) {
  if (entries_.size() != rows * cols) throw DimensionMismatch("entry count does not match shape");
  for (const auto& e : entries_)
    if (e.field() != field_) throw FieldMismatch("polynomial entry from another field");
}

int NcMatPoly::degree() const {
  int d = -1;
  for (const auto& e : entries_) d = std::max(d, e.degree());
  return d;
}

std::string NcMatPoly::to_string() const {
  if (rows_ == 1 && cols_ == 1) return entries_[0].to_string();
  std::string out = "[";
  for (std::size_t i = 0; i < rows_; ++i) {
    out += i ? ", [" : "[";
    for (std::size_t j = 0; j < cols_; ++j) out += (j ? ", " : "") + (*this)(i, j).to_string();
    out += "]";
  }
  return out + "]";
}

namespace {

class Parser {
 public:
  Parser(std::string_view text, const Field& field, std::size_t m) : text_(text), field_(field), m_(m) {}

  NcMatPoly parse() {
    skip_space();
    NcMatPoly result = peek() == '[' ? matrix() : NcMatPoly(field_, 1, 1, {expr()});
    skip_space();
    if (pos_ < text_.size()) fail("unexpected trailing input");
    return result;
  }

 private:
  [[noreturn]] void fail(const std::string& message) const { fail_at(message, pos_); }

  [[noreturn]] void fail_at(const std::string& message, std::size_t at) const {
    std::size_t line = 1, column = 1;
    for (std::size_t k = 0; k < at && k < text_.size(); ++k) {
      if (text_[k] == '\n') {
        ++line;
        column = 1;
      } else {
        ++column;
      }
    }
    throw ParseError(message, line, column);
  }

  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }

  void skip_space() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }

  void expect(char c) {
    skip_space();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }

  NcMatPoly matrix() {
    expect('[');
    std::vector<std::vector<NcPoly>> rows;
    do {
      expect('[');
      std::vector<NcPoly> row{expr()};
      skip_space();
      while (peek() == ',') {
        ++pos_;
        row.push_back(expr());
        skip_space();
      }
      expect(']');
      if (!rows.empty() && row.size() != rows[0].size()) fail("rows have different lengths");
      rows.push_back(std::move(row));
      skip_space();
    } while (peek() == ',' && (++pos_, true));
    expect(']');
    std::vector<NcPoly> entries;
    for (auto& r : rows)
      for (auto& e : r) entries.push_back(std::move(e));
    return NcMatPoly(field_, rows.size(), rows[0].size(), std::move(entries));
  }

  NcPoly expr() {
    skip_space();
    bool negate = false;
    if (peek() == '+' || peek() == '-') {
      negate = peek() == '-';
      ++pos_;
    }
    NcPoly acc = term();
    if (negate) acc = -acc;
    for (;;) {
      skip_space();
      const char c = peek();
      if (c != '+' && c != '-') break;
      ++pos_;
      NcPoly t = term();
      if (c == '+')
        acc += t;
      else
        acc -= t;
    }
    return acc;
  }

  NcPoly term() {
    NcPoly acc = factor();
    for (;;) {
      skip_space();
      if (peek() != '*') break;
      ++pos_;
      acc = acc * factor();
    }
    return acc;
  }

  NcPoly factor() {
    skip_space();
    const char c = peek();
    if (c == '(') {
      ++pos_;
      NcPoly inner = expr();
      expect(')');
      return inner;
    }
    if (c == 'x') return variable();
    if (std::isdigit(static_cast<unsigned char>(c)) || c == 'i') return scalar();
    if (c == '\0') fail("unexpected end of input");
    fail(std::string("unexpected character '") + c + "'");
  }

  std::string digits() {
    const std::size_t start = pos_;
    while (std::isdigit(static_cast<unsigned char>(peek()))) ++pos_;
    if (pos_ == start) fail("expected digits");
    return std::string(text_.substr(start, pos_ - start));
  }

  NcPoly variable() {
    const std::size_t start = pos_;
    ++pos_;
    const std::string d = digits();
    const std::size_t index = d.size() > 9 ? 0 : std::stoul(d);
    if (index == 0 || index > m_)
      fail_at("variable x" + d + " outside x1..x" + std::to_string(m_), start);
    return NcPoly::variable(field_, index - 1);
  }

  NcPoly scalar() {
    const std::size_t start = pos_;
    std::string literal;
    if (peek() == 'i') {
      literal = "1";
    } else {
      literal = digits();
      if (peek() == '/') {
        ++pos_;
        literal += "/" + digits();
      }
    }
    bool imaginary = false;
    if (peek() == 'i') {
      ++pos_;
      imaginary = true;
    }
    try {
      Scalar s = Scalar::parse(literal, field_);
      if (imaginary) s *= field_.imaginary_unit();
      return NcPoly::constant(s);
    } catch (const ParseError&) {
      throw;
    } catch (const Error& e) {
      fail_at(e.what(), start);
    }
  }

  std::string_view text_;
  Field field_;
  std::size_t m_;
  std::size_t pos_ = 0;
};

}  // namespace

NcMatPoly parse_nc(std::string_view text, const Field& field, std::size_t m) {
  return Parser(text, field, m).parse();
}

Matrix evaluate(const NcPoly& f, const MatrixTuple& a) {
  if (!a.is_square()) throw NonSquare("polynomials evaluate on square tuples");
  if (a.field() != f.field()) throw FieldMismatch("polynomial and tuple over different fields");
  const std::size_t n = a.p();
  Matrix acc(a.field(), n, n);
  for (const auto& [w, c] : f.terms()) {
    Matrix prod = Matrix::identity(a.field(), n);
    for (std::size_t v : w) {
      if (v >= a.m()) throw DimensionMismatch("polynomial uses more variables than the tuple has");
      prod = prod * a[v];
    }
    acc += c * prod;
  }
  return acc;
}

Matrix evaluate(const NcMatPoly& f, const MatrixTuple& a) {
  const std::size_t n = a.p();
  Matrix out(a.field(), f.rows() * n, f.cols() * n);
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (std::size_t j = 0; j < f.cols(); ++j) out.set_block(i * n, j * n, evaluate(f(i, j), a));
  return out;
}

LinearizationResult higman_linearize(const NcMatPoly& f, std::size_t m) {
  if (f.rows() != f.cols()) throw NonSquare("linearization needs a square polynomial matrix");
  const Field& k = f.field();
  // Grown in place; entries[i][j].
  std::vector<std::vector<NcPoly>> g(f.rows(), std::vector<NcPoly>(f.cols(), NcPoly(k)));
  for (std::size_t i = 0; i < f.rows(); ++i)
    for (std::size_t j = 0; j < f.cols(); ++j) {
      for (const auto& [w, c] : f(i, j).terms())
        for (std::size_t v : w)
          if (v >= m) throw DimensionMismatch("polynomial uses more variables than declared");
      g[i][j] = f(i, j);
    }

  std::size_t steps = 0;
  for (;;) {
    int top = -1;
    std::size_t a = 0, b = 0;
    for (std::size_t i = 0; i < g.size(); ++i)
      for (std::size_t j = 0; j < g.size(); ++j)
        if (g[i][j].degree() > top) {
          top = g[i][j].degree();
          a = i;
          b = j;
        }
    if (top < 2) break;
    Word w;
    Scalar c = k.zero();
    for (const auto& [word, coeff] : g[a][b].terms())
      if (static_cast<int>(word.size()) == top) {
        w = word;
        c = coeff;
        break;
      }
    g[a][b].add_term(w, -c);
    const Word rest(w.begin() + 1, w.end());
    const std::size_t idx = g.size();
    for (auto& row : g) row.emplace_back(k);
    g.emplace_back(idx + 1, NcPoly(k));
    g[a][idx].add_term({w[0]}, c);
    g[idx][b].add_term(rest, -k.one());
    g[idx][idx].add_term({}, k.one());
    ++steps;
  }

  const std::size_t d = g.size();
  std::vector<Matrix> coeffs(m + 1, Matrix(k, d, d));
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j)
      for (const auto& [w, c] : g[i][j].terms()) coeffs[w.empty() ? 0 : w[0] + 1](i, j) = c;
  return {LinearPencil(k, std::move(coeffs)), steps};
}

NcPoly random_ncpoly(const Field& field, Rng& rng, std::size_t m, std::size_t degree, std::size_t terms) {
  NcPoly f(field);
  for (std::size_t t = 0; t < terms; ++t) {
    Word w(rng.below(degree + 1));
    for (auto& v : w) v = rng.below(m);
    f.add_term(w, random_scalar(field, rng, 3));
  }
  return f;
}

}  // namespace pencilrank
