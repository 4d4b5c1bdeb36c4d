#include "pencilrank/commands.hpp"

#include <chrono>
#include <sstream>

#include "pencilrank/errors.hpp"
#include "pencilrank/module.hpp"
#include "pencilrank/ncpoly.hpp"
#include "pencilrank/witness_search.hpp"

namespace pencilrank::commands {

namespace {

using io::Json;

Json verdict_document(const char* command, Json inputs, std::uint64_t seed, const Verdict& v) {
  Json doc;
  doc["command"] = command;
  doc["inputs"] = std::move(inputs);
  doc["seed"] = seed;
  const Json fields = io::verdict_fields(v);
  for (const auto& [key, value] : fields.items()) doc[key] = value;
  return doc;
}

Json pair_inputs(const MatrixTuple& a, const MatrixTuple& b) {
  Json in;
  in["a"] = io::tuple_to_json(a);
  in["b"] = io::tuple_to_json(b);
  return in;
}

void require_verified(const Verdict& v, const MatrixTuple& a, const MatrixTuple& b, Action action,
                      std::optional<InvolutionKind> involution = std::nullopt) {
  if (auto reason = verify_verdict(v, a, b, action, involution); !reason.empty())
    throw InternalError("verdict failed re-verification: " + reason);
}

std::string join_sizes(const std::vector<std::size_t>& xs) {
  std::ostringstream out;
  for (std::size_t i = 0; i < xs.size(); ++i) out << (i ? ", " : "") << xs[i];
  return out.str();
}

}  // namespace

int exit_code(Decision d) {
  switch (d) {
    case Decision::Equivalent:
    case Decision::NotEquivalent:
      return kOk;
    case Decision::Indeterminate:
    case Decision::ProbablyInNullCone:
      return kUndecided;
  }
  return kUndecided;
}

Json similar(const MatrixTuple& a, const MatrixTuple& b, std::uint64_t seed, std::optional<InvolutionKind> involution) {
  Json in = pair_inputs(a, b);
  const SimilarOptions opts{seed, 8};
  if (involution) {
    in["involution"] = to_string(*involution);
    return verdict_document("similar", std::move(in), seed, structured_similar(a, b, *involution, opts));
  }
  return verdict_document("similar", std::move(in), seed, pencilrank::similar(a, b, opts));
}

Json lr_equiv(const MatrixTuple& a, const MatrixTuple& b, std::uint64_t seed) {
  return verdict_document("lr-equiv", pair_inputs(a, b), seed, glr_equivalent(a, b, {seed, 8}));
}

Json sl_equiv(const MatrixTuple& a, const MatrixTuple& b, std::uint64_t seed, bool outside_nullcone) {
  Json in = pair_inputs(a, b);
  in["outside_nullcone"] = outside_nullcone;
  if (!outside_nullcone) return verdict_document("sl-equiv", std::move(in), seed, sl_equivalent(a, b, {seed, 8}));
  if (a.field() != b.field()) throw FieldMismatch("tuples from different fields");
  if (!a.is_square() || !b.is_square()) throw NonSquare("this test needs square tuples");
  const NullconeOptions nc{seed, 32};
  for (const auto* t : {&a, &b}) {
    const NullconeResult r = nullcone_member(*t, nc);
    if (r.probably_in_nullcone) {
      Verdict v;
      v.decision = Decision::ProbablyInNullCone;
      v.note = std::string(t == &a ? "A" : "B") + ": " + r.note;
      return verdict_document("sl-equiv", std::move(in), seed, v);
    }
  }
  return verdict_document("sl-equiv", std::move(in), seed, sl_equivalent_outside_nullcone(a, b, {seed, 8}));
}

Json witness(const MatrixTuple& a, const MatrixTuple& b, std::uint64_t seed) {
  const SimilaritySearch s = find_similarity_witness(a, b, seed);
  Verdict v;
  switch (s.outcome) {
    case SearchOutcome::Equivalent:
      v.decision = Decision::Equivalent;
      v.p = s.certificate;
      break;
    case SearchOutcome::Witness:
      v.decision = Decision::NotEquivalent;
      v.linear_witness = s.pencil;
      v.rank_a = s.rank_a;
      v.rank_b = s.rank_b;
      break;
    case SearchOutcome::Indeterminate:
      v.note = "no separating candidate and no invertible intertwiner sampled";
      break;
  }
  require_verified(v, a, b, Action::Similarity);
  Json doc = verdict_document("witness", pair_inputs(a, b), seed, v);
  if (s.candidate) doc["witness"]["candidate"] = io::tuple_to_json(*s.candidate);
  doc["candidates_tested"] = s.candidates_tested;
  return doc;
}

std::string verify(const Json& doc) {
  if (!doc.is_object() || !doc.contains("command") || !doc.contains("inputs"))
    throw FormatError("not a verdict document");
  const std::string command = doc.at("command").get<std::string>();
  const Json& in = doc.at("inputs");
  if (!in.contains("a") || !in.contains("b")) throw FormatError("verdict inputs need 'a' and 'b'");
  const MatrixTuple a = io::tuple_from_json(in.at("a")), b = io::tuple_from_json(in.at("b"));
  if (a.field() != b.field()) return "inputs are over different fields";
  const Verdict v = io::verdict_from_json(doc, a.field());
  if (command == "similar") {
    if (in.contains("involution"))
      return verify_verdict(v, a, b, Action::Structured, parse_involution(in.at("involution").get<std::string>()));
    return verify_verdict(v, a, b, Action::Similarity);
  }
  if (command == "witness") return verify_verdict(v, a, b, Action::Similarity);
  if (command == "lr-equiv") return verify_verdict(v, a, b, Action::LeftRight);
  if (command == "sl-equiv") {
    const bool outside = in.contains("outside_nullcone") && in.at("outside_nullcone").get<bool>();
    return verify_verdict(v, a, b, outside ? Action::SpecialOutsideNullcone : Action::SpecialLeftRight);
  }
  throw FormatError("unknown verdict command '" + command + "'");
}

std::size_t pencil_rank(const Json& pencil, const MatrixTuple& a) {
  auto l = io::pencil_from_json(pencil);
  if (auto* lin = std::get_if<LinearPencil>(&l)) return rank(evaluate_pencil(*lin, a));
  return rank(evaluate_homogeneous(std::get<RectPencil>(l), a));
}

std::size_t ncpoly_rank(const std::string& expr, const MatrixTuple& a) {
  if (!a.is_square()) throw NonSquare("polynomial evaluation needs a square tuple");
  const NcMatPoly f = parse_nc(expr, a.field(), a.m());
  if (f.rows() != f.cols()) throw PreconditionViolation("the polynomial matrix must be square");
  const LinearizationResult lin = higman_linearize(f, a.m());
  return rank(evaluate_pencil(lin.pencil, a)) - lin.offset * a.p();
}

Json linearize(const std::string& expr, std::size_t m, const Field& field) {
  const NcMatPoly f = parse_nc(expr, field, m);
  if (f.rows() != f.cols()) throw PreconditionViolation("the polynomial matrix must be square");
  const LinearizationResult lin = higman_linearize(f, m);
  Json doc;
  doc["command"] = "linearize";
  doc["inputs"] = Json{{"expr", f.to_string()}, {"m", m}, {"field", field.to_string()}};
  doc["pencil"] = io::pencil_to_json(lin.pencil);
  doc["offset"] = lin.offset;
  return doc;
}

Json decompose(const MatrixTuple& a, bool quiver, std::uint64_t seed) {
  const ModuleRep mod = quiver ? ModuleRep::kronecker(a) : ModuleRep::free_algebra(a);
  const Decomposition d = pencilrank::decompose(mod, {seed, 64});
  Json doc;
  doc["command"] = "decompose";
  doc["inputs"] = Json{{"a", io::tuple_to_json(a)}, {"quiver", quiver}};
  doc["seed"] = seed;
  Json dims = Json::array(), vectors = Json::array();
  for (const auto& s : d.summands) {
    dims.push_back(s.module.dimension());
    vectors.push_back(Json::array({s.module.tuple().p(), s.module.tuple().q()}));
  }
  doc["dimensions"] = std::move(dims);
  if (quiver) doc["dimension_vectors"] = std::move(vectors);
  doc["certified"] = d.certified;
  return doc;
}

bool DemoReport::passed() const {
  for (const auto& c : checks)
    if (!c.passed) return false;
  return true;
}

Json DemoReport::to_json() const {
  Json doc;
  doc["command"] = "demo";
  doc["name"] = name;
  Json cs = Json::array();
  for (const auto& c : checks) cs.push_back(Json{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
  doc["checks"] = std::move(cs);
  doc["passed"] = passed();
  return doc;
}

namespace {

const Field kQ = Field::rationals();

// x43 y21 - x41 y23 - x23 y41 + x21 y43 in the entries of (X, Y), 1-based.
Scalar carlson_invariant(const Matrix& x, const Matrix& y) {
  return x(3, 2) * y(1, 0) - x(3, 0) * y(1, 2) - x(1, 2) * y(3, 0) + x(1, 0) * y(3, 2);
}

Matrix random_rational_invertible(Rng& rng, std::size_t n) {
  for (;;) {
    Matrix p(kQ, n, n);
    for (auto i = 0u; i < n; ++i)
      for (auto j = 0u; j < n; ++j)
        p(i, j) = Scalar::rational(mpq_class(static_cast<long>(rng.uniform(-5, 5)), static_cast<long>(rng.uniform(1, 4))));
    if (!det(p).is_zero()) return p;
  }
}

mpq_class max_abs_entry(const Matrix& m) {
  mpq_class best = 0;
  for (const auto& e : m.entries()) {
    mpq_class v = abs(e.as_rational());
    if (v > best) best = v;
  }
  return best;
}

Matrix degeneration_path(const mpq_class& t) {
  const Scalar s = Scalar::rational(t), s2 = Scalar::rational(t * t);
  Matrix p = Matrix::from_ints(kQ, {{1, 0, 0, 0, 0}, {0, 1, 1, 0, 1}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}, {0, 0, 0, 0, 0}});
  p(2, 2) = s2;
  p(3, 3) = s2;
  p(4, 1) = s;
  p(4, 2) = -s;
  return p;
}

}  // namespace

DemoReport demo_counterexample(std::uint64_t seed) {
  DemoReport report{"counterexample", {}};
  const Matrix b1 = Matrix::from_ints(kQ, {{0, 0, 0, 0}, {1, 0, 0, 0}, {0, 0, 0, 0}, {0, 0, 1, 0}});
  const Matrix b2 = Matrix::from_ints(kQ, {{0, 0, 0, 0}, {0, 0, 0, 0}, {1, 0, 0, 0}, {0, 1, 0, 0}});
  const MatrixTuple a(kQ, 4, 4, {b1, b1}), b(kQ, 4, 4, {b1, b2});
  Rng rng(seed);

  const Scalar pa = carlson_invariant(a[0], a[1]);
  report.checks.push_back({"p(A1, A2) = 2", pa == kQ.from_int(2), "p(A1, A2) = " + pa.to_string()});

  std::size_t nonzero = 0;
  for (int i = 0; i < 200; ++i) {
    const MatrixTuple c = b.conjugate(random_rational_invertible(rng, 4));
    if (!carlson_invariant(c[0], c[1]).is_zero()) ++nonzero;
  }
  report.checks.push_back({"p vanishes on 200 conjugates of B", nonzero == 0,
                           std::to_string(nonzero) + " of 200 conjugates with p != 0"});

  const Verdict v = pencilrank::similar(a, b, {rng.fork(), 8});
  const std::string reason = verify_verdict(v, a, b, Action::Similarity);
  const bool separated = v.decision == Decision::NotEquivalent && reason.empty() && v.linear_witness.has_value();
  std::string detail = std::string("decision ") + to_string(v.decision);
  if (v.linear_witness)
    detail += ", witness of size " + std::to_string(v.linear_witness->size()) + " with ranks " +
              std::to_string(v.rank_a) + " and " + std::to_string(v.rank_b);
  if (!reason.empty()) detail += ", verification: " + reason;
  report.checks.push_back({"A and B are not similar", separated, detail});

  const SampleReport sample = rank_equality_sample(a, b, 6, 300, rng.fork());
  std::size_t above = 0, below = 0;
  for (const auto& viol : sample.violations) (viol.rank_a > viol.rank_b ? above : below) += 1;
  report.checks.push_back({"no sampled pencil has rank L(A) > rank L(B)", above == 0 && sample.samples >= 300,
                           std::to_string(sample.samples) + " pencils of size <= 6, " + std::to_string(above) +
                               " with rank L(A) > rank L(B), " + std::to_string(below) + " with rank L(A) < rank L(B)"});

  const MatrixTuple pad = MatrixTuple::zero(kQ, 2, 1, 1);
  const MatrixTuple a0 = direct_sum(a, pad), b0 = direct_sum(b, pad);
  auto deviation = [&](const mpq_class& t) {
    const MatrixTuple c = b0.conjugate(degeneration_path(t));
    mpq_class d = 0;
    for (std::size_t i = 0; i < c.m(); ++i) d = std::max(d, max_abs_entry(c[i] - a0[i]));
    return d;
  };
  const mpq_class t0(1, 10);
  const mpq_class constant = deviation(t0) / t0;
  bool within = true;
  std::ostringstream dev;
  dev << "C = " << constant.get_str();
  for (const mpq_class& t : {mpq_class(1, 10), mpq_class(1, 100), mpq_class(1, 1000)}) {
    const mpq_class d = deviation(t);
    within = within && d <= constant * t;
    dev << ", deviation " << d.get_str() << " at t = " << t.get_str();
  }
  report.checks.push_back({"P_t (B + 0) P_t^-1 tends to A + 0", within, dev.str()});
  return report;
}

DemoReport demo_hadwin_larson(std::uint64_t seed) {
  DemoReport report{"hadwin-larson", {}};
  auto e = [](std::size_t i, std::size_t j) { return Matrix::unit(kQ, 3, 3, i, j); };
  const MatrixTuple a(kQ, 3, 3, {e(0, 1), e(0, 2)}), b(kQ, 3, 3, {e(1, 0), e(2, 0)});

  const LinearPencil fixture(kQ, {Matrix(kQ, 2, 2), Matrix::unit(kQ, 2, 2, 0, 0), Matrix::unit(kQ, 2, 2, 1, 0)});
  const std::size_t ra = rank(evaluate_pencil(fixture, a)), rb = rank(evaluate_pencil(fixture, b));
  report.checks.push_back({"fixture pencil ranks are 2 and 1", ra == 2 && rb == 1,
                           "rank L(A) = " + std::to_string(ra) + ", rank L(B) = " + std::to_string(rb)});

  const auto start = std::chrono::steady_clock::now();
  const SimilaritySearch s = find_similarity_witness(a, b, seed);
  const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  bool found = s.outcome == SearchOutcome::Witness && seconds < 5.0;
  std::string detail = "search took " + std::to_string(seconds) + " s";
  if (s.pencil) {
    Verdict v;
    v.decision = Decision::NotEquivalent;
    v.linear_witness = s.pencil;
    v.rank_a = s.rank_a;
    v.rank_b = s.rank_b;
    const std::string reason = verify_verdict(v, a, b, Action::Similarity);
    found = found && reason.empty();
    detail += ", pencil of size " + std::to_string(s.pencil->size()) + " with ranks " + std::to_string(s.rank_a) +
              " and " + std::to_string(s.rank_b) + " from a candidate of dimension " +
              std::to_string(s.candidate->p());
    if (!reason.empty()) detail += ", verification: " + reason;
  }
  report.checks.push_back({"witness search finds a rank-disparity pencil", found, detail});

  Rng rng(seed ^ 0x4c52ULL);
  std::vector<std::size_t> mismatched;
  for (std::size_t i = 0; i < 100; ++i) {
    const NcPoly f = random_ncpoly(kQ, rng, 2, 4, 1 + rng.below(6));
    if (rank(evaluate(f, a)) != rank(evaluate(f, b))) mismatched.push_back(i);
  }
  report.checks.push_back({"rank f(A) = rank f(B) for 100 random polynomials", mismatched.empty(),
                           mismatched.empty() ? "all 100 agree" : "disagree at samples " + join_sizes(mismatched)});
  return report;
}

}  // namespace pencilrank::commands
