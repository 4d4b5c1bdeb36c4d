#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "pencilrank/io.hpp"

namespace pencilrank::commands {

// Process exit codes.
enum ExitCode : int { kOk = 0, kUsage = 1, kUndecided = 2, kCheckFailed = 3, kInternal = 4 };

int exit_code(Decision d);

// Verdict documents: {command, inputs, seed, decision, certificate?, witness?, ranks?, checks?, note?}.
io::Json similar(const MatrixTuple& a, const MatrixTuple& b, std::uint64_t seed,
                 std::optional<InvolutionKind> involution = std::nullopt);
io::Json lr_equiv(const MatrixTuple& a, const MatrixTuple& b, std::uint64_t seed);
io::Json sl_equiv(const MatrixTuple& a, const MatrixTuple& b, std::uint64_t seed, bool outside_nullcone);
// Candidate-module search: a rank-disparity pencil with both ranks and the
// candidate it came from, or a similarity certificate.
io::Json witness(const MatrixTuple& a, const MatrixTuple& b, std::uint64_t seed);

// Re-validates a verdict document from its embedded inputs and certificates.
// Returns the empty string on success, otherwise the reason.
std::string verify(const io::Json& verdict);

// Rank of L(A) for linear pencils, of sum A_i (x) T_i for homogeneous ones.
std::size_t pencil_rank(const io::Json& pencil, const MatrixTuple& a);
// rank F(A) computed as rank L(A) - offset * n for the linearization L of F.
std::size_t ncpoly_rank(const std::string& expr, const MatrixTuple& a);

// {"command", "inputs", "pencil", "offset"}
io::Json linearize(const std::string& expr, std::size_t m, const Field& field);

// {"command", "inputs", "seed", "dimensions", "dimension_vectors"?, "certified"}
io::Json decompose(const MatrixTuple& a, bool quiver, std::uint64_t seed);

struct Check {
  std::string name;
  bool passed = false;
  std::string detail;
};

struct DemoReport {
  std::string name;
  std::vector<Check> checks;
  bool passed() const;
  io::Json to_json() const;
};

DemoReport demo_counterexample(std::uint64_t seed);
DemoReport demo_hadwin_larson(std::uint64_t seed);

}  // namespace pencilrank::commands
