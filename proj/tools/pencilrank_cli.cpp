#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <string>

#include "pencilrank/commands.hpp"
#include "pencilrank/errors.hpp"

namespace cmd = pencilrank::commands;
using pencilrank::io::Json;

namespace {

pencilrank::MatrixTuple load_tuple(const std::string& path) {
  return pencilrank::io::tuple_from_json(pencilrank::io::read_json_file(path));
}

int emit_verdict(const Json& doc) {
  std::cout << doc.dump(2) << '\n';
  const std::string decision = doc.at("decision").get<std::string>();
  if (decision == "Equivalent" || decision == "NotEquivalent") return cmd::kOk;
  return cmd::kUndecided;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Orbit equivalence of matrix tuples via linear matrix pencils"};
  app.require_subcommand(1);
  std::uint64_t seed = 0;
  std::string a_path, b_path, pencil_path, ncpoly, expr, involution, demo_name, verdict_path;
  std::size_t m = 0;
  std::string field_name = "Q";
  bool outside = false, quiver = false, demo_json = false;

  auto pair_command = [&](const char* name, const char* help) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("A", a_path, "first tuple file")->required();
    sub->add_option("B", b_path, "second tuple file")->required();
    sub->add_option("--seed", seed, "random seed")->capture_default_str();
    return sub;
  };
  CLI::App* similar = pair_command("similar", "simultaneous similarity");
  similar->add_option("--involution", involution, "structured similarity: transpose, conjugate-transpose, symplectic");
  CLI::App* lr = pair_command("lr-equiv", "left-right equivalence under GL_p x GL_q");
  CLI::App* sl = pair_command("sl-equiv", "left-right equivalence under SL_p x SL_q");
  sl->add_flag("--outside-nullcone", outside, "blow-up determinant test for tuples outside the null cone");
  CLI::App* witness = pair_command("witness", "rank-disparity pencil or similarity certificate");

  CLI::App* prank = app.add_subcommand("pencil-rank", "rank of a pencil or polynomial evaluated at a tuple");
  auto* popt = prank->add_option("--pencil", pencil_path, "pencil file");
  auto* nopt = prank->add_option("--ncpoly", ncpoly, "noncommutative polynomial or matrix of them");
  popt->excludes(nopt);
  prank->add_option("A", a_path, "tuple file")->required();

  CLI::App* lin = app.add_subcommand("linearize", "pencil whose rank tracks a polynomial matrix");
  lin->add_option("expr", expr, "expression")->required();
  lin->add_option("-m", m, "number of variables")->required();
  lin->add_option("--field", field_name, "Q, Fp:<p> or Qi")->capture_default_str();

  CLI::App* dec = app.add_subcommand("decompose", "direct-sum decomposition of the module of a tuple");
  dec->add_option("A", a_path, "tuple file")->required();
  dec->add_flag("--quiver", quiver, "decompose the Kronecker quiver representation");
  dec->add_option("--seed", seed, "random seed")->capture_default_str();

  CLI::App* demo = app.add_subcommand("demo", "built-in fixture checks");
  demo->add_option("name", demo_name, "counterexample or hadwin-larson")
      ->required()
      ->check(CLI::IsMember({"counterexample", "hadwin-larson"}));
  demo->add_option("--seed", seed, "random seed")->capture_default_str();
  demo->add_flag("--json", demo_json, "print the report as JSON");

  CLI::App* ver = app.add_subcommand("verify", "re-validate a verdict document");
  ver->add_option("verdict", verdict_path, "verdict file")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cmd::kUsage;
  }

  try {
    if (similar->parsed()) {
      std::optional<pencilrank::InvolutionKind> kind;
      if (!involution.empty()) kind = pencilrank::parse_involution(involution);
      return emit_verdict(cmd::similar(load_tuple(a_path), load_tuple(b_path), seed, kind));
    }
    if (lr->parsed()) return emit_verdict(cmd::lr_equiv(load_tuple(a_path), load_tuple(b_path), seed));
    if (sl->parsed()) return emit_verdict(cmd::sl_equiv(load_tuple(a_path), load_tuple(b_path), seed, outside));
    if (witness->parsed()) return emit_verdict(cmd::witness(load_tuple(a_path), load_tuple(b_path), seed));
    if (prank->parsed()) {
      if (pencil_path.empty() == ncpoly.empty()) {
        std::cerr << "pencil-rank needs exactly one of --pencil and --ncpoly\n";
        return cmd::kUsage;
      }
      const pencilrank::MatrixTuple a = load_tuple(a_path);
      const std::size_t r = pencil_path.empty()
                                ? cmd::ncpoly_rank(ncpoly, a)
                                : cmd::pencil_rank(pencilrank::io::read_json_file(pencil_path), a);
      std::cout << r << '\n';
      return cmd::kOk;
    }
    if (lin->parsed()) {
      std::cout << cmd::linearize(expr, m, pencilrank::Field::parse(field_name)).dump(2) << '\n';
      return cmd::kOk;
    }
    if (dec->parsed()) {
      std::cout << cmd::decompose(load_tuple(a_path), quiver, seed).dump(2) << '\n';
      return cmd::kOk;
    }
    if (demo->parsed()) {
      const cmd::DemoReport r =
          demo_name == "counterexample" ? cmd::demo_counterexample(seed) : cmd::demo_hadwin_larson(seed);
      if (demo_json) {
        std::cout << r.to_json().dump(2) << '\n';
      } else {
        for (const auto& c : r.checks) std::cout << (c.passed ? "PASS " : "FAIL ") << c.name << ": " << c.detail << '\n';
      }
      return r.passed() ? cmd::kOk : cmd::kCheckFailed;
    }
    if (ver->parsed()) {
      const std::string reason = cmd::verify(pencilrank::io::read_json_file(verdict_path));
      if (reason.empty()) {
        std::cout << "verified\n";
        return cmd::kOk;
      }
      std::cout << "rejected: " << reason << '\n';
      return cmd::kCheckFailed;
    }
  } catch (const pencilrank::InternalError& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return cmd::kInternal;
  } catch (const pencilrank::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cmd::kUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return cmd::kUsage;
  }
  return cmd::kUsage;
}
