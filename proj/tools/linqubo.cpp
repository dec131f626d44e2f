// linqubo: build, diagonalize, solve and compare QUBO formulations of linear
// systems.
//
// Exit codes: 0 success, 2 input error, 3 numeric failure, 4 size guard.

#include <cstdio>
#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <fmt/format.h>

#include "linqubo/errors.hpp"
#include "linqubo/io.hpp"
#include "linqubo/report.hpp"
#include "linqubo/solver.hpp"

namespace {

using namespace linqubo;

constexpr int kExitInput = 2;
constexpr int kExitNumeric = 3;
constexpr int kExitTooLarge = 4;

struct AnnealOptions {
  std::uint64_t reads = 10000;
  std::uint64_t sweeps = 100;
  double beta_initial = 0.05;
  double beta_final = 5.0;
  std::uint64_t seed = 1;
  std::size_t trials = 3;
  unsigned threads = 0;

  AnnealParams params() const { return {reads, sweeps, beta_initial, beta_final, seed, threads}; }
};

void add_anneal_options(CLI::App* cmd, AnnealOptions& o) {
  cmd->add_option("--reads", o.reads, "Annealing reads per trial")->check(CLI::PositiveNumber);
  cmd->add_option("--sweeps", o.sweeps, "Sweeps per read")->check(CLI::PositiveNumber);
  cmd->add_option("--beta-initial", o.beta_initial, "Initial inverse temperature")->check(CLI::PositiveNumber);
  cmd->add_option("--beta-final", o.beta_final, "Final inverse temperature")->check(CLI::PositiveNumber);
  cmd->add_option("--seed", o.seed, "Base seed; trial t uses seed + t");
  cmd->add_option("--trials", o.trials, "Independent trials")->check(CLI::PositiveNumber);
  cmd->add_option("--threads", o.threads, "Worker threads (0 = all cores)");
}

bool json_output(const std::string& path, const std::string& format) {
  if (format == "json") return true;
  if (format == "coo") return false;
  return path.size() >= 5 && path.compare(path.size() - 5, 5, ".json") == 0;
}

void write_qubo_to(const std::string& path, const std::string& format, const QuboFile& file,
                   bool include_zeros) {
  const std::string text = json_output(path, format) ? write_qubo(file, include_zeros)
                                                     : write_qubo_coordinates(file.matrix, include_zeros);
  if (path == "-") {
    std::cout << text;
  } else {
    write_text_file(path, text);
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"QUBO formulations of linear systems: direct least squares and congruence-diagonalized"};
  app.require_subcommand(1);

  std::string problem_path;
  std::string qubo_path;
  std::string output_path;
  std::string model = "congruence";
  std::string annihilate = "default";
  std::string format = "auto";
  std::string method = "exhaustive";
  std::string csv_path;
  std::string collapse = "on";
  bool include_zeros = false;
  std::size_t top = 0;
  AnnealOptions anneal;

  auto* diag = app.add_subcommand("diagonalize", "Print R, D and the real minimizers y*, x*");
  diag->add_option("problem", problem_path, "Problem file")->required();

  auto* build = app.add_subcommand("build", "Build a QUBO from a problem file");
  build->add_option("problem", problem_path, "Problem file")->required();
  build->add_option("output", output_path, "Output QUBO file ('-' for stdout)")->required();
  build->add_option("--model", model, "vanilla or congruence")
      ->check(CLI::IsMember({"vanilla", "congruence"}));
  build->add_option("--annihilate", annihilate, "Drop q+ q- terms: on, off or default")
      ->check(CLI::IsMember({"on", "off", "default"}));
  build->add_flag("--include-zeros", include_zeros, "Write every upper-triangular pair, zeros included");
  build->add_option("--format", format, "json, coo, or auto (by extension)")
      ->check(CLI::IsMember({"json", "coo", "auto"}));

  auto* solve = app.add_subcommand("solve", "Solve a QUBO file and print the occurrence table");
  solve->add_option("qubo", qubo_path, "QUBO file")->required();
  solve->add_option("--method", method, "exhaustive or sa")->check(CLI::IsMember({"exhaustive", "sa"}));
  add_anneal_options(solve, anneal);
  solve->add_option("--csv", csv_path, "Also write the table as CSV");
  solve->add_option("--collapse", collapse, "Collapse product ground sets: on or off")
      ->check(CLI::IsMember({"on", "off"}));
  solve->add_option("--top", top, "Exhaustive: also list this many lowest excited states");

  auto* compare = app.add_subcommand("compare", "Anneal both models and compare hit rates");
  compare->add_option("problem", problem_path, "Problem file")->required();
  add_anneal_options(compare, anneal);

  auto* exp = app.add_subcommand("export", "Rewrite a QUBO file, optionally with explicit zeros");
  exp->add_option("qubo", qubo_path, "QUBO file")->required();
  exp->add_option("output", output_path, "Output file ('-' for stdout)")->required();
  exp->add_flag("--include-zeros", include_zeros, "Write every upper-triangular pair, zeros included");
  exp->add_option("--format", format, "json, coo, or auto (by extension)")
      ->check(CLI::IsMember({"json", "coo", "auto"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitInput;
  }

  try {
    if (*diag) {
      std::cout << render_diagonalization(read_problem(read_text_file(problem_path)));
    } else if (*build) {
      const ProblemFile problem = read_problem(read_text_file(problem_path));
      const Annihilate mode = annihilate == "on"    ? Annihilate::on
                              : annihilate == "off" ? Annihilate::off
                                                    : Annihilate::model_default;
      const QuboFile file = build_model(problem, parse_model(model), mode);
      write_qubo_to(output_path, format, file, include_zeros);
      std::ostream& report = output_path == "-" ? std::cerr : std::cout;
      report << fmt::format("{} model, {} qubits, annihilate {}\n", model, file.matrix.n,
                            file.annihilate_pm ? "on" : "off");
      report << render_sparsity(file.matrix) << "\n";
    } else if (*solve) {
      const QuboFile file = read_qubo(read_text_file(qubo_path));
      std::vector<SolveResult> results;
      std::vector<QubitAssignment> reference;
      std::string prefix = "run ";
      if (method == "exhaustive") {
        results.push_back(brute_force(file.matrix, top));
        reference = results.front().ground_states;
        prefix = "states";
        std::cout << fmt::format("ground energy {:.4f}\ndegeneracy {}\n\n", results.front().ground_energy,
                                 results.front().ground_states.size());
      } else {
        for (std::size_t t = 0; t < anneal.trials; ++t) {
          AnnealParams p = anneal.params();
          p.seed = anneal.seed + t;
          results.push_back(simulated_anneal(file.matrix, p));
        }
        if (file.matrix.n <= 24) reference = brute_force(file.matrix, 0).ground_states;
      }
      OccurrenceTable table = make_occurrence_table(file, results, reference, collapse == "on", prefix);
      if (method == "exhaustive") table.count_headers = {"states"};
      std::cout << render_table_text(table);
      if (method == "exhaustive" && top > 0) {
        std::cout << "\nlowest excited states:\n";
        std::size_t shown = 0;
        for (const auto& rec : results.front().records) {
          if (rec.energy <= results.front().ground_energy + kGroundTolerance) continue;
          std::string bits;
          for (auto b : rec.assignment.bits) bits.push_back(b ? '1' : '0');
          std::cout << fmt::format("  {}  {:.4f}\n", bits, rec.energy);
          if (++shown == top) break;
        }
      }
      if (!csv_path.empty()) write_text_file(csv_path, render_table_csv(table));
    } else if (*compare) {
      const ProblemFile problem = read_problem(read_text_file(problem_path));
      std::cout << render_compare(run_compare(problem, anneal.params(), anneal.trials));
    } else if (*exp) {
      const QuboFile file = read_qubo(read_text_file(qubo_path));
      write_qubo_to(output_path, format, file, include_zeros);
    }
  } catch (const NotPSD& e) {
    std::cerr << "error: NotPSD: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const NotSymmetric& e) {
    std::cerr << "error: NotSymmetric: " << e.what() << "\n";
    return kExitNumeric;
  } catch (const TooLarge& e) {
    std::cerr << "error: TooLarge: " << e.what() << "\n";
    return kExitTooLarge;
  } catch (const ParseError& e) {
    std::cerr << "error: parse error";
    if (e.line() != 0) std::cerr << " at line " << e.line();
    if (!e.field().empty()) std::cerr << " in '" << e.field() << "'";
    std::cerr << ": " << e.what() << "\n";
    return kExitInput;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitInput;
  }
  return 0;
}
