// Acceptance suite. Runs every criterion (or the one named by argv[1]) and
// prints one PASS/FAIL line per criterion. Exit status is nonzero if any
// selected criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "linqubo/io.hpp"
#include "linqubo/report.hpp"
#include "linqubo/solver.hpp"
#include "worked_example.hpp"

using namespace linqubo;
namespace ex = linqubo::testing;

namespace {

using Clock = std::chrono::steady_clock;

struct Outcome {
  bool pass = false;
  std::string detail;
};

double seconds_since(Clock::time_point start) {
  return std::chrono::duration<double>(Clock::now() - start).count();
}

ProblemFile example_problem() { return read_problem(read_text_file(LINQUBO_DATA_DIR "/worked_example.json")); }

QuboMatrix example_vanilla() { return build_model(example_problem(), QuboModel::vanilla).matrix; }
QuboMatrix example_congruence() { return build_model(example_problem(), QuboModel::congruence).matrix; }

double max_deviation(const QuboMatrix& Q, const ex::Dense12& expected) {
  double worst = 0.0;
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = i; j < 12; ++j) worst = std::max(worst, std::abs(Q.at(i, j) - expected[i][j]));
  return worst;
}

std::string fmt(const char* format, auto... args) {
  char buf[512];
  std::snprintf(buf, sizeof(buf), format, args...);
  return buf;
}

Outcome golden_vanilla() {
  const auto start = Clock::now();
  const QuboMatrix Q = example_vanilla();
  const double elapsed = seconds_since(start);
  const double dev = max_deviation(Q, ex::kVanillaQubo);
  const bool anchors = Q.at(0, 0) == 26.0 && Q.at(3, 3) == -6.0 && Q.at(11, 11) == 152.0;
  return {Q.n == 12 && dev <= 1e-9 && Q.coeffs.size() == 78 && anchors && elapsed < 1.0,
          fmt("max |dev| %.3g over 78 entries, nnz %zu, anchors %s, %.4fs", dev, Q.coeffs.size(),
              anchors ? "ok" : "bad", elapsed)};
}

Outcome golden_congruence() {
  const auto start = Clock::now();
  const QuboMatrix Q = example_congruence();
  const double elapsed = seconds_since(start);
  const double dev = max_deviation(Q, ex::kCongruenceQubo);
  const bool pruned = Q.coeffs.count({5, 5}) == 0;
  return {Q.n == 12 && dev <= 1e-9 && Q.coeffs.size() == 23 && pruned && elapsed < 1.0,
          fmt("max |dev| %.3g, nnz %zu, q16 diagonal %s, %.4fs", dev, Q.coeffs.size(),
              pruned ? "pruned" : "present", elapsed)};
}

Outcome congruence_identity() {
  std::mt19937_64 rng(20240101);
  std::normal_distribution<double> normal;
  double worst_ratio = 0.0;
  auto check = [&](const Matrix& M, const CongruenceDecomposition& dec) {
    const std::size_t n = M.rows();
    double off = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        if (i == j) continue;
        double s = 0.0;
        for (std::size_t k = 0; k < n; ++k)
          for (std::size_t l = 0; l < n; ++l) s += dec.R(k, i) * M(k, l) * dec.R(l, j);
        off = std::max(off, std::abs(s));
      }
    const double ratio = M.max_abs() == 0.0 ? 0.0 : off / M.max_abs();
    worst_ratio = std::max(worst_ratio, ratio);
    return ratio <= 1e-9;
  };
  bool ok = true;
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + trial % 8;
    const std::size_t rows = trial % 5 == 0 ? std::max<std::size_t>(1, n - 1) : n + trial % 3;
    Matrix B(rows, n);
    for (std::size_t i = 0; i < rows; ++i)
      for (std::size_t j = 0; j < n; ++j) B(i, j) = normal(rng);
    const Matrix M = gram(B);
    ok = check(M, congruence_diagonalize(M)) && ok;
  }
  const Matrix G = gram(ex::example_system().A);
  const auto dec = congruence_diagonalize(G, ex::example_scale());
  ok = check(G, dec) && ok;
  const double r_dev = std::max({std::abs(dec.R(0, 0) - 0.4), std::abs(dec.R(0, 1) + 0.04), std::abs(dec.R(1, 0)),
                                 std::abs(dec.R(1, 1) - 0.4)});
  const double d_dev = std::max(std::abs(dec.D[0] - 1.6), std::abs(dec.D[1] - 0.784));
  ok = ok && r_dev <= 1e-12 && d_dev <= 1e-12;
  return {ok, fmt("1000 random + example: worst off-diag/max|M| %.3g; example R dev %.3g, D dev %.3g", worst_ratio,
                  r_dev, d_dev)};
}

Outcome ground_degeneracy() {
  const auto start = Clock::now();
  const SolveResult v = brute_force(example_vanilla());
  const SolveResult c = brute_force(example_congruence());
  const double elapsed = seconds_since(start);
  const RadixEncoding enc = ex::example_encoding();
  bool decoded_ok = true;
  for (const auto& g : v.ground_states) decoded_ok = decoded_ok && decode(enc, g) == Vector{-1, 2};
  const bool ok = std::abs(v.ground_energy + 26.0) <= 1e-9 && v.ground_states.size() == 42 && decoded_ok &&
                  std::abs(c.ground_energy + 26.0) <= 1e-9 && c.ground_states.size() == 1 &&
                  c.ground_states.front() == ex::congruence_ground() && v.total_reads == 4096 && elapsed < 1.0;
  return {ok, fmt("vanilla E=%.6f x%zu (all decode to (-1,2): %s); congruence E=%.6f x%zu; %.4fs", v.ground_energy,
                  v.ground_states.size(), decoded_ok ? "yes" : "no", c.ground_energy, c.ground_states.size(), elapsed)};
}

Outcome energy_residual() {
  const QuboMatrix Q = example_vanilla();
  const LinearSystem sys = ex::example_system();
  const RadixEncoding enc = ex::example_encoding();
  double worst = 0.0;
  for (std::uint64_t mask = 0; mask < 4096; ++mask) {
    const auto q = ex::from_mask(mask, 12);
    worst = std::max(worst, std::abs(total_objective(Q, q) - residual_norm_sq(sys, decode(enc, q))));
  }
  return {worst <= 1e-9, fmt("4096 assignments, max |energy + offset - residual| = %.3g", worst)};
}

Outcome sparsity_claim() {
  const auto c = sparsity_report(example_congruence());
  const auto v = sparsity_report(example_vanilla());
  const bool ok = c.nnz == 23 && v.nnz == 78 && 3 * c.nnz < v.nnz && c.bound == 24 && v.bound == 78;
  return {ok, fmt("nnz %zu/%zu = %.6f (bounds %zu/%zu) vs 1/3", c.nnz, v.nnz, double(c.nnz) / double(v.nnz), c.bound,
                  v.bound)};
}

Outcome hit_rate_ordering() {
  const auto start = Clock::now();
  const QuboMatrix v = example_vanilla();
  const QuboMatrix c = example_congruence();
  const auto v_ground = brute_force(v, 0).ground_states;
  const auto c_ground = brute_force(c, 0).ground_states;
  AnnealParams p;
  p.num_reads = 10000;
  p.sweeps_per_read = 100;
  p.beta_initial = 0.05;
  p.beta_final = 5.0;
  double v_mean = 0.0;
  double c_mean = 0.0;
  const int seeds = 5;
  for (int s = 1; s <= seeds; ++s) {
    p.seed = static_cast<std::uint64_t>(s);
    v_mean += ground_hit_rate(simulated_anneal(v, p), v_ground) / seeds;
    c_mean += ground_hit_rate(simulated_anneal(c, p), c_ground) / seeds;
  }
  const double elapsed = seconds_since(start);
  const bool ok = c_mean > v_mean && v_mean > 0.0 && c_mean > 0.0 && elapsed < 30.0;
  return {ok, fmt("5 seeds x 10000 reads x 100 sweeps, beta 0.05->5: congruence %.4f vs vanilla %.4f, %.2fs", c_mean,
                  v_mean, elapsed)};
}

Outcome compare_determinism() {
  const ProblemFile problem = example_problem();
  AnnealParams p;
  p.num_reads = 10000;
  p.sweeps_per_read = 100;
  p.seed = 2024;
  p.threads = 4;
  const std::string a = render_compare(run_compare(problem, p, 3));
  p.threads = 1;
  const std::string b = render_compare(run_compare(problem, p, 3));
  return {a == b, fmt("two 3x10000-read compare reports, %zu bytes each, identical: %s", a.size(),
                      a == b ? "yes" : "no")};
}

std::size_t entry_lines(const std::string& coordinates) {
  std::size_t lines = 0;
  for (char ch : coordinates) lines += ch == '\n';
  return lines - 1;  // header
}

Outcome round_trips() {
  bool ok = true;
  const ProblemFile example = example_problem();
  ok = ok && read_problem(write_problem(example)) == example;
  const QuboFile c = build_model(example, QuboModel::congruence);
  const QuboFile v = build_model(example, QuboModel::vanilla);
  for (bool zeros : {false, true}) {
    ok = ok && read_qubo(write_qubo(c, zeros)) == c && read_qubo(write_qubo(v, zeros)) == v;
    ok = ok && read_qubo(write_qubo_coordinates(c.matrix, zeros)).matrix == c.matrix;
  }

  std::mt19937_64 rng(99);
  std::uniform_real_distribution<double> mant(-1.0, 1.0);
  std::uniform_int_distribution<int> expo(-30, 30);
  auto value = [&] { return std::ldexp(mant(rng), expo(rng)); };
  int failures = 0;
  for (int trial = 0; trial < 100; ++trial) {
    const std::size_t rows = 1 + trial % 5;
    const std::size_t cols = 1 + trial % 4;
    ProblemFile p;
    p.A = Matrix(rows, cols);
    p.b = Vector(rows);
    for (std::size_t i = 0; i < rows; ++i) {
      p.b[i] = value();
      for (std::size_t j = 0; j < cols; ++j) p.A(i, j) = value();
    }
    p.low_exp = -(trial % 4);
    p.high_exp = trial % 3;
    if (trial % 2) p.scale = Vector(cols, 0.5 + trial);
    if (read_problem(write_problem(p)) != p) ++failures;

    QuboFile q;
    q.matrix.n = 1 + trial % 16;
    q.matrix.offset = value();
    for (std::size_t i = 0; i < q.matrix.n; ++i)
      for (std::size_t j = i; j < q.matrix.n; ++j)
        if (rng() % 3) q.matrix.add(i, j, value());
    q.model = trial % 2 ? QuboModel::vanilla : QuboModel::congruence;
    q.annihilate_pm = trial % 2 == 0;
    if (read_qubo(write_qubo(q, trial % 3 == 0)) != q) ++failures;
    if (read_qubo(write_qubo_coordinates(q.matrix, trial % 3 == 1)).matrix != q.matrix) ++failures;
  }
  ok = ok && failures == 0;

  const std::size_t dense = entry_lines(write_qubo_coordinates(c.matrix, true));
  const std::size_t sparse = entry_lines(write_qubo_coordinates(c.matrix, false));
  ok = ok && dense == 78 && sparse == 23;
  return {ok, fmt("example + 100 random instances, %d mismatches; congruence export %zu lines with zeros, %zu without",
                  failures, dense, sparse)};
}

struct Criterion {
  const char* name;
  std::function<Outcome()> run;
};

}  // namespace

int main(int argc, char** argv) {
  const std::vector<Criterion> criteria = {
      {"golden vanilla matrix", golden_vanilla},
      {"golden congruence matrix", golden_congruence},
      {"congruence identity", congruence_identity},
      {"ground-state degeneracy", ground_degeneracy},
      {"energy/residual equivalence", energy_residual},
      {"sparsity ratio below 1/3", sparsity_claim},
      {"hit-rate ordering", hit_rate_ordering},
      {"compare determinism", compare_determinism},
      {"file round trips", round_trips},
  };

  std::size_t first = 0;
  std::size_t last = criteria.size();
  if (argc > 1) {
    const int which = std::atoi(argv[1]);
    if (which < 1 || which > static_cast<int>(criteria.size())) {
      std::fprintf(stderr, "usage: %s [criterion 1..%zu]\n", argv[0], criteria.size());
      return 2;
    }
    first = static_cast<std::size_t>(which - 1);
    last = first + 1;
  }

  int failed = 0;
  for (std::size_t i = first; i < last; ++i) {
    Outcome outcome;
    try {
      outcome = criteria[i].run();
    } catch (const std::exception& e) {
      outcome = {false, std::string("exception: ") + e.what()};
    }
    std::printf("[%s] %zu. %s: %s\n", outcome.pass ? "PASS" : "FAIL", i + 1, criteria[i].name,
                outcome.detail.c_str());
    failed += outcome.pass ? 0 : 1;
  }
  return failed == 0 ? 0 : 1;
}
