#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "linqubo/io.hpp"
#include "linqubo/solver.hpp"

namespace linqubo {

/// Human-readable R, D, y*, x* and residual for a problem.
std::string render_diagonalization(const ProblemFile& problem);

enum class Annihilate { on, off, model_default };

/// Builds the requested model with its provenance attached.
QuboFile build_model(const ProblemFile& problem, QuboModel model,
                     Annihilate annihilate = Annihilate::model_default);

/// "nnz 23 / bound 24 (dense 78, ratio 0.294872)"
std::string render_sparsity(const QuboMatrix& Q);

/// Occurrence table in the layout of the annealer result tables: one row per
/// ground-state pattern, one count column per trial, then totals.
struct OccurrenceTable {
  struct Row {
    std::vector<std::string> cells;  // one per variable, or a single bit string
    std::string decoded;
    double energy = 0.0;
    std::vector<std::uint64_t> counts;
  };

  std::vector<std::string> key_headers;
  std::vector<std::string> count_headers;
  std::vector<Row> rows;
  std::vector<std::uint64_t> totals;  // sum over rows, per column
  std::vector<std::uint64_t> reads;   // all reads, per column
  bool collapsed = false;
};

/// `reference_ground` selects the rows; when empty, the lowest energy seen
/// across all results selects them. With `collapse` and a known encoding,
/// a ground set that is a Cartesian product of per-variable pattern sets is
/// shown with one row per pattern of the first variable and the other
/// variables summarized as "all N combinations".
OccurrenceTable make_occurrence_table(const QuboFile& file, std::span<const SolveResult> results,
                                      std::span<const QubitAssignment> reference_ground,
                                      bool collapse, const std::string& count_prefix = "run ");

std::string render_table_text(const OccurrenceTable& table);
std::string render_table_csv(const OccurrenceTable& table);

/// Per-model figures of a head-to-head annealing comparison.
struct ModelSummary {
  QuboModel model = QuboModel::unknown;
  std::size_t nnz = 0;
  std::size_t nnz_bound = 0;
  double ground_energy = 0.0;
  std::size_t degeneracy = 0;
  std::vector<std::uint64_t> hits;
  double mean_hit_rate = 0.0;
};

struct CompareReport {
  ModelSummary vanilla;
  ModelSummary congruence;
  /// nnz(congruence) / nnz(vanilla).
  double ratio = 0.0;
  std::uint64_t reads_per_trial = 0;
  std::size_t trials = 0;
};

/// Builds both models with their default reductions and anneals each with
/// identical parameters; trial t uses seed params.seed + t. Hits are counted
/// against the exhaustive ground set of each model.
CompareReport run_compare(const ProblemFile& problem, const AnnealParams& params, std::size_t trials);

std::string render_compare(const CompareReport& report);

}  // namespace linqubo
