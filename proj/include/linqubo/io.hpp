#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <string_view>

#include "linqubo/encoding.hpp"
#include "linqubo/linalg.hpp"
#include "linqubo/qubo.hpp"

namespace linqubo {

/// A linear system plus the encoding used to turn it into a QUBO.
///
/// On disk this is a JSON object:
///   {"A": [[3, 1], [-1, 2]], "b": [-1, 5],
///    "encoding": {"low": 0, "high": 2},
///    "scale": [0.4, 0.4],          // optional, per-column scale of R
///    "R": [[0.4, -0.04], [0, 0.4]]}  // optional, overrides elimination
struct ProblemFile {
  Matrix A;
  Vector b;
  int low_exp = 0;
  int high_exp = 2;
  std::optional<Vector> scale;
  std::optional<Matrix> R;

  LinearSystem system() const { return {A, b}; }
  RadixEncoding encoding() const { return {A.cols(), low_exp, high_exp}; }
  /// R and D for this problem: the explicit R when given, otherwise
  /// elimination with `scale` (default all ones).
  CongruenceDecomposition decomposition() const;

  bool operator==(const ProblemFile&) const = default;
};

ProblemFile read_problem(std::string_view text);
std::string write_problem(const ProblemFile& problem);

enum class QuboModel { vanilla, congruence, unknown };

std::string_view to_string(QuboModel model);
QuboModel parse_model(std::string_view name);

/// A QUBO with the provenance needed to interpret it.
struct QuboFile {
  QuboMatrix matrix;
  QuboModel model = QuboModel::unknown;
  bool annihilate_pm = false;
  /// Present when the file records how qubits map to variables.
  std::optional<RadixEncoding> encoding;

  bool operator==(const QuboFile&) const = default;
};

/// Self-describing JSON form. With include_zeros every pair i <= j < n is
/// written, zeros explicitly; otherwise only stored coefficients.
std::string write_qubo(const QuboFile& file, bool include_zeros);

/// Flat coordinate form for external annealers: a "qubo <n> <offset>" header
/// then one "<i> <j> <value>" line per entry, 0-based, ascending (i, j),
/// values in shortest round-trip decimal.
std::string write_qubo_coordinates(const QuboMatrix& Q, bool include_zeros);

/// Reads either form (detected from the first token). Explicit zeros are
/// pruned. Throws ParseError or DuplicateEntry.
QuboFile read_qubo(std::string_view text);

std::string read_text_file(const std::filesystem::path& path);
void write_text_file(const std::filesystem::path& path, std::string_view text);

/// Shortest decimal that parses back to exactly `value`.
std::string format_double(double value);

}  // namespace linqubo
