#pragma once

#include <cstddef>
#include <map>
#include <utility>
#include <vector>

#include "linqubo/encoding.hpp"
#include "linqubo/linalg.hpp"

namespace linqubo {

/// Upper-triangular QUBO in sparse canonical form: every stored key (i, j)
/// has i <= j < n and a nonzero value. Diagonal entries are the linear terms.
/// `offset` is the constant b^T b that turns energies into squared residuals.
struct QuboMatrix {
  using Key = std::pair<std::size_t, std::size_t>;

  std::size_t n = 0;
  std::map<Key, double> coeffs;
  double offset = 0.0;

  double at(std::size_t i, std::size_t j) const;
  /// Inserts or accumulates; canonicalizes (j, i) to (i, j) and erases zeros.
  void add(std::size_t i, std::size_t j, double value);

  bool operator==(const QuboMatrix&) const = default;
};

/// Algebraic reductions applied while expanding over the qubits.
///  fold_squares:  q^2 = q (always on).
///  annihilate_pm: q+ q- = 0 within one variable; drops those cross terms.
struct ReductionFlags {
  bool fold_squares = true;
  bool annihilate_pm = false;

  static ReductionFlags vanilla_default() { return {true, false}; }
  static ReductionFlags congruence_default() { return {true, true}; }
};

/// Expands x^T (A^T A) x - 2 b^T A x over the encoding of x.
QuboMatrix build_vanilla(const LinearSystem& sys, const RadixEncoding& enc,
                         ReductionFlags flags = ReductionFlags::vanilla_default());

/// Expands y^T D y - 2 (b^T A R) y over the encoding of y = R^{-1} x. Since D
/// is diagonal, qubits of different variables never couple.
QuboMatrix build_congruence(const LinearSystem& sys, const CongruenceDecomposition& dec,
                            const RadixEncoding& enc,
                            ReductionFlags flags = ReductionFlags::congruence_default());

/// sum_{i<=j} Q_ij q_i q_j, offset excluded.
double energy(const QuboMatrix& Q, const QubitAssignment& q);

/// energy + offset.
double total_objective(const QuboMatrix& Q, const QubitAssignment& q);

struct SparsityReport {
  std::size_t nnz = 0;
  /// Upper-triangular capacity of the detected diagonal blocks.
  std::size_t bound = 0;
  std::vector<std::size_t> block_sizes;
};

/// Blocks are the finest partition of [0, n) into consecutive ranges such
/// that no stored coefficient straddles two ranges.
SparsityReport sparsity_report(const QuboMatrix& Q);

}  // namespace linqubo
