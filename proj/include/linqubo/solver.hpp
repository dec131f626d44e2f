#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <span>
#include <vector>

#include "linqubo/encoding.hpp"
#include "linqubo/qubo.hpp"

namespace linqubo {

struct SampleRecord {
  QubitAssignment assignment;
  double energy = 0.0;
  std::uint64_t occurrences = 0;

  bool operator==(const SampleRecord&) const = default;
};

/// Records are sorted by ascending energy, then lexicographic bits.
/// Sum of occurrences plus `omitted` equals `total_reads`; `omitted` is only
/// nonzero when exhaustive enumeration truncated its non-ground records.
struct SolveResult {
  std::vector<SampleRecord> records;
  double ground_energy = 0.0;
  std::vector<QubitAssignment> ground_states;
  std::uint64_t total_reads = 0;
  std::uint64_t omitted = 0;

  bool operator==(const SolveResult&) const = default;
};

inline constexpr std::size_t kBruteForceMaxQubits = 30;
/// Energies within this distance of the minimum count as ground states.
inline constexpr double kGroundTolerance = 1e-9;

/// Enumerates all 2^n assignments. All ground states are kept; at most
/// `max_other_records` of the lowest non-ground assignments are kept too.
/// Throws TooLarge when n > kBruteForceMaxQubits.
SolveResult brute_force(const QuboMatrix& Q,
                        std::size_t max_other_records = std::numeric_limits<std::size_t>::max());

struct AnnealParams {
  std::uint64_t num_reads = 1000;
  std::uint64_t sweeps_per_read = 100;
  double beta_initial = 0.05;
  double beta_final = 5.0;
  std::uint64_t seed = 0;
  /// Worker threads; 0 picks the hardware concurrency. Results do not
  /// depend on this value.
  unsigned threads = 0;
};

/// Independent single-flip Metropolis chains. Each read starts from a uniform
/// random assignment drawn from a generator seeded by (seed, read index) and
/// sweeps the qubits in index order under a geometric beta schedule.
SolveResult simulated_anneal(const QuboMatrix& Q, const AnnealParams& params);

/// Fraction of reads whose assignment lies in `reference_ground`.
double ground_hit_rate(const SolveResult& result, std::span<const QubitAssignment> reference_ground);

/// Number of reads whose assignment lies in `reference_ground`.
std::uint64_t ground_hits(const SolveResult& result, std::span<const QubitAssignment> reference_ground);

}  // namespace linqubo
