#include "linqubo/solver.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <queue>
#include <random>
#include <string>
#include <thread>
#include <tuple>

#include "linqubo/errors.hpp"

namespace linqubo {

namespace {

// Symmetric adjacency view of an upper-triangular QUBO.
struct Couplings {
  std::vector<double> diag;
  std::vector<std::vector<std::pair<std::size_t, double>>> neighbors;

  explicit Couplings(const QuboMatrix& Q) : diag(Q.n, 0.0), neighbors(Q.n) {
    for (const auto& [key, value] : Q.coeffs) {
      const auto [i, j] = key;
      if (i == j) {
        diag[i] += value;
      } else {
        neighbors[i].emplace_back(j, value);
        neighbors[j].emplace_back(i, value);
      }
    }
  }
};

QubitAssignment mask_to_assignment(std::uint64_t mask, std::size_t n) {
  QubitAssignment q;
  q.bits.resize(n);
  for (std::size_t i = 0; i < n; ++i) q.bits[i] = (mask >> i) & 1U;
  return q;
}

// Integer whose natural order is the lexicographic order of the bit vector.
std::uint64_t lex_key(std::uint64_t mask, std::size_t n) {
  std::uint64_t key = 0;
  for (std::size_t i = 0; i < n; ++i) key = (key << 1) | ((mask >> i) & 1U);
  return key;
}

void sort_records(std::vector<SampleRecord>& records) {
  std::sort(records.begin(), records.end(), [](const SampleRecord& a, const SampleRecord& b) {
    return std::tie(a.energy, a.assignment) < std::tie(b.energy, b.assignment);
  });
}

void fill_ground(SolveResult& result) {
  if (result.records.empty()) return;
  result.ground_energy = result.records.front().energy;
  for (const auto& rec : result.records) {
    if (rec.energy > result.ground_energy + kGroundTolerance) break;
    result.ground_states.push_back(rec.assignment);
  }
}

// Walks all 2^n assignments in Gray-code order, calling visit(mask, energy)
// with an incrementally updated energy.
template <typename Visit>
void gray_walk(const Couplings& c, std::size_t n, Visit&& visit) {
  std::vector<double> field(n, 0.0);
  std::uint64_t mask = 0;
  double e = 0.0;
  visit(mask, e);
  const std::uint64_t count = std::uint64_t{1} << n;
  for (std::uint64_t g = 1; g < count; ++g) {
    const auto k = static_cast<std::size_t>(std::countr_zero(g));
    const bool was_set = (mask >> k) & 1U;
    const double local = c.diag[k] + field[k];
    e += was_set ? -local : local;
    mask ^= std::uint64_t{1} << k;
    const double sign = was_set ? -1.0 : 1.0;
    for (const auto& [j, w] : c.neighbors[k]) field[j] += sign * w;
    visit(mask, e);
  }
}

}  // namespace

SolveResult brute_force(const QuboMatrix& Q, std::size_t max_other_records) {
  const std::size_t n = Q.n;
  if (n > kBruteForceMaxQubits) {
    throw TooLarge("exhaustive search limited to " + std::to_string(kBruteForceMaxQubits) +
                   " qubits, instance has " + std::to_string(n));
  }
  const Couplings c(Q);
  const std::uint64_t total = std::uint64_t{1} << n;

  double min_walk = 0.0;
  gray_walk(c, n, [&](std::uint64_t, double e) { min_walk = std::min(min_walk, e); });

  // The incremental energy drifts slightly, so collect a generous candidate
  // band and settle ground membership on exactly recomputed energies.
  const double band = 1e-6 * std::max(1.0, std::abs(min_walk));
  std::vector<SampleRecord> candidates;
  using Entry = std::tuple<double, std::uint64_t, std::uint64_t>;  // energy, lex key, mask
  std::priority_queue<Entry> others;
  auto push_other = [&](double e, std::uint64_t mask) {
    if (max_other_records == 0) return;
    Entry entry{e, lex_key(mask, n), mask};
    if (others.size() < max_other_records) {
      others.push(entry);
    } else if (entry < others.top()) {
      others.pop();
      others.push(entry);
    }
  };
  gray_walk(c, n, [&](std::uint64_t mask, double e) {
    if (e <= min_walk + band) {
      auto q = mask_to_assignment(mask, n);
      const double exact = energy(Q, q);
      candidates.push_back({std::move(q), exact, 1});
    } else {
      push_other(e, mask);
    }
  });

  double exact_min = candidates.front().energy;
  for (const auto& rec : candidates) exact_min = std::min(exact_min, rec.energy);

  SolveResult result;
  result.total_reads = total;
  for (auto& rec : candidates) {
    if (rec.energy <= exact_min + kGroundTolerance) {
      result.records.push_back(std::move(rec));
    } else {
      std::uint64_t mask = 0;
      for (std::size_t i = 0; i < n; ++i) mask |= std::uint64_t{rec.assignment.bits[i]} << i;
      push_other(rec.energy, mask);
    }
  }
  while (!others.empty()) {
    const auto mask = std::get<2>(others.top());
    others.pop();
    auto q = mask_to_assignment(mask, n);
    const double exact = energy(Q, q);
    result.records.push_back({std::move(q), exact, 1});
  }
  sort_records(result.records);
  result.omitted = total - result.records.size();
  fill_ground(result);
  return result;
}

SolveResult simulated_anneal(const QuboMatrix& Q, const AnnealParams& params) {
  const std::size_t n = Q.n;
  if (n == 0) throw DimensionMismatch("simulated annealing needs at least one qubit");
  if (params.num_reads == 0 || params.sweeps_per_read == 0) {
    throw Error("num_reads and sweeps_per_read must be positive");
  }
  if (!(params.beta_initial > 0.0) || !(params.beta_initial < params.beta_final)) {
    throw Error("annealing requires 0 < beta_initial < beta_final");
  }

  const Couplings c(Q);
  std::vector<double> betas(params.sweeps_per_read);
  const double ratio = params.beta_final / params.beta_initial;
  for (std::size_t s = 0; s < betas.size(); ++s) {
    betas[s] = betas.size() == 1
                   ? params.beta_final
                   : params.beta_initial *
                         std::pow(ratio, static_cast<double>(s) / static_cast<double>(betas.size() - 1));
  }

  const std::uint64_t reads = params.num_reads;
  std::vector<std::uint8_t> finals(reads * n);

  auto run_read = [&](std::uint64_t r) {
    std::seed_seq seq{static_cast<std::uint32_t>(params.seed), static_cast<std::uint32_t>(params.seed >> 32),
                      static_cast<std::uint32_t>(r), static_cast<std::uint32_t>(r >> 32)};
    std::mt19937_64 rng(seq);
    auto uniform = [&rng] { return static_cast<double>(rng() >> 11) * 0x1.0p-53; };

    std::uint8_t* bits = finals.data() + r * n;
    for (std::size_t i = 0; i < n; ++i) bits[i] = static_cast<std::uint8_t>(rng() >> 63);
    std::vector<double> field(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
      if (bits[i] == 0) continue;
      for (const auto& [j, w] : c.neighbors[i]) field[j] += w;
    }

    for (const double beta : betas) {
      for (std::size_t k = 0; k < n; ++k) {
        const double local = c.diag[k] + field[k];
        const double delta = bits[k] != 0 ? -local : local;
        if (delta > 0.0 && uniform() >= std::exp(-beta * delta)) continue;
        bits[k] ^= 1U;
        const double sign = bits[k] != 0 ? 1.0 : -1.0;
        for (const auto& [j, w] : c.neighbors[k]) field[j] += sign * w;
      }
    }
  };

  unsigned workers = params.threads != 0 ? params.threads : std::thread::hardware_concurrency();
  workers = static_cast<unsigned>(std::clamp<std::uint64_t>(workers, 1, reads));
  if (workers == 1) {
    for (std::uint64_t r = 0; r < reads; ++r) run_read(r);
  } else {
    std::vector<std::jthread> pool;
    pool.reserve(workers);
    for (unsigned w = 0; w < workers; ++w) {
      pool.emplace_back([&, w] {
        for (std::uint64_t r = w; r < reads; r += workers) run_read(r);
      });
    }
  }

  std::map<std::vector<std::uint8_t>, std::uint64_t> counts;
  for (std::uint64_t r = 0; r < reads; ++r) {
    const auto first = finals.begin() + static_cast<std::ptrdiff_t>(r * n);
    ++counts[std::vector<std::uint8_t>(first, first + static_cast<std::ptrdiff_t>(n))];
  }

  SolveResult result;
  result.total_reads = reads;
  result.records.reserve(counts.size());
  for (auto& [bits, count] : counts) {
    QubitAssignment q{bits};
    const double e = energy(Q, q);
    result.records.push_back({std::move(q), e, count});
  }
  sort_records(result.records);
  fill_ground(result);
  return result;
}

std::uint64_t ground_hits(const SolveResult& result, std::span<const QubitAssignment> reference_ground) {
  std::vector<QubitAssignment> ref(reference_ground.begin(), reference_ground.end());
  std::sort(ref.begin(), ref.end());
  std::uint64_t hits = 0;
  for (const auto& rec : result.records) {
    if (std::binary_search(ref.begin(), ref.end(), rec.assignment)) hits += rec.occurrences;
  }
  return hits;
}

double ground_hit_rate(const SolveResult& result, std::span<const QubitAssignment> reference_ground) {
  if (result.total_reads == 0) return 0.0;
  return static_cast<double>(ground_hits(result, reference_ground)) /
         static_cast<double>(result.total_reads);
}

}  // namespace linqubo
