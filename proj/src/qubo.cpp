#include "linqubo/qubo.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "linqubo/errors.hpp"

namespace linqubo {

namespace {

constexpr double kPruneRel = 1e-12;

// Expands z^T G z - 2 c^T z with z_v = sum_t w_t q_t over the qubits of v.
QuboMatrix expand(const Matrix& G, const Vector& c, const RadixEncoding& enc,
                  ReductionFlags flags, double offset) {
  if (!flags.fold_squares) throw Error("QUBO expansion requires fold_squares");
  const std::size_t n = num_qubits(enc);

  std::vector<double> dense(n * n, 0.0);
  for (std::size_t s = 0; s < n; ++s) {
    const std::size_t vs = enc.var_of(s);
    const double ws = enc.weight(s);
    // q_s^2 = q_s puts the square term on the diagonal.
    dense[s * n + s] = G(vs, vs) * ws * ws - 2.0 * c[vs] * ws;
    for (std::size_t t = s + 1; t < n; ++t) {
      const std::size_t vt = enc.var_of(t);
      if (flags.annihilate_pm && vs == vt && enc.is_negative(s) != enc.is_negative(t)) continue;
      dense[s * n + t] = 2.0 * G(vs, vt) * ws * enc.weight(t);
    }
  }

  double cmax = 0.0;
  for (double v : dense) cmax = std::max(cmax, std::abs(v));
  const double cutoff = kPruneRel * cmax;

  QuboMatrix Q;
  Q.n = n;
  Q.offset = offset;
  for (std::size_t s = 0; s < n; ++s)
    for (std::size_t t = s; t < n; ++t) {
      const double v = dense[s * n + t];
      if (v != 0.0 && std::abs(v) >= cutoff) Q.coeffs.emplace(QuboMatrix::Key{s, t}, v);
    }
  return Q;
}

void require_vars(const LinearSystem& sys, const RadixEncoding& enc) {
  if (enc.num_vars != sys.A.cols()) {
    throw DimensionMismatch("encoding has " + std::to_string(enc.num_vars) +
                            " variables but A has " + std::to_string(sys.A.cols()) + " columns");
  }
}

}  // namespace

double QuboMatrix::at(std::size_t i, std::size_t j) const {
  if (i > j) std::swap(i, j);
  const auto it = coeffs.find({i, j});
  return it == coeffs.end() ? 0.0 : it->second;
}

void QuboMatrix::add(std::size_t i, std::size_t j, double value) {
  if (i > j) std::swap(i, j);
  if (j >= n) throw DimensionMismatch("QUBO index out of range");
  if (!std::isfinite(value)) throw DimensionMismatch("QUBO coefficient is not finite");
  auto [it, inserted] = coeffs.try_emplace({i, j}, value);
  if (!inserted) it->second += value;
  if (it->second == 0.0) coeffs.erase(it);
}

QuboMatrix build_vanilla(const LinearSystem& sys, const RadixEncoding& enc, ReductionFlags flags) {
  require_vars(sys, enc);
  const Vector atb = sys.A.transposed() * sys.b;
  return expand(gram(sys.A), atb, enc, flags, dot(sys.b, sys.b));
}

QuboMatrix build_congruence(const LinearSystem& sys, const CongruenceDecomposition& dec,
                            const RadixEncoding& enc, ReductionFlags flags) {
  require_vars(sys, enc);
  const std::size_t m = sys.A.cols();
  if (dec.R.rows() != m || dec.R.cols() != m || dec.D.dim() != m) {
    throw DimensionMismatch("decomposition does not match the system");
  }
  Matrix Dm(m, m);
  for (std::size_t i = 0; i < m; ++i) Dm(i, i) = dec.D[i];
  const Vector linear = dec.R.transposed() * (sys.A.transposed() * sys.b);
  return expand(Dm, linear, enc, flags, dot(sys.b, sys.b));
}

double energy(const QuboMatrix& Q, const QubitAssignment& q) {
  if (q.size() != Q.n) {
    throw DimensionMismatch("assignment has " + std::to_string(q.size()) + " bits, QUBO has " +
                            std::to_string(Q.n));
  }
  double e = 0.0;
  for (const auto& [key, value] : Q.coeffs) {
    if (q.bits[key.first] != 0 && q.bits[key.second] != 0) e += value;
  }
  return e;
}

double total_objective(const QuboMatrix& Q, const QubitAssignment& q) {
  return energy(Q, q) + Q.offset;
}

SparsityReport sparsity_report(const QuboMatrix& Q) {
  SparsityReport rep;
  rep.nnz = Q.coeffs.size();
  if (Q.n == 0) return rep;

  // reach[i]: furthest column coupled to any row <= i.
  std::vector<std::size_t> reach(Q.n);
  for (std::size_t i = 0; i < Q.n; ++i) reach[i] = i;
  for (const auto& [key, value] : Q.coeffs) reach[key.first] = std::max(reach[key.first], key.second);

  std::size_t start = 0;
  std::size_t furthest = 0;
  for (std::size_t i = 0; i < Q.n; ++i) {
    furthest = std::max(furthest, reach[i]);
    if (furthest == i) {
      const std::size_t size = i - start + 1;
      rep.block_sizes.push_back(size);
      rep.bound += size * (size + 1) / 2;
      start = i + 1;
    }
  }
  return rep;
}

}  // namespace linqubo
