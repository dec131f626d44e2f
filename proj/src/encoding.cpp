#include "linqubo/encoding.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <string>

#include "linqubo/errors.hpp"

namespace linqubo {

namespace {

constexpr int kMaxDigits = 30;

// |value| / 2^low as an exact integer, or nullopt when it is not one.
std::optional<std::int64_t> scaled_integer(double value, int low_exp) {
  const double scaled = std::ldexp(value, -low_exp);
  const double rounded = std::round(scaled);
  if (std::abs(scaled - rounded) > 1e-9 * std::max(1.0, std::abs(scaled))) return std::nullopt;
  if (std::abs(rounded) > 9.0e15) return std::nullopt;
  return static_cast<std::int64_t>(rounded);
}

void append_digits(std::vector<std::uint8_t>& out, std::uint64_t magnitude, std::size_t digits) {
  for (std::size_t l = 0; l < digits; ++l) out.push_back((magnitude >> l) & 1U);
}

}  // namespace

RadixEncoding::RadixEncoding(std::size_t vars, int low, int high)
    : num_vars(vars), low_exp(low), high_exp(high) {
  if (vars == 0) throw DimensionMismatch("encoding needs at least one variable");
  if (low > high) throw DimensionMismatch("encoding requires low_exp <= high_exp");
  if (high - low + 1 > kMaxDigits) throw DimensionMismatch("encoding exponent range too wide");
}

double RadixEncoding::weight(std::size_t qubit) const noexcept {
  const std::size_t within = qubit % qubits_per_var();
  const std::size_t l = within % digits();
  const double w = std::ldexp(1.0, low_exp + static_cast<int>(l));
  return within >= digits() ? -w : w;
}

std::size_t num_qubits(const RadixEncoding& enc) { return enc.num_vars * enc.qubits_per_var(); }

Vector decode(const RadixEncoding& enc, const QubitAssignment& q) {
  if (q.size() != num_qubits(enc)) {
    throw DimensionMismatch("assignment has " + std::to_string(q.size()) + " bits, encoding needs " +
                            std::to_string(num_qubits(enc)));
  }
  Vector v(enc.num_vars);
  for (std::size_t t = 0; t < q.size(); ++t) {
    if (q.bits[t] != 0) v[enc.var_of(t)] += enc.weight(t);
  }
  return v;
}

QubitAssignment canonical_encode(const RadixEncoding& enc, const Vector& v) {
  if (v.dim() != enc.num_vars) throw DimensionMismatch("vector length differs from num_vars");
  const std::size_t k = enc.digits();
  const std::int64_t limit = (std::int64_t{1} << k) - 1;
  QubitAssignment q;
  q.bits.reserve(num_qubits(enc));
  for (std::size_t i = 0; i < v.dim(); ++i) {
    const auto m = scaled_integer(v[i], enc.low_exp);
    if (!m || std::abs(*m) > limit) {
      throw NotRepresentable("value " + std::to_string(v[i]) + " of variable " +
                             std::to_string(i) + " is not representable");
    }
    const auto mag = static_cast<std::uint64_t>(std::abs(*m));
    append_digits(q.bits, *m > 0 ? mag : 0, k);
    append_digits(q.bits, *m < 0 ? mag : 0, k);
  }
  return q;
}

std::vector<std::vector<std::uint8_t>> enumerate_representations(const RadixEncoding& enc,
                                                                 double value,
                                                                 std::size_t var_index) {
  if (var_index >= enc.num_vars) throw DimensionMismatch("variable index out of range");
  std::vector<std::vector<std::uint8_t>> out;
  const auto target = scaled_integer(value, enc.low_exp);
  if (!target) return out;
  const std::size_t k = enc.digits();
  const std::int64_t limit = (std::int64_t{1} << k) - 1;
  // p - n = target with p, n in [0, limit].
  for (std::int64_t p = std::max<std::int64_t>(0, *target); p <= limit; ++p) {
    const std::int64_t n = p - *target;
    if (n < 0 || n > limit) continue;
    std::vector<std::uint8_t> pattern;
    pattern.reserve(2 * k);
    append_digits(pattern, static_cast<std::uint64_t>(p), k);
    append_digits(pattern, static_cast<std::uint64_t>(n), k);
    out.push_back(std::move(pattern));
  }
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace linqubo
