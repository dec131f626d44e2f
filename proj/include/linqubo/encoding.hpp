#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "linqubo/linalg.hpp"

namespace linqubo {

/// Signed radix-2 encoding shared by every variable:
///   v = sum_l 2^l q+_l - sum_l 2^l q-_l,  l in [low_exp, high_exp].
/// Qubits are laid out variable by variable; within a variable the plus group
/// comes first, then the minus group, each in ascending exponent.
struct RadixEncoding {
  std::size_t num_vars = 1;
  int low_exp = 0;
  int high_exp = 2;

  RadixEncoding() = default;
  RadixEncoding(std::size_t vars, int low, int high);

  /// Bits in one sign group.
  std::size_t digits() const noexcept {
    return static_cast<std::size_t>(high_exp - low_exp + 1);
  }
  std::size_t qubits_per_var() const noexcept { return 2 * digits(); }

  /// Owning variable of a flattened qubit index.
  std::size_t var_of(std::size_t qubit) const noexcept { return qubit / qubits_per_var(); }
  bool is_negative(std::size_t qubit) const noexcept {
    return qubit % qubits_per_var() >= digits();
  }
  /// Signed weight +-2^l of a qubit.
  double weight(std::size_t qubit) const noexcept;

  bool operator==(const RadixEncoding&) const = default;
};

/// One bit per qubit; values are 0 or 1.
struct QubitAssignment {
  std::vector<std::uint8_t> bits;

  std::size_t size() const noexcept { return bits.size(); }
  auto operator<=>(const QubitAssignment&) const = default;
};

std::size_t num_qubits(const RadixEncoding& enc);

Vector decode(const RadixEncoding& enc, const QubitAssignment& q);

/// One-sided encoding: at most one sign group per variable is active.
/// Throws NotRepresentable when some |v_i| / 2^low_exp is not an integer in
/// [0, 2^digits - 1].
QubitAssignment canonical_encode(const RadixEncoding& enc, const Vector& v);

/// Every two-sided pattern (plus bits then minus bits, 2 * digits long) of a
/// single variable that decodes to `value`, in lexicographic order.
/// `var_index` is checked against the encoding; patterns are per variable.
std::vector<std::vector<std::uint8_t>> enumerate_representations(const RadixEncoding& enc,
                                                                 double value,
                                                                 std::size_t var_index);

}  // namespace linqubo
