#include <algorithm>
#include <cmath>
#include <random>

#include <gtest/gtest.h>

#include "linqubo/encoding.hpp"
#include "linqubo/errors.hpp"
#include "worked_example.hpp"

using namespace linqubo;
namespace ex = linqubo::testing;

TEST(Encoding, QubitCounts) {
  EXPECT_EQ(num_qubits({2, 0, 2}), 12u);
  EXPECT_EQ(num_qubits({1, 0, 0}), 2u);
  EXPECT_EQ(num_qubits({3, -1, 1}), 18u);
  EXPECT_THROW(RadixEncoding(1, 2, 1), DimensionMismatch);
  EXPECT_THROW(RadixEncoding(0, 0, 1), DimensionMismatch);
}

TEST(Encoding, WeightsFollowPlusThenMinusLayout) {
  const RadixEncoding enc(2, -1, 1);
  const std::vector<double> expected{0.5, 1, 2, -0.5, -1, -2};
  for (std::size_t t = 0; t < 12; ++t) {
    EXPECT_EQ(enc.weight(t), expected[t % 6]);
    EXPECT_EQ(enc.var_of(t), t / 6);
  }
}

TEST(Decode, Examples) {
  const RadixEncoding enc = ex::example_encoding();
  EXPECT_EQ(decode(enc, ex::congruence_ground()), (Vector{-2, 5}));
  EXPECT_EQ(decode(enc, QubitAssignment{std::vector<std::uint8_t>(12, 0)}), Vector(2));
  EXPECT_EQ(decode({1, 0, 2}, QubitAssignment{{1, 1, 1, 1, 1, 1}}), Vector(1));
  EXPECT_THROW(decode(enc, QubitAssignment{{1, 0}}), DimensionMismatch);
}

TEST(CanonicalEncode, Examples) {
  const RadixEncoding enc = ex::example_encoding();
  EXPECT_EQ(canonical_encode(enc, Vector{-2, 5}), ex::congruence_ground());
  EXPECT_EQ(canonical_encode(enc, Vector(2)).bits, std::vector<std::uint8_t>(12, 0));
  EXPECT_THROW(canonical_encode({1, 0, 2}, Vector{-0.8}), NotRepresentable);
  EXPECT_THROW(canonical_encode({1, 0, 2}, Vector{8}), NotRepresentable);
  EXPECT_EQ(canonical_encode({1, -2, 0}, Vector{-1.75}).bits,
            (std::vector<std::uint8_t>{0, 0, 0, 1, 1, 1}));
}

TEST(CanonicalEncode, RoundTripsEveryRepresentableValue) {
  for (int low = -2; low <= 1; ++low)
    for (int high = low; high <= low + 3; ++high) {
      const RadixEncoding enc(1, low, high);
      const int limit = (1 << enc.digits()) - 1;
      for (int m = -limit; m <= limit; ++m) {
        const Vector v{std::ldexp(static_cast<double>(m), low)};
        EXPECT_EQ(decode(enc, canonical_encode(enc, v)), v);
      }
    }
}

TEST(EnumerateRepresentations, MatchesListedPatterns) {
  const RadixEncoding enc = ex::example_encoding();
  auto minus_one = ex::patterns_minus_one();
  auto two = ex::patterns_two();
  std::sort(minus_one.begin(), minus_one.end());
  std::sort(two.begin(), two.end());
  EXPECT_EQ(enumerate_representations(enc, -1, 0), minus_one);
  EXPECT_EQ(enumerate_representations(enc, 2, 1), two);
  EXPECT_TRUE(enumerate_representations(enc, 8, 0).empty());
  EXPECT_TRUE(enumerate_representations(enc, 0.5, 0).empty());
  EXPECT_THROW(enumerate_representations(enc, 1, 2), DimensionMismatch);
}

TEST(EnumerateRepresentations, CountMatchesBruteForce) {
  for (int low = -1; low <= 1; ++low)
    for (int high = low; high <= low + 2; ++high) {
      const RadixEncoding enc(1, low, high);
      const std::size_t bits = enc.qubits_per_var();
      const double step = std::ldexp(1.0, low);
      const int limit = (1 << enc.digits()) - 1;
      for (int m = -limit - 1; m <= limit + 1; ++m) {
        const double value = m * step;
        std::vector<std::vector<std::uint8_t>> brute;
        for (std::uint64_t mask = 0; mask < (1u << bits); ++mask) {
          const auto q = ex::from_mask(mask, bits);
          if (decode(enc, q)[0] == value) brute.push_back(q.bits);
        }
        std::sort(brute.begin(), brute.end());
        const auto listed = enumerate_representations(enc, value, 0);
        EXPECT_EQ(listed, brute) << "value " << value;
        if (std::abs(m) <= limit) {
          const auto canonical = canonical_encode(enc, Vector{value}).bits;
          EXPECT_NE(std::find(listed.begin(), listed.end(), canonical), listed.end());
        }
      }
    }
}
