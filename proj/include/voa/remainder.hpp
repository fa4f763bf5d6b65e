#ifndef VOA_REMAINDER_HPP
#define VOA_REMAINDER_HPP

// The remainders R_n(I,J): the closed form for n = 1, the general
// recursion, the diagonal table and the zero scan f(a).

#include <optional>
#include <utility>
#include <vector>

#include "voa/scalars.hpp"

namespace voa {

/// Index list brought to strictly increasing order. sign is the sign of the
/// sorting permutation, or 0 when an entry repeats (entries then unspecified).
struct IndexList {
  int sign = 1;
  std::vector<int> entries;

  static IndexList normalize(std::vector<int> raw);
};

/// R_1(I,J) from the four-bracket closed form. Throws LengthMismatch unless
/// both lists have two entries and ParityError when |I| + |J| + 2 is odd.
Rational r1_closed_form(const std::vector<int>& I, const std::vector<int>& J);

/// R_n(I,J) by recursion on n, with lists normalized by IndexList (so
/// repeated entries give 0 and transpositions flip the sign). Memoized.
/// Throws LengthMismatch, IndexError (negative entries) or ParityError.
Rational rn(int n, const std::vector<int>& I, const std::vector<int>& J);
/// Same recursion without the memo table.
Rational rn_uncached(int n, const std::vector<int>& I, const std::vector<int>& J);
/// Entries currently held by the memo table.
std::size_t rn_cache_size();

inline constexpr int kTable1MaxN = 8;

/// (n, R_n((0..n),(0..n))) for n = 1..n_max. n_max above kTable1MaxN throws
/// ResourceLimit unless allow_large is set.
std::vector<std::pair<int, Rational>> table1(int n_max, bool allow_large = false);

struct ZeroScan {
  /// (a, f(a)) with f(a) = R_n((0..n), (0..n-1,a)), a = n, n+2, ...
  std::vector<std::pair<int, Rational>> values;
  /// Least sampled a with f(a) != 0.
  std::optional<int> a0;
  /// (n^2 + 2n + a0) / 2.
  std::optional<int> m;
};

ZeroScan scan_f(int n, int a_max);

}  // namespace voa

#endif  // VOA_REMAINDER_HPP
