#pragma once

#include <cstdint>
#include <vector>

#include "oweb/field.hpp"

namespace oweb {

using Subset = uint32_t;  // bitmask subset of [0, N)

/// Number of inversions of the shuffle sorting the concatenation T.U;
/// throws on overlapping sets.
int interleave_length(Subset T, Subset U);
int interleave_length(const std::vector<int>& T, const std::vector<int>& U);

std::vector<int> subset_elements(Subset s);
Subset subset_from(const std::vector<int>& elems);

/// Colex rank of a k-subset of [0,N) among all k-subsets.
int colex_rank(Subset s);
Subset colex_unrank(int n_elems, int k, int rank);
std::vector<Subset> all_subsets_of_size(int n, int k);

/// Composition K = (K_1..K_m) with entries in [0, N].
using Composition = std::vector<int>;

/// so_{2m} weight written as halves: the weight is sum_i halves[i]*eps_i/2.
/// All entries share parity.
struct SOWeight {
  std::vector<long> halves;
  bool is_dominant() const;
  bool operator==(const SOWeight&) const = default;
};

/// Subset of the N x m box. Cells are stored as a bitmask in column-reading
/// order: cell (row i in [1,N], col j in [1,m]) has bit (j-1)*N + (i-1).
struct BoxSubset {
  int N = 0;
  int m = 0;
  uint64_t cells = 0;

  static int cell_bit(int N, int row, int col) { return (col - 1) * N + (row - 1); }
  bool contains(int row, int col) const { return (cells >> cell_bit(N, row, col)) & 1; }
  BoxSubset with(int row, int col) const;
  BoxSubset without(int row, int col) const;
  int size() const;

  /// Column projection S_j as a subset of rows [0, N).
  Subset column(int j) const;
  /// Row projection _iS as a subset of columns [0, m).
  Subset row(int i) const;

  bool operator==(const BoxSubset&) const = default;
};

/// (-1)^{l(sigma_h^v(S))}: the sign relating row and column reading.
int reading_sign(const BoxSubset& S);

/// Column weights (|S_1|, ..., |S_m|).
Composition column_weight(const BoxSubset& S);

/// halves A_i = 2 K_i - N.
SOWeight composition_to_so_weight(const Composition& K, int N);

bool is_dominant(const Composition& K, int N);
bool is_antidominant(const Composition& K, int N);

/// Root order on so_{2m} weights: a <= b iff b - a is a nonnegative integral
/// combination of the D_m simple roots.
bool so2m_leq(const SOWeight& a, const SOWeight& b);

/// Partition utilities. Partitions are weakly decreasing, no trailing zeros.
using Partition = std::vector<long>;
Partition transpose(const Partition& p);
Partition normalized(Partition p);
/// Dominance order on partitions (prefix sums), defined for any pair.
bool dominance_leq(const Partition& a, const Partition& b);

/// Dominant O(N)-weight: a partition with (l^T)_1 + (l^T)_2 <= N together
/// with the derived sign epsilon in {-1, 0, +1}.
struct OWeight {
  Partition partition;
  int epsilon = 1;
  int N = 0;

  /// Builds from the bare partition; derives epsilon (0 iff the first column
  /// has exactly N/2 boxes). Throws when the partition is not a dominant
  /// O(N)-weight.
  static OWeight from_partition(Partition p, int N);

  /// The SO(N)-weight half of the pair (a, epsilon); n = floor(N/2) entries,
  /// canonicalized with a_n >= 0.
  std::vector<long> so_part() const;
  bool operator==(const OWeight&) const = default;
};

/// lambda^tw: first column replaced by N - (l^T)_1 boxes.
OWeight twist(const OWeight& lam);

/// Strict order lambda < mu from D:O-dominanceorder.
bool o_less(const OWeight& lam, const OWeight& mu);

/// Order-reversing bijection into dominant compositions bounded by N;
/// requires the partition to fit the N x m box.
Composition dagger(const OWeight& lam, int m);

/// Enumerations at desk scale.
std::vector<Composition> all_compositions(int m, int N);
std::vector<Composition> dominant_compositions(int m, int N);
std::vector<OWeight> o_weights_in_box(int N, int m);

struct PAdicDigits {
  long p = 0;
  std::vector<int> digits;  // little-endian
  long value() const;
};

PAdicDigits p_adic_digits(long n, long p);
bool leq_p(long x, long y, long p);

}  // namespace oweb
