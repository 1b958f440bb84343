#pragma once

#include <cstdint>
#include <map>
#include <vector>

#include "oweb/combin.hpp"
#include "oweb/linalg.hpp"

namespace oweb {

/// Formal linear combination of basis elements of Lambda(V (x) A^m), indexed
/// by box subsets in column-reading order (w^v basis). No explicit zeros.
struct LinearCombo {
  FieldSpec spec;
  std::map<uint64_t, Scalar> terms;

  explicit LinearCombo(const FieldSpec& s) : spec(s) {}
  void add(uint64_t mask, const Scalar& c);
  bool is_zero() const { return terms.empty(); }
  bool operator==(const LinearCombo& o) const;
  LinearCombo operator+(const LinearCombo& o) const;
  LinearCombo operator-(const LinearCombo& o) const;
  LinearCombo scaled(const Scalar& c) const;
};

/// x_i . x_S and del_i . x_S on Lambda(A^m); masks are subsets of [0, m),
/// i is 1-based, sign is (-1)^{|S cap [1,i-1]|}.
std::pair<Subset, int> clifford_x(int i, Subset S);    // (result, sign); sign 0 => kills
std::pair<Subset, int> clifford_del(int i, Subset S);  // (result, sign); sign 0 => kills

/// Verifies x_i del_j + del_j x_i = delta_ij on the full basis of Lambda(A^m).
bool leibniz_check(int i, int j, int m);

/// Readings of a box subset.
std::vector<Subset> phi_h(const BoxSubset& S);  // N row sets, subsets of [0, m)
std::vector<Subset> phi_v(const BoxSubset& S);  // m column sets, subsets of [0, N)

/// Wedge product of two w^v basis elements; second value is the sign, or 0
/// when the cells overlap.
std::pair<uint64_t, int> wedge_masks(uint64_t a, uint64_t b);
/// Wedge product of combinations.
LinearCombo wedge(const LinearCombo& a, const LinearCombo& b);

/// Derivation extension of an N x N matrix g to Lambda(V (x) A^m) in the
/// w^v (bitmask) basis of dimension 2^{Nm}.
SparseMat derivation_on_box(const SparseMat& g, int N, int m);
/// Derivation extension of g to Lambda^k(V) on the colex subset basis.
SparseMat derivation_on_power(const SparseMat& g, int N, int k);
/// Multiplicative extension Lambda^k(g) on the colex subset basis.
SparseMat power_matrix(const SparseMat& g, int N, int k);

/// The Lie generator E_ij - E_ji of so_N (1 <= i < j <= N) in the v basis.
SparseMat so_generator_matrix(int i, int j, int N, const FieldSpec& spec);
/// All of the above as a spanning set of so_N.
std::vector<SparseMat> so_basis(int N, const FieldSpec& spec);
/// Determinant -1 orthogonal reflection: negates v_{n+1} (N odd) or v_N
/// (N even).
SparseMat sigma_v_matrix(int N, const FieldSpec& spec);
int sigma_reflection_index(int N);  // 1-based row negated by sigma

/// so_N derivations and sigma on the full space Lambda(V (x) A^m).
std::vector<SparseMat> so_box_operators(int N, int m, const FieldSpec& spec, bool with_sigma);

/// Change of basis v <-> (a, b, u); column r-1 holds the r-th z-row vector
/// in v coordinates. Requires a field containing i.
SparseMat abu_change_of_basis(int N, const FieldSpec& spec);
/// z_S expanded in the w^v basis.
LinearCombo z_vector(const BoxSubset& S, const FieldSpec& spec);

/// Raising Chevalley generators of so_N for the split torus of the a/b/u
/// basis, expressed in the v basis (empty for N <= 2).
std::vector<SparseMat> so_raising_operators(int N, const FieldSpec& spec);

}  // namespace oweb
