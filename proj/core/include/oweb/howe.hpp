#pragma once

#include <optional>
#include <string>
#include <vector>

#include "oweb/combin.hpp"
#include "oweb/evalfun.hpp"
#include "oweb/exterior.hpp"

namespace oweb {

/// Chevalley generator of so_{2m} acting through Howe duality; node m is the
/// fishtail. h carries no divided power.
struct HoweOp {
  char kind = 'e';  // 'e', 'f' or 'h'
  int node = 1;     // 1..m
  int power = 1;    // divided power for e/f
};

/// Row-wise dot-diagram action on w^h basis vectors (no signs; h acts by the
/// coroot value, returned as a scalar multiple of S itself).
LinearCombo dot_action(const HoweOp& op, const BoxSubset& S, const FieldSpec& spec);

/// Weight shift of the operator on compositions, or nullopt if it leaves
/// the nonnegative orthant.
std::optional<Composition> shifted_weight(const HoweOp& op, const Composition& K);

/// evaluate(ladder diagram) on the Lambda^K block; nullopt = zero morphism.
std::optional<SparseMat> ladder_matrix(const HoweOp& op, const Composition& K, int N,
                                       const FieldSpec& spec);

/// Ladder operator assembled over every weight block, in the bitmask basis
/// of Lambda(V (x) A^m) (dimension 2^{Nm}).
SparseMat assemble_full(const HoweOp& op, int N, int m, const FieldSpec& spec);
/// The same operator from the dot-diagram action with reading signs.
SparseMat assemble_dot(const HoweOp& op, int N, int m, const FieldSpec& spec);

/// P:two-actions-agree at desk scale (guard: Nm <= 12).
bool actions_agree(int N, int m, const FieldSpec& spec);

/// P:actions-commute: ladder operators vs so_N derivations and sigma.
bool commutant_check(int N, int m, const FieldSpec& spec);

/// Weyl dimension formula for type D_m at the so-weight of K.
mpz_class weyl_dim_D(const Composition& K, int N);
/// sum of squared Weyl dimensions over dominant compositions.
mpz_class end_dim_prediction(int N, int m);

/// Rank over the field of the span of evaluated fmf diagrams of
/// End(⊕_K Lambda^K), summed over all (K, L) blocks.
long fmf_end_rank(int N, int m, const FieldSpec& spec);
/// Brute-force commutant dimension of the so_N + sigma action on the full
/// space (characteristic 0 fields only).
long commutant_end_dim(int N, int m, const FieldSpec& spec);

/// dim Hom_{O(N)}(Lambda^K, Lambda^L) by solving the intertwiner equations
/// for the so_N derivations plus sigma (characteristic 0).
long hom_commutant_dim(const Word& K, const Word& L, int N, const FieldSpec& spec);
/// Same for gl_N (all matrix units as derivations, no sigma).
long gl_hom_commutant_dim(const Word& K, const Word& L, int N, const FieldSpec& spec);

/// Operators of so_N + sigma on Lambda^K (tensor products of derivations /
/// power matrices), used by the oracles above.
std::vector<SparseMat> orthogonal_ops_on_block(const Word& K, int N, const FieldSpec& spec);

}  // namespace oweb
