#pragma once

#include <vector>

#include "oweb/brauer.hpp"
#include "oweb/evalfun.hpp"

namespace oweb {

/// fmf spanning family of Hom(K, L) reduced to a basis of its evaluated span.
struct HomSpace {
  Word K, L;
  std::vector<WebDiagram> family;     // full fmf family
  std::vector<int> basis;             // indices into family
  std::vector<SparseMat> basis_mats;  // evaluated basis elements
  int rank() const { return static_cast<int>(basis.size()); }
};

HomSpace hom_space(const Word& K, const Word& L, int N, const FieldSpec& spec);

/// Categorical trace: evaluate the closure; equals the matrix trace of the
/// evaluation (pinned by a test).
Scalar categorical_trace(const WebMorphism& f, int N, const FieldSpec& spec);

/// Gram matrix tr(g o f) over reduced bases of Hom(K, L) and Hom(L, K).
std::vector<std::vector<Scalar>> gram_matrix(const Word& K, const Word& L, int N,
                                             const FieldSpec& spec);

/// Hom dimension in the semisimplification: rank of the Gram pairing.
int ss_hom_dim(const Word& K, const Word& L, int N, const FieldSpec& spec);

/// L:merge-split-negligible: merge/split between a (x) b and p^i are
/// negligible over F_p when a + b = p^i, a, b > 0.
bool merge_split_negligibility(int a, int b, int i, long p, int N);

/// T:O-ss dimension identity: web-side ss Hom rank between the exterior
/// powers p^{w} equals the colored Brauer Gram rank with d_i = N_i.
bool verlinde_crosscheck(const std::vector<int>& word1, const std::vector<int>& word2, long p,
                         int N);

}  // namespace oweb
