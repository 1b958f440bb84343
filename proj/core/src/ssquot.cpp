#include "oweb/ssquot.hpp"

#include <stdexcept>

namespace oweb {

HomSpace hom_space(const Word& K, const Word& L, int N, const FieldSpec& spec) {
  HomSpace hs;
  hs.K = drop_zeros(K);
  hs.L = drop_zeros(L);
  hs.family = enumerate_fmf(hs.K, hs.L);
  EchelonSpan span(spec);
  for (size_t i = 0; i < hs.family.size(); ++i) {
    SparseMat m = evaluate(hs.family[i], N, spec);
    if (span.add(m.flatten())) {
      hs.basis.push_back(static_cast<int>(i));
      hs.basis_mats.push_back(std::move(m));
    }
  }
  return hs;
}

Scalar categorical_trace(const WebMorphism& f, int N, const FieldSpec& spec) {
  if (f.source != f.target)
    throw std::invalid_argument("categorical_trace: not an endomorphism");
  return evaluate(f, N, spec).trace();
}

std::vector<std::vector<Scalar>> gram_matrix(const Word& K, const Word& L, int N,
                                             const FieldSpec& spec) {
  HomSpace kl = hom_space(K, L, N, spec);
  HomSpace lk = hom_space(L, K, N, spec);
  std::vector<std::vector<Scalar>> G;
  for (const auto& mf : kl.basis_mats) {
    std::vector<Scalar> row;
    for (const auto& mg : lk.basis_mats) row.push_back((mg * mf).trace());
    G.push_back(std::move(row));
  }
  return G;
}

int ss_hom_dim(const Word& K, const Word& L, int N, const FieldSpec& spec) {
  auto G = gram_matrix(K, L, N, spec);
  return rank_of_rows(G, spec);
}

bool merge_split_negligibility(int a, int b, int i, long p, int N) {
  if (a <= 0 || b <= 0) throw std::invalid_argument("merge_split_negligibility: a, b > 0");
  long t = 1;
  for (int q = 0; q < i; ++q) t *= p;
  if (a + b != t) throw std::invalid_argument("merge_split_negligibility: a + b != p^i");
  FieldSpec spec = FieldSpec::prime(p);
  int tt = static_cast<int>(t);
  // merge: (a,b) -> (t); pair against Hom((t), (a,b))
  WebDiagram merge = WebDiagram::make({a, b}, {{SliceKind::Merge, 0, a, b}});
  SparseMat mmat = evaluate(merge, N, spec);
  for (const auto& g : enumerate_fmf({tt}, {a, b})) {
    Scalar tr = (mmat * evaluate(g, N, spec)).trace();
    if (!tr.is_zero()) return false;
  }
  // split: (t) -> (a,b); pair against Hom((a,b), (t))
  WebDiagram split = WebDiagram::make({tt}, {{SliceKind::Split, 0, a, b}});
  SparseMat smat = evaluate(split, N, spec);
  for (const auto& g : enumerate_fmf({a, b}, {tt})) {
    Scalar tr = (smat * evaluate(g, N, spec)).trace();
    if (!tr.is_zero()) return false;
  }
  return true;
}

bool verlinde_crosscheck(const std::vector<int>& word1, const std::vector<int>& word2, long p,
                         int N) {
  FieldSpec spec = FieldSpec::prime(p);
  auto digits = p_adic_digits(N, p).digits;
  // web side: strands of thickness p^{c}
  auto labels_of = [&](const std::vector<int>& w) {
    Word out;
    for (int c : w) {
      long t = 1;
      for (int q = 0; q < c; ++q) t *= p;
      out.push_back(static_cast<int>(t));
    }
    return out;
  };
  int web_rank = ss_hom_dim(labels_of(word1), labels_of(word2), N, spec);
  // Brauer side with loop parameters d_c = N_c
  int max_color = 0;
  for (int c : word1) max_color = std::max(max_color, c);
  for (int c : word2) max_color = std::max(max_color, c);
  LoopParams params;
  for (int c = 0; c <= max_color; ++c) {
    int digit = c < static_cast<int>(digits.size()) ? digits[c] : 0;
    params.d.push_back(Scalar(spec, digit));
  }
  auto G = brauer_gram(word1, word2, params);
  int brauer_rank = rank_of_rows(G, spec);
  return web_rank == brauer_rank;
}

}  // namespace oweb
