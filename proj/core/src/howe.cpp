#include "oweb/howe.hpp"

#include <bit>
#include <stdexcept>

namespace oweb {

namespace {

LadderKind ladder_kind(const HoweOp& op, int m) {
  if (op.node < m) return op.kind == 'e' ? LadderKind::E : LadderKind::F;
  return op.kind == 'e' ? LadderKind::Efish : LadderKind::Ffish;
}

int ladder_pair(const HoweOp& op, int m) { return op.node < m ? op.node : m - 1; }

uint64_t mask_from_tuple(const std::vector<Subset>& cols, int N) {
  uint64_t mask = 0;
  for (size_t j = 0; j < cols.size(); ++j)
    mask |= static_cast<uint64_t>(cols[j]) << (j * N);
  return mask;
}

std::vector<Subset> tuple_from_mask(uint64_t mask, int N, int m) {
  std::vector<Subset> cols(m);
  for (int j = 0; j < m; ++j)
    cols[j] = static_cast<Subset>((mask >> (j * N)) & ((1u << N) - 1u));
  return cols;
}

}  // namespace

LinearCombo dot_action(const HoweOp& op, const BoxSubset& S, const FieldSpec& spec) {
  LinearCombo out(spec);
  int N = S.N, m = S.m;
  if (op.node >= m && m < 2) throw std::invalid_argument("dot_action: fishtail needs m >= 2");
  if (op.kind == 'h') {
    Composition K = column_weight(S);
    long val = op.node < m ? K[op.node - 1] - K[op.node] : K[m - 2] + K[m - 1] - N;
    out.add(S.cells, Scalar(spec, val));
    return out;
  }
  if (op.power != 1)
    throw std::invalid_argument("dot_action: Chevalley generators only (power 1)");
  int j = op.node;
  if (op.kind == 'e' && j < m) {
    for (int i = 1; i <= N; ++i)
      if (S.contains(i, j + 1) && !S.contains(i, j))
        out.add(S.without(i, j + 1).with(i, j).cells, Scalar::one(spec));
  } else if (op.kind == 'f' && j < m) {
    for (int i = 1; i <= N; ++i)
      if (S.contains(i, j) && !S.contains(i, j + 1))
        out.add(S.without(i, j).with(i, j + 1).cells, Scalar::one(spec));
  } else if (op.kind == 'e') {
    for (int i = 1; i <= N; ++i)
      if (!S.contains(i, m - 1) && !S.contains(i, m))
        out.add(S.with(i, m - 1).with(i, m).cells, Scalar::one(spec));
  } else {
    for (int i = 1; i <= N; ++i)
      if (S.contains(i, m - 1) && S.contains(i, m))
        out.add(S.without(i, m - 1).without(i, m).cells, Scalar::one(spec));
  }
  return out;
}

std::optional<Composition> shifted_weight(const HoweOp& op, const Composition& K) {
  Composition out = K;
  int m = static_cast<int>(K.size());
  int a = op.power;
  if (op.kind == 'h') return out;
  if (op.node < m) {
    int d = op.kind == 'e' ? a : -a;
    out[op.node - 1] += d;
    out[op.node] -= d;
  } else {
    int d = op.kind == 'e' ? a : -a;
    out[m - 2] += d;
    out[m - 1] += d;
  }
  for (int v : out)
    if (v < 0) return std::nullopt;
  return out;
}

std::optional<SparseMat> ladder_matrix(const HoweOp& op, const Composition& K, int N,
                                       const FieldSpec& spec) {
  int m = static_cast<int>(K.size());
  if (op.node >= m && m < 2)
    throw std::invalid_argument("ladder_matrix: fishtail needs m >= 2");
  Word Kw(K.begin(), K.end());
  if (op.kind == 'h') {
    TensorBasis basis(N, Kw);
    long val = op.node < m ? K[op.node - 1] - K[op.node] : K[m - 2] + K[m - 1] - N;
    return SparseMat::identity(static_cast<int>(basis.dim), spec).scaled(Scalar(spec, val));
  }
  auto d = try_ladder(ladder_kind(op, m), op.power, ladder_pair(op, m), Kw);
  if (!d) return std::nullopt;
  return evaluate(*d, N, spec);
}

SparseMat assemble_full(const HoweOp& op, int N, int m, const FieldSpec& spec) {
  int dim = 1 << (N * m);
  SparseMat out(dim, dim, spec);
  for (const auto& K : all_compositions(m, N)) {
    auto mat = ladder_matrix(op, K, N, spec);
    if (!mat) continue;
    auto K2 = shifted_weight(op, K);
    if (!K2) continue;
    bool in_range = true;
    for (int v : *K2)
      if (v > N) in_range = false;
    if (!in_range) continue;  // zero-dimensional target block
    Word Kw(K.begin(), K.end()), K2w(K2->begin(), K2->end());
    TensorBasis src(N, Kw), tgt(N, K2w);
    for (long c = 0; c < src.dim; ++c) {
      uint64_t cmask = mask_from_tuple(src.tuple(c), N);
      for (const auto& [r, v] : mat->column(static_cast<int>(c))) {
        uint64_t rmask = mask_from_tuple(tgt.tuple(r), N);
        out.add_to(static_cast<int>(rmask), static_cast<int>(cmask), v);
      }
    }
  }
  return out;
}

SparseMat assemble_dot(const HoweOp& op, int N, int m, const FieldSpec& spec) {
  int dim = 1 << (N * m);
  SparseMat out(dim, dim, spec);
  for (uint64_t mask = 0; mask < static_cast<uint64_t>(dim); ++mask) {
    BoxSubset S{N, m, mask};
    int sgnS = reading_sign(S);
    LinearCombo terms = dot_action(op, S, spec);
    for (const auto& [mask2, c] : terms.terms) {
      BoxSubset S2{N, m, mask2};
      int sgn = sgnS * reading_sign(S2);
      out.add_to(static_cast<int>(mask2), static_cast<int>(mask),
                 sgn < 0 ? -c : c);
    }
  }
  return out;
}

bool actions_agree(int N, int m, const FieldSpec& spec) {
  if (N * m > 12) throw std::invalid_argument("actions_agree: guard Nm <= 12");
  if (m < 2) return true;  // so_2: no Chevalley pairs to compare
  std::vector<HoweOp> gens;
  for (int j = 1; j <= m; ++j) {
    gens.push_back({'e', j, 1});
    gens.push_back({'f', j, 1});
    gens.push_back({'h', j, 1});
  }
  for (const auto& op : gens)
    if (!(assemble_full(op, N, m, spec) == assemble_dot(op, N, m, spec))) return false;
  return true;
}

bool commutant_check(int N, int m, const FieldSpec& spec) {
  if (m < 2) return true;
  std::vector<SparseMat> ladders;
  for (int j = 1; j <= m; ++j) {
    ladders.push_back(assemble_full({'e', j, 1}, N, m, spec));
    ladders.push_back(assemble_full({'f', j, 1}, N, m, spec));
  }
  auto orth = so_box_operators(N, m, spec, /*with_sigma=*/true);
  for (const auto& L : ladders)
    for (const auto& G : orth)
      if (!(L * G == G * L)) return false;
  return true;
}

mpz_class weyl_dim_D(const Composition& K, int N) {
  int m = static_cast<int>(K.size());
  if (!is_dominant(K, N)) throw std::invalid_argument("weyl_dim_D: K not dominant");
  // doubled coordinates L_i = A_i + 2(m-i), A_i = 2K_i - N
  std::vector<long> L(m), R(m);
  for (int i = 0; i < m; ++i) {
    L[i] = (2l * K[i] - N) + 2l * (m - 1 - i);
    R[i] = 2l * (m - 1 - i);
  }
  mpq_class dim = 1;
  for (int i = 0; i < m; ++i)
    for (int j = i + 1; j < m; ++j) {
      mpq_class num(L[i] * L[i] - L[j] * L[j]);
      mpq_class den(R[i] * R[i] - R[j] * R[j]);
      dim *= num / den;
    }
  dim.canonicalize();
  if (dim.get_den() != 1) throw std::logic_error("weyl_dim_D: non-integral value");
  return dim.get_num();
}

mpz_class end_dim_prediction(int N, int m) {
  mpz_class total = 0;
  for (const auto& K : dominant_compositions(m, N)) {
    mpz_class d = weyl_dim_D(K, N);
    total += d * d;
  }
  return total;
}

long fmf_end_rank(int N, int m, const FieldSpec& spec) {
  long total = 0;
  auto comps = all_compositions(m, N);
  for (const auto& K : comps)
    for (const auto& L : comps) {
      Word Kw(K.begin(), K.end()), Lw(L.begin(), L.end());
      EchelonSpan span(spec);
      for (const auto& d : enumerate_fmf(Kw, Lw)) span.add(evaluate(d, N, spec).flatten());
      total += span.rank();
    }
  return total;
}

long commutant_end_dim(int N, int m, const FieldSpec& spec) {
  if (spec.characteristic != 0)
    throw std::invalid_argument("commutant_end_dim: characteristic 0 only");
  auto ops = so_box_operators(N, m, spec, /*with_sigma=*/true);
  int dim = 1 << (N * m);
  return intertwiner_space_dim(ops, ops, dim, dim, spec);
}

std::vector<SparseMat> orthogonal_ops_on_block(const Word& K, int N, const FieldSpec& spec) {
  std::vector<SparseMat> out;
  TensorBasis basis(N, K);
  auto lift_derivation = [&](const SparseMat& g) {
    SparseMat total(static_cast<int>(basis.dim), static_cast<int>(basis.dim), spec);
    for (size_t i = 0; i < K.size(); ++i) {
      SparseMat piece = derivation_on_power(g, N, K[i]);
      SparseMat acc = SparseMat::identity(1, spec);
      for (size_t j = 0; j < K.size(); ++j) {
        if (j == i)
          acc = acc.kron(piece);
        else
          acc = acc.kron(SparseMat::identity(static_cast<int>(binom_z(N, K[j]).get_si()), spec));
      }
      total = total + acc;
    }
    return total;
  };
  for (const auto& g : so_basis(N, spec)) out.push_back(lift_derivation(g));
  // sigma acts multiplicatively
  SparseMat sig = sigma_v_matrix(N, spec);
  SparseMat acc = SparseMat::identity(1, spec);
  for (size_t j = 0; j < K.size(); ++j) acc = acc.kron(power_matrix(sig, N, K[j]));
  out.push_back(acc);
  return out;
}

long hom_commutant_dim(const Word& K, const Word& L, int N, const FieldSpec& spec) {
  TensorBasis kb(N, K), lb(N, L);
  auto src_ops = orthogonal_ops_on_block(K, N, spec);
  auto tgt_ops = orthogonal_ops_on_block(L, N, spec);
  return intertwiner_space_dim(tgt_ops, src_ops, static_cast<int>(lb.dim),
                               static_cast<int>(kb.dim), spec);
}

namespace {

std::vector<SparseMat> gl_ops_on_block(const Word& K, int N, const FieldSpec& spec) {
  std::vector<SparseMat> out;
  TensorBasis basis(N, K);
  for (int r = 0; r < N; ++r)
    for (int c = 0; c < N; ++c) {
      SparseMat g(N, N, spec);
      g.set(r, c, Scalar::one(spec));
      SparseMat total(static_cast<int>(basis.dim), static_cast<int>(basis.dim), spec);
      for (size_t i = 0; i < K.size(); ++i) {
        SparseMat piece = derivation_on_power(g, N, K[i]);
        SparseMat acc = SparseMat::identity(1, spec);
        for (size_t j = 0; j < K.size(); ++j) {
          if (j == i)
            acc = acc.kron(piece);
          else
            acc = acc.kron(
                SparseMat::identity(static_cast<int>(binom_z(N, K[j]).get_si()), spec));
        }
        total = total + acc;
      }
      out.push_back(total);
    }
  return out;
}

}  // namespace

long gl_hom_commutant_dim(const Word& K, const Word& L, int N, const FieldSpec& spec) {
  TensorBasis kb(N, K), lb(N, L);
  auto src_ops = gl_ops_on_block(K, N, spec);
  auto tgt_ops = gl_ops_on_block(L, N, spec);
  return intertwiner_space_dim(tgt_ops, src_ops, static_cast<int>(lb.dim),
                               static_cast<int>(kb.dim), spec);
}

}  // namespace oweb
