#include "oweb/exterior.hpp"

#include <bit>
#include <stdexcept>

namespace oweb {

void LinearCombo::add(uint64_t mask, const Scalar& c) {
  if (c.is_zero()) return;
  auto it = terms.find(mask);
  if (it == terms.end()) {
    terms.emplace(mask, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

bool LinearCombo::operator==(const LinearCombo& o) const {
  return (*this - o).is_zero();
}

LinearCombo LinearCombo::operator+(const LinearCombo& o) const {
  LinearCombo r = *this;
  for (const auto& [m, c] : o.terms) r.add(m, c);
  return r;
}

LinearCombo LinearCombo::operator-(const LinearCombo& o) const {
  LinearCombo r = *this;
  for (const auto& [m, c] : o.terms) r.add(m, -c);
  return r;
}

LinearCombo LinearCombo::scaled(const Scalar& c) const {
  LinearCombo r(spec);
  for (const auto& [m, v] : terms) r.add(m, v * c);
  return r;
}

std::pair<Subset, int> clifford_x(int i, Subset S) {
  Subset bit = 1u << (i - 1);
  if (S & bit) return {S, 0};
  int below = std::popcount(S & (bit - 1));
  return {S | bit, below % 2 == 0 ? 1 : -1};
}

std::pair<Subset, int> clifford_del(int i, Subset S) {
  Subset bit = 1u << (i - 1);
  if (!(S & bit)) return {S, 0};
  int below = std::popcount(S & (bit - 1));
  return {S & ~bit, below % 2 == 0 ? 1 : -1};
}

bool leibniz_check(int i, int j, int m) {
  for (Subset S = 0; S < (1u << m); ++S) {
    // x_i del_j + del_j x_i applied to S, collected as (mask -> coeff)
    std::map<Subset, int> acc;
    auto apply2 = [&](bool del_first, int sgn_mult) {
      Subset cur = S;
      int sign = 1;
      auto [m1, s1] = del_first ? clifford_del(j, cur) : clifford_x(i, cur);
      if (s1 == 0) return;
      sign *= s1;
      auto [m2, s2] = del_first ? clifford_x(i, m1) : clifford_del(j, m1);
      if (s2 == 0) return;
      sign *= s2;
      acc[m2] += sign * sgn_mult;
    };
    apply2(true, 1);
    apply2(false, 1);
    for (auto& [mask, coeff] : acc) {
      int expect = (mask == S && i == j) ? 1 : 0;
      if (mask == S) {
        if (coeff != expect) return false;
      } else if (coeff != 0) {
        return false;
      }
    }
    if (i == j && acc[S] != 1) return false;
  }
  return true;
}

std::vector<Subset> phi_h(const BoxSubset& S) {
  std::vector<Subset> rows;
  rows.reserve(S.N);
  for (int i = 1; i <= S.N; ++i) rows.push_back(S.row(i));
  return rows;
}

std::vector<Subset> phi_v(const BoxSubset& S) {
  std::vector<Subset> cols;
  cols.reserve(S.m);
  for (int j = 1; j <= S.m; ++j) cols.push_back(S.column(j));
  return cols;
}

std::pair<uint64_t, int> wedge_masks(uint64_t a, uint64_t b) {
  if (a & b) return {0, 0};
  // inversions between a (left factor) and b: pairs (s in a, t in b, s > t)
  int inv = 0;
  for (int s = 0; s < 64; ++s) {
    if (!((a >> s) & 1)) continue;
    inv += std::popcount(b & ((s == 0) ? uint64_t{0} : ((uint64_t{1} << s) - 1)));
  }
  return {a | b, inv % 2 == 0 ? 1 : -1};
}

LinearCombo wedge(const LinearCombo& a, const LinearCombo& b) {
  LinearCombo r(a.spec);
  for (const auto& [ma, ca] : a.terms)
    for (const auto& [mb, cb] : b.terms) {
      auto [m, s] = wedge_masks(ma, mb);
      if (s == 0) continue;
      Scalar c = ca * cb;
      if (s < 0) c = -c;
      r.add(m, c);
    }
  return r;
}

namespace {

// Sign for replacing cell bit `from` by bit `to` inside mask (from in mask,
// to not in mask): parity of occupied cells strictly between them.
int move_sign(uint64_t mask, int from, int to) {
  int lo = std::min(from, to), hi = std::max(from, to);
  uint64_t between = mask & ~(uint64_t{1} << from);
  uint64_t window = ((hi - lo) <= 1)
                        ? 0
                        : (((uint64_t{1} << (hi - lo - 1)) - 1) << (lo + 1));
  return std::popcount(between & window) % 2 == 0 ? 1 : -1;
}

}  // namespace

SparseMat derivation_on_box(const SparseMat& g, int N, int m) {
  const FieldSpec& spec = g.spec();
  int dim = 1 << (N * m);
  SparseMat out(dim, dim, spec);
  for (uint64_t S = 0; S < static_cast<uint64_t>(dim); ++S) {
    for (int bit = 0; bit < N * m; ++bit) {
      if (!((S >> bit) & 1)) continue;
      int col = bit / N, row = bit % N;  // 0-based
      for (int row2 = 0; row2 < N; ++row2) {
        Scalar coeff = g.get(row2, row);
        if (coeff.is_zero()) continue;
        if (row2 == row) {
          out.add_to(static_cast<int>(S), static_cast<int>(S), coeff);
          continue;
        }
        int bit2 = col * N + row2;
        if ((S >> bit2) & 1) continue;
        uint64_t S2 = (S & ~(uint64_t{1} << bit)) | (uint64_t{1} << bit2);
        int sgn = move_sign(S, bit, bit2);
        out.add_to(static_cast<int>(S2), static_cast<int>(S),
                   sgn < 0 ? -coeff : coeff);
      }
    }
  }
  return out;
}

SparseMat derivation_on_power(const SparseMat& g, int N, int k) {
  const FieldSpec& spec = g.spec();
  auto basis = all_subsets_of_size(N, k);
  int dim = static_cast<int>(basis.size());
  SparseMat out(dim, dim, spec);
  for (int idx = 0; idx < dim; ++idx) {
    Subset S = basis[idx];
    for (int r = 0; r < N; ++r) {
      if (!((S >> r) & 1)) continue;
      for (int r2 = 0; r2 < N; ++r2) {
        Scalar coeff = g.get(r2, r);
        if (coeff.is_zero()) continue;
        if (r2 == r) {
          out.add_to(idx, idx, coeff);
          continue;
        }
        if ((S >> r2) & 1) continue;
        Subset S2 = (S & ~(1u << r)) | (1u << r2);
        int sgn = move_sign(S, r, r2);
        out.add_to(colex_rank(S2), idx, sgn < 0 ? -coeff : coeff);
      }
    }
  }
  return out;
}

SparseMat power_matrix(const SparseMat& g, int N, int k) {
  const FieldSpec& spec = g.spec();
  auto basis = all_subsets_of_size(N, k);
  int dim = static_cast<int>(basis.size());
  SparseMat out(dim, dim, spec);
  for (int idx = 0; idx < dim; ++idx) {
    auto elems = subset_elements(basis[idx]);
    // expand g v_{t1} ^ ... ^ g v_{tk} via repeated wedging
    LinearCombo acc(spec);
    acc.add(0, Scalar::one(spec));
    for (int t : elems) {
      LinearCombo factor(spec);
      for (int r2 = 0; r2 < N; ++r2) {
        Scalar c = g.get(r2, t);
        if (!c.is_zero()) factor.add(uint64_t{1} << r2, c);
      }
      acc = wedge(acc, factor);
    }
    for (const auto& [mask, c] : acc.terms)
      out.add_to(colex_rank(static_cast<Subset>(mask)), idx, c);
  }
  return out;
}

SparseMat so_generator_matrix(int i, int j, int N, const FieldSpec& spec) {
  if (!(1 <= i && i < j && j <= N)) throw std::invalid_argument("so_generator_matrix: need i<j");
  // E_ij - E_ji: v_j -> v_i, v_i -> -v_j. Column r holds the image of v_{r+1}.
  SparseMat h(N, N, spec);
  h.set(i - 1, j - 1, Scalar::one(spec));
  h.set(j - 1, i - 1, -Scalar::one(spec));
  return h;
}

std::vector<SparseMat> so_basis(int N, const FieldSpec& spec) {
  std::vector<SparseMat> out;
  for (int i = 1; i <= N; ++i)
    for (int j = i + 1; j <= N; ++j) out.push_back(so_generator_matrix(i, j, N, spec));
  return out;
}

int sigma_reflection_index(int N) { return N % 2 == 1 ? N / 2 + 1 : N; }

SparseMat sigma_v_matrix(int N, const FieldSpec& spec) {
  SparseMat g(N, N, spec);
  int neg = sigma_reflection_index(N);
  for (int r = 1; r <= N; ++r)
    g.set(r - 1, r - 1, Scalar(spec, r == neg ? -1 : 1));
  return g;
}

std::vector<SparseMat> so_box_operators(int N, int m, const FieldSpec& spec, bool with_sigma) {
  std::vector<SparseMat> ops;
  for (const auto& g : so_basis(N, spec)) ops.push_back(derivation_on_box(g, N, m));
  if (with_sigma) {
    // multiplicative extension of the diagonal reflection: diagonal matrix
    int dim = 1 << (N * m);
    SparseMat s(dim, dim, spec);
    int neg = sigma_reflection_index(N) - 1;  // 0-based row
    for (uint64_t S = 0; S < static_cast<uint64_t>(dim); ++S) {
      int cnt = 0;
      for (int col = 0; col < m; ++col)
        if ((S >> (col * N + neg)) & 1) ++cnt;
      s.set(static_cast<int>(S), static_cast<int>(S), Scalar(spec, cnt % 2 == 0 ? 1 : -1));
    }
    ops.push_back(s);
  }
  return ops;
}

SparseMat abu_change_of_basis(int N, const FieldSpec& spec) {
  if (!spec.has_i()) throw std::domain_error("abu basis needs sqrt(-1) in the field");
  Scalar i = sqrt_minus_one(spec);
  Scalar one = Scalar::one(spec);
  Scalar half = one / Scalar(spec, 2);
  int n = N / 2;
  SparseMat A(N, N, spec);
  for (int r = 1; r <= N; ++r) {
    if (r <= n) {
      // a_r = v_r - i v_{N-r+1}
      A.set(r - 1, r - 1, one);
      A.set(N - r, r - 1, -i);
    } else if (N % 2 == 1 && r == n + 1) {
      A.set(r - 1, r - 1, one);  // u = v_{n+1}
    } else {
      // row r corresponds to b_{N-r+1} = (v_{N-r+1} + i v_r)/2
      int idx = N - r + 1;
      A.set(idx - 1, r - 1, half);
      A.set(r - 1, r - 1, i * half);
    }
  }
  return A;
}

LinearCombo z_vector(const BoxSubset& S, const FieldSpec& spec) {
  SparseMat A = abu_change_of_basis(S.N, spec);
  LinearCombo acc(spec);
  acc.add(0, Scalar::one(spec));
  // cells in column-reading order
  for (int j = 1; j <= S.m; ++j)
    for (int i = 1; i <= S.N; ++i) {
      if (!S.contains(i, j)) continue;
      LinearCombo factor(spec);
      for (const auto& [r2, c] : A.column(i - 1))
        factor.add(uint64_t{1} << ((j - 1) * S.N + r2), c);
      acc = wedge(acc, factor);
    }
  return acc;
}

std::vector<SparseMat> so_raising_operators(int N, const FieldSpec& spec) {
  std::vector<SparseMat> out;
  int n = N / 2;
  if (n == 0) return out;
  Scalar one = Scalar::one(spec);
  // Work in the abu basis, then conjugate into the v basis.
  // abu column order: index r-1 as in abu_change_of_basis (a_1..a_n, [u],
  // b_n..b_1 read through r = N-i+1).
  auto abu_index_a = [&](int i) { return i - 1; };
  auto abu_index_b = [&](int i) { return N - i; };  // r = N-i+1 -> r-1
  SparseMat A = abu_change_of_basis(N, spec);
  // inverse of A via Gaussian elimination on columns (N is tiny)
  // build dense inverse
  int dim = N;
  std::vector<std::vector<Scalar>> aug(dim, std::vector<Scalar>(2 * dim, Scalar::zero(spec)));
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) aug[r][c] = A.get(r, c);
  for (int r = 0; r < dim; ++r) aug[r][dim + r] = one;
  for (int c = 0; c < dim; ++c) {
    int piv = -1;
    for (int r = c; r < dim; ++r)
      if (!aug[r][c].is_zero()) {
        piv = r;
        break;
      }
    if (piv < 0) throw std::logic_error("abu matrix is singular");
    std::swap(aug[c], aug[piv]);
    Scalar inv = aug[c][c].inverse();
    for (int cc = 0; cc < 2 * dim; ++cc) aug[c][cc] *= inv;
    for (int r = 0; r < dim; ++r) {
      if (r == c || aug[r][c].is_zero()) continue;
      Scalar f = aug[r][c];
      for (int cc = 0; cc < 2 * dim; ++cc) aug[r][cc] -= f * aug[c][cc];
    }
  }
  SparseMat Ainv(dim, dim, spec);
  for (int r = 0; r < dim; ++r)
    for (int c = 0; c < dim; ++c) Ainv.set(r, c, aug[r][dim + c]);

  auto push = [&](const SparseMat& X_abu) {
    out.push_back(A * X_abu * Ainv);
  };

  // alpha_k = eps_k - eps_{k+1}: a_{k+1} -> a_k, b_k -> -b_{k+1}
  for (int k = 1; k + 1 <= n; ++k) {
    SparseMat X(N, N, spec);
    X.set(abu_index_a(k), abu_index_a(k + 1), one);
    X.set(abu_index_b(k + 1), abu_index_b(k), -one);
    push(X);
  }
  if (N % 2 == 1) {
    // type B last node alpha_n = eps_n: b_n -> u, u -> -a_n
    SparseMat X(N, N, spec);
    int u_idx = n;  // r = n+1 -> index n
    X.set(u_idx, abu_index_b(n), one);
    X.set(abu_index_a(n), u_idx, -one);
    push(X);
  } else if (n >= 2) {
    // type D last node alpha_n = eps_{n-1} + eps_n: b_n -> a_{n-1}, b_{n-1} -> -a_n
    SparseMat X(N, N, spec);
    X.set(abu_index_a(n - 1), abu_index_b(n), one);
    X.set(abu_index_a(n), abu_index_b(n - 1), -one);
    push(X);
  }
  return out;
}

}  // namespace oweb
