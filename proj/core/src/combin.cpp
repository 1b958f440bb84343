#include "oweb/combin.hpp"

#include <algorithm>
#include <bit>
#include <stdexcept>

namespace oweb {

int interleave_length(Subset T, Subset U) {
  if (T & U) throw std::invalid_argument("interleave_length: sets overlap");
  int inv = 0;
  for (int t = 0; t < 32; ++t) {
    if (!((T >> t) & 1)) continue;
    // inversions = pairs (t, u) with u in U strictly below t
    inv += std::popcount(U & ((t == 0) ? 0u : ((1u << t) - 1u)));
  }
  return inv;
}

int interleave_length(const std::vector<int>& T, const std::vector<int>& U) {
  int inv = 0;
  for (int t : T)
    for (int u : U) {
      if (t == u) throw std::invalid_argument("interleave_length: sets overlap");
      if (t > u) ++inv;
    }
  return inv;
}

std::vector<int> subset_elements(Subset s) {
  std::vector<int> out;
  for (int i = 0; i < 32; ++i)
    if ((s >> i) & 1) out.push_back(i);
  return out;
}

Subset subset_from(const std::vector<int>& elems) {
  Subset s = 0;
  for (int e : elems) s |= (1u << e);
  return s;
}

int colex_rank(Subset s) {
  int rank = 0, idx = 0;
  for (int e = 0; e < 32; ++e) {
    if ((s >> e) & 1) {
      rank += static_cast<int>(binom_z(e, idx + 1).get_si());
      ++idx;
    }
  }
  return rank;
}

Subset colex_unrank(int n_elems, int k, int rank) {
  Subset s = 0;
  for (int i = k; i >= 1; --i) {
    int e = i - 1;
    while (e + 1 <= n_elems - 1 && binom_z(e + 1, i).get_si() <= rank) ++e;
    s |= (1u << e);
    rank -= static_cast<int>(binom_z(e, i).get_si());
  }
  return s;
}

std::vector<Subset> all_subsets_of_size(int n, int k) {
  std::vector<Subset> out;
  if (k < 0 || k > n) return out;
  long count = binom_z(n, k).get_si();
  out.reserve(count);
  for (int r = 0; r < count; ++r) out.push_back(colex_unrank(n, k, r));
  return out;
}

bool SOWeight::is_dominant() const {
  size_t m = halves.size();
  for (size_t i = 0; i + 2 < m; ++i)
    if (halves[i] < halves[i + 1]) return false;
  if (m >= 2 && halves[m - 2] < std::abs(halves[m - 1])) return false;
  return true;
}

BoxSubset BoxSubset::with(int row, int col) const {
  BoxSubset r = *this;
  r.cells |= (uint64_t{1} << cell_bit(N, row, col));
  return r;
}

BoxSubset BoxSubset::without(int row, int col) const {
  BoxSubset r = *this;
  r.cells &= ~(uint64_t{1} << cell_bit(N, row, col));
  return r;
}

int BoxSubset::size() const { return std::popcount(cells); }

Subset BoxSubset::column(int j) const {
  Subset s = 0;
  for (int i = 1; i <= N; ++i)
    if (contains(i, j)) s |= (1u << (i - 1));
  return s;
}

Subset BoxSubset::row(int i) const {
  Subset s = 0;
  for (int j = 1; j <= m; ++j)
    if (contains(i, j)) s |= (1u << (j - 1));
  return s;
}

int reading_sign(const BoxSubset& S) {
  // count pairs c < c' in row-reading order that reverse in column-reading
  std::vector<std::pair<int, int>> cells;  // (row, col)
  for (int i = 1; i <= S.N; ++i)
    for (int j = 1; j <= S.m; ++j)
      if (S.contains(i, j)) cells.emplace_back(i, j);
  int inv = 0;
  for (size_t a = 0; a < cells.size(); ++a)
    for (size_t b = 0; b < cells.size(); ++b) {
      if (a == b) continue;
      auto [ia, ja] = cells[a];
      auto [ib, jb] = cells[b];
      bool h_lt = (ia < ib) || (ia == ib && ja < jb);
      bool v_lt = (ja < jb) || (ja == jb && ia < ib);
      if (h_lt && !v_lt) ++inv;
    }
  return inv % 2 == 0 ? 1 : -1;
}

Composition column_weight(const BoxSubset& S) {
  Composition K(S.m, 0);
  for (int j = 1; j <= S.m; ++j) K[j - 1] = std::popcount(S.column(j));
  return K;
}

SOWeight composition_to_so_weight(const Composition& K, int N) {
  SOWeight w;
  w.halves.reserve(K.size());
  for (int k : K) w.halves.push_back(2l * k - N);
  return w;
}

bool is_dominant(const Composition& K, int N) {
  return composition_to_so_weight(K, N).is_dominant();
}

bool is_antidominant(const Composition& K, int N) {
  // K_1-N/2 <= ... <= K_{m-1}-N/2 <= -|K_m-N/2|
  SOWeight v = composition_to_so_weight(K, N);
  size_t m = v.halves.size();
  for (size_t i = 0; i + 2 < m; ++i)
    if (v.halves[i] > v.halves[i + 1]) return false;
  if (m >= 2 && v.halves[m - 2] > -std::abs(v.halves[m - 1])) return false;
  return true;
}

bool so2m_leq(const SOWeight& a, const SOWeight& b) {
  if (a.halves.size() != b.halves.size()) throw std::invalid_argument("so2m_leq: rank mismatch");
  size_t m = a.halves.size();
  // delta in eps coordinates is (b-a)/2 entrywise; must be integral.
  std::vector<long> d(m);
  for (size_t i = 0; i < m; ++i) {
    long diff = b.halves[i] - a.halves[i];
    if (diff % 2 != 0) return false;
    d[i] = diff / 2;
  }
  long prefix = 0;
  for (size_t k = 0; k + 2 <= m; ++k) {  // k = 1..m-2 prefixes (0-based: first m-2)
    prefix += d[k];
    if (k + 2 < m && prefix < 0) return false;
  }
  // prefix now holds P_{m-1}
  long pm = prefix + d[m - 1];
  if (m >= 2) {
    if (pm < 0 || pm % 2 != 0) return false;
    if (prefix - pm / 2 < 0) return false;
  } else {
    if (pm != 0) return false;  // so_2 has no positive roots affecting order
  }
  return true;
}

Partition normalized(Partition p) {
  while (!p.empty() && p.back() == 0) p.pop_back();
  return p;
}

Partition transpose(const Partition& p) {
  Partition t;
  if (p.empty()) return t;
  for (long j = 1; j <= p[0]; ++j) {
    long cnt = 0;
    for (long r : p)
      if (r >= j) ++cnt;
    t.push_back(cnt);
  }
  return t;
}

bool dominance_leq(const Partition& a, const Partition& b) {
  // prefix-sum order; no total-size constraint (D:dom-order-on-partitions)
  long sa = 0, sb = 0;
  size_t n = std::max(a.size(), b.size());
  for (size_t i = 0; i < n; ++i) {
    sa += i < a.size() ? a[i] : 0;
    sb += i < b.size() ? b[i] : 0;
    if (sa > sb) return false;
  }
  return true;
}

OWeight OWeight::from_partition(Partition p, int N) {
  OWeight w;
  w.partition = normalized(std::move(p));
  w.N = N;
  Partition t = transpose(w.partition);
  long c1 = t.empty() ? 0 : t[0];
  long c2 = t.size() > 1 ? t[1] : 0;
  if (c1 + c2 > N) throw std::invalid_argument("not a dominant O(N)-weight");
  if (2 * c1 < N)
    w.epsilon = 1;
  else if (2 * c1 == N)
    w.epsilon = 0;
  else
    w.epsilon = -1;
  return w;
}

std::vector<long> OWeight::so_part() const {
  int n = N / 2;
  Partition y = partition;
  if (epsilon == -1) y = twist(*this).partition;  // Y(a) = lambda^tw
  std::vector<long> a(n, 0);
  for (size_t i = 0; i < y.size() && i < static_cast<size_t>(n); ++i) a[i] = y[i];
  return a;
}

OWeight twist(const OWeight& lam) {
  Partition t = transpose(lam.partition);
  long c1 = t.empty() ? 0 : t[0];
  Partition t2 = t;
  if (t2.empty())
    t2.push_back(lam.N - c1);
  else
    t2[0] = lam.N - c1;
  return OWeight::from_partition(transpose(normalized(std::move(t2))), lam.N);
}

namespace {

// a <= b in the root order of so_N on integer eps-coordinates.
bool soN_leq(const std::vector<long>& a, const std::vector<long>& b, int N) {
  size_t n = a.size();
  if (n == 0) return true;
  std::vector<long> d(n);
  for (size_t i = 0; i < n; ++i) d[i] = b[i] - a[i];
  if (N % 2 == 1) {  // type B_n: all prefix sums >= 0
    long s = 0;
    for (size_t i = 0; i < n; ++i) {
      s += d[i];
      if (s < 0) return false;
    }
    return true;
  }
  // type D_n
  long prefix = 0;
  for (size_t k = 0; k + 2 <= n; ++k) {
    prefix += d[k];
    if (k + 2 < n && prefix < 0) return false;
  }
  long pn = prefix + d[n - 1];
  if (n >= 2) {
    if (pn < 0 || pn % 2 != 0) return false;
    if (prefix - pn / 2 < 0) return false;
  } else {
    if (pn != 0) return false;
  }
  return true;
}

std::vector<long> sigma_flip(std::vector<long> a, int N) {
  if (N % 2 == 0 && !a.empty()) a.back() = -a.back();
  return a;
}

}  // namespace

bool o_less(const OWeight& lam, const OWeight& mu) {
  if (lam.N != mu.N) throw std::invalid_argument("o_less: different N");
  std::vector<long> a = lam.so_part();
  std::vector<long> b = mu.so_part();
  auto strictly = [&](const std::vector<long>& x, const std::vector<long>& y) {
    return x != y && soN_leq(x, y, lam.N);
  };
  if (strictly(a, b)) return true;
  if (strictly(a, sigma_flip(b, lam.N))) return true;
  return false;
}

Composition dagger(const OWeight& lam, int m) {
  int N = lam.N;
  int n = N / 2;
  if (!lam.partition.empty() && lam.partition[0] > m)
    throw std::invalid_argument("dagger: partition does not fit the N x m box");
  std::vector<long> a = lam.so_part();  // n entries, a_n >= 0
  // Y(a) fits the n x m box; complement-transpose.
  Partition comp;
  for (int i = 0; i < n; ++i) comp.push_back(m - a[n - 1 - i]);
  Partition yct = transpose(normalized(std::move(comp)));
  int eps = lam.epsilon;
  if (m % 2 == 1) eps = -eps;
  // Rebuild halves from the Young diagram + sign, parity of N.
  std::vector<long> R(m, 0);
  for (size_t i = 0; i < yct.size() && i < static_cast<size_t>(m); ++i) R[i] = yct[i];
  int parity = N % 2;
  std::vector<long> A(m);
  for (int i = 0; i < m; ++i) A[i] = 2 * R[i] + parity;
  if (A[m - 1] != 0) {
    if (eps == 0) throw std::logic_error("dagger: sign/diagram mismatch");
    A[m - 1] *= eps;
  }
  Composition K(m);
  for (int i = 0; i < m; ++i) K[i] = static_cast<int>((A[i] + N) / 2);
  return K;
}

std::vector<Composition> all_compositions(int m, int N) {
  std::vector<Composition> out;
  Composition cur(m, 0);
  while (true) {
    out.push_back(cur);
    int i = m - 1;
    while (i >= 0 && cur[i] == N) {
      cur[i] = 0;
      --i;
    }
    if (i < 0) break;
    ++cur[i];
  }
  return out;
}

std::vector<Composition> dominant_compositions(int m, int N) {
  std::vector<Composition> out;
  for (auto& K : all_compositions(m, N))
    if (is_dominant(K, N)) out.push_back(K);
  return out;
}

std::vector<OWeight> o_weights_in_box(int N, int m) {
  // enumerate partitions in the N x m box
  std::vector<OWeight> out;
  std::vector<long> rows(N, 0);
  // iterate weakly decreasing sequences 0 <= rows_i <= m
  auto rec = [&](auto&& self, int idx, long maxv, Partition& acc) -> void {
    if (idx == N) {
      Partition p = normalized(acc);
      Partition t = transpose(p);
      long c1 = t.empty() ? 0 : t[0];
      long c2 = t.size() > 1 ? t[1] : 0;
      if (c1 + c2 <= N) out.push_back(OWeight::from_partition(p, N));
      return;
    }
    for (long v = 0; v <= maxv; ++v) {
      acc.push_back(v);
      self(self, idx + 1, v, acc);
      acc.pop_back();
    }
  };
  Partition acc;
  rec(rec, 0, m, acc);
  // dedupe (normalization can collide across padded sequences)
  std::sort(out.begin(), out.end(), [](const OWeight& x, const OWeight& y) {
    return x.partition < y.partition;
  });
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

long PAdicDigits::value() const {
  long v = 0, q = 1;
  for (int d : digits) {
    v += d * q;
    q *= p;
  }
  return v;
}

PAdicDigits p_adic_digits(long n, long p) {
  if (p < 2) throw std::invalid_argument("p_adic_digits: p must be >= 2");
  PAdicDigits out;
  out.p = p;
  if (n == 0) out.digits.push_back(0);
  while (n > 0) {
    out.digits.push_back(static_cast<int>(n % p));
    n /= p;
  }
  return out;
}

bool leq_p(long x, long y, long p) {
  auto dx = p_adic_digits(x, p).digits;
  auto dy = p_adic_digits(y, p).digits;
  dx.resize(std::max(dx.size(), dy.size()), 0);
  dy.resize(dx.size(), 0);
  for (size_t i = 0; i < dx.size(); ++i)
    if (dx[i] > dy[i]) return false;
  return true;
}

}  // namespace oweb
