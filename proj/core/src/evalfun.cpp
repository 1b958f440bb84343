#include "oweb/evalfun.hpp"

#include <functional>
#include <mutex>
#include <shared_mutex>
#include <sstream>
#include <stdexcept>

namespace oweb {

TensorBasis::TensorBasis(int N_, const Word& labels_) : N(N_), labels(labels_) {
  for (int k : labels) {
    long d = (k < 0) ? 0 : binom_z(N, k).get_si();
    dims.push_back(d);
  }
  strides.assign(labels.size(), 1);
  for (int i = static_cast<int>(labels.size()) - 2; i >= 0; --i)
    strides[i] = strides[i + 1] * dims[i + 1];
  dim = labels.empty() ? 1 : strides[0] * dims[0];
}

long TensorBasis::rank(const std::vector<Subset>& tuple) const {
  long r = 0;
  for (size_t i = 0; i < tuple.size(); ++i) r += colex_rank(tuple[i]) * strides[i];
  return r;
}

std::vector<Subset> TensorBasis::tuple(long index) const {
  std::vector<Subset> out(labels.size());
  for (size_t i = 0; i < labels.size(); ++i) {
    long r = index / strides[i];
    index %= strides[i];
    out[i] = colex_unrank(N, labels[i], static_cast<int>(r));
  }
  return out;
}

namespace {

struct GenKey {
  int kind;
  int k, l, N;
  int64_t p;
  bool adj;
  auto operator<=>(const GenKey&) const = default;
};

std::map<GenKey, SparseMat> g_cache;
std::shared_mutex g_cache_mutex;

SparseMat merge_matrix(int k, int l, int N, const FieldSpec& spec) {
  auto rows = all_subsets_of_size(N, k + l);
  auto ts = all_subsets_of_size(N, k);
  auto us = all_subsets_of_size(N, l);
  SparseMat out(static_cast<int>(rows.size()), static_cast<int>(ts.size() * us.size()), spec);
  for (size_t ti = 0; ti < ts.size(); ++ti)
    for (size_t ui = 0; ui < us.size(); ++ui) {
      if (ts[ti] & us[ui]) continue;
      int sign = interleave_length(ts[ti], us[ui]) % 2 == 0 ? 1 : -1;
      out.set(colex_rank(ts[ti] | us[ui]), static_cast<int>(ti * us.size() + ui),
              Scalar(spec, sign));
    }
  return out;
}

SparseMat cap_matrix(int k, int N, const FieldSpec& spec) {
  auto ts = all_subsets_of_size(N, k);
  SparseMat out(1, static_cast<int>(ts.size() * ts.size()), spec);
  long b2 = (static_cast<long>(k) * (k - 1)) / 2;
  Scalar sign(spec, b2 % 2 == 0 ? 1 : -1);
  for (size_t ti = 0; ti < ts.size(); ++ti)
    out.set(0, static_cast<int>(ti * ts.size() + ti), sign);
  return out;
}

SparseMat cross_matrix(int k, int l, int N, const FieldSpec& spec) {
  auto ts = all_subsets_of_size(N, k);
  auto us = all_subsets_of_size(N, l);
  SparseMat out(static_cast<int>(ts.size() * us.size()),
                static_cast<int>(ts.size() * us.size()), spec);
  for (size_t ti = 0; ti < ts.size(); ++ti)
    for (size_t ui = 0; ui < us.size(); ++ui)
      out.set(static_cast<int>(ui * ts.size() + ti), static_cast<int>(ti * us.size() + ui),
              Scalar::one(spec));
  return out;
}

// I_left (x) G (x) I_right with dimensions dl, dr.
SparseMat embed(const SparseMat& G, long dl, long dr, const FieldSpec& spec) {
  SparseMat out(static_cast<int>(dl * G.rows() * dr), static_cast<int>(dl * G.cols() * dr),
                spec);
  for (long a = 0; a < dl; ++a)
    for (int c = 0; c < G.cols(); ++c)
      for (const auto& [r, v] : G.column(c))
        for (long b = 0; b < dr; ++b)
          out.set(static_cast<int>((a * G.rows() + r) * dr + b),
                  static_cast<int>((a * G.cols() + c) * dr + b), v);
  return out;
}

}  // namespace

SparseMat generator_matrix(const GeneratorSlice& s, int N, const FieldSpec& spec) {
  GenKey key{static_cast<int>(s.kind), s.k, s.l, N, spec.characteristic, spec.adjoin_i};
  {
    std::shared_lock lock(g_cache_mutex);
    auto it = g_cache.find(key);
    if (it != g_cache.end()) return it->second;
  }
  SparseMat m;
  switch (s.kind) {
    case SliceKind::Merge:
      m = merge_matrix(s.k, s.l, N, spec);
      break;
    case SliceKind::Split:
      m = merge_matrix(s.k, s.l, N, spec).transposed();
      break;
    case SliceKind::Cross:
      m = cross_matrix(s.k, s.l, N, spec);
      break;
    case SliceKind::Cap:
      m = cap_matrix(s.k, N, spec);
      break;
    case SliceKind::Cup:
      m = cap_matrix(s.k, N, spec).transposed();
      break;
  }
  std::unique_lock lock(g_cache_mutex);
  g_cache.emplace(key, m);
  return m;
}

SparseMat evaluate(const WebDiagram& d, int N, const FieldSpec& spec) {
  TensorBasis src(N, d.source);
  SparseMat M = SparseMat::identity(static_cast<int>(src.dim), spec);
  Word w = d.source;
  for (const auto& s : d.slices) {
    Word w2 = apply_slice(w, s);
    int affected = (s.kind == SliceKind::Cup) ? 0 : (s.kind == SliceKind::Split ? 1 : 2);
    Word left(w.begin(), w.begin() + s.pos);
    Word right(w.begin() + s.pos + affected, w.end());
    TensorBasis lb(N, left), rb(N, right);
    SparseMat G = generator_matrix(s, N, spec);
    M = embed(G, lb.dim, rb.dim, spec) * M;
    w = std::move(w2);
  }
  return M;
}

SparseMat evaluate(const WebMorphism& m, int N, const FieldSpec& spec) {
  TensorBasis src(N, m.source), tgt(N, m.target);
  SparseMat M(static_cast<int>(tgt.dim), static_cast<int>(src.dim), spec);
  for (const auto& [d, c] : m.terms) M = M + evaluate(d, N, spec).scaled(c);
  return M;
}

std::optional<WebDiagram> try_ladder(LadderKind kind, int a, int i, const Word& K) {
  try {
    return ladder(kind, a, i, K);
  } catch (const std::invalid_argument&) {
    return std::nullopt;
  }
}

// ---------------------------------------------------------------------------
// Relation suite
// ---------------------------------------------------------------------------

namespace {

using Checker = std::function<bool(const Params&, int, const FieldSpec&)>;
using InstanceGen = std::function<std::vector<Params>(int)>;

struct Relation {
  Checker check;
  InstanceGen instances;
};

WebMorphism mor(const WebDiagram& d, const FieldSpec& spec) {
  return WebMorphism::from_diagram(d, Scalar::one(spec));
}

WebDiagram merge_d(int k, int l) {
  return WebDiagram::make({k, l}, {{SliceKind::Merge, 0, k, l}});
}
WebDiagram split_d(int k, int l) {
  return WebDiagram::make({k + l}, {{SliceKind::Split, 0, k, l}});
}
WebDiagram cross_d(int k, int l) {
  return WebDiagram::make({k, l}, {{SliceKind::Cross, 0, k, l}});
}
WebDiagram cap_d(int k) { return WebDiagram::make({k, k}, {{SliceKind::Cap, 0, k, 0}}); }
WebDiagram cup_d(int k) { return WebDiagram::make({}, {{SliceKind::Cup, 0, k, 0}}); }

bool matrices_equal(const SparseMat& a, const SparseMat& b) { return a == b; }

// Composite of ladders applied left-to-right (bottom first); nullopt = zero.
std::optional<WebDiagram> chain(const Word& K,
                                const std::vector<std::tuple<LadderKind, int, int>>& steps) {
  WebDiagram acc = WebDiagram::identity(K);
  for (const auto& [kind, a, i] : steps) {
    auto next = try_ladder(kind, a, i, acc.target);
    if (!next) return std::nullopt;
    acc = compose(*next, acc);
  }
  return acc;
}

// Sum of +-scaled chains evaluated as matrices. The optional is empty when
// every chain died (zero morphism with unknown block shape).
std::optional<SparseMat> eval_chain_sum(
    const Word& K, int N, const FieldSpec& spec,
    const std::vector<std::pair<Scalar, std::vector<std::tuple<LadderKind, int, int>>>>& terms) {
  std::optional<SparseMat> acc;
  for (const auto& [coef, steps] : terms) {
    auto d = chain(K, steps);
    if (!d) continue;
    SparseMat m = evaluate(*d, N, spec).scaled(coef);
    if (!acc)
      acc = m;
    else
      acc = *acc + m;
  }
  return acc;
}

bool optional_equal(const std::optional<SparseMat>& a, const std::optional<SparseMat>& b) {
  if (a && b) return *a == *b;
  if (a) return a->is_zero();
  if (b) return b->is_zero();
  return true;
}

std::vector<Params> labels1(int N, int extra = 0) {
  std::vector<Params> out;
  for (int k = 0; k <= N + extra; ++k) out.push_back({{"k", k}});
  return out;
}

std::vector<Params> labels2(int N) {
  std::vector<Params> out;
  for (int k = 0; k <= N; ++k)
    for (int l = 0; l <= N; ++l) out.push_back({{"k", k}, {"l", l}});
  return out;
}

std::vector<Params> labels3(int N) {
  std::vector<Params> out;
  for (int k = 0; k <= N; ++k)
    for (int l = 0; l <= N; ++l)
      for (int m = 0; m <= N; ++m) out.push_back({{"k", k}, {"l", l}, {"m", m}});
  return out;
}

long get(const Params& p, const std::string& key) {
  auto it = p.find(key);
  if (it == p.end()) throw std::invalid_argument("missing relation parameter: " + key);
  return it->second;
}

const std::map<std::string, Relation>& registry();

}  // namespace

std::vector<std::string> relation_ids() {
  std::vector<std::string> out;
  for (const auto& [id, r] : registry()) out.push_back(id);
  return out;
}

std::vector<Params> relation_instances(const std::string& id, int N) {
  auto it = registry().find(id);
  if (it == registry().end()) throw std::invalid_argument("unknown relation: " + id);
  return it->second.instances(N);
}

bool check_relation(const std::string& id, const Params& params, int N, const FieldSpec& spec) {
  auto it = registry().find(id);
  if (it == registry().end()) throw std::invalid_argument("unknown relation: " + id);
  return it->second.check(params, N, spec);
}

namespace {

const std::map<std::string, Relation>& registry() {
  static const std::map<std::string, Relation> reg = [] {
    std::map<std::string, Relation> r;

    r["Exterior"] = {
        [](const Params& p, int N, const FieldSpec& spec) {
          int k = static_cast<int>(get(p, "k"));
          SparseMat m = evaluate(WebDiagram::identity({k}), N, spec);
          return k <= N ? m.rows() == binom_z(N, k).get_si() : m.rows() == 0;
        },
        [](int N) {
          std::vector<Params> out;
          for (int k = N - 1; k <= N + 2; ++k)
            if (k >= 0) out.push_back({{"k", k}});
          return out;
        }};

    r["Assoc"] = {
        [](const Params& p, int N, const FieldSpec& spec) {
          int k = static_cast<int>(get(p, "k")), l = static_cast<int>(get(p, "l")),
              m = static_cast<int>(get(p, "m"));
          WebDiagram lhs = compose(merge_d(k + l, m), tensor(merge_d(k, l), WebDiagram::identity({m})));
          WebDiagram rhs = compose(merge_d(k, l + m), tensor(WebDiagram::identity({k}), merge_d(l, m)));
          return matrices_equal(evaluate(lhs, N, spec), evaluate(rhs, N, spec));
        },
        [](int N) { return labels3(N); }};

    r["Coassoc"] = {
        [](const Params& p, int N, const FieldSpec& spec) {
          int k = static_cast<int>(get(p, "k")), l = static_cast<int>(get(p, "l")),
              m = static_cast<int>(get(p, "m"));
          WebDiagram lhs = compose(tensor(split_d(k, l), WebDiagram::identity({m})), split_d(k + l, m));
          WebDiagram rhs = compose(tensor(WebDiagram::identity({k}), split_d(l, m)), split_d(k, l + m));
          return matrices_equal(evaluate(lhs, N, spec), evaluate(rhs, N, spec));
        },
        [](int N) { return labels3(N); }};

    r["Digon"] = {
        [](const Params& p, int N, const FieldSpec& spec) {
          int k = static_cast<int>(get(p, "k")), l = static_cast<int>(get(p, "l"));
          WebDiagram lhs = compose(merge_d(k, l), split_d(k, l));
          SparseMat want =
              SparseMat::identity(evaluate(WebDiagram::identity({k + l}), N, spec).rows(), spec)
                  .scaled(binom(k + l, k, spec));
          return matrices_equal(evaluate(lhs, N, spec), want);
        },
        [](int N) { return labels2(N); }};

    r["CircleRemoval"] = {
        [](const Params& p, int N, const FieldSpec& spec) {
          int k = static_cast<int>(get(p, "k"));
          SparseMat m = evaluate(compose(cap_d(k), cup_d(k)), N, spec);
          return m.rows() == 1 && m.cols() == 1 && m.get(0, 0) == binom(N, k, spec);
        },
        [](int N) { return labels1(N, 1); }};

    r["Lollipop"] = {
        [](const Params& p, int N, const FieldSpec& spec) {
          int k = static_cast<int>(get(p, "k")), a = static_cast<int>(get(p, "a"));
          int l = k - 2 * a;
          // split k -> (k-a, a), split the big branch -> (l, a), cap the a's
          WebDiagram d1 = split_d(k - a, a);
          WebDiagram d2 = tensor(split_d(l, a), WebDiagram::identity({a}));
          WebDiagram d3 = WebDiagram::make({l, a, a}, {{SliceKind::Cap, 1, a, 0}});
          SparseMat m1 = evaluate(compose(d3, compose(d2, d1)), N, spec);
          // mirrored: split -> (a, k-a), split right branch -> (a, l), cap
          WebDiagram e1 = split_d(a, k - a);
          WebDiagram e2 = tensor(WebDiagram::identity({a}), split_d(a, l));
          WebDiagram e3 = WebDiagram::make({a, a, l}, {{SliceKind::Cap, 0, a, 0}});
          SparseMat m2 = evaluate(compose(e3, compose(e2, e1)), N, spec);
          return m1.is_zero() && m2.is_zero();
        },
        [](int N) {
          std::vector<Params> out;
          for (int k = 2; k <= N; ++k)
            for (int a = 1; 2 * a <= k; ++a) out.push_back({{"k", k}, {"a", a}});
          return out;
        }};

    r["SchurSigned"] = {
        [](const Params& p, int N, const FieldSpec& spec) {
          int k = static_cast<int>(get(p, "k")), l = static_cast<int>(get(p, "l")),
              rr = static_cast<int>(get(p, "r"));
          int ss = k + l - rr;
          WebMorphism lhs = mor(compose(split_d(rr, ss), merge_d(k, l)), spec);
          WebMorphism rhs = WebMorphism::zero({k, l}, {rr, ss});
          for (int a = 0; a <= k; ++a) {
            int b = rr - k + a;
            if (b < 0 || b > l) continue;
            WebDiagram bot = tensor(split_d(k - a, a), split_d(b, l - b));
            WebDiagram mid = tensor(tensor(WebDiagram::identity({k - a}), cross_d(a, b)),
                                    WebDiagram::identity({l - b}));
            WebDiagram top = tensor(merge_d(k - a, b), merge_d(a, l - b));
            Scalar c(spec, (a * b) % 2 == 0 ? 1 : -1);
            rhs.add(compose(top, compose(mid, bot)), c);
          }
          return matrices_equal(evaluate(lhs, N, spec), evaluate(rhs, N, spec));
        },
        [](int N) {
          std::vector<Params> out;
          for (int k = 0; k <= N; ++k)
            for (int l = 0; l <= N; ++l)
              for (int rr = 0; rr <= k + l; ++rr) {
                if (rr > N || k + l - rr > N) continue;
                out.push_back({{"k", k}, {"l", l}, {"r", rr}});
              }
          return out;
        }};

    r["InvSchur"] = {
        [](const Params& p, int N, const FieldSpec& spec) {
          int k = static_cast<int>(get(p, "k")), l = static_cast<int>(get(p, "l"));
          Word K{k, l};
          std::optional<SparseMat> lhs = evaluate(cross_d(k, l), N, spec);
          std::vector<std::pair<Scalar, std::vector<std::tuple<LadderKind, int, int>>>> terms;
          for (int b = std::max(0, k - l); b <= k; ++b) {
            int a = b - (k - l);
            int sgn = ((k - b) % 2 == 0 ? 1 : -1) * ((k * l) % 2 == 0 ? 1 : -1);
            terms.push_back({Scalar(spec, sgn),
                             {{LadderKind::F, b, 1}, {LadderKind::E, a, 1}}});
          }
          auto rhs = eval_chain_sum(K, N, spec, terms);
          return optional_equal(lhs, rhs);
        },
        [](int N) { return labels2(N); }};

    auto square_switch_check = [](const Params& p, int N, const FieldSpec& spec) {
      int k = static_cast<int>(get(p, "k")), l = static_cast<int>(get(p, "l")),
          a = static_cast<int>(get(p, "a")), b = static_cast<int>(get(p, "b"));
      Word K{k, l};
      auto lhs = eval_chain_sum(K, N, spec,
                                {{Scalar::one(spec),
                                  {{LadderKind::F, b, 1}, {LadderKind::E, a, 1}}}});
      std::vector<std::pair<Scalar, std::vector<std::tuple<LadderKind, int, int>>>> terms;
      for (int x = 0; x <= std::min(a, b); ++x) {
        Scalar c = binom(mpz_class(k - l + a - b), x, spec);
        terms.push_back({c, {{LadderKind::E, a - x, 1}, {LadderKind::F, b - x, 1}}});
      }
      auto rhs = eval_chain_sum(K, N, spec, terms);
      return optional_equal(lhs, rhs);
    };
    auto square_switch_instances = [](int aMax) {
      return [aMax](int N) {
        std::vector<Params> out;
        for (int k = 0; k <= N; ++k)
          for (int l = 0; l <= N; ++l)
            for (int a = 0; a <= aMax; ++a)
              for (int b = 0; b <= aMax; ++b)
                out.push_back({{"k", k}, {"l", l}, {"a", a}, {"b", b}});
        return out;
      };
    };
    r["SquareSwitch"] = {square_switch_check, square_switch_instances(2)};
    r["HigherEFA"] = {square_switch_check, square_switch_instances(3)};

    r["MergeCrossCompat"] = {
        [](const Params& p, int N, const FieldSpec& spec) {
          int k = static_cast<int>(get(p, "k")), l = static_cast<int>(get(p, "l"));
          WebDiagram lhs = compose(merge_d(l, k), cross_d(k, l));
          WebMorphism rhs = mor(merge_d(k, l), spec).scaled(Scalar(spec, (k * l) % 2 == 0 ? 1 : -1));
          return matrices_equal(evaluate(lhs, N, spec), evaluate(rhs, N, spec));
        },
        [](int N) { return labels2(N); }};

    r["ReidemeisterI"] = {
        [](const Params& p, int N, const FieldSpec& spec) {
          int k = static_cast<int>(get(p, "k"));
          WebDiagram idk = WebDiagram::identity({k});
          WebDiagram twist_r = compose(
              compose(tensor(idk, cap_d(k)), tensor(cross_d(k, k), idk)), tensor(idk, cup_d(k)));
          WebDiagram twist_l = compose(
              compose(tensor(cap_d(k), idk), tensor(idk, cross_d(k, k))), tensor(cup_d(k), idk));
          SparseMat want = evaluate(idk, N, spec);
          return matrices_equal(evaluate(twist_r, N, spec), want) &&
                 matrices_equal(evaluate(twist_l, N, spec), want);
        },
        [](int N) { return labels1(N); }};

    r["ReidemeisterII"] = {
        [](const Params& p, int N, const FieldSpec& spec) {
          int k = static_cast<int>(get(p, "k")), l = static_cast<int>(get(p, "l"));
          WebDiagram lhs = compose(cross_d(l, k), cross_d(k, l));
          return matrices_equal(evaluate(lhs, N, spec),
                                evaluate(WebDiagram::identity({k, l}), N, spec));
        },
        [](int N) { return labels2(N); }};

    r["ReidemeisterIII"] = {
        [](const Params& p, int N, const FieldSpec& spec) {
          int k = static_cast<int>(get(p, "k")), l = static_cast<int>(get(p, "l")),
              m = static_cast<int>(get(p, "m"));
          WebDiagram idk = WebDiagram::identity({k});
          WebDiagram idl = WebDiagram::identity({l});
          WebDiagram idm = WebDiagram::identity({m});
          WebDiagram lhs = compose(
              compose(tensor(cross_d(l, m), idk), tensor(idl, cross_d(k, m))),
              tensor(cross_d(k, l), idm));
          WebDiagram rhs = compose(
              compose(tensor(idm, cross_d(k, l)), tensor(cross_d(k, m), idl)),
              tensor(idk, cross_d(l, m)));
          return matrices_equal(evaluate(lhs, N, spec), evaluate(rhs, N, spec));
        },
        [](int N) { return labels3(N); }};

    r["CrossNaturality"] = {
        [](const Params& p, int N, const FieldSpec& spec) {
          int k = static_cast<int>(get(p, "k")), l = static_cast<int>(get(p, "l")),
              j = static_cast<int>(get(p, "m"));
          WebDiagram idj = WebDiagram::identity({j});
          WebDiagram idk = WebDiagram::identity({k});
          WebDiagram idl = WebDiagram::identity({l});
          WebDiagram lhs = compose(cross_d(k + l, j), tensor(merge_d(k, l), idj));
          WebDiagram rhs = compose(
              compose(tensor(idj, merge_d(k, l)), tensor(cross_d(k, j), idl)),
              tensor(idk, cross_d(l, j)));
          return matrices_equal(evaluate(lhs, N, spec), evaluate(rhs, N, spec));
        },
        [](int N) { return labels3(N); }};

    r["SidewaysDigon"] = {
        [](const Params& p, int N, const FieldSpec& spec) {
          int k = static_cast<int>(get(p, "k")), l = static_cast<int>(get(p, "l"));
          WebDiagram idk = WebDiagram::identity({k});
          WebDiagram idl = WebDiagram::identity({l});
          WebDiagram d = compose(
              compose(tensor(idk, cap_d(l)),
                      compose(tensor(split_d(k, l), idl), tensor(merge_d(k, l), idl))),
              tensor(idk, cup_d(l)));
          SparseMat want = evaluate(idk, N, spec).scaled(binom(N - k, l, spec));
          return matrices_equal(evaluate(d, N, spec), want);
        },
        [](int N) { return labels2(N); }};

    auto higher_ef_check = [](const Params& p, int N, const FieldSpec& spec) {
      int k = static_cast<int>(get(p, "k")), l = static_cast<int>(get(p, "l")),
          a = static_cast<int>(get(p, "a")), b = static_cast<int>(get(p, "b"));
      Word K{k, l};
      auto lhs = eval_chain_sum(
          K, N, spec,
          {{Scalar::one(spec), {{LadderKind::Ffish, b, 1}, {LadderKind::Efish, a, 1}}}});
      std::vector<std::pair<Scalar, std::vector<std::tuple<LadderKind, int, int>>>> terms;
      for (int x = 0; x <= std::min(a, b); ++x) {
        Scalar c = binom(mpz_class(k + l - N + a - b), x, spec);
        terms.push_back({c, {{LadderKind::Efish, a - x, 1}, {LadderKind::Ffish, b - x, 1}}});
      }
      auto rhs = eval_chain_sum(K, N, spec, terms);
      return optional_equal(lhs, rhs);
    };
    r["HigherEF"] = {higher_ef_check, [](int N) {
                       std::vector<Params> out;
                       for (int k = 0; k <= N; ++k)
                         for (int l = 0; l <= N; ++l)
                           for (int a = 0; a <= 2; ++a)
                             for (int b = 0; b <= 2; ++b)
                               out.push_back({{"k", k}, {"l", l}, {"a", a}, {"b", b}});
                       return out;
                     }};

    r["EF1"] = {
        [](const Params& p, int N, const FieldSpec& spec) {
          int k = static_cast<int>(get(p, "k")), l = static_cast<int>(get(p, "l"));
          Word K{k, l};
          auto ef = eval_chain_sum(
              K, N, spec,
              {{Scalar::one(spec), {{LadderKind::Ffish, 1, 1}, {LadderKind::Efish, 1, 1}}}});
          std::vector<std::pair<Scalar, std::vector<std::tuple<LadderKind, int, int>>>> terms;
          terms.push_back(
              {Scalar::one(spec), {{LadderKind::Efish, 1, 1}, {LadderKind::Ffish, 1, 1}}});
          terms.push_back({Scalar(spec, k + l - N), {}});
          auto rhs = eval_chain_sum(K, N, spec, terms);
          return optional_equal(ef, rhs);
        },
        [](int N) { return labels2(N); }};

    // Even orthogonal commutation and Serre families on three strands.
    auto ladder_at = [](char which, int pair) -> LadderKind {
      return which == 'E'   ? LadderKind::E
             : which == 'F' ? LadderKind::F
             : which == 'e' ? LadderKind::Efish
                            : LadderKind::Ffish;
    };

    r["EvenOrthEF"] = {
        [ladder_at](const Params& p, int N, const FieldSpec& spec) {
          int k1 = static_cast<int>(get(p, "k1")), k2 = static_cast<int>(get(p, "k2")),
              k3 = static_cast<int>(get(p, "k3"));
          long mode = get(p, "mode");
          Word K{k1, k2, k3};
          // mode 0: E_1 f_2 = f_2 E_1 ; mode 1: F_1 e_2 = e_2 F_1
          char big = mode == 0 ? 'E' : 'F';
          char small = mode == 0 ? 'f' : 'e';
          auto lhs = eval_chain_sum(K, N, spec,
                                    {{Scalar::one(spec),
                                      {{ladder_at(small, 2), 1, 2}, {ladder_at(big, 1), 1, 1}}}});
          auto rhs = eval_chain_sum(K, N, spec,
                                    {{Scalar::one(spec),
                                      {{ladder_at(big, 1), 1, 1}, {ladder_at(small, 2), 1, 2}}}});
          return optional_equal(lhs, rhs);
        },
        [](int N) {
          std::vector<Params> out;
          for (int k1 = 0; k1 <= N; ++k1)
            for (int k2 = 0; k2 <= N; ++k2)
              for (int k3 = 0; k3 <= N; ++k3)
                for (long mode = 0; mode <= 1; ++mode)
                  out.push_back({{"k1", k1}, {"k2", k2}, {"k3", k3}, {"mode", mode}});
          return out;
        }};

    r["EvenOrthSerre"] = {
        [ladder_at](const Params& p, int N, const FieldSpec& spec) {
          int k1 = static_cast<int>(get(p, "k1")), k2 = static_cast<int>(get(p, "k2")),
              k3 = static_cast<int>(get(p, "k3"));
          long mode = get(p, "mode");
          Word K{k1, k2, k3};
          // 2 x y x = x^2 y + y x^2 with (x, y) in the four mixed e/E choices
          // spanning |i-j| = 1: mode selects (x at pair, y at pair, letters).
          struct Cfg { char x; int px; char y; int py; };
          static const Cfg cfgs[] = {
              {'e', 1, 'E', 2, }, {'e', 2, 'E', 1}, {'E', 1, 'e', 2}, {'E', 2, 'e', 1},
              {'f', 1, 'F', 2, }, {'f', 2, 'F', 1}, {'F', 1, 'f', 2}, {'F', 2, 'f', 1}};
          const Cfg& c = cfgs[mode];
          LadderKind x = ladder_at(c.x, c.px);
          LadderKind y = ladder_at(c.y, c.py);
          auto lhs = eval_chain_sum(K, N, spec,
                                    {{Scalar(spec, 2),
                                      {{x, 1, c.px}, {y, 1, c.py}, {x, 1, c.px}}}});
          auto rhs = eval_chain_sum(
              K, N, spec,
              {{Scalar::one(spec), {{y, 1, c.py}, {x, 1, c.px}, {x, 1, c.px}}},
               {Scalar::one(spec), {{x, 1, c.px}, {x, 1, c.px}, {y, 1, c.py}}}});
          return optional_equal(lhs, rhs);
        },
        [](int N) {
          std::vector<Params> out;
          for (int k1 = 0; k1 <= N; ++k1)
            for (int k2 = 0; k2 <= N; ++k2)
              for (int k3 = 0; k3 <= N; ++k3)
                for (long mode = 0; mode < 8; ++mode)
                  out.push_back({{"k1", k1}, {"k2", k2}, {"k3", k3}, {"mode", mode}});
          return out;
        }};

    auto higher_serre_family = [ladder_at](bool mixed) {
      return Relation{
          [ladder_at, mixed](const Params& p, int N, const FieldSpec& spec) {
            int k1 = static_cast<int>(get(p, "k1")), k2 = static_cast<int>(get(p, "k2")),
                k3 = static_cast<int>(get(p, "k3"));
            int mm = static_cast<int>(get(p, "mm")), n = static_cast<int>(get(p, "n"));
            long mode = get(p, "mode");
            Word K{k1, k2, k3};
            struct Cfg { char x; int px; char y; int py; };
            static const Cfg mixed_cfgs[] = {
                {'e', 1, 'E', 2}, {'e', 2, 'E', 1}, {'E', 1, 'e', 2}, {'E', 2, 'e', 1},
                {'f', 1, 'F', 2}, {'f', 2, 'F', 1}, {'F', 1, 'f', 2}, {'F', 2, 'f', 1}};
            static const Cfg pure_cfgs[] = {
                {'E', 1, 'E', 2}, {'E', 2, 'E', 1}, {'F', 1, 'F', 2}, {'F', 2, 'F', 1}};
            const Cfg& c = mixed ? mixed_cfgs[mode] : pure_cfgs[mode];
            LadderKind x = ladder_at(c.x, c.px);
            LadderKind y = ladder_at(c.y, c.py);
            std::vector<std::pair<Scalar, std::vector<std::tuple<LadderKind, int, int>>>> terms;
            for (int rr = 0; rr <= n; ++rr) {
              int pp = n - rr;
              Scalar sgn(spec, rr % 2 == 0 ? 1 : -1);
              terms.push_back({sgn, {{x, rr, c.px}, {y, mm, c.py}, {x, pp, c.px}}});
            }
            auto total = eval_chain_sum(K, N, spec, terms);
            return !total || total->is_zero();
          },
          [mixed](int N) {
            std::vector<Params> out;
            int modes = mixed ? 8 : 4;
            for (int k1 = 0; k1 <= N; ++k1)
              for (int k2 = 0; k2 <= N; ++k2)
                for (int k3 = 0; k3 <= N; ++k3)
                  for (int mm = 1; mm <= 2; ++mm)
                    for (int n = mm + 1; n <= mm + 2; ++n)
                      for (long mode = 0; mode < modes; ++mode)
                        out.push_back({{"k1", k1}, {"k2", k2}, {"k3", k3},
                                       {"mm", mm}, {"n", n}, {"mode", mode}});
            return out;
          }};
    };
    r["HigherEvenOrthSerre"] = higher_serre_family(true);
    r["HigherSerreA"] = higher_serre_family(false);

    r["SerreA"] = {
        [ladder_at](const Params& p, int N, const FieldSpec& spec) {
          int k1 = static_cast<int>(get(p, "k1")), k2 = static_cast<int>(get(p, "k2")),
              k3 = static_cast<int>(get(p, "k3"));
          long mode = get(p, "mode");
          Word K{k1, k2, k3};
          char letter = mode < 2 ? 'E' : 'F';
          int pi = (mode % 2 == 0) ? 1 : 2;
          int pj = (mode % 2 == 0) ? 2 : 1;
          LadderKind x = ladder_at(letter, pi);
          LadderKind y = ladder_at(letter, pj);
          auto lhs = eval_chain_sum(
              K, N, spec, {{Scalar(spec, 2), {{x, 1, pi}, {y, 1, pj}, {x, 1, pi}}}});
          auto rhs = eval_chain_sum(
              K, N, spec,
              {{Scalar::one(spec), {{y, 1, pj}, {x, 1, pi}, {x, 1, pi}}},
               {Scalar::one(spec), {{x, 1, pi}, {x, 1, pi}, {y, 1, pj}}}});
          return optional_equal(lhs, rhs);
        },
        [](int N) {
          std::vector<Params> out;
          for (int k1 = 0; k1 <= N; ++k1)
            for (int k2 = 0; k2 <= N; ++k2)
              for (int k3 = 0; k3 <= N; ++k3)
                for (long mode = 0; mode < 4; ++mode)
                  out.push_back({{"k1", k1}, {"k2", k2}, {"k3", k3}, {"mode", mode}});
          return out;
        }};

    r["HigherEvenOrthEF"] = {
        [](const Params& p, int N, const FieldSpec& spec) {
          int k1 = static_cast<int>(get(p, "k1")), k2 = static_cast<int>(get(p, "k2")),
              k3 = static_cast<int>(get(p, "k3"));
          int a = static_cast<int>(get(p, "a")), b = static_cast<int>(get(p, "b"));
          Word K{k1, k2, k3};
          auto lhs = eval_chain_sum(
              K, N, spec,
              {{Scalar::one(spec), {{LadderKind::Ffish, b, 1}, {LadderKind::Efish, a, 1}}}});
          std::vector<std::pair<Scalar, std::vector<std::tuple<LadderKind, int, int>>>> terms;
          for (int x = 0; x <= std::min(a, b); ++x) {
            Scalar c = binom(mpz_class(k1 + k2 - N + a - b), x, spec);
            terms.push_back({c, {{LadderKind::Efish, a - x, 1}, {LadderKind::Ffish, b - x, 1}}});
          }
          auto rhs = eval_chain_sum(K, N, spec, terms);
          return optional_equal(lhs, rhs);
        },
        [](int N) {
          std::vector<Params> out;
          for (int k1 = 0; k1 <= N; ++k1)
            for (int k2 = 0; k2 <= N; ++k2)
              for (int k3 = 0; k3 <= N; ++k3)
                for (int a = 1; a <= 2; ++a)
                  for (int b = 1; b <= 2; ++b)
                    out.push_back({{"k1", k1}, {"k2", k2}, {"k3", k3}, {"a", a}, {"b", b}});
          return out;
        }};

    return r;
  }();
  return reg;
}

}  // namespace

// ---------------------------------------------------------------------------
// Idempotented divided-power relations on ladder images
// ---------------------------------------------------------------------------

namespace {

struct NodeOp {
  // node j in [1, m]: type A pair (j, j+1) for j < m, fishtail pair (m-1, m)
  static LadderKind kind(char ef, int node, int m) {
    if (node < m) return ef == 'e' ? LadderKind::E : LadderKind::F;
    return ef == 'e' ? LadderKind::Efish : LadderKind::Ffish;
  }
  static int pair(int node, int m) { return node < m ? node : m - 1; }
};

int cartan_D(int i, int j, int m) {
  if (i == j) return 2;
  if (i < m && j < m) return std::abs(i - j) == 1 ? -1 : 0;
  int small = std::min(i, j);
  // fishtail node m is adjacent to node m-2
  return small == m - 2 ? -1 : 0;
}

long alpha_check(int node, const Composition& K, int N, int m) {
  if (node < m) return K[node - 1] - K[node];
  return K[m - 2] + K[m - 1] - N;
}

}  // namespace

UdotReport check_udot_relations(int m, int N, int a_max, const FieldSpec& spec) {
  if (m < 2) throw std::invalid_argument("check_udot_relations: need m >= 2");
  UdotReport report;
  auto Ks = all_compositions(m, N);
  auto fail = [&](const std::string& what, const Composition& K) {
    std::ostringstream os;
    os << what << " at K=(";
    for (size_t i = 0; i < K.size(); ++i) os << (i ? "," : "") << K[i];
    os << ") m=" << m << " N=" << N << " field=" << spec.name();
    report.failures.push_back(os.str());
  };

  using Steps = std::vector<std::tuple<LadderKind, int, int>>;
  auto step = [&](char ef, int node, int a) {
    return std::make_tuple(NodeOp::kind(ef, node, m), a, NodeOp::pair(node, m));
  };

  for (const auto& K : Ks) {
    Word Kw(K.begin(), K.end());
    for (int node = 1; node <= m; ++node) {
      // (EE) divided power products
      for (int a = 1; a <= a_max; ++a)
        for (int b = 1; b <= a_max; ++b) {
          for (char ef : {'e', 'f'}) {
            ++report.instances;
            auto lhs = eval_chain_sum(
                Kw, N, spec,
                {{Scalar::one(spec), Steps{step(ef, node, b), step(ef, node, a)}}});
            auto rhs = eval_chain_sum(
                Kw, N, spec,
                {{binom(a + b, a, spec), Steps{step(ef, node, a + b)}}});
            if (!optional_equal(lhs, rhs)) fail("EE", K);
          }
        }
      // (EFOne) same node
      for (int a = 1; a <= a_max; ++a)
        for (int b = 1; b <= a_max; ++b) {
          ++report.instances;
          auto lhs = eval_chain_sum(
              Kw, N, spec,
              {{Scalar::one(spec), Steps{step('f', node, b), step('e', node, a)}}});
          std::vector<std::pair<Scalar, Steps>> terms;
          for (int x = 0; x <= std::min(a, b); ++x) {
            Scalar c = binom(mpz_class(alpha_check(node, K, N, m) + a - b), x, spec);
            terms.push_back({c, Steps{step('e', node, a - x), step('f', node, b - x)}});
          }
          auto rhs = eval_chain_sum(Kw, N, spec, terms);
          if (!optional_equal(lhs, rhs)) fail("EFOne", K);
        }
    }
    // (EFTwo) distinct nodes commute
    for (int ni = 1; ni <= m; ++ni)
      for (int nj = 1; nj <= m; ++nj) {
        if (ni == nj) continue;
        for (int a = 1; a <= a_max; ++a)
          for (int b = 1; b <= a_max; ++b) {
            ++report.instances;
            auto lhs = eval_chain_sum(
                Kw, N, spec,
                {{Scalar::one(spec), Steps{step('f', nj, b), step('e', ni, a)}}});
            auto rhs = eval_chain_sum(
                Kw, N, spec,
                {{Scalar::one(spec), Steps{step('e', ni, a), step('f', nj, b)}}});
            if (!optional_equal(lhs, rhs)) fail("EFTwo", K);
          }
      }
    // (Serre) signed higher Serre sums
    for (int ni = 1; ni <= m; ++ni)
      for (int nj = 1; nj <= m; ++nj) {
        if (ni == nj) continue;
        int c = cartan_D(ni, nj, m);
        for (int mm = 1; mm <= a_max; ++mm) {
          int n_min = mm * (-c) + 1;
          for (int n = n_min; n <= n_min + a_max - 1; ++n) {
            for (char ef : {'e', 'f'}) {
              ++report.instances;
              std::vector<std::pair<Scalar, Steps>> terms;
              for (int rr = 0; rr <= n; ++rr) {
                int pp = n - rr;
                Scalar sgn(spec, rr % 2 == 0 ? 1 : -1);
                terms.push_back(
                    {sgn, Steps{step(ef, ni, rr), step(ef, nj, mm), step(ef, ni, pp)}});
              }
              auto total = eval_chain_sum(Kw, N, spec, terms);
              if (total && !total->is_zero()) fail("Serre", K);
            }
          }
        }
      }
  }
  return report;
}

}  // namespace oweb
