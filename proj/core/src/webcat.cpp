#include "oweb/webcat.hpp"

#include <algorithm>
#include <functional>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

namespace oweb {

Word drop_zeros(const Word& w) {
  Word out;
  for (int k : w)
    if (k != 0) out.push_back(k);
  return out;
}

int total_thickness(const Word& w) { return std::accumulate(w.begin(), w.end(), 0); }

std::string slice_kind_name(SliceKind k) {
  switch (k) {
    case SliceKind::Merge: return "merge";
    case SliceKind::Split: return "split";
    case SliceKind::Cross: return "cross";
    case SliceKind::Cap: return "cap";
    case SliceKind::Cup: return "cup";
  }
  return "?";
}

SliceKind slice_kind_from(const std::string& s) {
  if (s == "merge") return SliceKind::Merge;
  if (s == "split") return SliceKind::Split;
  if (s == "cross") return SliceKind::Cross;
  if (s == "cap") return SliceKind::Cap;
  if (s == "cup") return SliceKind::Cup;
  throw std::invalid_argument("unknown slice kind: " + s);
}

Word apply_slice(const Word& w, const GeneratorSlice& s) {
  Word out = w;
  int n = static_cast<int>(w.size());
  auto need = [&](bool ok, const char* msg) {
    if (!ok) throw std::invalid_argument(std::string("apply_slice: ") + msg);
  };
  switch (s.kind) {
    case SliceKind::Merge:
      need(s.pos >= 0 && s.pos + 1 < n, "merge position");
      need(w[s.pos] == s.k && w[s.pos + 1] == s.l, "merge labels");
      out[s.pos] = s.k + s.l;
      out.erase(out.begin() + s.pos + 1);
      return out;
    case SliceKind::Split:
      need(s.pos >= 0 && s.pos < n, "split position");
      need(w[s.pos] == s.k + s.l, "split labels");
      need(s.k >= 0 && s.l >= 0, "split parts");
      out[s.pos] = s.k;
      out.insert(out.begin() + s.pos + 1, s.l);
      return out;
    case SliceKind::Cross:
      need(s.pos >= 0 && s.pos + 1 < n, "cross position");
      need(w[s.pos] == s.k && w[s.pos + 1] == s.l, "cross labels");
      std::swap(out[s.pos], out[s.pos + 1]);
      return out;
    case SliceKind::Cap:
      need(s.pos >= 0 && s.pos + 1 < n, "cap position");
      need(w[s.pos] == s.k && w[s.pos + 1] == s.k, "cap labels");
      out.erase(out.begin() + s.pos, out.begin() + s.pos + 2);
      return out;
    case SliceKind::Cup:
      need(s.pos >= 0 && s.pos <= n, "cup position");
      out.insert(out.begin() + s.pos, 2, s.k);
      return out;
  }
  throw std::logic_error("unreachable");
}

WebDiagram WebDiagram::make(const Word& source, std::vector<GeneratorSlice> slices) {
  Word cur = source;
  for (const auto& s : slices) cur = apply_slice(cur, s);
  return {source, cur, std::move(slices)};
}

WebDiagram compose(const WebDiagram& g, const WebDiagram& f) {
  if (f.target != g.source) throw std::invalid_argument("compose: boundary mismatch");
  WebDiagram out;
  out.source = f.source;
  out.target = g.target;
  out.slices = f.slices;
  out.slices.insert(out.slices.end(), g.slices.begin(), g.slices.end());
  return out;
}

WebDiagram tensor(const WebDiagram& f, const WebDiagram& g) {
  WebDiagram out;
  out.source = f.source;
  out.source.insert(out.source.end(), g.source.begin(), g.source.end());
  out.target = f.target;
  out.target.insert(out.target.end(), g.target.begin(), g.target.end());
  out.slices = f.slices;  // act on the left block while g.source sits right
  int shift = static_cast<int>(f.target.size());
  for (auto s : g.slices) {
    s.pos += shift;
    out.slices.push_back(s);
  }
  return out;
}

WebDiagram flipped(const WebDiagram& d) {
  WebDiagram out;
  out.source = d.target;
  out.target = d.source;
  for (auto it = d.slices.rbegin(); it != d.slices.rend(); ++it) {
    GeneratorSlice s = *it;
    switch (s.kind) {
      case SliceKind::Merge: s.kind = SliceKind::Split; break;
      case SliceKind::Split: s.kind = SliceKind::Merge; break;
      case SliceKind::Cap: s.kind = SliceKind::Cup; break;
      case SliceKind::Cup: s.kind = SliceKind::Cap; break;
      case SliceKind::Cross: std::swap(s.k, s.l); break;
    }
    out.slices.push_back(s);
  }
  // validate
  return WebDiagram::make(out.source, out.slices);
}

WebMorphism WebMorphism::from_diagram(const WebDiagram& d, const Scalar& c) {
  WebMorphism m{d.source, d.target, {}};
  m.add(d, c);
  return m;
}

void WebMorphism::add(const WebDiagram& d, const Scalar& c) {
  if (d.source != source || d.target != target)
    throw std::invalid_argument("WebMorphism::add: boundary mismatch");
  if (c.is_zero()) return;
  auto it = terms.find(d);
  if (it == terms.end()) {
    terms.emplace(d, c);
  } else {
    it->second += c;
    if (it->second.is_zero()) terms.erase(it);
  }
}

WebMorphism WebMorphism::operator+(const WebMorphism& o) const {
  WebMorphism r = *this;
  for (const auto& [d, c] : o.terms) r.add(d, c);
  return r;
}

WebMorphism WebMorphism::scaled(const Scalar& c) const {
  WebMorphism r{source, target, {}};
  for (const auto& [d, v] : terms) r.add(d, v * c);
  return r;
}

WebMorphism compose(const WebMorphism& g, const WebMorphism& f) {
  WebMorphism r = WebMorphism::zero(f.source, g.target);
  for (const auto& [df, cf] : f.terms)
    for (const auto& [dg, cg] : g.terms) r.add(compose(dg, df), cf * cg);
  return r;
}

WebMorphism tensor(const WebMorphism& f, const WebMorphism& g) {
  Word src = f.source;
  src.insert(src.end(), g.source.begin(), g.source.end());
  Word tgt = f.target;
  tgt.insert(tgt.end(), g.target.begin(), g.target.end());
  WebMorphism r = WebMorphism::zero(src, tgt);
  for (const auto& [df, cf] : f.terms)
    for (const auto& [dg, cg] : g.terms) r.add(tensor(df, dg), cf * cg);
  return r;
}

WebDiagram ladder(LadderKind kind, int a, int i, const Word& K) {
  int m = static_cast<int>(K.size());
  if (i < 1 || i + 1 > m) throw std::invalid_argument("ladder: strand index");
  if (a < 0) throw std::invalid_argument("ladder: negative power");
  if (a == 0) return WebDiagram::identity(K);
  int p = i - 1;
  int ki = K[p], kj = K[p + 1];
  std::vector<GeneratorSlice> slices;
  switch (kind) {
    case LadderKind::E:
      if (kj - a < 0) throw std::invalid_argument("ladder E: negative label");
      slices.push_back({SliceKind::Split, p + 1, a, kj - a});
      slices.push_back({SliceKind::Merge, p, ki, a});
      break;
    case LadderKind::F:
      if (ki - a < 0) throw std::invalid_argument("ladder F: negative label");
      slices.push_back({SliceKind::Split, p, ki - a, a});
      slices.push_back({SliceKind::Merge, p + 1, a, kj});
      break;
    case LadderKind::Efish:
      slices.push_back({SliceKind::Cup, p + 1, a, 0});
      slices.push_back({SliceKind::Merge, p, ki, a});
      slices.push_back({SliceKind::Merge, p + 1, a, kj});
      break;
    case LadderKind::Ffish:
      if (ki - a < 0 || kj - a < 0) throw std::invalid_argument("ladder f: negative label");
      slices.push_back({SliceKind::Split, p, ki - a, a});
      slices.push_back({SliceKind::Split, p + 2, a, kj - a});
      slices.push_back({SliceKind::Cap, p + 1, a, 0});
      break;
  }
  return WebDiagram::make(K, std::move(slices));
}

WebDiagram rotate(const WebDiagram& d, RotateDir dir) {
  switch (dir) {
    case RotateDir::UpRight: {
      if (d.source.empty()) throw std::invalid_argument("rotate: empty source");
      int k = d.source.back();
      Word rest(d.source.begin(), d.source.end() - 1);
      WebDiagram cup = WebDiagram::make(
          rest, {{SliceKind::Cup, static_cast<int>(rest.size()), k, 0}});
      return compose(tensor(d, WebDiagram::identity({k})), cup);
    }
    case RotateDir::UpLeft: {
      if (d.source.empty()) throw std::invalid_argument("rotate: empty source");
      int k = d.source.front();
      Word rest(d.source.begin() + 1, d.source.end());
      WebDiagram cup = WebDiagram::make(rest, {{SliceKind::Cup, 0, k, 0}});
      return compose(tensor(WebDiagram::identity({k}), d), cup);
    }
    case RotateDir::DownRight: {
      if (d.target.empty()) throw std::invalid_argument("rotate: empty target");
      int k = d.target.back();
      WebDiagram body = tensor(d, WebDiagram::identity({k}));
      GeneratorSlice cap{SliceKind::Cap, static_cast<int>(d.target.size()) - 1, k, 0};
      WebDiagram capd = WebDiagram::make(body.target, {cap});
      return compose(capd, body);
    }
    case RotateDir::DownLeft: {
      if (d.target.empty()) throw std::invalid_argument("rotate: empty target");
      int k = d.target.front();
      WebDiagram body = tensor(WebDiagram::identity({k}), d);
      GeneratorSlice cap{SliceKind::Cap, 0, k, 0};
      WebDiagram capd = WebDiagram::make(body.target, {cap});
      return compose(capd, body);
    }
  }
  throw std::logic_error("unreachable");
}

namespace {

// Partial trace over the last strand: (id (x) cap) o (f (x) id) o (id (x) cup).
WebDiagram partial_trace_last(const WebDiagram& d) {
  int k = d.source.back();
  if (d.target.back() != k)
    throw std::invalid_argument("partial_trace_last: label mismatch");
  Word src_rest(d.source.begin(), d.source.end() - 1);
  WebDiagram cup = WebDiagram::make(
      src_rest, {{SliceKind::Cup, static_cast<int>(src_rest.size()), k, 0}});
  WebDiagram body = tensor(d, WebDiagram::identity({k}));
  GeneratorSlice cap{SliceKind::Cap, static_cast<int>(d.target.size()) - 1, k, 0};
  WebDiagram capd = WebDiagram::make(body.target, {cap});
  return compose(capd, compose(body, cup));
}

}  // namespace

WebDiagram closure(const WebDiagram& d) {
  if (d.source != d.target) throw std::invalid_argument("closure: not an endomorphism");
  WebDiagram r = d;
  while (!r.source.empty()) r = partial_trace_last(r);
  return r;
}

namespace {

// ----- fmf enumeration ---------------------------------------------------

struct PartsStructure {
  std::vector<int> labels;        // labels of the parts, left to right
  std::vector<int> block;         // source strand index per part
  std::vector<int> match;         // partner index or -1 (through)
  std::vector<int> through;       // indices of through parts
};

void compositions_of(int k, std::vector<std::vector<int>>& out) {
  // ordered compositions of k into parts >= 1
  out.clear();
  if (k == 0) {
    out.push_back({});
    return;
  }
  for (int first = 1; first <= k; ++first) {
    std::vector<std::vector<int>> rest;
    compositions_of(k - first, rest);
    for (auto& r : rest) {
      std::vector<int> c{first};
      c.insert(c.end(), r.begin(), r.end());
      out.push_back(std::move(c));
    }
  }
}

// All partial matchings on the parts with equal labels; unmatched parts are
// through strands. Crossings realize arbitrary (non-planar) pairings, so no
// position constraint applies.
void bottom_structures(const std::vector<int>& labels, const std::vector<int>& block,
                       std::vector<PartsStructure>& out) {
  int n = static_cast<int>(labels.size());
  std::vector<int> match(n, -1);
  std::vector<int> state(n, 0);  // 0 undecided, 1 through, 2 matched
  std::function<void(int)> rec = [&](int p) {
    if (p == n) {
      PartsStructure ps;
      ps.labels = labels;
      ps.block = block;
      ps.match = match;
      for (int q = 0; q < n; ++q)
        if (match[q] < 0) ps.through.push_back(q);
      out.push_back(std::move(ps));
      return;
    }
    if (state[p] != 0) {
      rec(p + 1);
      return;
    }
    // through
    state[p] = 1;
    rec(p + 1);
    state[p] = 0;
    // matched with a later undecided equal-label part
    for (int q = p + 1; q < n; ++q) {
      if (state[q] != 0 || labels[q] != labels[p]) continue;
      state[p] = state[q] = 2;
      match[p] = q;
      match[q] = p;
      rec(p + 1);
      state[p] = state[q] = 0;
      match[p] = match[q] = -1;
    }
  };
  rec(0);
}

// All structures for one side: compositions per strand, then matchings.
void side_structures(const Word& strands, std::vector<PartsStructure>& out) {
  Word w = drop_zeros(strands);
  int ns = static_cast<int>(w.size());
  std::vector<std::vector<std::vector<int>>> comps(ns);
  for (int i = 0; i < ns; ++i) compositions_of(w[i], comps[i]);
  std::vector<size_t> pick(ns, 0);
  while (true) {
    std::vector<int> labels, block;
    for (int i = 0; i < ns; ++i)
      for (int part : comps[i][pick[i]]) {
        labels.push_back(part);
        block.push_back(i);
      }
    bottom_structures(labels, block, out);
    size_t i = 0;
    while (i < pick.size() && ++pick[i] == comps[i].size()) {
      pick[i] = 0;
      ++i;
    }
    if (i == pick.size() || ns == 0) break;
  }
}

// Build the slice list of a bottom part (splits then caps) from K.
std::vector<GeneratorSlice> bottom_slices(const Word& K, const PartsStructure& ps) {
  std::vector<GeneratorSlice> slices;
  Word w = drop_zeros(K);
  // splits, strand by strand (right to left keeps positions stable)
  // reconstruct compositions from blocks
  int ns = w.empty() ? 0 : (*std::max_element(ps.block.begin(), ps.block.end()) + 1);
  if (ps.labels.empty()) ns = 0;
  std::vector<std::vector<int>> comp(ns);
  for (size_t p = 0; p < ps.labels.size(); ++p) comp[ps.block[p]].push_back(ps.labels[p]);
  int pos_base = 0;
  for (int i = 0; i < ns; ++i) {
    int remaining = w[i];
    for (size_t j = 0; j + 1 < comp[i].size(); ++j) {
      slices.push_back({SliceKind::Split, pos_base + static_cast<int>(j),
                        comp[i][j], remaining - comp[i][j]});
      remaining -= comp[i][j];
    }
    pos_base += static_cast<int>(comp[i].size());
  }
  // caps, innermost first; track current positions of parts
  std::vector<int> alive;  // part index per current strand
  for (size_t p = 0; p < ps.labels.size(); ++p) alive.push_back(static_cast<int>(p));
  std::vector<std::pair<int, int>> arcs;
  for (size_t p = 0; p < ps.labels.size(); ++p)
    if (ps.match[p] >= 0 && ps.match[p] > static_cast<int>(p))
      arcs.emplace_back(static_cast<int>(p), ps.match[p]);
  // repeatedly cap arcs whose endpoints are adjacent now
  bool progress = true;
  while (!arcs.empty() && progress) {
    progress = false;
    for (size_t ai = 0; ai < arcs.size(); ++ai) {
      auto [a, b] = arcs[ai];
      auto ita = std::find(alive.begin(), alive.end(), a);
      auto itb = std::find(alive.begin(), alive.end(), b);
      int pa = static_cast<int>(ita - alive.begin());
      int pb = static_cast<int>(itb - alive.begin());
      if (pb == pa + 1) {
        slices.push_back({SliceKind::Cap, pa, ps.labels[a], 0});
        alive.erase(alive.begin() + pa, alive.begin() + pa + 2);
        arcs.erase(arcs.begin() + ai);
        progress = true;
        break;
      }
    }
  }
  if (!arcs.empty()) throw std::logic_error("bottom_slices: stuck arcs");
  return slices;
}

std::vector<int> through_labels(const PartsStructure& ps) {
  std::vector<int> out;
  for (int p : ps.through) out.push_back(ps.labels[p]);
  return out;
}

// Label-preserving bijections through(bottom) -> through(top) with no
// inversions inside bottom or top blocks.
void middle_perms(const PartsStructure& bot, const PartsStructure& top,
                  std::vector<std::vector<int>>& out) {
  int n = static_cast<int>(bot.through.size());
  std::vector<int> perm(n, -1);
  std::vector<bool> used(n, false);
  std::function<void(int)> rec = [&](int p) {
    if (p == n) {
      out.push_back(perm);
      return;
    }
    int bp = bot.through[p];
    for (int t = 0; t < n; ++t) {
      if (used[t]) continue;
      int tp = top.through[t];
      if (bot.labels[bp] != top.labels[tp]) continue;
      // bottom block monotonicity
      bool ok = true;
      for (int q = 0; q < p; ++q) {
        int bq = bot.through[q];
        if (bot.block[bq] == bot.block[bp] && perm[q] > t) ok = false;
        int tq = top.through[perm[q]];
        if (top.block[tq] == top.block[tp] && perm[q] > t) ok = false;
      }
      if (!ok) continue;
      perm[p] = t;
      used[t] = true;
      rec(p + 1);
      used[t] = false;
      perm[p] = -1;
    }
  };
  rec(0);
}

std::vector<GeneratorSlice> crossing_slices(const Word& from, const std::vector<int>& perm) {
  // realize strand permutation: strand at position p must land at perm[p]
  std::vector<GeneratorSlice> slices;
  Word w = from;
  std::vector<int> cur(perm);  // cur[p]: target slot of the strand now at p
  int n = static_cast<int>(cur.size());
  for (int target = 0; target < n; ++target) {
    int p = -1;
    for (int q = target; q < n; ++q)
      if (cur[q] == target) {
        p = q;
        break;
      }
    for (int q = p; q > target; --q) {
      slices.push_back({SliceKind::Cross, q - 1, w[q - 1], w[q]});
      std::swap(w[q - 1], w[q]);
      std::swap(cur[q - 1], cur[q]);
    }
  }
  return slices;
}

}  // namespace

std::vector<WebDiagram> enumerate_fmf(const Word& K, const Word& L) {
  std::vector<WebDiagram> out;
  Word k0 = drop_zeros(K), l0 = drop_zeros(L);
  std::vector<PartsStructure> bots, tops;
  side_structures(k0, bots);
  side_structures(l0, tops);
  for (const auto& bot : bots) {
    auto bslices = bottom_slices(k0, bot);
    Word B = through_labels(bot);
    for (const auto& top : tops) {
      Word T = through_labels(top);
      if (B.size() != T.size()) continue;
      {
        Word bs = B, ts = T;
        std::sort(bs.begin(), bs.end());
        std::sort(ts.begin(), ts.end());
        if (bs != ts) continue;
      }
      std::vector<std::vector<int>> perms;
      middle_perms(bot, top, perms);
      auto tslices_base = bottom_slices(l0, top);  // L -> T, splits+caps
      WebDiagram top_part = flipped(WebDiagram::make(l0, tslices_base));  // T -> L
      for (const auto& perm : perms) {
        std::vector<GeneratorSlice> slices = bslices;
        auto mid = crossing_slices(B, perm);
        slices.insert(slices.end(), mid.begin(), mid.end());
        slices.insert(slices.end(), top_part.slices.begin(), top_part.slices.end());
        out.push_back(WebDiagram::make(k0, slices));
      }
    }
  }
  return out;
}

namespace {

// mfm bottom: consecutive grouping of K merged per group, then caps.
struct MfmSide {
  std::vector<int> group_labels;
  std::vector<std::vector<int>> groups;      // positions of K per group
  std::vector<int> match;                    // cap partner or -1
  std::vector<int> through;
};

void mfm_side_structures(const Word& strands, std::vector<MfmSide>& out) {
  Word w = drop_zeros(strands);
  int n = static_cast<int>(w.size());
  // enumerate compositions of the position list into consecutive groups
  std::vector<std::vector<std::vector<int>>> groupings;
  std::function<void(int, std::vector<std::vector<int>>&)> rec = [&](int start,
                                                                     std::vector<std::vector<int>>& acc) {
    if (start == n) {
      groupings.push_back(acc);
      return;
    }
    for (int len = 1; start + len <= n; ++len) {
      std::vector<int> g;
      for (int p = start; p < start + len; ++p) g.push_back(p);
      acc.push_back(g);
      rec(start + len, acc);
      acc.pop_back();
    }
  };
  std::vector<std::vector<int>> acc;
  if (n == 0)
    groupings.push_back({});
  else
    rec(0, acc);
  for (auto& groups : groupings) {
    std::vector<int> labels;
    for (auto& g : groups) {
      int sum = 0;
      for (int p : g) sum += w[p];
      labels.push_back(sum);
    }
    std::vector<PartsStructure> matchings;
    std::vector<int> block(labels.size());
    for (size_t i = 0; i < block.size(); ++i) block[i] = static_cast<int>(i);
    bottom_structures(labels, block, matchings);
    for (auto& ps : matchings) {
      MfmSide side;
      side.group_labels = labels;
      side.groups = groups;
      side.match = ps.match;
      side.through = ps.through;
      out.push_back(std::move(side));
    }
  }
}

std::vector<GeneratorSlice> mfm_bottom_slices(const Word& K, const MfmSide& side) {
  std::vector<GeneratorSlice> slices;
  Word w = drop_zeros(K);
  // merges, group by group; positions shift as groups shrink
  int base = 0;
  Word cur = w;
  for (size_t gi = 0; gi < side.groups.size(); ++gi) {
    int len = static_cast<int>(side.groups[gi].size());
    for (int t = 0; t < len - 1; ++t) {
      slices.push_back({SliceKind::Merge, base, cur[base], cur[base + 1]});
      cur[base] += cur[base + 1];
      cur.erase(cur.begin() + base + 1);
    }
    base += 1;
  }
  // caps as in fmf
  std::vector<int> alive;
  for (size_t p = 0; p < side.group_labels.size(); ++p) alive.push_back(static_cast<int>(p));
  std::vector<std::pair<int, int>> arcs;
  for (size_t p = 0; p < side.group_labels.size(); ++p)
    if (side.match[p] >= 0 && side.match[p] > static_cast<int>(p))
      arcs.emplace_back(static_cast<int>(p), side.match[p]);
  while (!arcs.empty()) {
    bool progress = false;
    for (size_t ai = 0; ai < arcs.size(); ++ai) {
      auto [a, b] = arcs[ai];
      int pa = static_cast<int>(std::find(alive.begin(), alive.end(), a) - alive.begin());
      int pb = static_cast<int>(std::find(alive.begin(), alive.end(), b) - alive.begin());
      if (pb == pa + 1) {
        slices.push_back({SliceKind::Cap, pa, side.group_labels[a], 0});
        alive.erase(alive.begin() + pa, alive.begin() + pa + 2);
        arcs.erase(arcs.begin() + ai);
        progress = true;
        break;
      }
    }
    if (!progress) throw std::logic_error("mfm_bottom_slices: stuck arcs");
  }
  return slices;
}

}  // namespace

std::vector<WebDiagram> enumerate_mfm(const Word& K, const Word& L) {
  std::vector<WebDiagram> out;
  Word k0 = drop_zeros(K), l0 = drop_zeros(L);
  std::vector<MfmSide> bots, tops;
  mfm_side_structures(k0, bots);
  mfm_side_structures(l0, tops);
  for (const auto& bot : bots) {
    auto bslices = mfm_bottom_slices(k0, bot);
    Word B;
    for (int p : bot.through) B.push_back(bot.group_labels[p]);
    for (const auto& top : tops) {
      Word T;
      for (int p : top.through) T.push_back(top.group_labels[p]);
      if (B.size() != T.size()) continue;
      {
        Word bs = B, ts = T;
        std::sort(bs.begin(), bs.end());
        std::sort(ts.begin(), ts.end());
        if (bs != ts) continue;
      }
      // all label-preserving bijections (trivial blocks)
      int n = static_cast<int>(B.size());
      std::vector<int> perm(n, -1);
      std::vector<bool> used(n, false);
      std::vector<std::vector<int>> perms;
      std::function<void(int)> rec = [&](int p) {
        if (p == n) {
          perms.push_back(perm);
          return;
        }
        for (int t = 0; t < n; ++t) {
          if (used[t] || B[p] != T[t]) continue;
          // canonical: equal labels in order (avoids duplicate diagrams)
          for (int q = 0; q < p; ++q)
            if (B[q] == B[p] && perm[q] > t) goto next;
          perm[p] = t;
          used[t] = true;
          rec(p + 1);
          used[t] = false;
          perm[p] = -1;
        next:;
        }
      };
      rec(0);
      auto tsl = mfm_bottom_slices(l0, top);
      WebDiagram top_part = flipped(WebDiagram::make(l0, tsl));
      for (const auto& pm : perms) {
        std::vector<GeneratorSlice> slices = bslices;
        auto mid = crossing_slices(B, pm);
        slices.insert(slices.end(), mid.begin(), mid.end());
        slices.insert(slices.end(), top_part.slices.begin(), top_part.slices.end());
        out.push_back(WebDiagram::make(k0, slices));
      }
    }
  }
  return out;
}

bool fmf_zones_ok(const WebDiagram& d) {
  int zone = 0;  // 0: splits/caps, 1: crossings, 2: merges/cups
  for (const auto& s : d.slices) {
    int need;
    switch (s.kind) {
      case SliceKind::Split:
      case SliceKind::Cap: need = 0; break;
      case SliceKind::Cross: need = 1; break;
      default: need = 2; break;
    }
    if (need < zone) return false;
    zone = need;
  }
  return true;
}

std::string render_svg(const WebDiagram& d) {
  // deterministic grid drawing: one horizontal band per slice
  std::vector<Word> levels{d.source};
  for (const auto& s : d.slices) levels.push_back(apply_slice(levels.back(), s));
  const int ux = 48, uy = 56, margin = 24;
  size_t maxw = 1;
  for (const auto& w : levels) maxw = std::max(maxw, w.size());
  int width = static_cast<int>(maxw) * ux + 2 * margin;
  int height = static_cast<int>(d.slices.size() + 1) * uy + 2 * margin;
  std::ostringstream svg;
  svg << "<svg xmlns=\"http://www.w3.org/2000/svg\" version=\"1.1\" width=\"" << width
      << "\" height=\"" << height << "\">\n";
  svg << "<rect x=\"0\" y=\"0\" width=\"" << width << "\" height=\"" << height
      << "\" fill=\"white\" stroke=\"black\"/>\n";
  auto X = [&](int pos) { return margin + pos * ux + ux / 2; };
  auto Y = [&](size_t level) { return height - margin - static_cast<int>(level) * uy; };
  auto line = [&](int x1, int y1, int x2, int y2) {
    svg << "<line x1=\"" << x1 << "\" y1=\"" << y1 << "\" x2=\"" << x2 << "\" y2=\"" << y2
        << "\" stroke=\"black\" stroke-width=\"2\"/>\n";
  };
  auto label = [&](int x, int y, int k) {
    svg << "<text x=\"" << x + 4 << "\" y=\"" << y - 4 << "\" font-size=\"12\">" << k
        << "</text>\n";
  };
  // boundary labels
  for (size_t p = 0; p < d.source.size(); ++p) label(X(static_cast<int>(p)), Y(0), d.source[p]);
  for (size_t lv = 0; lv < d.slices.size(); ++lv) {
    const Word& w = levels[lv];
    const GeneratorSlice& s = d.slices[lv];
    int y0 = Y(lv), y1 = Y(lv + 1);
    int n = static_cast<int>(w.size());
    auto straight_map = [&](int p) {
      // position of strand p at the next level
      switch (s.kind) {
        case SliceKind::Merge: return p <= s.pos ? p : (p == s.pos + 1 ? s.pos : p - 1);
        case SliceKind::Split: return p <= s.pos ? p : p + 1;
        case SliceKind::Cross: return p == s.pos ? p + 1 : (p == s.pos + 1 ? p - 1 : p);
        case SliceKind::Cap: return p < s.pos ? p : (p > s.pos + 1 ? p - 2 : -1);
        case SliceKind::Cup: return p < s.pos ? p : p + 2;
      }
      return p;
    };
    for (int p = 0; p < n; ++p) {
      int q = straight_map(p);
      if (s.kind == SliceKind::Cap && (p == s.pos || p == s.pos + 1)) continue;
      if (s.kind == SliceKind::Cross && (p == s.pos || p == s.pos + 1)) {
        line(X(p), y0, X(q), y1);
        continue;
      }
      if (s.kind == SliceKind::Merge && (p == s.pos || p == s.pos + 1)) {
        line(X(p), y0, X(s.pos), y1);
        continue;
      }
      if (s.kind == SliceKind::Split && p == s.pos) {
        line(X(p), y0, X(s.pos), y1);
        line(X(p), y0, X(s.pos + 1), y1);
        continue;
      }
      line(X(p), y0, X(q), y1);
    }
    if (s.kind == SliceKind::Cap) {
      svg << "<path d=\"M " << X(s.pos) << " " << y0 << " Q " << (X(s.pos) + X(s.pos + 1)) / 2
          << " " << (y0 + y1) / 2 << " " << X(s.pos + 1) << " " << y0
          << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
    }
    if (s.kind == SliceKind::Cup) {
      svg << "<path d=\"M " << X(s.pos) << " " << y1 << " Q " << (X(s.pos) + X(s.pos + 1)) / 2
          << " " << (y0 + y1) / 2 << " " << X(s.pos + 1) << " " << y1
          << "\" fill=\"none\" stroke=\"black\" stroke-width=\"2\"/>\n";
    }
    // level labels
    const Word& w1 = levels[lv + 1];
    for (size_t p = 0; p < w1.size(); ++p) label(X(static_cast<int>(p)), y1, w1[p]);
  }
  svg << "</svg>\n";
  return svg.str();
}

// ----- JSON ---------------------------------------------------------------

using nlohmann::json;

static json slice_to_json(const GeneratorSlice& s) {
  json j;
  j["kind"] = slice_kind_name(s.kind);
  j["pos"] = s.pos;
  switch (s.kind) {
    case SliceKind::Merge:
    case SliceKind::Split:
    case SliceKind::Cross:
      j["k"] = s.k;
      j["l"] = s.l;
      break;
    case SliceKind::Cap:
    case SliceKind::Cup:
      j["k"] = s.k;
      break;
  }
  return j;
}

static GeneratorSlice slice_from_json(const json& j) {
  GeneratorSlice s;
  s.kind = slice_kind_from(j.at("kind").get<std::string>());
  s.pos = j.at("pos").get<int>();
  s.k = j.value("k", 0);
  s.l = j.value("l", 0);
  return s;
}

std::string diagram_to_json(const WebDiagram& d) {
  json j;
  j["source"] = d.source;
  j["target"] = d.target;
  j["slices"] = json::array();
  for (const auto& s : d.slices) j["slices"].push_back(slice_to_json(s));
  return j.dump();
}

WebDiagram diagram_from_json(const std::string& text) {
  json j = json::parse(text);
  Word source = j.at("source").get<Word>();
  std::vector<GeneratorSlice> slices;
  for (const auto& js : j.at("slices")) slices.push_back(slice_from_json(js));
  WebDiagram d = WebDiagram::make(source, std::move(slices));
  if (j.contains("target")) {
    Word target = j.at("target").get<Word>();
    if (target != d.target) throw std::invalid_argument("diagram JSON: target mismatch");
  }
  return d;
}

Scalar parse_scalar(const FieldSpec& spec, const std::string& text) {
  // forms: "n", "n/d", "a+bi", "a-bi", "bi", "i", "-i"
  std::string s = text;
  auto parse_q = [&](std::string t) -> mpq_class {
    if (t.empty() || t == "+") return 1;
    if (t == "-") return -1;
    if (t[0] == '+') t = t.substr(1);
    mpq_class q(t);
    q.canonicalize();
    return q;
  };
  size_t ipos = s.find('i');
  if (ipos == std::string::npos) return Scalar(spec, parse_q(s));
  std::string before = s.substr(0, ipos);
  // split before into real part and imaginary coefficient
  size_t split = std::string::npos;
  for (size_t t = before.size(); t-- > 1;) {
    if ((before[t] == '+' || before[t] == '-') && before[t - 1] != '/') {
      split = t;
      break;
    }
  }
  std::string re = "0", imc;
  if (split == std::string::npos) {
    imc = before;
  } else {
    re = before.substr(0, split);
    imc = before.substr(split);
  }
  return Scalar::gaussian(spec, parse_q(re), parse_q(imc));
}

std::string morphism_to_json(const WebMorphism& m) {
  json j;
  j["source"] = m.source;
  j["target"] = m.target;
  j["terms"] = json::array();
  for (const auto& [d, c] : m.terms) {
    json t;
    t["coeff"] = c.str();
    t["diagram"] = json::parse(diagram_to_json(d));
    j["terms"].push_back(t);
  }
  return j.dump();
}

WebMorphism morphism_from_json(const std::string& text, const FieldSpec& spec) {
  json j = json::parse(text);
  if (!j.contains("terms")) {
    WebDiagram d = diagram_from_json(text);
    return WebMorphism::from_diagram(d, Scalar::one(spec));
  }
  Word src = j.at("source").get<Word>();
  Word tgt = j.at("target").get<Word>();
  WebMorphism m = WebMorphism::zero(src, tgt);
  for (const auto& t : j.at("terms")) {
    WebDiagram d = diagram_from_json(t.at("diagram").dump());
    m.add(d, parse_scalar(spec, t.at("coeff").get<std::string>()));
  }
  return m;
}

}  // namespace oweb
