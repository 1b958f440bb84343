#include "oweb/brauer.hpp"

#include <algorithm>
#include <numeric>
#include <stdexcept>

namespace oweb {

void ColoredBrauerDiagram::validate() const {
  int n = b() + t();
  if (static_cast<int>(match.size()) != n)
    throw std::invalid_argument("brauer: match size mismatch");
  for (int p = 0; p < n; ++p) {
    if (match[p] == p || match[p] < 0 || match[p] >= n || match[match[p]] != p)
      throw std::invalid_argument("brauer: not a perfect matching");
    if (color_of(p) != color_of(match[p]))
      throw std::invalid_argument("brauer: matched points of different colors");
  }
}

ColoredBrauerDiagram ColoredBrauerDiagram::identity(const std::vector<int>& colors) {
  ColoredBrauerDiagram d;
  d.bottom_colors = colors;
  d.top_colors = colors;
  int n = static_cast<int>(colors.size());
  d.match.resize(2 * n);
  for (int p = 0; p < n; ++p) {
    d.match[p] = n + p;
    d.match[n + p] = p;
  }
  return d;
}

std::pair<Scalar, ColoredBrauerDiagram> compose_brauer(const ColoredBrauerDiagram& g,
                                                       const ColoredBrauerDiagram& f,
                                                       const LoopParams& params) {
  if (f.top_colors != g.bottom_colors)
    throw std::invalid_argument("compose_brauer: color mismatch");
  f.validate();
  g.validate();
  const FieldSpec spec = params.d.empty() ? FieldSpec::rationals() : params.d[0].spec();
  int a = f.b(), mid = f.t(), c = g.t();
  // nodes: 0..a-1 new bottom, a..a+mid-1 middle, a+mid..a+mid+c-1 new top
  int nn = a + mid + c;
  // explicit edges so parallel arcs traverse correctly
  std::vector<std::pair<int, int>> edges;
  std::vector<std::vector<int>> inc(nn);  // incident edge ids
  auto add_edge = [&](int u, int v) {
    inc[u].push_back(static_cast<int>(edges.size()));
    inc[v].push_back(static_cast<int>(edges.size()));
    edges.emplace_back(u, v);
  };
  for (int p = 0; p < a + mid; ++p)
    if (f.match[p] > p) add_edge(p, f.match[p]);  // f indexes nodes 0..a+mid-1
  for (int p = 0; p < mid + c; ++p)
    if (g.match[p] > p) add_edge(a + p, a + g.match[p]);
  auto is_boundary = [&](int node) { return node < a || node >= a + mid; };
  auto other_end = [&](int eid, int node) {
    return edges[eid].first == node ? edges[eid].second : edges[eid].first;
  };

  ColoredBrauerDiagram out;
  out.bottom_colors = f.bottom_colors;
  out.top_colors = g.top_colors;
  out.match.assign(a + c, -1);
  auto out_index = [&](int node) { return node < a ? node : node - mid; };

  std::vector<bool> edge_used(edges.size(), false);
  Scalar scalar = Scalar::one(spec);
  // boundary-to-boundary paths
  for (int s = 0; s < nn; ++s) {
    if (!is_boundary(s)) continue;
    if (inc[s].size() != 1) throw std::logic_error("compose_brauer: boundary degree");
    if (edge_used[inc[s][0]]) continue;
    int e = inc[s][0];
    int cur = s;
    while (true) {
      edge_used[e] = true;
      cur = other_end(e, cur);
      if (is_boundary(cur)) break;
      e = (inc[cur][0] == e) ? inc[cur][1] : inc[cur][0];
    }
    out.match[out_index(s)] = out_index(cur);
    out.match[out_index(cur)] = out_index(s);
  }
  // remaining edges form middle loops
  for (int s = a; s < a + mid; ++s) {
    int start_edge = -1;
    for (int e : inc[s])
      if (!edge_used[e]) start_edge = e;
    if (start_edge < 0) continue;
    int color = f.top_colors[s - a];
    int e = start_edge, cur = s;
    do {
      edge_used[e] = true;
      cur = other_end(e, cur);
      e = (inc[cur][0] == e) ? inc[cur][1] : inc[cur][0];
    } while (cur != s);
    if (color >= static_cast<int>(params.d.size()))
      throw std::invalid_argument("compose_brauer: missing loop parameter");
    scalar *= params.d[color];
  }
  out.validate();
  return {scalar, out};
}

std::vector<ColoredBrauerDiagram> brauer_hom_basis(const std::vector<int>& bottom,
                                                   const std::vector<int>& top) {
  std::vector<ColoredBrauerDiagram> out;
  int n = static_cast<int>(bottom.size() + top.size());
  std::vector<int> colors;
  for (int c : bottom) colors.push_back(c);
  for (int c : top) colors.push_back(c);
  std::vector<int> match(n, -1);
  std::function<void(int)> rec = [&](int p) {
    if (p == n) {
      ColoredBrauerDiagram d;
      d.bottom_colors = bottom;
      d.top_colors = top;
      d.match = match;
      out.push_back(d);
      return;
    }
    if (match[p] >= 0) {
      rec(p + 1);
      return;
    }
    for (int q = p + 1; q < n; ++q) {
      if (match[q] >= 0 || colors[q] != colors[p]) continue;
      match[p] = q;
      match[q] = p;
      rec(p + 1);
      match[p] = match[q] = -1;
    }
  };
  rec(0);
  return out;
}

Scalar brauer_trace(const ColoredBrauerDiagram& d, const LoopParams& params) {
  if (d.bottom_colors != d.top_colors)
    throw std::invalid_argument("brauer_trace: boundary mismatch");
  d.validate();
  const FieldSpec spec = params.d.empty() ? FieldSpec::rationals() : params.d[0].spec();
  int n = d.b();
  // close bottom i with top i; count loops of the resulting 1-manifold
  std::vector<bool> seen(2 * n, false);
  Scalar scalar = Scalar::one(spec);
  for (int start = 0; start < 2 * n; ++start) {
    if (seen[start]) continue;
    int color = d.color_of(start);
    int cur = start;
    while (!seen[cur]) {
      seen[cur] = true;
      int partner = d.match[cur];
      seen[partner] = true;
      // closure edge: bottom i <-> top i
      cur = partner < n ? partner + n : partner - n;
    }
    if (color >= static_cast<int>(params.d.size()))
      throw std::invalid_argument("brauer_trace: missing loop parameter");
    scalar *= params.d[color];
  }
  return scalar;
}

std::vector<std::vector<Scalar>> brauer_gram(const std::vector<int>& K,
                                             const std::vector<int>& L,
                                             const LoopParams& params) {
  auto fs = brauer_hom_basis(K, L);
  auto gs = brauer_hom_basis(L, K);
  std::vector<std::vector<Scalar>> G;
  for (const auto& f : fs) {
    std::vector<Scalar> row;
    for (const auto& g : gs) {
      auto [c, d] = compose_brauer(g, f, params);
      row.push_back(c * brauer_trace(d, params));
    }
    G.push_back(std::move(row));
  }
  return G;
}

WebDiagram brauer_to_web(const ColoredBrauerDiagram& d, const std::vector<int>& color_labels) {
  d.validate();
  int b = d.b(), t = d.t();
  auto label = [&](int point) { return color_labels.at(d.color_of(point)); };
  Word source;
  for (int p = 0; p < b; ++p) source.push_back(label(p));
  std::vector<GeneratorSlice> slices;
  // current strands: original point ids of bottom endpoints
  std::vector<int> cur;
  for (int p = 0; p < b; ++p) cur.push_back(p);
  Word curw = source;

  auto cross_to_adjacent = [&](int pa, int pb) {
    // bubble strand at index pb left to pa+1
    for (int q = pb; q > pa + 1; --q) {
      slices.push_back({SliceKind::Cross, q - 1, curw[q - 1], curw[q]});
      std::swap(curw[q - 1], curw[q]);
      std::swap(cur[q - 1], cur[q]);
    }
  };

  // 1. caps for bottom-bottom arcs
  while (true) {
    int pa = -1, pb = -1;
    for (size_t i = 0; i < cur.size() && pa < 0; ++i) {
      int partner = d.match[cur[i]];
      if (partner < b) {
        pa = static_cast<int>(i);
        for (size_t j = i + 1; j < cur.size(); ++j)
          if (cur[j] == partner) pb = static_cast<int>(j);
      }
    }
    if (pa < 0) break;
    cross_to_adjacent(pa, pb);
    slices.push_back({SliceKind::Cap, pa, curw[pa], 0});
    curw.erase(curw.begin() + pa, curw.begin() + pa + 2);
    cur.erase(cur.begin() + pa, cur.begin() + pa + 2);
  }

  // 2. permutation of through strands to match the order of top endpoints
  std::vector<int> through_tops;  // top point ids in order of cur
  for (int id : cur) through_tops.push_back(d.match[id] - b);
  // sort by target position via bubble crossings
  for (size_t i = 0; i < through_tops.size(); ++i) {
    // find the strand with the smallest target and move it to slot i
    size_t best = i;
    for (size_t j = i + 1; j < through_tops.size(); ++j)
      if (through_tops[j] < through_tops[best]) best = j;
    for (size_t q = best; q > i; --q) {
      slices.push_back({SliceKind::Cross, static_cast<int>(q - 1), curw[q - 1], curw[q]});
      std::swap(curw[q - 1], curw[q]);
      std::swap(through_tops[q - 1], through_tops[q]);
    }
  }

  // 3. cups for top-top arcs, inserted right to left at their final slots
  // remaining top points: through targets (sorted) plus top-top pairs.
  // build the full top word order and insert cups so labels line up.
  std::vector<int> top_order;  // top point ids currently present (through)
  for (int q : through_tops) top_order.push_back(q);
  // insert top-top pairs by increasing left endpoint
  std::vector<std::pair<int, int>> arcs;
  for (int q = 0; q < t; ++q) {
    int partner = d.match[b + q];
    if (partner >= b && partner - b > q) arcs.emplace_back(q, partner - b);
  }
  std::sort(arcs.begin(), arcs.end());
  // repeatedly insert an arc whose endpoints are adjacent in the final word
  std::vector<std::pair<int, int>> pending = arcs;
  while (!pending.empty()) {
    bool progress = false;
    for (size_t ai = 0; ai < pending.size(); ++ai) {
      auto [qa, qb] = pending[ai];
      // position where qa belongs in top_order, qb must sit right after
      size_t pos = 0;
      while (pos < top_order.size() && top_order[pos] < qa) ++pos;
      bool adjacent_free = (pos == top_order.size() || top_order[pos] > qb);
      if (!adjacent_free) continue;
      int lab = color_labels.at(d.top_colors[qa]);
      slices.push_back({SliceKind::Cup, static_cast<int>(pos), lab, 0});
      curw.insert(curw.begin() + pos, 2, lab);
      top_order.insert(top_order.begin() + pos, {qa, qb});
      pending.erase(pending.begin() + ai);
      progress = true;
      break;
    }
    if (!progress) throw std::logic_error("brauer_to_web: stuck cup insertion");
  }
  return WebDiagram::make(source, std::move(slices));
}

}  // namespace oweb
