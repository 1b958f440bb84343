#pragma once

#include <vector>

#include "oweb/field.hpp"
#include "oweb/webcat.hpp"

namespace oweb {

/// Colored Brauer diagram: a perfect matching of b bottom and t top points,
/// matched points share a color. Points are indexed bottom first (left to
/// right), then top.
struct ColoredBrauerDiagram {
  std::vector<int> bottom_colors;
  std::vector<int> top_colors;
  std::vector<int> match;  // involution without fixed points on b+t points

  int b() const { return static_cast<int>(bottom_colors.size()); }
  int t() const { return static_cast<int>(top_colors.size()); }
  int color_of(int point) const {
    return point < b() ? bottom_colors[point] : top_colors[point - b()];
  }
  void validate() const;

  static ColoredBrauerDiagram identity(const std::vector<int>& colors);
  bool operator==(const ColoredBrauerDiagram&) const = default;
};

struct LoopParams {
  std::vector<Scalar> d;  // one per color
};

/// Stack g on top of f, trace out the middle row; the scalar is the product
/// of loop parameters over closed middle loops.
std::pair<Scalar, ColoredBrauerDiagram> compose_brauer(const ColoredBrauerDiagram& g,
                                                       const ColoredBrauerDiagram& f,
                                                       const LoopParams& params);

/// All color-respecting perfect matchings between the two boundary words.
std::vector<ColoredBrauerDiagram> brauer_hom_basis(const std::vector<int>& bottom,
                                                   const std::vector<int>& top);

/// Trace by closure of an endomorphism diagram (bottom and top words equal).
Scalar brauer_trace(const ColoredBrauerDiagram& d, const LoopParams& params);

/// Gram matrix tr(g o f) over the diagram bases of Hom(K, L) and Hom(L, K).
std::vector<std::vector<Scalar>> brauer_gram(const std::vector<int>& K,
                                             const std::vector<int>& L,
                                             const LoopParams& params);

/// Functor into webs: color i becomes a strand of thickness color_labels[i].
WebDiagram brauer_to_web(const ColoredBrauerDiagram& d, const std::vector<int>& color_labels);

}  // namespace oweb
