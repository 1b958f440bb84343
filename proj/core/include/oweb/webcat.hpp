#pragma once

#include <map>
#include <string>
#include <vector>

#include "oweb/field.hpp"

namespace oweb {

/// Object of the web category: a tuple of strand thicknesses. Zero labels
/// are legal inside diagrams; drop_zeros gives the boundary normal form.
using Word = std::vector<int>;
Word drop_zeros(const Word& w);
int total_thickness(const Word& w);

enum class SliceKind { Merge, Split, Cross, Cap, Cup };
std::string slice_kind_name(SliceKind k);
SliceKind slice_kind_from(const std::string& s);

/// One generator applied at a position, identity elsewhere.
///  Merge: (k, l) at pos, pos+1 -> k+l
///  Split: k+l at pos -> (k, l)
///  Cross: (k, l) -> (l, k)
///  Cap:   (k, k) at pos, pos+1 -> removed
///  Cup:   inserts (k, k) at pos
struct GeneratorSlice {
  SliceKind kind;
  int pos = 0;
  int k = 0;
  int l = 0;

  auto operator<=>(const GeneratorSlice&) const = default;
};

Word apply_slice(const Word& w, const GeneratorSlice& s);

struct WebDiagram {
  Word source;
  Word target;
  std::vector<GeneratorSlice> slices;

  static WebDiagram identity(const Word& w) { return {w, w, {}}; }
  /// Computes the target by replaying slices; throws on invalid chains.
  static WebDiagram make(const Word& source, std::vector<GeneratorSlice> slices);

  auto operator<=>(const WebDiagram&) const = default;
};

WebDiagram compose(const WebDiagram& g, const WebDiagram& f);
WebDiagram tensor(const WebDiagram& f, const WebDiagram& g);
/// Top-bottom mirror: merges <-> splits, caps <-> cups.
WebDiagram flipped(const WebDiagram& d);

/// Finitely supported formal combination of diagrams sharing boundaries.
struct WebMorphism {
  Word source;
  Word target;
  std::map<WebDiagram, Scalar> terms;

  static WebMorphism from_diagram(const WebDiagram& d, const Scalar& c);
  static WebMorphism zero(const Word& src, const Word& tgt) { return {src, tgt, {}}; }

  void add(const WebDiagram& d, const Scalar& c);
  WebMorphism operator+(const WebMorphism& o) const;
  WebMorphism scaled(const Scalar& c) const;
};

WebMorphism compose(const WebMorphism& g, const WebMorphism& f);
WebMorphism tensor(const WebMorphism& f, const WebMorphism& g);

/// Ladder diagrams at the adjacent strand pair (i, i+1), 1-based i.
/// E: moves a from strand i+1 to i; F: the reverse; Efish/Ffish: the cup and
/// cap ladders raising/lowering both strands by a.
enum class LadderKind { E, F, Efish, Ffish };
WebDiagram ladder(LadderKind kind, int a, int i, const Word& K);

enum class RotateDir { UpLeft, UpRight, DownLeft, DownRight };
WebDiagram rotate(const WebDiagram& d, RotateDir dir);

/// Closure of an endomorphism diagram (trace as a diagram from/to the empty
/// word).
WebDiagram closure(const WebDiagram& d);

/// fmf sandwich diagrams K -> L: splits and caps, then shortest-coset
/// crossings of the through strands, then merges and cups.
std::vector<WebDiagram> enumerate_fmf(const Word& K, const Word& L);
/// mfm sandwich diagrams K -> L: merges and caps, crossings, splits and cups.
std::vector<WebDiagram> enumerate_mfm(const Word& K, const Word& L);

/// Structural check used by tests: slices appear bottom-up in the fmf zones.
bool fmf_zones_ok(const WebDiagram& d);

std::string render_svg(const WebDiagram& d);

std::string diagram_to_json(const WebDiagram& d);
WebDiagram diagram_from_json(const std::string& text);
std::string morphism_to_json(const WebMorphism& m);
WebMorphism morphism_from_json(const std::string& text, const FieldSpec& spec);
Scalar parse_scalar(const FieldSpec& spec, const std::string& text);

}  // namespace oweb
