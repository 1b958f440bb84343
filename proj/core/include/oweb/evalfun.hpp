#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "oweb/combin.hpp"
#include "oweb/linalg.hpp"
#include "oweb/webcat.hpp"

namespace oweb {

/// Basis bookkeeping for Lambda^{k_1} (x) ... (x) Lambda^{k_m} over F^N.
/// Factors are colex-ordered subset bases; the first factor is slowest.
struct TensorBasis {
  int N = 0;
  Word labels;
  long dim = 1;
  std::vector<long> dims;
  std::vector<long> strides;

  TensorBasis(int N, const Word& labels);
  long rank(const std::vector<Subset>& tuple) const;
  std::vector<Subset> tuple(long index) const;
};

/// Image of one generator under the presentation functor.
SparseMat generator_matrix(const GeneratorSlice& s, int N, const FieldSpec& spec);
SparseMat evaluate(const WebDiagram& d, int N, const FieldSpec& spec);
SparseMat evaluate(const WebMorphism& m, int N, const FieldSpec& spec);

/// Ladder as a morphism; nullopt when the label arithmetic leaves the web
/// category (a negative label), which evaluates to zero.
std::optional<WebDiagram> try_ladder(LadderKind kind, int a, int i, const Word& K);

using Params = std::map<std::string, long>;

struct RelationInstance {
  std::string relation;
  Params params;
};

std::vector<std::string> relation_ids();
std::vector<Params> relation_instances(const std::string& id, int N);
/// True iff both sides evaluate to equal matrices.
bool check_relation(const std::string& id, const Params& params, int N, const FieldSpec& spec);

struct UdotReport {
  long instances = 0;
  std::vector<std::string> failures;
  bool ok() const { return failures.empty(); }
};

/// Verifies the idempotented divided-power relations on ladder images over
/// all weights in Pi_m^{<=N} with divided powers up to a_max.
UdotReport check_udot_relations(int m, int N, int a_max, const FieldSpec& spec);

}  // namespace oweb
