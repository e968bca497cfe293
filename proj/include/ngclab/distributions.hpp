#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ngclab/gadgets.hpp"
#include "ngclab/graph.hpp"
#include "ngclab/rng.hpp"

namespace ngclab {

// A concrete instance. Edges are laid out as: gadget edges (graph.edges()
// order, identity padding layers first), then auxiliary edges as the pairs
// (a^d_j, a^1_j), (b^d_j, b^1_j) for j = 1..m, then any augmentation edges.
struct NgcInstance {
  std::uint32_t n = 0;
  std::uint32_t k = 0;  // depth of the layered graph, i.e. the cycle parameter
  std::uint32_t m = 0;
  std::uint32_t t = 0;
  std::uint32_t s = 1;
  Form form = Form::block;
  std::uint32_t width = 0;
  std::uint32_t pad_layers = 0;  // identity layers in front of the core
  std::optional<int> theta;
  std::optional<Witness> witness;
  std::optional<GroupLayeredGraph> graph;

  std::vector<Edge> edges;
  std::size_t gadget_edge_count = 0;
  std::size_t aux_edge_count = 0;
  std::vector<std::int64_t> weights;   // empty, or one per edge
  std::vector<std::uint32_t> batches;  // empty, or one batch id per edge

  std::uint32_t depth() const { return k; }
  bool has_aux() const { return aux_edge_count > 0; }
  bool weighted() const { return !weights.empty(); }
  bool batched() const { return !batches.empty(); }
  std::uint32_t vertex(std::uint32_t layer, std::uint32_t group, Side side) const {
    return vertex_id({layer, group, side}, width);
  }
};

// sigma^t-forcing sampler: Sigma and all but the last gadget uniform, then
// x^last_{sigma^last(j)} set so that the parity of group j equals target[j-1]
// for every constrained j; other coordinates uniform.
Witness sample_constrained_witness(Form form, std::uint32_t s, std::uint32_t t, std::uint32_t width,
                                   const std::vector<std::optional<int>>& target, Engine& rng);

// Instance from a witness; aux edges for groups 1..m if requested.
NgcInstance instance_from_witness(const Witness& w, std::uint32_t m, bool with_aux,
                                  std::optional<int> theta);

NgcInstance sample_ngc(std::uint32_t n, std::uint32_t k, const Seed& seed,
                       std::optional<int> force_theta = std::nullopt);

// h in [0, m]: parity 0 for groups <= h, 1 for groups in (h, m].
NgcInstance sample_hybrid(std::uint32_t m, std::uint32_t t, std::uint32_t h, const Seed& seed,
                          bool with_aux = false);
NgcInstance sample_hybrid_batched(std::uint32_t m, std::uint32_t s, std::uint32_t t, std::uint32_t h,
                                  const Seed& seed, bool with_aux = false);

struct DhxSample {
  Witness witness;
  GroupLayeredGraph graph;
  int answer = 0;  // parity of group 1
};
DhxSample sample_dhx(std::uint32_t w, std::uint32_t t, const Seed& seed);
DhxSample sample_dhx_batched(std::uint32_t w, std::uint32_t s, std::uint32_t t, const Seed& seed);

// Prepend identity layers to a core instance so that its depth becomes k.
// The core depth must be k (no-op), k-1 (k = 2 mod 3) or k-2 (k = 0 mod 3).
NgcInstance pad_to_k(const NgcInstance& core, std::uint32_t k);

// Any k >= 4: samples the core at the depth the padding rule prescribes.
NgcInstance sample_ngc_padded(std::uint32_t n, std::uint32_t k, const Seed& seed,
                              std::optional<int> force_theta = std::nullopt);
std::uint32_t padding_for(std::uint32_t k);

struct MstAugmentation {
  NgcInstance instance;
  bool degenerate = false;  // m == 1: the gap formula collapses
};
MstAugmentation mst_augment(const NgcInstance& instance, std::int64_t W);

NgcInstance sample_ngc_batched(std::uint32_t n, std::uint32_t k, std::uint32_t s, std::uint32_t t,
                               const Seed& seed, std::optional<int> force_theta = std::nullopt);

struct Validation {
  Census census;
  bool ok = true;
  std::string message;
};

// Census plus, when theta is known, the census law for that theta.
Validation validate_instance(const NgcInstance& instance);

// Expected census law for an unaugmented instance.
bool census_matches_law(const Census& c, std::uint32_t n, std::uint32_t k, int theta, std::string* why = nullptr);

}  // namespace ngclab
