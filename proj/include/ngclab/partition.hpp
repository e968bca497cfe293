#pragma once

// Edge-partition models: uniform two-player splits, partition functions with
// clean indices and active blocks, l-player batch assignment with active
// segments, and stochastic sampling with repetition.
//
// Two-player ids: 0 is Alice (alpha), 1 is Bob (beta). Block and group
// indices are 1-based.

#include <array>
#include <cstdint>
#include <vector>

#include "ngclab/distributions.hpp"
#include "ngclab/rng.hpp"

namespace ngclab {

inline constexpr std::uint8_t kAlpha = 0;
inline constexpr std::uint8_t kBeta = 1;

// fL and fR are indexed by position in the layer, 2(group-1) + side.
struct BlockFunctions {
  std::vector<std::uint8_t> fL, fM, fR;
};

struct PartitionFunctions {
  std::uint32_t width = 0;
  std::vector<BlockFunctions> blocks;

  static PartitionFunctions random(std::uint32_t t, std::uint32_t width, Engine& rng);
  static PartitionFunctions constant(std::uint32_t t, std::uint32_t width, std::uint8_t fL, std::uint8_t fM,
                                     std::uint8_t fR);
};

enum class AssignMode : std::uint8_t { two_player, l_player, stochastic };

struct EdgeAssignment {
  AssignMode mode = AssignMode::two_player;
  std::uint32_t players = 2;
  std::vector<std::uint16_t> owner;                 // per edge, 0-based player
  std::vector<std::vector<std::uint32_t>> samples;  // stochastic: edge indices per player
  double c = 0.0;

  // Edge indices held by `player` (with repetition in stochastic mode).
  std::vector<std::uint32_t> indices_of(std::uint32_t player) const;
  std::vector<Edge> edges_of(std::uint32_t player, const std::vector<Edge>& all) const;
};

EdgeAssignment assign_uniform(std::size_t edge_count, std::uint32_t players, const Seed& seed);
EdgeAssignment assign_by_functions(const NgcInstance& instance, const PartitionFunctions& F, const Seed& seed);

// The six edges of index j in block i: into a^2_j, b^2_j; from a^2_j, b^2_j
// to layer 3; out of a^3_j, b^3_j. Layers are relative to the block.
struct IndexEdges {
  std::array<std::uint32_t, 2> into{};
  std::array<std::uint32_t, 2> middle{};
  std::array<std::uint32_t, 2> out{};
};

class BlockLayout {
 public:
  explicit BlockLayout(const NgcInstance& instance);
  std::uint32_t blocks() const { return t_; }
  std::uint32_t width() const { return w_; }
  IndexEdges index_edges(std::uint32_t block, std::uint32_t j) const;
  // sigma^i(1): the index block i routes group 1 through.
  std::uint32_t route_of_group1(std::uint32_t block) const;

 private:
  std::uint32_t t_, w_, pad_;
  std::vector<Perm> first_inverse_;  // inverse of the first perm of each block
  std::vector<std::uint32_t> route_;
  std::vector<std::uint8_t> first_cross_;
};

struct BlockClean {
  std::vector<std::uint32_t> clean_all;  // every clean index, ascending
  std::vector<std::uint32_t> clean;      // lexicographically-first w_c of them
  std::uint32_t w_c = 0;
  bool w_c_substituted = false;  // the paper's cap rounded to 0 and was raised to 1
  std::uint32_t route = 0;       // sigma^i(1), 0 if unknown
  bool active = false;           // route in clean_all
  bool active_capped = false;    // route in clean
};

struct CleanReport {
  std::vector<BlockClean> blocks;
  std::vector<std::uint32_t> active;  // 1-based block ids
  std::vector<std::uint32_t> active_capped;
  std::uint32_t t_a() const { return static_cast<std::uint32_t>(active.size()); }
};

// max(1, floor(w/100)).
std::uint32_t clean_cap(std::uint32_t w, bool* substituted = nullptr);
// max(1, floor(w / (2 e^{9c}))).
std::uint32_t stochastic_clean_cap(std::uint32_t w, double c, bool* substituted = nullptr);

// Clean indices of one block straight from its functions (uncapped).
std::vector<std::uint32_t> clean_indices(const BlockFunctions& f, std::uint32_t w);

CleanReport clean_indices(const NgcInstance& instance, const EdgeAssignment& assignment);
CleanReport clean_indices(const NgcInstance& instance, const PartitionFunctions& F);
// Same as clean_indices but requires the witness (block routes).
CleanReport active_blocks(const NgcInstance& instance, const PartitionFunctions& F);

EdgeAssignment assign_batches(const NgcInstance& instance, std::uint32_t l, const Seed& seed);

// Player ids in SegmentActivity are 1-based.
struct SegmentActivity {
  bool active = false;
  std::uint32_t a_star = 0;
  std::uint32_t alpha = 0;  // owner of the edges into the activating group
  std::uint32_t beta = 0;   // owner of the edges out of it
  std::uint32_t good_groups = 0;
};

class SegmentLayout {
 public:
  SegmentLayout(const NgcInstance& instance);
  std::uint32_t segments() const { return s_; }
  std::uint32_t per_segment() const { return t_; }
  std::uint32_t width() const { return w_; }
  // Group on group 1's path at the middle layer of Perm-XOR a of segment i.
  std::uint32_t path_group(std::uint32_t i, std::uint32_t a) const;
  // Representative edges into / out of group j at that layer.
  std::uint32_t edge_into(std::uint32_t i, std::uint32_t a, std::uint32_t j) const;
  std::uint32_t edge_out(std::uint32_t i, std::uint32_t a, std::uint32_t j) const;

 private:
  std::uint32_t in_matching(std::uint32_t i, std::uint32_t a) const;
  std::uint32_t s_, t_, w_, pad_;
  std::vector<Perm> inv_;  // inverse pi of each perm matching, by (i, a)
  std::vector<std::uint32_t> path_;
};

std::vector<SegmentActivity> active_segments(const NgcInstance& instance, const EdgeAssignment& assignment,
                                             std::uint32_t l);

// Does group j at Perm-XOR a of segment i activate segment i? Returns the
// 1-based (alpha, beta) when it does.
bool group_activates(const SegmentLayout& layout, const EdgeAssignment& assignment, std::uint32_t l,
                     std::uint32_t i, std::uint32_t a, std::uint32_t j, std::uint32_t* alpha = nullptr,
                     std::uint32_t* beta = nullptr);

EdgeAssignment stochastic_assign(std::size_t edge_count, double c, const Seed& seed);
std::size_t stochastic_sample_count(std::size_t edge_count, double c);

// Membership counts of each edge in the two sampled multisets.
struct StochasticPresence {
  std::vector<std::uint32_t> in_a, in_b;
};
StochasticPresence stochastic_presence(const EdgeAssignment& assignment, std::size_t edge_count);

CleanReport clean_indices_stochastic(const NgcInstance& instance, const EdgeAssignment& assignment);

}  // namespace ngclab
