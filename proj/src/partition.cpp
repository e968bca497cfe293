#include "ngclab/partition.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace ngclab {

PartitionFunctions PartitionFunctions::random(std::uint32_t t, std::uint32_t width, Engine& rng) {
  PartitionFunctions F;
  F.width = width;
  F.blocks.resize(t);
  for (auto& b : F.blocks) {
    b.fL = random_bits(2 * width, rng);
    b.fM = random_bits(2 * width, rng);
    b.fR = random_bits(2 * width, rng);
  }
  return F;
}

PartitionFunctions PartitionFunctions::constant(std::uint32_t t, std::uint32_t width, std::uint8_t fL,
                                                std::uint8_t fM, std::uint8_t fR) {
  PartitionFunctions F;
  F.width = width;
  F.blocks.assign(t, BlockFunctions{std::vector<std::uint8_t>(2 * width, fL), std::vector<std::uint8_t>(2 * width, fM),
                                    std::vector<std::uint8_t>(2 * width, fR)});
  return F;
}

std::vector<std::uint32_t> EdgeAssignment::indices_of(std::uint32_t player) const {
  if (player >= players) throw std::out_of_range("indices_of: player out of range");
  if (mode == AssignMode::stochastic) return samples.at(player);
  std::vector<std::uint32_t> out;
  for (std::uint32_t e = 0; e < owner.size(); ++e)
    if (owner[e] == player) out.push_back(e);
  return out;
}

std::vector<Edge> EdgeAssignment::edges_of(std::uint32_t player, const std::vector<Edge>& all) const {
  std::vector<Edge> out;
  for (auto e : indices_of(player)) out.push_back(all.at(e));
  return out;
}

EdgeAssignment assign_uniform(std::size_t edge_count, std::uint32_t players, const Seed& seed) {
  if (players < 1) throw std::invalid_argument("assign_uniform: need at least one player");
  EdgeAssignment a;
  a.mode = players == 2 ? AssignMode::two_player : AssignMode::l_player;
  a.players = players;
  a.owner.resize(edge_count);
  Engine rng = seed.engine();
  for (auto& o : a.owner) o = static_cast<std::uint16_t>(uniform_below(rng, players));
  return a;
}

namespace {

void require_block_form(const NgcInstance& instance, const char* who) {
  if (instance.form != Form::block) throw std::invalid_argument(std::string(who) + ": instance is not in block form");
  if (!instance.graph) throw std::invalid_argument(std::string(who) + ": instance graph unknown");
}

}  // namespace

EdgeAssignment assign_by_functions(const NgcInstance& instance, const PartitionFunctions& F, const Seed& seed) {
  require_block_form(instance, "assign_by_functions");
  if (F.blocks.size() != instance.t || F.width != instance.width)
    throw std::invalid_argument("assign_by_functions: partition functions do not match the instance shape");
  const std::uint32_t w = instance.width;
  for (const auto& b : F.blocks)
    if (b.fL.size() != 2 * w || b.fM.size() != 2 * w || b.fR.size() != 2 * w)
      throw std::invalid_argument("assign_by_functions: function domain is not [2w]");
  EdgeAssignment a = assign_uniform(instance.edges.size(), 2, seed);
  const auto& ms = instance.graph->matchings();
  for (std::uint32_t i = 0; i < instance.t; ++i) {
    const auto& f = F.blocks[i];
    for (std::uint32_t role = 0; role < 3; ++role) {
      const std::uint32_t mi = instance.pad_layers + 3 * i + role;
      const auto& mt = ms[mi];
      for (std::uint32_t g = 0; g < w; ++g) {
        for (std::uint32_t s = 0; s < 2; ++s) {
          const std::uint32_t e = mi * 2 * w + 2 * g + s;
          std::uint8_t o;
          if (role == 0)
            o = f.fL[2 * mt.pi[g] + (s ^ mt.cross[g])];
          else if (role == 1)
            o = f.fM[2 * g + s];
          else
            o = f.fR[2 * g + s];
          a.owner[e] = o;
        }
      }
    }
  }
  return a;
}

BlockLayout::BlockLayout(const NgcInstance& instance)
    : t_(instance.t), w_(instance.width), pad_(instance.pad_layers) {
  require_block_form(instance, "BlockLayout");
  const auto& ms = instance.graph->matchings();
  std::uint32_t g = 0;
  for (std::uint32_t mi = 0; mi < pad_; ++mi) g = ms[mi].pi[g];
  for (std::uint32_t i = 0; i < t_; ++i) {
    const auto& first = ms[pad_ + 3 * i];
    first_inverse_.push_back(inverse(first.pi));
    route_.push_back(first.pi[g] + 1);
    for (std::uint32_t r = 0; r < 3; ++r) g = ms[pad_ + 3 * i + r].pi[g];
    first_cross_.insert(first_cross_.end(), first.cross.begin(), first.cross.end());
  }
}

IndexEdges BlockLayout::index_edges(std::uint32_t block, std::uint32_t j) const {
  if (block < 1 || block > t_ || j < 1 || j > w_) throw std::out_of_range("index_edges: out of range");
  const std::uint32_t mi = pad_ + 3 * (block - 1);
  const std::uint32_t g0 = first_inverse_[block - 1][j - 1];
  const std::uint8_t cr = first_cross_[(block - 1) * w_ + g0];
  IndexEdges ie;
  for (std::uint32_t s = 0; s < 2; ++s) {
    ie.into[s] = mi * 2 * w_ + 2 * g0 + (s ^ cr);
    ie.middle[s] = (mi + 1) * 2 * w_ + 2 * (j - 1) + s;
    ie.out[s] = (mi + 2) * 2 * w_ + 2 * (j - 1) + s;
  }
  return ie;
}

std::uint32_t BlockLayout::route_of_group1(std::uint32_t block) const { return route_.at(block - 1); }

std::uint32_t clean_cap(std::uint32_t w, bool* substituted) {
  std::uint32_t c = w / 100;
  if (substituted) *substituted = c == 0;
  return std::max<std::uint32_t>(1, c);
}

std::uint32_t stochastic_clean_cap(std::uint32_t w, double c, bool* substituted) {
  auto cap = static_cast<std::uint32_t>(std::floor(static_cast<double>(w) / (2.0 * std::exp(9.0 * c))));
  if (substituted) *substituted = cap == 0;
  return std::max<std::uint32_t>(1, cap);
}

std::vector<std::uint32_t> clean_indices(const BlockFunctions& f, std::uint32_t w) {
  std::vector<std::uint32_t> out;
  for (std::uint32_t j = 1; j <= w; ++j) {
    const std::uint32_t a = 2 * (j - 1), b = a + 1;
    if (f.fL[a] == kBeta && f.fL[b] == kBeta && f.fM[a] == kAlpha && f.fM[b] == kAlpha && f.fR[a] == kBeta &&
        f.fR[b] == kBeta)
      out.push_back(j);
  }
  return out;
}

namespace {

BlockClean finish_block(std::vector<std::uint32_t> all, std::uint32_t cap, bool substituted, std::uint32_t route) {
  BlockClean bc;
  bc.clean_all = std::move(all);
  bc.w_c = cap;
  bc.w_c_substituted = substituted;
  bc.clean.assign(bc.clean_all.begin(), bc.clean_all.begin() + std::min<std::size_t>(cap, bc.clean_all.size()));
  bc.route = route;
  if (route != 0) {
    bc.active = std::binary_search(bc.clean_all.begin(), bc.clean_all.end(), route);
    bc.active_capped = std::binary_search(bc.clean.begin(), bc.clean.end(), route);
  }
  return bc;
}

void collect_active(CleanReport& r) {
  for (std::uint32_t i = 0; i < r.blocks.size(); ++i) {
    if (r.blocks[i].active) r.active.push_back(i + 1);
    if (r.blocks[i].active_capped) r.active_capped.push_back(i + 1);
  }
}

}  // namespace

CleanReport clean_indices(const NgcInstance& instance, const EdgeAssignment& assignment) {
  if (assignment.mode != AssignMode::two_player) throw std::invalid_argument("clean_indices: needs a two-player assignment");
  if (assignment.owner.size() != instance.edges.size()) throw std::invalid_argument("clean_indices: assignment size mismatch");
  BlockLayout layout(instance);
  const std::uint32_t w = instance.width;
  bool sub = false;
  const std::uint32_t cap = clean_cap(w, &sub);
  CleanReport r;
  for (std::uint32_t i = 1; i <= instance.t; ++i) {
    std::vector<std::uint32_t> all;
    for (std::uint32_t j = 1; j <= w; ++j) {
      IndexEdges ie = layout.index_edges(i, j);
      const auto& o = assignment.owner;
      if (o[ie.into[0]] == kBeta && o[ie.into[1]] == kBeta && o[ie.middle[0]] == kAlpha &&
          o[ie.middle[1]] == kAlpha && o[ie.out[0]] == kBeta && o[ie.out[1]] == kBeta)
        all.push_back(j);
    }
    r.blocks.push_back(finish_block(std::move(all), cap, sub, layout.route_of_group1(i)));
  }
  collect_active(r);
  return r;
}

CleanReport clean_indices(const NgcInstance& instance, const PartitionFunctions& F) {
  if (F.blocks.size() != instance.t || F.width != instance.width)
    throw std::invalid_argument("clean_indices: partition functions do not match the instance shape");
  const std::uint32_t w = instance.width;
  bool sub = false;
  const std::uint32_t cap = clean_cap(w, &sub);
  std::optional<BlockLayout> layout;
  if (instance.graph && instance.form == Form::block) layout.emplace(instance);
  CleanReport r;
  for (std::uint32_t i = 1; i <= instance.t; ++i)
    r.blocks.push_back(finish_block(clean_indices(F.blocks[i - 1], w), cap, sub,
                                    layout ? layout->route_of_group1(i) : 0));
  collect_active(r);
  return r;
}

CleanReport active_blocks(const NgcInstance& instance, const PartitionFunctions& F) {
  if (!instance.witness) throw std::invalid_argument("active_blocks: witness missing");
  return clean_indices(instance, F);
}

EdgeAssignment assign_batches(const NgcInstance& instance, std::uint32_t l, const Seed& seed) {
  if (!instance.batched()) throw std::invalid_argument("assign_batches: instance has no batches");
  if (l < 1) throw std::invalid_argument("assign_batches: need at least one player");
  std::uint32_t count = 0;
  for (auto b : instance.batches) count = std::max(count, b + 1);
  Engine rng = seed.engine();
  std::vector<std::uint16_t> batch_owner(count);
  for (auto& o : batch_owner) o = static_cast<std::uint16_t>(uniform_below(rng, l));
  EdgeAssignment a;
  a.mode = AssignMode::l_player;
  a.players = l;
  a.owner.resize(instance.edges.size());
  for (std::size_t e = 0; e < a.owner.size(); ++e) a.owner[e] = batch_owner[instance.batches[e]];
  return a;
}

SegmentLayout::SegmentLayout(const NgcInstance& instance)
    : s_(instance.s), t_(instance.t), w_(instance.width), pad_(instance.pad_layers) {
  if (instance.form != Form::segment || !instance.graph)
    throw std::invalid_argument("SegmentLayout: needs a segment-form instance with a known graph");
  const auto& ms = instance.graph->matchings();
  std::uint32_t g = 0, next = 0;
  for (std::uint32_t i = 1; i <= s_; ++i) {
    for (std::uint32_t a = 1; a <= t_; ++a) {
      const std::uint32_t mi = in_matching(i, a);
      for (; next <= mi; ++next) g = ms[next].pi[g];
      path_.push_back(g + 1);
      inv_.push_back(inverse(ms[mi].pi));
    }
  }
}

std::uint32_t SegmentLayout::in_matching(std::uint32_t i, std::uint32_t a) const {
  return pad_ + (2 * t_ + 1) * (i - 1) + 2 * (a - 1);
}

std::uint32_t SegmentLayout::path_group(std::uint32_t i, std::uint32_t a) const {
  return path_.at((i - 1) * t_ + (a - 1));
}

std::uint32_t SegmentLayout::edge_into(std::uint32_t i, std::uint32_t a, std::uint32_t j) const {
  const std::uint32_t mi = in_matching(i, a);
  const std::uint32_t g0 = inv_[(i - 1) * t_ + (a - 1)][j - 1];
  return mi * 2 * w_ + 2 * g0;
}

std::uint32_t SegmentLayout::edge_out(std::uint32_t i, std::uint32_t a, std::uint32_t j) const {
  return (in_matching(i, a) + 1) * 2 * w_ + 2 * (j - 1);
}

bool group_activates(const SegmentLayout& layout, const EdgeAssignment& assignment, std::uint32_t l,
                     std::uint32_t i, std::uint32_t a, std::uint32_t j, std::uint32_t* alpha,
                     std::uint32_t* beta) {
  const std::uint32_t q = l / layout.segments();
  const std::uint32_t lo = q * (i - 1), hi = q * i - 1;
  const std::uint32_t in_owner = assignment.owner[layout.edge_into(i, a, j)];
  const std::uint32_t out_owner = assignment.owner[layout.edge_out(i, a, j)];
  const bool ok = lo <= out_owner && out_owner < in_owner && in_owner <= hi;
  if (ok) {
    if (alpha) *alpha = in_owner + 1;
    if (beta) *beta = out_owner + 1;
  }
  return ok;
}

std::vector<SegmentActivity> active_segments(const NgcInstance& instance, const EdgeAssignment& assignment,
                                             std::uint32_t l) {
  if (l == 0 || l % instance.s != 0) throw std::invalid_argument("active_segments: l is not divisible by s");
  if (assignment.owner.size() != instance.edges.size())
    throw std::invalid_argument("active_segments: assignment size mismatch");
  SegmentLayout layout(instance);
  std::vector<SegmentActivity> out(instance.s);
  for (std::uint32_t i = 1; i <= instance.s; ++i) {
    auto& act = out[i - 1];
    for (std::uint32_t a = 1; a <= instance.t && !act.active; ++a) {
      if (group_activates(layout, assignment, l, i, a, layout.path_group(i, a), &act.alpha, &act.beta)) {
        act.active = true;
        act.a_star = a;
      }
    }
    if (!act.active) continue;
    for (std::uint32_t j = 1; j <= instance.width; ++j) {
      if (assignment.owner[layout.edge_into(i, act.a_star, j)] + 1u == act.alpha &&
          assignment.owner[layout.edge_out(i, act.a_star, j)] + 1u == act.beta)
        ++act.good_groups;
    }
  }
  return out;
}

std::size_t stochastic_sample_count(std::size_t edge_count, double c) {
  if (c < 0) throw std::invalid_argument("stochastic: c must be non-negative");
  const double x = c * static_cast<double>(edge_count) / 2.0;
  return static_cast<std::size_t>(std::ceil(x - 1e-9 * std::max(1.0, x)));
}

EdgeAssignment stochastic_assign(std::size_t edge_count, double c, const Seed& seed) {
  const std::size_t count = stochastic_sample_count(edge_count, c);
  if (count > 0 && edge_count == 0) throw std::invalid_argument("stochastic_assign: no edges to sample");
  EdgeAssignment a;
  a.mode = AssignMode::stochastic;
  a.players = 2;
  a.c = c;
  a.samples.resize(2);
  Engine rng = seed.engine();
  for (auto& side : a.samples) {
    side.resize(count);
    for (auto& e : side) e = static_cast<std::uint32_t>(uniform_below(rng, edge_count));
  }
  return a;
}

StochasticPresence stochastic_presence(const EdgeAssignment& assignment, std::size_t edge_count) {
  if (assignment.mode != AssignMode::stochastic) throw std::invalid_argument("stochastic_presence: mode mismatch");
  StochasticPresence p;
  p.in_a.assign(edge_count, 0);
  p.in_b.assign(edge_count, 0);
  for (auto e : assignment.samples[0]) ++p.in_a.at(e);
  for (auto e : assignment.samples[1]) ++p.in_b.at(e);
  return p;
}

CleanReport clean_indices_stochastic(const NgcInstance& instance, const EdgeAssignment& assignment) {
  if (assignment.mode != AssignMode::stochastic) throw std::invalid_argument("clean_indices_stochastic: mode mismatch");
  BlockLayout layout(instance);
  StochasticPresence p = stochastic_presence(assignment, instance.edges.size());
  const std::uint32_t w = instance.width;
  bool sub = false;
  const std::uint32_t cap = stochastic_clean_cap(w, assignment.c, &sub);
  auto bob_only = [&](std::uint32_t e) { return p.in_a[e] == 0 && p.in_b[e] > 0; };
  auto alice_only = [&](std::uint32_t e) { return p.in_b[e] == 0 && p.in_a[e] > 0; };
  CleanReport r;
  for (std::uint32_t i = 1; i <= instance.t; ++i) {
    std::vector<std::uint32_t> all;
    for (std::uint32_t j = 1; j <= w; ++j) {
      IndexEdges ie = layout.index_edges(i, j);
      if (bob_only(ie.into[0]) && bob_only(ie.into[1]) && bob_only(ie.out[0]) && bob_only(ie.out[1]) &&
          alice_only(ie.middle[0]) && alice_only(ie.middle[1]))
        all.push_back(j);
    }
    r.blocks.push_back(finish_block(std::move(all), cap, sub, layout.route_of_group1(i)));
  }
  collect_active(r);
  return r;
}

}  // namespace ngclab
