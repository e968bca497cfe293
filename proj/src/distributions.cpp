#include "ngclab/distributions.hpp"

#include <stdexcept>

namespace ngclab {

namespace {

void check_block_shape(std::uint32_t n, std::uint32_t k) {
  if (k < 4 || (k - 1) % 3 != 0)
    throw std::invalid_argument("k = " + std::to_string(k) + " is not of the form k = 3t+1 with t >= 1");
  if (n == 0 || n % (4 * k) != 0)
    throw std::invalid_argument("n = " + std::to_string(n) + " is not a positive multiple of 4k = " +
                                std::to_string(4 * k));
}

void check_segment_shape(std::uint32_t n, std::uint32_t k, std::uint32_t s, std::uint32_t t) {
  if (s == 0 || t == 0) throw std::invalid_argument("s and t must be positive");
  if (k != (2 * t + 1) * s + 1)
    throw std::invalid_argument("k = " + std::to_string(k) + " does not equal (2t+1)s+1 = " +
                                std::to_string((2 * t + 1) * s + 1));
  if (n == 0 || n % (4 * k) != 0)
    throw std::invalid_argument("n = " + std::to_string(n) + " is not a positive multiple of 4k = " +
                                std::to_string(4 * k));
}

std::vector<std::optional<int>> hybrid_targets(std::uint32_t m, std::uint32_t h) {
  std::vector<std::optional<int>> target(2 * m);
  for (std::uint32_t j = 1; j <= m; ++j) target[j - 1] = j <= h ? 0 : 1;
  return target;
}

void append_aux(NgcInstance& inst) {
  const std::uint32_t d = inst.k;
  for (std::uint32_t j = 1; j <= inst.m; ++j) {
    inst.edges.push_back({inst.vertex(d, j, Side::a), inst.vertex(1, j, Side::a)});
    inst.edges.push_back({inst.vertex(d, j, Side::b), inst.vertex(1, j, Side::b)});
  }
  inst.aux_edge_count = 2 * static_cast<std::size_t>(inst.m);
}

void assign_pair_batches(NgcInstance& inst) {
  inst.batches.resize(inst.edges.size());
  for (std::size_t e = 0; e < inst.edges.size(); ++e) inst.batches[e] = static_cast<std::uint32_t>(e / 2);
}

}  // namespace

Witness sample_constrained_witness(Form form, std::uint32_t s, std::uint32_t t, std::uint32_t width,
                                   const std::vector<std::optional<int>>& target, Engine& rng) {
  if (target.size() > width) throw std::invalid_argument("sample_constrained_witness: too many targets");
  Witness w;
  w.form = form;
  w.s = s;
  w.t = t;
  const std::uint32_t count = s * t;
  for (std::uint32_t g = 0; g < count; ++g) w.sigma.push_back(random_permutation(width, rng));
  for (std::uint32_t g = 0; g < count; ++g) w.x.push_back(random_bits(width, rng));
  // The constrained groups hit distinct coordinates of the last gadget, so
  // overwriting them yields exactly the conditional uniform distribution.
  const std::uint32_t last = count - 1;
  for (std::uint32_t j = 0; j < target.size(); ++j) {
    if (!target[j]) continue;
    int acc = 0;
    for (std::uint32_t g = 0; g < last; ++g) acc ^= w.x[g][w.sigma[g][j]];
    w.x[last][w.sigma[last][j]] = static_cast<std::uint8_t>((*target[j] ^ acc) & 1);
  }
  return w;
}

NgcInstance instance_from_witness(const Witness& w, std::uint32_t m, bool with_aux,
                                  std::optional<int> theta) {
  NgcInstance inst;
  inst.graph = build_graph(w);
  inst.witness = w;
  inst.form = w.form;
  inst.s = w.s;
  inst.t = w.t;
  inst.width = w.width();
  inst.k = inst.graph->depth();
  inst.n = inst.graph->vertex_count();
  inst.m = m;
  inst.theta = theta;
  if (m > inst.width) throw std::invalid_argument("instance_from_witness: m exceeds width");
  inst.edges = inst.graph->edges();
  inst.gadget_edge_count = inst.edges.size();
  if (with_aux) append_aux(inst);
  if (w.form == Form::segment) assign_pair_batches(inst);
  return inst;
}

NgcInstance sample_ngc(std::uint32_t n, std::uint32_t k, const Seed& seed, std::optional<int> force_theta) {
  check_block_shape(n, k);
  const std::uint32_t t = (k - 1) / 3;
  const std::uint32_t m = n / (4 * k);
  Engine rng = seed.engine();
  int theta = force_theta ? (*force_theta & 1) : coin(rng);
  std::vector<std::optional<int>> target(2 * m);
  for (std::uint32_t j = 0; j < m; ++j) target[j] = theta;
  Witness w = sample_constrained_witness(Form::block, 1, t, 2 * m, target, rng);
  return instance_from_witness(w, m, true, theta);
}

NgcInstance sample_hybrid(std::uint32_t m, std::uint32_t t, std::uint32_t h, const Seed& seed, bool with_aux) {
  if (m == 0 || t == 0) throw std::invalid_argument("sample_hybrid: m and t must be positive");
  if (h > m) throw std::invalid_argument("sample_hybrid: h must lie in [0, m]");
  Engine rng = seed.engine();
  Witness w = sample_constrained_witness(Form::block, 1, t, 2 * m, hybrid_targets(m, h), rng);
  return instance_from_witness(w, m, with_aux, std::nullopt);
}

NgcInstance sample_hybrid_batched(std::uint32_t m, std::uint32_t s, std::uint32_t t, std::uint32_t h,
                                  const Seed& seed, bool with_aux) {
  if (m == 0 || s == 0 || t == 0) throw std::invalid_argument("sample_hybrid_batched: m, s, t must be positive");
  if (h > m) throw std::invalid_argument("sample_hybrid_batched: h must lie in [0, m]");
  Engine rng = seed.engine();
  Witness w = sample_constrained_witness(Form::segment, s, t, 2 * m, hybrid_targets(m, h), rng);
  return instance_from_witness(w, m, with_aux, std::nullopt);
}

DhxSample sample_dhx(std::uint32_t w, std::uint32_t t, const Seed& seed) {
  if (w == 0 || t == 0) throw std::invalid_argument("sample_dhx: w and t must be positive");
  Engine rng = seed.engine();
  Witness wit = sample_constrained_witness(Form::block, 1, t, w, {}, rng);
  GroupLayeredGraph g = build_graph(wit);
  int answer = g.parity(1);
  return DhxSample{std::move(wit), std::move(g), answer};
}

DhxSample sample_dhx_batched(std::uint32_t w, std::uint32_t s, std::uint32_t t, const Seed& seed) {
  if (w == 0 || s == 0 || t == 0) throw std::invalid_argument("sample_dhx_batched: w, s, t must be positive");
  Engine rng = seed.engine();
  Witness wit = sample_constrained_witness(Form::segment, s, t, w, {}, rng);
  GroupLayeredGraph g = build_graph(wit);
  int answer = g.parity(1);
  return DhxSample{std::move(wit), std::move(g), answer};
}

std::uint32_t padding_for(std::uint32_t k) {
  if (k < 4) throw std::invalid_argument("padding: k must be at least 4");
  switch (k % 3) {
    case 1: return 0;
    case 2: return 1;
    default: return 2;
  }
}

NgcInstance pad_to_k(const NgcInstance& core, std::uint32_t k) {
  const std::uint32_t pad = padding_for(k);
  if (core.pad_layers != 0) throw std::invalid_argument("pad_to_k: instance is already padded");
  if (core.k + pad != k)
    throw std::invalid_argument("pad_to_k: core depth " + std::to_string(core.k) + " cannot be padded to k = " +
                                std::to_string(k));
  if (!core.graph) throw std::invalid_argument("pad_to_k: core graph unknown");
  if (core.edges.size() != core.gadget_edge_count + core.aux_edge_count)
    throw std::invalid_argument("pad_to_k: augmented instances cannot be padded");
  if (pad == 0) return core;
  NgcInstance inst = core;
  inst.pad_layers = pad;
  inst.graph = concat(GroupLayeredGraph::identity(core.width, pad + 1), *core.graph);
  inst.k = k;
  inst.n = inst.graph->vertex_count();
  inst.edges = inst.graph->edges();
  inst.gadget_edge_count = inst.edges.size();
  inst.aux_edge_count = 0;
  inst.batches.clear();
  if (core.has_aux()) append_aux(inst);
  if (core.batched()) assign_pair_batches(inst);
  return inst;
}

NgcInstance sample_ngc_padded(std::uint32_t n, std::uint32_t k, const Seed& seed, std::optional<int> force_theta) {
  const std::uint32_t pad = padding_for(k);
  if (n == 0 || n % (4 * k) != 0)
    throw std::invalid_argument("n = " + std::to_string(n) + " is not a positive multiple of 4k = " +
                                std::to_string(4 * k));
  const std::uint32_t m = n / (4 * k);
  const std::uint32_t core_k = k - pad;
  NgcInstance core = sample_ngc(4 * core_k * m, core_k, seed, force_theta);
  return pad_to_k(core, k);
}

MstAugmentation mst_augment(const NgcInstance& instance, std::int64_t W) {
  if (W < 2) throw std::invalid_argument("mst_augment: W must be at least 2");
  if (instance.aux_edge_count != 2 * static_cast<std::size_t>(instance.m) || instance.m == 0)
    throw std::invalid_argument("mst_augment: instance is missing its auxiliary edges");
  if (instance.weighted()) throw std::invalid_argument("mst_augment: instance is already weighted");
  MstAugmentation out;
  out.degenerate = instance.m < 2;
  NgcInstance& inst = out.instance;
  inst = instance;
  inst.batches.clear();
  inst.weights.assign(inst.edges.size(), 1);
  const std::uint32_t m = inst.m, d = inst.k;
  auto add = [&](std::uint32_t u, std::uint32_t v, std::int64_t wt) {
    inst.edges.push_back({u, v});
    inst.weights.push_back(wt);
  };
  for (std::uint32_t j = 1; j <= m; ++j) add(inst.vertex(d, j, Side::a), inst.vertex(d, j, Side::b), W);
  for (std::uint32_t j = 1; j <= m; ++j) {
    add(inst.vertex(1, j, Side::a), inst.vertex(1, m + j, Side::a), 1);
    add(inst.vertex(1, j, Side::a), inst.vertex(1, m + j, Side::b), 1);
  }
  for (std::uint32_t j = 1; j < m; ++j) add(inst.vertex(1, j, Side::a), inst.vertex(1, j + 1, Side::b), 1);
  add(inst.vertex(1, m, Side::a), inst.vertex(1, 1, Side::b), 1);
  return out;
}

NgcInstance sample_ngc_batched(std::uint32_t n, std::uint32_t k, std::uint32_t s, std::uint32_t t,
                               const Seed& seed, std::optional<int> force_theta) {
  check_segment_shape(n, k, s, t);
  const std::uint32_t m = n / (4 * k);
  Engine rng = seed.engine();
  int theta = force_theta ? (*force_theta & 1) : coin(rng);
  std::vector<std::optional<int>> target(2 * m);
  for (std::uint32_t j = 0; j < m; ++j) target[j] = theta;
  Witness w = sample_constrained_witness(Form::segment, s, t, 2 * m, target, rng);
  return instance_from_witness(w, m, true, theta);
}

bool census_matches_law(const Census& c, std::uint32_t n, std::uint32_t k, int theta, std::string* why) {
  auto fail = [&](const char* msg) {
    if (why) *why = msg;
    return false;
  };
  if (n % (2 * k) != 0) return fail("n is not a multiple of 2k");
  const std::uint64_t half = n / (2 * k);
  if (!c.paths_and_cycles_only()) return fail("component with a vertex of degree > 2");
  if (c.path_count() != half || c.paths_of(k - 1) != half) return fail("path census mismatch");
  if (theta == 0) {
    if (c.cycle_count() != half || c.cycles_of(k) != half) return fail("cycle census mismatch");
  } else {
    if (n % (4 * k) != 0) return fail("n is not a multiple of 4k");
    const std::uint64_t quarter = n / (4 * k);
    if (c.cycle_count() != quarter || c.cycles_of(2 * k) != quarter) return fail("cycle census mismatch");
  }
  return true;
}

Validation validate_instance(const NgcInstance& instance) {
  Validation v;
  v.census = exact_census(instance.edges, instance.n);
  const bool plain = instance.edges.size() == instance.gadget_edge_count + instance.aux_edge_count;
  if (plain && v.census.high_degree_vertices > 0) {
    v.ok = false;
    v.message = "FAIL: vertex of degree > 2 in an unaugmented instance";
    return v;
  }
  if (!instance.theta || !plain || !instance.has_aux()) {
    v.message = "census only: " + v.census.summary();
    return v;
  }
  std::string why;
  if (!census_matches_law(v.census, instance.n, instance.k, *instance.theta, &why)) {
    v.ok = false;
    v.message = "FAIL: " + why;
    return v;
  }
  if (*instance.theta == 0)
    v.message = "OK: " + std::to_string(v.census.cycles_of(instance.k)) + " k-cycles";
  else
    v.message = "OK: " + std::to_string(v.census.cycles_of(2 * instance.k)) + " 2k-cycles";
  return v;
}

}  // namespace ngclab
