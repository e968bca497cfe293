#include "ngclab/streaming.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace ngclab {

Stream make_stream(const std::vector<Edge>& edges, OrderMode mode, const Seed& seed, double c,
                   const std::vector<std::uint32_t>* batches, const std::vector<std::int64_t>* weights) {
  if (weights && weights->size() != edges.size()) throw std::invalid_argument("make_stream: weight count mismatch");
  Stream st;
  st.mode = mode;
  Engine rng = seed.engine();
  auto event = [&](std::uint32_t e) {
    return StreamEvent{edges[e], weights ? (*weights)[e] : 1, e};
  };
  switch (mode) {
    case OrderMode::given:
    case OrderMode::uniform_random: {
      std::vector<std::uint32_t> order(edges.size());
      std::iota(order.begin(), order.end(), 0u);
      if (mode == OrderMode::uniform_random) shuffle(order, rng);
      for (auto e : order) st.events.push_back(event(e));
      break;
    }
    case OrderMode::batched_random: {
      if (!batches || batches->size() != edges.size())
        throw std::invalid_argument("make_stream: batched mode needs one batch id per edge");
      std::uint32_t count = 0;
      for (auto b : *batches) count = std::max(count, b + 1);
      std::vector<std::vector<std::uint32_t>> members(count);
      for (std::uint32_t e = 0; e < edges.size(); ++e) members[(*batches)[e]].push_back(e);
      std::vector<std::uint32_t> order(count);
      std::iota(order.begin(), order.end(), 0u);
      shuffle(order, rng);
      for (auto b : order) {
        shuffle(members[b], rng);
        for (auto e : members[b]) st.events.push_back(event(e));
      }
      break;
    }
    case OrderMode::stochastic: {
      if (c < 0) throw std::invalid_argument("make_stream: c must be non-negative");
      st.c = c;
      const double x = c * static_cast<double>(edges.size());
      const auto count = static_cast<std::size_t>(std::ceil(x - 1e-9 * std::max(1.0, x)));
      if (count > 0 && edges.empty()) throw std::invalid_argument("make_stream: no edges to sample");
      for (std::size_t i = 0; i < count; ++i)
        st.events.push_back(event(static_cast<std::uint32_t>(uniform_below(rng, edges.size()))));
      break;
    }
  }
  return st;
}

Stream make_stream(const NgcInstance& instance, OrderMode mode, const Seed& seed, double c) {
  if (mode == OrderMode::batched_random && !instance.batched())
    throw std::invalid_argument("make_stream: instance has no batches");
  return make_stream(instance.edges, mode, seed, c, instance.batched() ? &instance.batches : nullptr,
                     instance.weighted() ? &instance.weights : nullptr);
}

Census exact_census(const Stream& stream, std::uint32_t n) {
  std::vector<Edge> edges;
  edges.reserve(stream.events.size());
  for (const auto& ev : stream.events) edges.push_back(ev.edge);
  return exact_census(edges, n);
}

double run_stream(StreamingAlgorithm& algorithm, const Stream& stream, std::uint32_t n) {
  algorithm.init(n);
  for (const auto& ev : stream.events) algorithm.process(ev.edge);
  return algorithm.finalize();
}

void UnionFindCounter::init(std::uint32_t n) {
  n_ = n;
  uf_ = UnionFind(n);
}

Message UnionFindCounter::serialize() const {
  Message m;
  m.reserve(state_bits());
  BitWriter w(m);
  const std::uint32_t b = bits_for(n_);
  for (std::uint32_t v = 0; v < n_; ++v) w.put(uf_.parent(v), b);
  return m;
}

void UnionFindCounter::deserialize(const Message& bits) {
  if (bits.size() != state_bits()) throw std::runtime_error("UnionFindCounter: state size mismatch");
  BitReader r(bits);
  const std::uint32_t b = bits_for(n_);
  std::vector<std::uint32_t> parents(n_);
  for (auto& p : parents) p = static_cast<std::uint32_t>(r.get(b));
  uf_ = UnionFind::from_parents(std::move(parents));
}

std::size_t UnionFindCounter::state_bits() const { return static_cast<std::size_t>(n_) * bits_for(n_); }

void EdgeRecorder::init(std::uint32_t n) {
  n_ = n;
  seen_.clear();
}

Message EdgeRecorder::serialize() const {
  Message m;
  BitWriter w(m);
  const std::uint32_t b = bits_for(n_);
  w.put(seen_.size(), 32);
  for (auto e : seen_) {
    w.put(e.u, b);
    w.put(e.v, b);
  }
  return m;
}

void EdgeRecorder::deserialize(const Message& bits) {
  BitReader r(bits);
  const std::uint32_t b = bits_for(n_);
  auto count = r.get(32);
  seen_.clear();
  for (std::uint64_t i = 0; i < count; ++i) {
    Edge e;
    e.u = static_cast<std::uint32_t>(r.get(b));
    e.v = static_cast<std::uint32_t>(r.get(b));
    seen_.push_back(e);
  }
}

std::size_t EdgeRecorder::state_bits() const { return 32 + 2 * seen_.size() * bits_for(n_); }

std::uint32_t default_cc_cap(double epsilon) {
  return static_cast<std::uint32_t>(std::ceil(2.0 / epsilon - 1e-12));
}

ComponentEstimator::ComponentEstimator(double epsilon, std::uint32_t r, std::uint32_t cap, Seed seed)
    : epsilon_(epsilon), r_(r), cap_(cap), seed_(std::move(seed)) {
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("cc_estimate: epsilon must lie in (0, 1)");
  if (r == 0) throw std::invalid_argument("cc_estimate: need at least one seed vertex");
  if (cap_ == 0) cap_ = default_cc_cap(epsilon);
}

std::unique_ptr<StreamingAlgorithm> ComponentEstimator::fresh() const {
  return std::make_unique<ComponentEstimator>(epsilon_, r_, cap_, seed_);
}

void ComponentEstimator::init(std::uint32_t n) {
  if (n == 0) throw std::invalid_argument("cc_estimate: empty vertex set");
  n_ = n;
  Engine rng = seed_.engine();
  sets_.assign(r_, {});
  dirty_.assign(r_, 0);
  for (auto& s : sets_) s.push_back(static_cast<std::uint32_t>(uniform_below(rng, n)));
  rebuild_index();
}

void ComponentEstimator::rebuild_index() {
  member_of_.assign(n_, {});
  for (std::uint32_t s = 0; s < r_; ++s)
    for (auto v : sets_[s]) member_of_[v].push_back(s);
}

bool ComponentEstimator::contains(std::uint32_t s, std::uint32_t v) const {
  const auto& set = sets_[s];
  return std::find(set.begin(), set.end(), v) != set.end();
}

void ComponentEstimator::absorb(std::uint32_t s, std::uint32_t v) {
  sets_[s].push_back(v);
  member_of_[v].push_back(s);
}

void ComponentEstimator::process(const Edge& e) {
  if (e.u == e.v) return;
  // Copies: absorbing grows the lists being walked.
  std::vector<std::uint32_t> touch = member_of_[e.u];
  touch.insert(touch.end(), member_of_[e.v].begin(), member_of_[e.v].end());
  std::sort(touch.begin(), touch.end());
  touch.erase(std::unique(touch.begin(), touch.end()), touch.end());
  for (auto s : touch) {
    const bool has_u = contains(s, e.u), has_v = contains(s, e.v);
    if (has_u && has_v) continue;
    if (sets_[s].size() < cap_)
      absorb(s, has_u ? e.v : e.u);
    else
      dirty_[s] = 1;
  }
}

Message ComponentEstimator::serialize() const {
  Message m;
  m.reserve(state_bits());
  BitWriter w(m);
  const std::uint32_t b = bits_for(static_cast<std::uint64_t>(n_) + 1);
  for (std::uint32_t s = 0; s < r_; ++s) {
    w.put(dirty_[s], 1);
    for (std::uint32_t i = 0; i < cap_; ++i) w.put(i < sets_[s].size() ? sets_[s][i] : n_, b);
  }
  return m;
}

void ComponentEstimator::deserialize(const Message& bits) {
  if (bits.size() != state_bits()) throw std::runtime_error("ComponentEstimator: state size mismatch");
  BitReader r(bits);
  const std::uint32_t b = bits_for(static_cast<std::uint64_t>(n_) + 1);
  sets_.assign(r_, {});
  dirty_.assign(r_, 0);
  for (std::uint32_t s = 0; s < r_; ++s) {
    dirty_[s] = static_cast<std::uint8_t>(r.get(1));
    for (std::uint32_t i = 0; i < cap_; ++i) {
      auto v = static_cast<std::uint32_t>(r.get(b));
      if (v < n_) sets_[s].push_back(v);
    }
  }
  rebuild_index();
}

double ComponentEstimator::finalize() const {
  double sum = 0;
  for (std::uint32_t s = 0; s < r_; ++s)
    if (!dirty_[s]) sum += 1.0 / static_cast<double>(sets_[s].size());
  return static_cast<double>(n_) / static_cast<double>(r_) * sum;
}

std::size_t ComponentEstimator::state_bits() const {
  return static_cast<std::size_t>(r_) * (1 + static_cast<std::size_t>(cap_) * bits_for(static_cast<std::uint64_t>(n_) + 1));
}

CcEstimate cc_estimate(const Stream& stream, std::uint32_t n, double epsilon, std::uint32_t r, std::uint32_t cap,
                       const Seed& seed) {
  ComponentEstimator est(epsilon, r, cap, seed);
  CcEstimate out;
  out.estimate = run_stream(est, stream, n);
  out.state_bits = est.state_bits();
  return out;
}

namespace {

Census degree_two_census(const std::vector<Edge>& edges, std::uint32_t n, const char* who) {
  Census c = exact_census(edges, n);
  if (c.high_degree_vertices > 0 || c.self_loops > 0)
    throw std::invalid_argument(std::string(who) + ": graph has a vertex of degree > 2");
  return c;
}

}  // namespace

std::uint64_t matching_size_exact(const std::vector<Edge>& edges, std::uint32_t n) {
  Census c = degree_two_census(edges, n, "matching_size_exact");
  std::uint64_t total = 0;
  for (auto& [len, cnt] : c.paths) total += cnt * ((len + 1) / 2);
  for (auto& [len, cnt] : c.cycles) total += cnt * (len / 2);
  return total;
}

std::uint64_t mis_size_exact(const std::vector<Edge>& edges, std::uint32_t n) {
  Census c = degree_two_census(edges, n, "mis_size_exact");
  std::uint64_t total = 0;
  for (auto& [len, cnt] : c.paths) total += cnt * ((len + 2) / 2);
  for (auto& [len, cnt] : c.cycles) total += cnt * (len / 2);
  return total;
}

MstResult mst_weight_exact(const std::vector<Edge>& edges, const std::vector<std::int64_t>& weights, std::uint32_t n) {
  if (weights.size() != edges.size()) throw std::invalid_argument("mst_weight_exact: weight count mismatch");
  std::vector<std::uint32_t> order(edges.size());
  std::iota(order.begin(), order.end(), 0u);
  std::stable_sort(order.begin(), order.end(), [&](auto a, auto b) { return weights[a] < weights[b]; });
  UnionFind uf(n);
  MstResult r;
  for (auto e : order)
    if (uf.unite(edges[e].u, edges[e].v)) r.weight += weights[e];
  r.components = uf.components();
  return r;
}

WalkSample random_walk(const Adjacency& adj, std::uint32_t start, std::uint32_t steps, Engine& rng) {
  if (start >= adj.vertex_count()) throw std::out_of_range("random_walk: start out of range");
  if (adj.degree(start) == 0) throw std::invalid_argument("random_walk: start vertex is isolated");
  WalkSample w;
  w.vertices.reserve(steps + 1);
  w.vertices.push_back(start);
  std::uint32_t v = start;
  for (std::uint32_t i = 0; i < steps; ++i) {
    v = adj.neighbor(v, static_cast<std::uint32_t>(uniform_below(rng, adj.degree(v))));
    w.vertices.push_back(v);
  }
  return w;
}

WalkSample random_walk(const std::vector<Edge>& edges, std::uint32_t n, std::uint32_t start, std::uint32_t steps,
                       const Seed& seed) {
  Adjacency adj(edges, n);
  Engine rng = seed.engine();
  return random_walk(adj, start, steps, rng);
}

std::string walk_key(const WalkSample& w) {
  std::string s;
  for (std::size_t i = 0; i < w.vertices.size(); ++i) {
    if (i) s.push_back(',');
    s += std::to_string(w.vertices[i]);
  }
  return s;
}

DistributionTable walk_distribution_exact(const Adjacency& adj, std::uint32_t start, std::uint32_t steps) {
  constexpr std::uint64_t kGuard = std::uint64_t{1} << 20;
  if (start >= adj.vertex_count()) throw std::out_of_range("walk_distribution_exact: start out of range");
  if (adj.degree(start) == 0) throw std::invalid_argument("walk_distribution_exact: start vertex is isolated");
  DistributionTable table;
  std::uint64_t emitted = 0;
  WalkSample cur;
  cur.vertices.push_back(start);
  auto rec = [&](auto&& self, double prob) -> void {
    if (cur.length() == steps) {
      if (++emitted > kGuard) throw std::length_error("walk_distribution_exact: more than 2^20 walks");
      table.add(walk_key(cur), prob);
      return;
    }
    const std::uint32_t v = cur.vertices.back();
    const std::uint32_t d = adj.degree(v);
    for (std::uint32_t i = 0; i < d; ++i) {
      cur.vertices.push_back(adj.neighbor(v, i));
      self(self, prob / d);
      cur.vertices.pop_back();
    }
  };
  rec(rec, 1.0);
  return table;
}

std::optional<std::uint32_t> certified_cycle_length(const WalkSample& w) {
  std::vector<Edge> traversed;
  for (std::size_t i = 0; i + 1 < w.vertices.size(); ++i) {
    Edge e{w.vertices[i], w.vertices[i + 1]};
    if (e.u > e.v) std::swap(e.u, e.v);
    if (e.u == e.v) return std::nullopt;
    traversed.push_back(e);
  }
  std::sort(traversed.begin(), traversed.end());
  traversed.erase(std::unique(traversed.begin(), traversed.end()), traversed.end());
  std::vector<std::uint32_t> visited = w.vertices;
  std::sort(visited.begin(), visited.end());
  visited.erase(std::unique(visited.begin(), visited.end()), visited.end());
  if (visited.size() < 3 || traversed.size() != visited.size()) return std::nullopt;
  for (auto v : visited) {
    int deg = 0;
    for (auto e : traversed) deg += (e.u == v) + (e.v == v);
    if (deg != 2) return std::nullopt;
  }
  return static_cast<std::uint32_t>(visited.size());
}

const char* to_string(CycleClass c) {
  switch (c) {
    case CycleClass::k_cycles: return "k_cycles";
    case CycleClass::two_k_cycles: return "2k_cycles";
    default: return "unknown";
  }
}

CycleClass detect_cycle_length_from_walks(const std::vector<WalkSample>& walks, std::uint32_t /*n*/, std::uint32_t k) {
  for (const auto& w : walks) {
    auto len = certified_cycle_length(w);
    if (!len) continue;
    if (*len == k) return CycleClass::k_cycles;
    if (*len == 2 * k) return CycleClass::two_k_cycles;
  }
  return CycleClass::unknown;
}

WalkDistinguisher run_walk_distinguisher(const NgcInstance& instance, std::uint32_t walk_length,
                                         std::uint64_t max_walks, const Seed& seed) {
  Adjacency adj(instance.edges, instance.n);
  Engine rng = seed.engine();
  WalkDistinguisher out;
  std::vector<WalkSample> one(1);
  while (out.walks_used < max_walks) {
    ++out.walks_used;
    auto start = static_cast<std::uint32_t>(uniform_below(rng, instance.n));
    if (adj.degree(start) == 0) continue;
    one[0] = random_walk(adj, start, walk_length, rng);
    CycleClass c = detect_cycle_length_from_walks(one, instance.n, instance.k);
    if (c != CycleClass::unknown) {
      out.result = c;
      break;
    }
  }
  return out;
}

}  // namespace ngclab
