#include "ngclab/protocols.hpp"

#include <algorithm>
#include <map>
#include <numeric>

namespace ngclab {

PublicInfo public_info(const NgcInstance& instance, std::uint32_t focus_group) {
  PublicInfo info;
  info.n = instance.n;
  info.k = instance.k;
  info.m = instance.m;
  info.width = instance.width;
  info.focus_group = focus_group;
  return info;
}

ProtocolRun run_protocol(const OneWayProtocol& protocol, const NgcInstance& instance,
                         const EdgeAssignment& assignment, const Seed& shared, std::uint32_t focus_group) {
  if (assignment.mode == AssignMode::stochastic || assignment.players != 2)
    throw std::invalid_argument("run_protocol: needs a two-player assignment");
  if (assignment.owner.size() != instance.edges.size())
    throw std::invalid_argument("run_protocol: assignment size mismatch");
  const PublicInfo info = public_info(instance, focus_group);
  const std::vector<Edge> ea = assignment.edges_of(0, instance.edges);
  const std::vector<Edge> eb = assignment.edges_of(1, instance.edges);
  Message msg = protocol.alice(info, ea, shared);
  const std::size_t budget = protocol.message_budget(info);
  if (msg.size() > budget)
    throw ProtocolBudgetExceeded(protocol.name() + ": message of " + std::to_string(msg.size()) +
                                 " bits exceeds the budget of " + std::to_string(budget));
  ProtocolRun run;
  run.message_bits = msg.size();
  run.output = protocol.bob(info, msg, eb, shared) & 1;
  return run;
}

int ngc_threshold_decision(double components, std::uint32_t n, std::uint32_t k) {
  // components >= 7n / 8k, compared without rounding.
  return components * 8.0 * k >= 7.0 * n ? 0 : 1;
}

int focus_parity_from_edges(const std::vector<Edge>& edges, const PublicInfo& info) {
  const std::uint32_t layer_size = 2 * info.width;
  std::vector<Edge> forward;
  for (auto e : edges) {
    std::uint32_t lu = e.u / layer_size, lv = e.v / layer_size;
    if (lu + 1 == lv) forward.push_back(e);
    else if (lv + 1 == lu) forward.push_back({e.v, e.u});
  }
  std::vector<std::int64_t> next(info.n, -1);
  for (auto e : forward) {
    if (next[e.u] != -1) throw std::invalid_argument("focus_parity: vertex with two forward edges");
    next[e.u] = e.v;
  }
  if (info.focus_group < 1 || info.focus_group > info.width) throw std::out_of_range("focus_parity: bad focus group");
  std::uint32_t cur = 2 * (info.focus_group - 1);
  for (std::uint32_t layer = 1; layer < info.k; ++layer) {
    if (next[cur] < 0) throw std::invalid_argument("focus_parity: path is incomplete");
    cur = static_cast<std::uint32_t>(next[cur]);
  }
  return static_cast<int>(cur % 2);
}

Message ForwardAllProtocol::alice(const PublicInfo& info, const std::vector<Edge>& ea, const Seed&) const {
  Message m;
  BitWriter w(m);
  const std::uint32_t b = bits_for(info.n);
  for (auto e : ea) {
    w.put(e.u, b);
    w.put(e.v, b);
  }
  return m;
}

int ForwardAllProtocol::bob(const PublicInfo& info, const Message& msg, const std::vector<Edge>& eb, const Seed&) const {
  const std::uint32_t b = bits_for(info.n);
  std::vector<Edge> all = eb;
  BitReader r(msg);
  while (b > 0 && r.remaining() >= 2 * b) {
    Edge e;
    e.u = static_cast<std::uint32_t>(r.get(b));
    e.v = static_cast<std::uint32_t>(r.get(b));
    all.push_back(e);
  }
  if (goal_ == Goal::focus_parity) return focus_parity_from_edges(all, info);
  Census c = exact_census(all, info.n);
  return ngc_threshold_decision(static_cast<double>(c.components), info.n, info.k);
}

int BobCycleDetector::bob(const PublicInfo& info, const Message&, const std::vector<Edge>& eb, const Seed&) const {
  return exact_census(eb, info.n).cycles_of(2 * info.k) > 0 ? 1 : 0;
}

StreamingProtocol::StreamingProtocol(std::unique_ptr<StreamingAlgorithm> prototype, EstimateDecision decision,
                                     std::size_t budget)
    : prototype_(std::move(prototype)), decision_(std::move(decision)), budget_(budget) {
  if (!prototype_) throw std::invalid_argument("StreamingProtocol: missing algorithm");
}

Message StreamingProtocol::alice(const PublicInfo& info, const std::vector<Edge>& ea, const Seed& shared) const {
  auto alg = prototype_->fresh();
  alg->init(info.n);
  std::vector<Edge> order = ea;
  Engine rng = shared.child("alice-order").engine();
  shuffle(order, rng);
  for (auto e : order) alg->process(e);
  Message msg = alg->serialize();
  if (msg.size() != alg->state_bits()) throw std::logic_error(alg->name() + ": state size accounting is off");
  return msg;
}

std::unique_ptr<StreamingAlgorithm> StreamingProtocol::bob_state(const PublicInfo& info, const Message& msg,
                                                                 const std::vector<Edge>& eb,
                                                                 const Seed& shared) const {
  auto alg = prototype_->fresh();
  alg->init(info.n);
  alg->deserialize(msg);
  std::vector<Edge> order = eb;
  Engine rng = shared.child("bob-order").engine();
  shuffle(order, rng);
  for (auto e : order) alg->process(e);
  return alg;
}

int StreamingProtocol::bob(const PublicInfo& info, const Message& msg, const std::vector<Edge>& eb,
                           const Seed& shared) const {
  return decision_(bob_state(info, msg, eb, shared)->finalize(), info) & 1;
}

StreamingProtocol::Trace StreamingProtocol::simulate(const PublicInfo& info, const std::vector<Edge>& ea,
                                                     const std::vector<Edge>& eb, const Seed& shared) const {
  Message msg = alice(info, ea, shared);
  Trace tr;
  tr.message_bits = msg.size();
  tr.final_state = bob_state(info, msg, eb, shared);
  tr.estimate = tr.final_state->finalize();
  return tr;
}

std::unique_ptr<StreamingProtocol> streaming_as_protocol(std::unique_ptr<StreamingAlgorithm> algorithm,
                                                         EstimateDecision decision) {
  return std::make_unique<StreamingProtocol>(std::move(algorithm), std::move(decision));
}

LPlayerStreamingProtocol::LPlayerStreamingProtocol(std::unique_ptr<StreamingAlgorithm> prototype, std::uint32_t l,
                                                   EstimateDecision decision)
    : prototype_(std::move(prototype)), l_(l), decision_(std::move(decision)) {
  if (!prototype_) throw std::invalid_argument("LPlayerStreamingProtocol: missing algorithm");
  if (l_ < 1) throw std::invalid_argument("LPlayerStreamingProtocol: need at least one player");
}

LPlayerStreamingProtocol::Run LPlayerStreamingProtocol::run(const NgcInstance& instance,
                                                            const EdgeAssignment& assignment,
                                                            const Seed& shared) const {
  if (assignment.mode == AssignMode::stochastic || assignment.players != l_)
    throw std::invalid_argument("l-player run: assignment does not have l owners");
  if (assignment.owner.size() != instance.edges.size())
    throw std::invalid_argument("l-player run: assignment size mismatch");
  const std::size_t E = instance.edges.size();
  std::vector<std::uint32_t> batch_of(E);
  for (std::uint32_t e = 0; e < E; ++e) batch_of[e] = instance.batched() ? instance.batches[e] : e;
  std::map<std::uint32_t, std::vector<std::uint32_t>> members;
  for (std::uint32_t e = 0; e < E; ++e) members[batch_of[e]].push_back(e);
  std::vector<std::vector<std::uint32_t>> owned(l_);
  for (auto& [b, es] : members) {
    const auto o = assignment.owner[es.front()];
    for (auto e : es)
      if (assignment.owner[e] != o) throw std::invalid_argument("l-player run: a batch is split between players");
    owned[o].push_back(b);
  }
  const PublicInfo info = public_info(instance);
  Run out;
  Message msg;
  std::unique_ptr<StreamingAlgorithm> alg;
  for (std::uint32_t p = 0; p < l_; ++p) {
    alg = prototype_->fresh();
    alg->init(info.n);
    if (p > 0) alg->deserialize(msg);
    Engine rng = shared.child("player").child(p + 1).engine();
    std::vector<std::uint32_t> order = owned[p];
    shuffle(order, rng);
    for (auto b : order) {
      std::vector<std::uint32_t> es = members[b];
      shuffle(es, rng);
      for (auto e : es) alg->process(instance.edges[e]);
    }
    if (p + 1 < l_) {
      msg = alg->serialize();
      out.message_bits.push_back(msg.size());
      out.max_message_bits = std::max(out.max_message_bits, msg.size());
    }
  }
  out.estimate = alg->finalize();
  out.output = decision_(out.estimate, info) & 1;
  out.final_state = std::move(alg);
  return out;
}

std::unique_ptr<LPlayerStreamingProtocol> streaming_as_l_protocol(std::unique_ptr<StreamingAlgorithm> algorithm,
                                                                  std::uint32_t l, EstimateDecision decision) {
  return std::make_unique<LPlayerStreamingProtocol>(std::move(algorithm), l, std::move(decision));
}

namespace {

HybridScanRow scan_pair(const OneWayProtocol& protocol, std::uint32_t m, std::uint32_t t, std::uint32_t h0,
                        std::uint32_t h1, std::uint32_t focus, std::uint64_t trials, const Seed& seed) {
  // Under H(h0) the focus group has parity 1, under H(h1) parity 0.
  HybridScanRow row;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Seed ts = seed.child(i);
    Engine lr = ts.child("label").engine();
    const int label = coin(lr);
    NgcInstance inst = sample_hybrid(m, t, label == 0 ? h0 : h1, ts.child("instance"));
    EdgeAssignment split = assign_uniform(inst.edges.size(), 2, ts.child("split"));
    ProtocolRun run = run_protocol(protocol, inst, split, ts.child("shared"), focus);
    row.correct.add((run.output == 1) == (label == 0));
  }
  return row;
}

}  // namespace

HybridScan hybrid_scan(const OneWayProtocol& protocol, std::uint32_t m, std::uint32_t t, std::uint64_t trials,
                       const Seed& seed) {
  if (m == 0 || t == 0 || trials == 0) throw std::invalid_argument("hybrid_scan: m, t, trials must be positive");
  HybridScan scan;
  double best = -2.0;
  for (std::uint32_t h = 1; h <= m; ++h) {
    HybridScanRow row = scan_pair(protocol, m, t, h - 1, h, h, trials, seed.child("h").child(h));
    row.h = h;
    if (row.advantage() > best) {
      best = row.advantage();
      scan.argmax_h = h;
    }
    scan.rows.push_back(row);
  }
  scan.end_to_end = scan_pair(protocol, m, t, 0, m, 1, trials, seed.child("end-to-end"));
  return scan;
}

namespace {

std::vector<Perm> all_permutations(std::uint32_t w) {
  std::vector<Perm> out;
  Perm p = identity_perm(w);
  do out.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  return out;
}

bool in_hybrid(const GroupLayeredGraph& g, std::uint32_t m, std::uint32_t h) {
  for (std::uint32_t j = 1; j <= m; ++j)
    if (g.parity(j) != (j <= h ? 0 : 1)) return false;
  return true;
}

std::string out_key(const Message& msg, std::vector<Edge> eb) {
  std::string key;
  for (auto b : msg) key.push_back(b ? '1' : '0');
  key.push_back('|');
  for (auto& e : eb)
    if (e.u > e.v) std::swap(e.u, e.v);
  std::sort(eb.begin(), eb.end());
  for (auto e : eb) key += std::to_string(e.u) + "-" + std::to_string(e.v) + ",";
  return key;
}

}  // namespace

double exact_hybrid_out_tvd(const OneWayProtocol& protocol, std::uint32_t m, std::uint32_t t, std::uint32_t h,
                            const Seed& shared) {
  if (h < 1 || h > m) throw std::invalid_argument("exact_hybrid_out_tvd: h must lie in [1, m]");
  const std::uint32_t w = 2 * m;
  const std::vector<Perm> perms = all_permutations(w);
  const std::uint64_t per_gadget = perms.size() << w;
  std::uint64_t witnesses = 1;
  for (std::uint32_t g = 0; g < t; ++g) witnesses *= per_gadget;
  const std::uint64_t edges = 2ull * w * 3 * t;
  if (edges > 20 || (witnesses << edges) > (1ull << 24))
    throw std::length_error("exact_hybrid_out_tvd: enumeration too large");

  std::vector<Witness> members[2];
  for (std::uint64_t code = 0; code < witnesses; ++code) {
    Witness wit;
    wit.t = t;
    std::uint64_t c = code;
    for (std::uint32_t g = 0; g < t; ++g) {
      const std::uint64_t local = c % per_gadget;
      c /= per_gadget;
      wit.sigma.push_back(perms[local >> w]);
      Bits x(w);
      for (std::uint32_t b = 0; b < w; ++b) x[b] = static_cast<std::uint8_t>((local >> b) & 1);
      wit.x.push_back(x);
    }
    GroupLayeredGraph g = build_graph(wit);
    if (in_hybrid(g, m, h - 1)) members[0].push_back(wit);
    if (in_hybrid(g, m, h)) members[1].push_back(wit);
  }
  DistributionTable table[2];
  for (int side = 0; side < 2; ++side) {
    std::map<std::string, double> acc;
    const double weight = 1.0 / static_cast<double>(members[side].size()) / static_cast<double>(1ull << edges);
    for (const auto& wit : members[side]) {
      NgcInstance inst = instance_from_witness(wit, m, false, std::nullopt);
      const PublicInfo info = public_info(inst, h);
      for (std::uint64_t mask = 0; mask < (1ull << edges); ++mask) {
        std::vector<Edge> ea, eb;
        for (std::uint32_t e = 0; e < edges; ++e) ((mask >> e) & 1 ? eb : ea).push_back(inst.edges[e]);
        acc[out_key(protocol.alice(info, ea, shared), eb)] += weight;
      }
    }
    for (auto& [k, v] : acc) table[side].add(k, v);
  }
  return tvd(table[0], table[1]);
}

}  // namespace ngclab
