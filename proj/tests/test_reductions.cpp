#include <doctest.h>

#include <algorithm>
#include <map>
#include <set>

#include "ngclab/distribution_table.hpp"
#include "ngclab/distributions.hpp"
#include "ngclab/embedding.hpp"
#include "ngclab/partition.hpp"
#include "ngclab/protocols.hpp"
#include "ngclab/stats.hpp"
#include "ngclab/streaming.hpp"
#include "oracles.hpp"

using namespace ngclab;

namespace {

// All witnesses of block form at width w with t gadgets.
std::vector<Witness> enumerate_witnesses(std::uint32_t w, std::uint32_t t, Form form = Form::block) {
  std::vector<Perm> perms;
  Perm p = identity_perm(w);
  do perms.push_back(p);
  while (std::next_permutation(p.begin(), p.end()));
  const std::uint64_t per = perms.size() << w;
  std::uint64_t total = 1;
  for (std::uint32_t g = 0; g < t; ++g) total *= per;
  std::vector<Witness> out;
  for (std::uint64_t code = 0; code < total; ++code) {
    Witness wit;
    wit.form = form;
    wit.t = t;
    std::uint64_t c = code;
    for (std::uint32_t g = 0; g < t; ++g) {
      std::uint64_t local = c % per;
      c /= per;
      wit.sigma.push_back(perms[local >> w]);
      Bits x(w);
      for (std::uint32_t b = 0; b < w; ++b) x[b] = (local >> b) & 1;
      wit.x.push_back(x);
    }
    out.push_back(wit);
  }
  return out;
}

class OverBudget : public OneWayProtocol {
 public:
  std::size_t message_budget(const PublicInfo&) const override { return 0; }
  Message alice(const PublicInfo&, const std::vector<Edge>&, const Seed&) const override { return {1}; }
  int bob(const PublicInfo&, const Message&, const std::vector<Edge>&, const Seed&) const override { return 0; }
  std::string name() const override { return "over-budget"; }
};

EstimateDecision threshold() {
  return [](double est, const PublicInfo& info) { return ngc_threshold_decision(est, info.n, info.k); };
}

}  // namespace

TEST_CASE("embedding keeps the focus parity and its bookkeeping") {
  for (std::uint32_t m = 1; m <= 4; ++m)
    for (std::uint32_t t = 1; t <= 3; ++t)
      for (int i = 0; i < 200; ++i) {
        Seed s = Seed(1).child(m).child(t).child(i);
        auto dhx = sample_dhx(m + 1, t, s.child("dhx"));
        Engine hr = s.child("h").engine();
        const auto h = static_cast<std::uint32_t>(1 + uniform_below(hr, m));
        auto emb = embed_dhx(dhx.witness, h, m, s.child("embed"));
        int z = 0;
        for (std::uint32_t g = 0; g < t; ++g) z ^= dhx.witness.x[g][dhx.witness.sigma[g][0]];
        CHECK(emb.graph.parity(h) == z);
        CHECK(z == dhx.answer);
        CHECK(emb.graph == build_graph(emb.record.assembled));
        for (std::uint32_t j = 1; j <= m; ++j)
          if (j != h) CHECK(emb.graph.parity(j) == (j < h ? 0 : 1));
        for (std::uint32_t g = 0; g < t; ++g) {
          const auto& f = emb.record.f[g];
          const auto& fixed = emb.record.fixed[g];
          CHECK(f.size() == m + 1);
          CHECK(fixed.size() == m - 1);
          std::set<std::uint32_t> all(f.begin(), f.end());
          all.insert(fixed.begin(), fixed.end());
          CHECK(all.size() == 2 * m);
          CHECK(std::is_sorted(f.begin(), f.end()));
        }
      }
  auto d = sample_dhx(3, 1, Seed(2));
  CHECK_THROWS(embed_dhx(d.witness, 1, 3, Seed(1)));
  CHECK_THROWS(embed_dhx(d.witness, 3, 2, Seed(1)));
}

TEST_CASE("smallest embedding by hand") {
  Witness y;
  y.form = Form::block;
  y.t = 1;
  y.x = {Bits{0, 0}};
  y.sigma = {identity_perm(2)};
  auto emb = embed_dhx(y, 1, 1, Seed(3));
  CHECK(emb.record.f[0] == std::vector<std::uint32_t>{1, 2});
  CHECK(emb.graph == make_block(Bits{0, 0}, identity_perm(2)));
}

TEST_CASE("embedded graphs follow the half-half hybrid mixture") {
  // m=1, t=2: H(0) and H(1) are each uniform on 32 witnesses and together cover all 64.
  const std::uint32_t m = 1, t = 2;
  std::map<std::string, double> exact;
  auto all = enumerate_witnesses(2, t);
  REQUIRE(all.size() == 64);
  for (const auto& w : all) exact[witness_key(w)] = 0.5 / 32;
  std::map<std::string, std::uint64_t> counts;
  const int N = 200000;
  for (int i = 0; i < N; ++i) {
    Seed s = Seed(4).child(i);
    auto dhx = sample_dhx(m + 1, t, s.child("dhx"));
    ++counts[witness_key(embed_dhx(dhx.witness, 1, m, s.child("embed")).record.assembled)];
  }
  DistributionTable e, q;
  for (auto& [k, v] : exact) e.add(k, v);
  q = DistributionTable::from_counts(counts);
  CHECK(q.size() == 64);
  CHECK(tvd(e, q) < 0.02);
}

TEST_CASE("batched embedding") {
  for (int i = 0; i < 300; ++i) {
    Seed s = Seed(5).child(i);
    const std::uint32_t m = 3, sg = 2, t = 2;
    auto dhx = sample_dhx_batched(m + 1, sg, t, s.child("dhx"));
    auto emb = embed_dhx_batched(dhx.witness, 2, m, sg, t, s.child("embed"));
    CHECK(emb.graph.parity(2) == dhx.answer);
    CHECK(oracle::trace(emb.graph.edges(), 2 * m, emb.graph.depth(), 2, 0).side == dhx.answer);
    CHECK(emb.graph.parity(1) == 0);
    CHECK(emb.graph.parity(3) == 1);
  }
  // s=1, t=1, m=1: eight segment witnesses, the mixture is uniform over them.
  std::map<std::string, std::uint64_t> counts;
  for (int i = 0; i < 40000; ++i) {
    Seed s = Seed(6).child(i);
    auto dhx = sample_dhx_batched(2, 1, 1, s.child("dhx"));
    ++counts[witness_key(embed_dhx_batched(dhx.witness, 1, 1, 1, 1, s.child("embed")).record.assembled)];
  }
  DistributionTable e;
  for (const auto& w : enumerate_witnesses(2, 1, Form::segment)) e.add(witness_key(w), 1.0 / 8);
  CHECK(tvd(e, DistributionTable::from_counts(counts)) < 0.02);
  auto d = sample_dhx(2, 1, Seed(1));
  CHECK_THROWS(embed_dhx_batched(d.witness, 1, 1, 1, 1, Seed(1)));
}

TEST_CASE("tvd") {
  DistributionTable p, q, a, b;
  p.add("0", 0.75);
  p.add("1", 0.25);
  q.add("0", 0.25);
  q.add("1", 0.75);
  a.add("x", 1.0);
  b.add("y", 1.0);
  CHECK(tvd(p, q) == doctest::Approx(0.5));
  CHECK(tvd(p, p) == 0.0);
  CHECK(tvd(a, b) == doctest::Approx(1.0));
  CHECK(distinguishing_advantage(0.5) == doctest::Approx(0.75));
}

TEST_CASE("protocol harness") {
  ConstantProtocol constant(1);
  ForwardAllProtocol forward;
  Proportion c_ok, f_ok;
  for (int i = 0; i < 2000; ++i) {
    auto inst = sample_ngc(56, 7, Seed(7).child(i));
    auto split = assign_uniform(inst.edges.size(), 2, Seed(8).child(i));
    c_ok.add(run_protocol(constant, inst, split, Seed(9)).output == *inst.theta);
    auto r = run_protocol(forward, inst, split, Seed(9));
    f_ok.add(r.output == *inst.theta);
    CHECK(r.output == run_protocol(forward, inst, split, Seed(9)).output);
  }
  CHECK(within_3sigma(c_ok, 0.5));
  CHECK(f_ok.hits == f_ok.trials);
  auto inst = sample_ngc(28, 7, Seed(1));
  CHECK_THROWS_AS(run_protocol(OverBudget{}, inst, assign_uniform(inst.edges.size(), 2, Seed(1)), Seed(1)),
                  ProtocolBudgetExceeded);
}

TEST_CASE("streaming adapter") {
  auto proto = streaming_as_protocol(std::make_unique<UnionFindCounter>(), threshold());
  for (int i = 0; i < 300; ++i) {
    auto inst = sample_ngc(112, 7, Seed(10).child(i));
    auto split = assign_uniform(inst.edges.size(), 2, Seed(11).child(i));
    auto tr = proto->simulate(public_info(inst), split.edges_of(0, inst.edges), split.edges_of(1, inst.edges),
                              Seed(12).child(i));
    CHECK(tr.estimate == oracle::census(inst.edges, inst.n).components);
    CHECK(tr.message_bits == tr.final_state->state_bits());
    auto run = run_protocol(*proto, inst, split, Seed(12).child(i));
    CHECK(run.output == *inst.theta);
    CHECK(run.message_bits == tr.message_bits);
  }
}

TEST_CASE("adapter order is uniform over all orders") {
  StreamingProtocol rec(std::make_unique<EdgeRecorder>(), [](double, const PublicInfo&) { return 0; });
  const std::vector<Edge> edges = {{0, 1}, {1, 2}, {2, 3}, {3, 4}};
  PublicInfo info;
  info.n = 5;
  info.k = 4;
  std::map<std::vector<Edge>, std::uint64_t> seen;
  const int N = 48000;
  for (int i = 0; i < N; ++i) {
    auto split = assign_uniform(edges.size(), 2, Seed(13).child(i));
    auto tr = rec.simulate(info, split.edges_of(0, edges), split.edges_of(1, edges), Seed(14).child(i));
    ++seen[static_cast<const EdgeRecorder&>(*tr.final_state).seen()];
  }
  CHECK(seen.size() == 24);
  std::vector<std::uint64_t> obs;
  for (auto& [k, v] : seen) obs.push_back(v);
  CHECK(chi_square_uniform(obs).p_value > 0.001);
}

TEST_CASE("l-player adapter") {
  auto lp = streaming_as_l_protocol(std::make_unique<UnionFindCounter>(), 4, threshold());
  auto two = streaming_as_l_protocol(std::make_unique<UnionFindCounter>(), 2, threshold());
  auto proto = streaming_as_protocol(std::make_unique<UnionFindCounter>(), threshold());
  for (int i = 0; i < 200; ++i) {
    auto inst = sample_ngc_batched(120, 15, 2, 3, Seed(15).child(i));
    auto a = assign_batches(inst, 4, Seed(16).child(i));
    auto run = lp->run(inst, a, Seed(17).child(i));
    CHECK(run.estimate == oracle::census(inst.edges, inst.n).components);
    CHECK(run.output == *inst.theta);
    CHECK(run.message_bits.size() == 3);
    auto a2 = assign_batches(inst, 2, Seed(18).child(i));
    CHECK(two->run(inst, a2, Seed(19)).output == run_protocol(*proto, inst, a2, Seed(19)).output);
  }
}

TEST_CASE("hybrid scans") {
  ConstantProtocol constant(0);
  ForwardAllProtocol forward(ForwardAllProtocol::Goal::focus_parity);
  auto c = hybrid_scan(constant, 3, 2, 2000, Seed(20));
  auto f = hybrid_scan(forward, 3, 2, 500, Seed(21));
  REQUIRE(c.rows.size() == 3);
  for (auto& r : c.rows) {
    CHECK(r.ci_low() <= 0.0);
    CHECK(r.ci_high() >= 0.0);
  }
  double sum = 0;
  for (auto& r : f.rows) {
    CHECK(r.advantage() == 1.0);
    sum += r.advantage();
  }
  CHECK(f.end_to_end.advantage() == 1.0);
  CHECK(sum >= f.end_to_end.advantage());
}

TEST_CASE("exact out-distribution distance on the smallest hybrid") {
  ForwardAllProtocol forward(ForwardAllProtocol::Goal::focus_parity);
  CHECK(exact_hybrid_out_tvd(forward, 1, 1, 1, Seed(1)) == doctest::Approx(1.0));
  // A silent protocol leaves Bob's edges as the whole view: compare with a
  // direct enumeration of the E_B distribution.
  ConstantProtocol silent(0);
  std::map<std::string, double> dist[2];
  int members[2] = {0, 0};
  auto all = enumerate_witnesses(2, 1);
  for (const auto& w : all) members[1 - witness_parity(w, 1)]++;
  for (const auto& w : all) {
    const int side = 1 - witness_parity(w, 1);  // side 0: H(0), parity 1
    auto edges = build_graph(w).edges();
    for (std::uint32_t mask = 0; mask < (1u << edges.size()); ++mask) {
      std::vector<std::pair<std::uint32_t, std::uint32_t>> eb;
      for (std::uint32_t e = 0; e < edges.size(); ++e)
        if (mask >> e & 1) eb.push_back({std::min(edges[e].u, edges[e].v), std::max(edges[e].u, edges[e].v)});
      std::sort(eb.begin(), eb.end());
      std::string key;
      for (auto [u, v] : eb) key += std::to_string(u) + "-" + std::to_string(v) + ",";
      dist[side][key] += 1.0 / members[side] / (1u << edges.size());
    }
  }
  DistributionTable p, q;
  for (auto& [k, v] : dist[0]) p.add(k, v);
  for (auto& [k, v] : dist[1]) q.add(k, v);
  CHECK(exact_hybrid_out_tvd(silent, 1, 1, 1, Seed(1)) == doctest::Approx(tvd(p, q)).epsilon(1e-9));
}
