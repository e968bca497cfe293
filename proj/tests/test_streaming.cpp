#include <doctest.h>

#include <cmath>
#include <map>
#include <set>

#include "ngclab/distributions.hpp"
#include "ngclab/stats.hpp"
#include "ngclab/streaming.hpp"
#include "oracles.hpp"

using namespace ngclab;

namespace {

std::vector<Edge> cycle(std::uint32_t len, std::uint32_t offset = 0) {
  std::vector<Edge> e;
  for (std::uint32_t v = 0; v < len; ++v) e.push_back({offset + v, offset + (v + 1) % len});
  return e;
}

std::vector<Edge> path(std::uint32_t verts, std::uint32_t offset = 0) {
  std::vector<Edge> e;
  for (std::uint32_t v = 0; v + 1 < verts; ++v) e.push_back({offset + v, offset + v + 1});
  return e;
}

}  // namespace

TEST_CASE("uniform stream order") {
  const std::vector<Edge> edges = {{0, 1}, {1, 2}, {2, 3}};
  std::map<std::vector<std::uint32_t>, std::uint64_t> seen;
  for (int i = 0; i < 60000; ++i) {
    auto s = make_stream(edges, OrderMode::uniform_random, Seed(1).child(i));
    std::vector<std::uint32_t> order;
    for (auto& ev : s.events) order.push_back(ev.index);
    ++seen[order];
  }
  CHECK(seen.size() == 6);
  std::vector<std::uint64_t> obs;
  for (auto& [k, v] : seen) obs.push_back(v);
  CHECK(chi_square_uniform(obs).p_value > 0.001);
  auto again = make_stream(edges, OrderMode::uniform_random, Seed(1).child(0));
  CHECK(again.events.size() == 3);
}

TEST_CASE("batched and stochastic streams") {
  auto inst = sample_ngc_batched(120, 15, 2, 3, Seed(2));
  for (int i = 0; i < 20; ++i) {
    auto s = make_stream(inst, OrderMode::batched_random, Seed(3).child(i));
    REQUIRE(s.events.size() == inst.edges.size());
    for (std::size_t p = 0; p < s.events.size(); p += 2)
      CHECK(inst.batches[s.events[p].index] == inst.batches[s.events[p + 1].index]);
  }
  CHECK_THROWS(make_stream(sample_ngc(28, 7, Seed(1)), OrderMode::batched_random, Seed(1)));
  auto st = make_stream(inst, OrderMode::stochastic, Seed(4), 2.0);
  CHECK(st.events.size() == 2 * inst.edges.size());
  // The census survives iff every edge is drawn: inclusion-exclusion over missed edges.
  auto all_drawn = [](std::uint32_t E, std::uint32_t draws) {
    double p = 0, binom = 1;
    for (std::uint32_t i = 0; i <= E; ++i) {
      p += (i % 2 ? -1 : 1) * binom * std::pow(1.0 - double(i) / E, draws);
      binom = binom * (E - i) / (i + 1);
    }
    return p;
  };
  for (std::uint32_t len : {3u, 10u}) {
    Proportion same;
    auto ring = cycle(len);
    for (int i = 0; i < 4000; ++i) {
      auto s = make_stream(ring, OrderMode::stochastic, Seed(5).child(len).child(i), 4.0);
      same.add(exact_census(s, len).cycles_of(len) == 1);
    }
    CHECK(within_3sigma(same, all_drawn(len, 4 * len)));
    if (len == 3) CHECK(same.estimate() >= 0.95);
  }
}

TEST_CASE("census oracle agreement") {
  auto zero = sample_ngc(28, 7, Seed(1), 0);
  CHECK(exact_census(zero.edges, 28).components == 4);
  CHECK(exact_census(std::vector<Edge>{}, 9).components == 9);
  for (int i = 0; i < 100; ++i) {
    auto inst = sample_ngc_padded(4 * 8 * 3, 8, Seed(6).child(i));
    auto mine = exact_census(inst.edges, inst.n);
    auto ref = oracle::census(inst.edges, inst.n);
    CHECK(mine.components == ref.components);
    CHECK(mine.cycles == ref.cycles);
    CHECK(mine.paths == ref.paths);
  }
  UnionFindCounter uf;
  auto inst = sample_ngc(56, 7, Seed(7));
  auto s = make_stream(inst, OrderMode::uniform_random, Seed(8));
  CHECK(run_stream(uf, s, 56) == oracle::census(inst.edges, 56).components);
  UnionFindCounter copy;
  copy.init(56);
  copy.deserialize(uf.serialize());
  CHECK(copy.finalize() == uf.finalize());
  CHECK(uf.serialize().size() == uf.state_bits());
}

TEST_CASE("matching and independent set closed forms") {
  auto one = sample_ngc(56, 7, Seed(1), 1);
  auto zero = sample_ngc(56, 7, Seed(1), 0);
  CHECK(matching_size_exact(one.edges, 56) == 26);
  CHECK(matching_size_exact(zero.edges, 56) == 24);
  CHECK(mis_size_exact(one.edges, 56) == 30);
  CHECK(mis_size_exact(zero.edges, 56) == 28);
  CHECK(matching_size_exact({{0, 1}}, 2) == 1);
  CHECK(mis_size_exact({}, 1) == 1);
  CHECK_THROWS(matching_size_exact({{0, 1}, {0, 2}, {0, 3}}, 4));
  CHECK_THROWS(mis_size_exact({{0, 1}, {0, 2}, {0, 3}}, 4));
  // property: random unions of small paths and cycles against exhaustive search
  Engine rng(9);
  for (int trial = 0; trial < 300; ++trial) {
    std::vector<Edge> edges;
    std::uint32_t n = 0;
    while (n < 12) {
      const auto size = static_cast<std::uint32_t>(1 + uniform_below(rng, 6));
      std::vector<Edge> part;
      if (size >= 3 && coin(rng))
        part = cycle(size, n);
      else
        part = path(size, n);
      edges.insert(edges.end(), part.begin(), part.end());
      n += size;
    }
    CHECK(matching_size_exact(edges, n) == oracle::brute_matching(edges));
    if (n <= 20) CHECK(mis_size_exact(edges, n) == oracle::brute_mis(edges, n));
  }
}

TEST_CASE("mst against Prim") {
  CHECK(mst_weight_exact({{0, 1}, {1, 2}, {2, 0}}, {1, 1, 1}, 3).weight == 2);
  auto forest = mst_weight_exact({{0, 1}}, {4}, 3);
  CHECK(forest.weight == 4);
  CHECK(forest.components == 2);
  for (int th = 0; th <= 1; ++th)
    for (int i = 0; i < 30; ++i) {
      auto aug = mst_augment(sample_ngc(56, 7, Seed(10).child(i), th), 5).instance;
      auto r = mst_weight_exact(aug.edges, aug.weights, 56);
      CHECK(r.components == 1);
      CHECK(r.weight == oracle::prim(aug.edges, aug.weights, 56));
      if (th == 1) CHECK(r.weight == 55);
      if (th == 0) CHECK(r.weight >= 59);
    }
  Engine rng(11);
  for (int i = 0; i < 100; ++i) {
    std::vector<Edge> e;
    std::vector<std::int64_t> w;
    for (std::uint32_t v = 1; v < 12; ++v) {
      e.push_back({static_cast<std::uint32_t>(uniform_below(rng, v)), v});
      w.push_back(static_cast<std::int64_t>(1 + uniform_below(rng, 9)));
    }
    for (int x = 0; x < 15; ++x) {
      auto a = static_cast<std::uint32_t>(uniform_below(rng, 12)), b = static_cast<std::uint32_t>(uniform_below(rng, 12));
      if (a == b) continue;
      e.push_back({a, b});
      w.push_back(static_cast<std::int64_t>(1 + uniform_below(rng, 9)));
    }
    CHECK(mst_weight_exact(e, w, 12).weight == oracle::prim(e, w, 12));
  }
}

TEST_CASE("component estimator") {
  ComponentEstimator iso(0.25, 64, 0, Seed(1));
  Stream empty;
  CHECK(run_stream(iso, empty, 100) == doctest::Approx(100.0));
  CHECK(default_cc_cap(0.25) == 8);
  CHECK_THROWS(ComponentEstimator(0.0, 10, 0, Seed(1)));
  CHECK_THROWS(ComponentEstimator(1.0, 10, 0, Seed(1)));
  // triangles
  const std::uint32_t n = 3 * 256;
  std::vector<Edge> tri;
  for (std::uint32_t c = 0; c < n / 3; ++c) {
    auto part = cycle(3, 3 * c);
    tri.insert(tri.end(), part.begin(), part.end());
  }
  int good = 0;
  for (int i = 0; i < 30; ++i) {
    auto s = make_stream(tri, OrderMode::uniform_random, Seed(2).child(i));
    auto est = cc_estimate(s, n, 0.25, 512, 0, Seed(3).child(i));
    CHECK(est.estimate >= 0);
    CHECK(est.estimate <= n);
    good += std::fabs(est.estimate - n / 3.0) <= 0.25 * n;
    CHECK(est.state_bits == 512u * (1 + 8 * bits_for(n + 1)));
  }
  CHECK(good >= 20);
  // serialization round trip mid-stream
  auto s = make_stream(tri, OrderMode::uniform_random, Seed(4));
  ComponentEstimator a(0.25, 128, 0, Seed(5)), b(0.25, 128, 0, Seed(5));
  a.init(n);
  for (std::size_t i = 0; i < s.events.size() / 2; ++i) a.process(s.events[i].edge);
  b.init(n);
  b.deserialize(a.serialize());
  CHECK(a.serialize().size() == a.state_bits());
  for (std::size_t i = s.events.size() / 2; i < s.events.size(); ++i) {
    a.process(s.events[i].edge);
    b.process(s.events[i].edge);
  }
  CHECK(a.finalize() == b.finalize());
}

TEST_CASE("random walks") {
  auto tri = cycle(3);
  Adjacency adj(tri, 3);
  Engine rng(12);
  Proportion to1;
  for (int i = 0; i < 10000; ++i) {
    auto w = random_walk(adj, 0, 1, rng);
    CHECK((w.vertices[1] == 1 || w.vertices[1] == 2));
    to1.add(w.vertices[1] == 1);
  }
  CHECK(within_3sigma(to1, 0.5));
  Adjacency lonely({{0, 1}}, 3);
  CHECK_THROWS(random_walk(lonely, 2, 1, rng));

  auto exact = walk_distribution_exact(adj, 0, 2);
  CHECK(exact.size() == 4);
  for (auto& [k, p] : exact.entries()) CHECK(p == doctest::Approx(0.25));
  auto single = walk_distribution_exact(Adjacency({{0, 1}}, 2), 0, 1);
  CHECK(single.size() == 1);

  // empirical walks against the exact table on a 5-cycle with a tail
  std::vector<Edge> g = cycle(5);
  g.push_back({0, 5});
  Adjacency ga(g, 6);
  auto table = walk_distribution_exact(ga, 0, 4);
  std::map<std::string, std::uint64_t> counts;
  for (int i = 0; i < 50000; ++i) {
    auto w = random_walk(ga, 0, 4, rng);
    for (std::size_t j = 0; j + 1 < w.vertices.size(); ++j) CHECK(ga.degree(w.vertices[j]) > 0);
    ++counts[walk_key(w)];
  }
  std::vector<std::uint64_t> obs;
  std::vector<double> expect;
  for (auto& [k, p] : table.entries()) {
    obs.push_back(counts[k]);
    expect.push_back(p * 50000);
  }
  CHECK(counts.size() == table.size());
  CHECK(chi_square_gof(obs, expect).p_value > 0.001);

  // coverage of a 2k-cycle in 2k steps, and of a k-cycle in 4k^2 steps
  Adjacency c8(cycle(8), 8);
  Proportion cover, long_cover;
  Adjacency k8(cycle(8), 8);
  for (int i = 0; i < 100000; ++i) {
    auto w = random_walk(c8, 0, 8, rng);
    cover.add(std::set<std::uint32_t>(w.vertices.begin(), w.vertices.end()).size() == 8);
  }
  for (int i = 0; i < 2000; ++i) {
    auto w = random_walk(k8, 0, 4 * 64, rng);
    long_cover.add(std::set<std::uint32_t>(w.vertices.begin(), w.vertices.end()).size() == 8);
  }
  CHECK(at_least_3sigma(cover, 1.0 / 256));
  CHECK(long_cover.estimate() >= 0.5);
}

TEST_CASE("cycle certification") {
  WalkSample around;
  for (std::uint32_t v = 0; v <= 7; ++v) around.vertices.push_back(v % 7);
  CHECK(detect_cycle_length_from_walks({around}, 28, 7) == CycleClass::k_cycles);
  WalkSample back_and_forth{{0, 1, 2, 1, 0, 1}};
  CHECK(detect_cycle_length_from_walks({back_and_forth}, 28, 7) == CycleClass::unknown);
  CHECK(std::string(to_string(CycleClass::two_k_cycles)) == "2k_cycles");
  for (int i = 0; i < 20; ++i) {
    auto inst = sample_ngc(16 * 4, 4, Seed(13).child(i));
    auto d = run_walk_distinguisher(inst, 8, 64ull << 16, Seed(14).child(i));
    CHECK(d.result == (*inst.theta == 0 ? CycleClass::k_cycles : CycleClass::two_k_cycles));
  }
}
