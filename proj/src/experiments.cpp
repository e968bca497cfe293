#include "ngclab/experiments.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <map>
#include <set>
#include <stdexcept>

#include "ngclab/bias.hpp"
#include "ngclab/distributions.hpp"
#include "ngclab/embedding.hpp"
#include "ngclab/partition.hpp"
#include "ngclab/protocols.hpp"
#include "ngclab/stats.hpp"
#include "ngclab/streaming.hpp"

namespace ngclab {

std::string csv_header() { return "suite,params,metric,value,ci_low,ci_high,trials,seed"; }

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

std::string to_csv(const CsvRow& r) {
  return r.suite + "," + r.params + "," + r.metric + "," + format_number(r.value) + "," + format_number(r.ci_low) +
         "," + format_number(r.ci_high) + "," + std::to_string(r.trials) + "," + r.seed;
}

namespace {

struct Emitter {
  std::string suite, params, seed;
  const RowSink& sink;
  SuiteOutcome outcome;

  void row(const std::string& metric, double value, double lo, double hi, std::uint64_t trials) {
    sink(CsvRow{suite, params, metric, value, lo, hi, trials, seed});
  }
  void proportion(const std::string& metric, const Proportion& p) {
    row(metric, p.estimate(), p.ci_low(), p.ci_high(), p.trials);
  }
  void check(bool ok, const std::string& what) {
    if (!ok) {
      outcome.pass = false;
      outcome.failures.push_back(what);
    }
  }
};

}  // namespace

SuiteOutcome suite_partition_stats(std::uint32_t w, std::uint64_t trials, const Seed& seed, const RowSink& sink) {
  if (w == 0 || trials == 0) throw std::invalid_argument("partition-stats: w and trials must be positive");
  Emitter em{"partition-stats", "w=" + std::to_string(w) + ";trials=" + std::to_string(trials), seed.describe(), sink, {}};
  Proportion clean, active, big_enough;
  const double need = static_cast<double>(w) / 100.0;
  // Cells: rank of sigma(1) inside the clean set, given activity.
  std::vector<std::uint64_t> rank_obs;
  std::vector<double> rank_exp;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Engine rng = seed.child(i).engine();
    BlockFunctions f{random_bits(2 * w, rng), random_bits(2 * w, rng), random_bits(2 * w, rng)};
    const auto sigma1 = static_cast<std::uint32_t>(uniform_below(rng, w) + 1);
    const auto all = clean_indices(f, w);
    clean.hits += all.size();
    clean.trials += w;
    auto it = std::lower_bound(all.begin(), all.end(), sigma1);
    const bool act = it != all.end() && *it == sigma1;
    active.add(act);
    big_enough.add(static_cast<double>(all.size()) >= need);
    if (act) {
      if (rank_obs.size() < all.size()) {
        rank_obs.resize(all.size(), 0);
        rank_exp.resize(all.size(), 0.0);
      }
      ++rank_obs[it - all.begin()];
      for (std::size_t r = 0; r < all.size(); ++r) rank_exp[r] += 1.0 / static_cast<double>(all.size());
    }
  }
  em.proportion("clean_prob", clean);
  em.check(within_3sigma(clean, 1.0 / 64), "clean_prob outside 3 sigma of 1/64");
  em.proportion("active_prob", active);
  em.check(within_3sigma(active, 1.0 / 64), "active_prob outside 3 sigma of 1/64");
  em.proportion("clean_count_ge_w_over_100", big_enough);
  const auto need_int = static_cast<std::uint64_t>(std::ceil(need));
  const double exact = need_int == 0 ? 1.0 : 1.0 - binomial_cdf(need_int - 1, w, 1.0 / 64);
  em.row("clean_count_ge_w_over_100_exact", exact, exact, exact, 0);
  const double target = 1.0 - std::pow(static_cast<double>(w), -4.0);
  em.row("clean_count_ge_w_over_100_target", target, target, target, 0);
  if (!rank_obs.empty()) {
    auto chi = chi_square_gof(rank_obs, rank_exp);
    em.row("sigma1_rank_chi2_p", chi.p_value, chi.p_value, chi.p_value, active.hits);
    em.check(chi.p_value > 0.001, "sigma(1) not uniform over the clean set");
  }
  return em.outcome;
}

SuiteOutcome suite_reduce_check(std::uint32_t m, std::uint32_t t, std::uint64_t trials, const Seed& seed,
                                const RowSink& sink) {
  if (m == 0 || t == 0 || trials == 0) throw std::invalid_argument("reduce-check: m, t, trials must be positive");
  Emitter em{"reduce-check", "m=" + std::to_string(m) + ";t=" + std::to_string(t) + ";trials=" + std::to_string(trials),
             seed.describe(), sink, {}};
  Proportion kept;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Seed ts = seed.child(i);
    DhxSample dhx = sample_dhx(m + 1, t, ts.child("dhx"));
    Engine hr = ts.child("h").engine();
    const auto h = static_cast<std::uint32_t>(uniform_below(hr, m) + 1);
    Embedding emb = embed_dhx(dhx.witness, h, m, ts.child("embed"));
    kept.add(emb.graph.parity(h) == dhx.answer);
  }
  em.row("embed_parity_preserved", kept.estimate(), kept.estimate(), kept.estimate(), trials);
  em.check(kept.hits == kept.trials, "embedding changed the parity of group h*");

  // Marginal check on small supports: embedded graphs against direct draws
  // from the half-half hybrid mixture, both empirical.
  double support = 1;
  for (std::uint32_t g = 0; g < t; ++g) support *= std::tgamma(2.0 * m + 1) * std::ldexp(1.0, 2 * static_cast<int>(m));
  if (support <= 4096) {
    const std::uint32_t h = (m + 1) / 2;
    std::map<std::string, std::uint64_t> a, b;
    for (std::uint64_t i = 0; i < trials; ++i) {
      Seed ts = seed.child("marginal").child(i);
      DhxSample dhx = sample_dhx(m + 1, t, ts.child("dhx"));
      ++a[witness_key(embed_dhx(dhx.witness, h, m, ts.child("embed")).record.assembled)];
      Engine lr = ts.child("half").engine();
      NgcInstance direct = sample_hybrid(m, t, coin(lr) ? h - 1 : h, ts.child("direct"));
      ++b[witness_key(*direct.witness)];
    }
    const double d = tvd(DistributionTable::from_counts(a), DistributionTable::from_counts(b));
    em.row("marginal_tvd_empirical", d, d, d, trials);
  }
  return em.outcome;
}

SuiteOutcome suite_stream_run(std::uint32_t n, std::uint32_t k, const std::string& algorithm, double epsilon,
                              std::uint32_t r, const std::string& mode, std::uint64_t trials, const Seed& seed,
                              const RowSink& sink) {
  if (algorithm != "union-find" && algorithm != "cc")
    throw std::invalid_argument("stream-run: algorithm must be union-find or cc");
  if (mode != "stream" && mode != "protocol") throw std::invalid_argument("stream-run: mode must be stream or protocol");
  if (trials == 0) throw std::invalid_argument("stream-run: trials must be positive");
  Emitter em{"stream-run",
             "n=" + std::to_string(n) + ";k=" + std::to_string(k) + ";algorithm=" + algorithm + ";mode=" + mode +
                 (algorithm == "cc" ? ";epsilon=" + format_number(epsilon) + ";r=" + std::to_string(r) : ""),
             seed.describe(), sink, {}};
  Proportion correct;
  double abs_err = 0;
  std::size_t state_bits = 0;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Seed ts = seed.child(i);
    NgcInstance inst = sample_ngc_padded(n, k, ts.child("instance"));
    std::unique_ptr<StreamingAlgorithm> alg;
    if (algorithm == "union-find")
      alg = std::make_unique<UnionFindCounter>();
    else
      alg = std::make_unique<ComponentEstimator>(epsilon, r, 0, ts.child("estimator"));
    double estimate;
    if (mode == "stream") {
      Stream st = make_stream(inst, OrderMode::uniform_random, ts.child("order"));
      estimate = run_stream(*alg, st, inst.n);
      state_bits = alg->state_bits();
    } else {
      StreamingProtocol proto(std::move(alg), [](double est, const PublicInfo& info) {
        return ngc_threshold_decision(est, info.n, info.k);
      });
      EdgeAssignment split = assign_uniform(inst.edges.size(), 2, ts.child("split"));
      auto tr = proto.simulate(public_info(inst), split.edges_of(0, inst.edges), split.edges_of(1, inst.edges),
                               ts.child("shared"));
      estimate = tr.estimate;
      state_bits = tr.message_bits;
    }
    const double exact = static_cast<double>(exact_census(inst.edges, inst.n).components);
    abs_err += std::fabs(estimate - exact);
    correct.add(ngc_threshold_decision(estimate, inst.n, inst.k) == *inst.theta);
  }
  em.proportion("decision_accuracy", correct);
  em.row("mean_abs_error", abs_err / trials, abs_err / trials, abs_err / trials, trials);
  em.row("state_bits", static_cast<double>(state_bits), static_cast<double>(state_bits),
         static_cast<double>(state_bits), trials);
  if (algorithm == "union-find") em.check(correct.hits == correct.trials, "union-find misclassified an instance");
  return em.outcome;
}

SuiteOutcome suite_bias_scan(std::uint32_t m, std::uint32_t logA, std::uint32_t k, std::uint64_t trials,
                             const Seed& seed, const RowSink& sink) {
  if (logA > m) throw std::invalid_argument("bias-scan: logA must not exceed m");
  if (k == 0 || k > m) throw std::invalid_argument("bias-scan: k must lie in [1, m]");
  Emitter em{"bias-scan", "m=" + std::to_string(m) + ";logA=" + std::to_string(logA) + ";k=" + std::to_string(k),
             seed.describe(), sink, {}};
  Engine rng = seed.child("support").engine();
  SupportSet A = SupportSet::random(m, 1u << logA, rng);
  double mean, lo, hi;
  std::uint64_t used = 0;
  if (binomial(m, k) <= 1000000) {
    mean = lo = hi = mean_bias_sq_exact(A, k);
    used = binomial(m, k);
  } else {
    auto s = mean_bias_sq_sampled(A, k, trials, seed.child("subsets"));
    mean = s.mean;
    lo = s.ci_low;
    hi = s.ci_high;
    used = trials;
  }
  const double rhs = kkl_rhs(m, std::ldexp(1.0, static_cast<int>(logA)), k);
  em.row("mean_bias_sq", mean, lo, hi, used);
  em.row("kkl_rhs", rhs, rhs, rhs, 0);
  const double ratio = rhs > 0 ? mean / rhs : (mean == 0 ? 0.0 : INFINITY);
  em.row("ratio", ratio, ratio, ratio, used);
  em.check(std::isfinite(ratio), "mean_bias_sq is positive while the bound is zero");
  return em.outcome;
}

SuiteOutcome suite_stochastic_stats(double c, std::uint32_t edges, std::uint64_t trials, const Seed& seed,
                                    const RowSink& sink) {
  if (!(c > 0) || edges == 0 || trials == 0)
    throw std::invalid_argument("stochastic-stats: c, edges, trials must be positive");
  Emitter em{"stochastic-stats",
             "c=" + format_number(c) + ";edges=" + std::to_string(edges) + ";trials=" + std::to_string(trials),
             seed.describe(), sink, {}};
  Proportion not_b, a_not_b, clean;
  for (std::uint64_t i = 0; i < trials; ++i) {
    EdgeAssignment s = stochastic_assign(edges, c, seed.child("edges").child(i));
    bool in_a = std::find(s.samples[0].begin(), s.samples[0].end(), 0u) != s.samples[0].end();
    bool in_b = std::find(s.samples[1].begin(), s.samples[1].end(), 0u) != s.samples[1].end();
    not_b.add(!in_b);
    a_not_b.add(in_a && !in_b);
  }
  const std::uint32_t w = 16;
  for (std::uint64_t i = 0; i < trials; ++i) {
    Seed ts = seed.child("clean").child(i);
    DhxSample dhx = sample_dhx(w, 1, ts.child("dhx"));
    NgcInstance inst = instance_from_witness(dhx.witness, 0, false, std::nullopt);
    EdgeAssignment s = stochastic_assign(inst.edges.size(), c, ts.child("samples"));
    CleanReport rep = clean_indices_stochastic(inst, s);
    clean.hits += rep.blocks[0].clean_all.size();
    clean.trials += w;
  }
  em.proportion("p_not_in_B", not_b);
  em.row("p_not_in_B_bound", std::exp(-c), std::exp(-c), std::exp(-c), 0);
  em.check(at_least_3sigma(not_b, std::exp(-c)), "Pr[e not in E_B] below e^-c");
  em.proportion("p_in_A_not_in_B", a_not_b);
  em.row("p_in_A_not_in_B_bound", std::exp(-1.5 * c), std::exp(-1.5 * c), std::exp(-1.5 * c), 0);
  em.check(at_least_3sigma(a_not_b, std::exp(-1.5 * c)), "Pr[e in E_A, not in E_B] below e^-3c/2");
  em.proportion("clean_prob", clean);
  em.row("clean_prob_bound", std::exp(-9 * c), std::exp(-9 * c), std::exp(-9 * c), 0);
  em.check(at_least_3sigma(clean, std::exp(-9 * c)), "Pr[index clean] below e^-9c");
  return em.outcome;
}

SuiteOutcome suite_walk_cover(std::uint32_t k, std::uint32_t m, std::uint32_t instances, std::uint64_t walk_budget,
                              std::uint64_t cover_trials, const Seed& seed, const RowSink& sink) {
  if (k < 4 || m == 0 || instances == 0) throw std::invalid_argument("walk-cover: need k >= 4, m, instances >= 1");
  Emitter em{"walk-cover", "k=" + std::to_string(k) + ";m=" + std::to_string(m) + ";walks=" + std::to_string(walk_budget),
             seed.describe(), sink, {}};
  const std::uint32_t len = 2 * k;
  std::vector<Edge> cycle;
  for (std::uint32_t v = 0; v < len; ++v) cycle.push_back({v, (v + 1) % len});
  Adjacency adj(cycle, len);
  Engine rng = seed.child("cover").engine();
  Proportion covered;
  std::vector<std::uint8_t> seen(len);
  for (std::uint64_t i = 0; i < cover_trials; ++i) {
    WalkSample w = random_walk(adj, 0, len, rng);
    std::fill(seen.begin(), seen.end(), 0);
    std::uint32_t distinct = 0;
    for (auto v : w.vertices) distinct += seen[v] ? 0 : (seen[v] = 1);
    covered.add(distinct == len);
  }
  const double bound = std::ldexp(1.0, -2 * static_cast<int>(k));
  if (cover_trials > 0) {
    em.proportion("cover_freq_2k_cycle", covered);
    em.row("cover_bound", bound, bound, bound, 0);
    em.check(at_least_3sigma(covered, bound), "coverage frequency below 2^-2k");
  }
  Proportion correct;
  double used = 0;
  for (std::uint32_t i = 0; i < instances; ++i) {
    Seed ts = seed.child("instance").child(i);
    NgcInstance inst = sample_ngc_padded(4 * k * m, k, ts.child("sample"));
    WalkDistinguisher d = run_walk_distinguisher(inst, len, walk_budget, ts.child("walks"));
    const CycleClass want = *inst.theta == 0 ? CycleClass::k_cycles : CycleClass::two_k_cycles;
    correct.add(d.result == want);
    used += static_cast<double>(d.walks_used);
  }
  em.proportion("classification_accuracy", correct);
  em.row("mean_walks_used", used / instances, used / instances, used / instances, instances);
  em.check(correct.estimate() >= 2.0 / 3.0, "classification accuracy below 2/3");
  return em.outcome;
}

std::map<std::string, std::string> read_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open config file " + path);
  std::map<std::string, std::string> kv;
  std::string line;
  int line_no = 0;
  auto trim = [](std::string s) {
    const char* ws = " \t\r";
    s.erase(0, s.find_first_not_of(ws));
    s.erase(s.find_last_not_of(ws) + 1);
    return s;
  };
  while (std::getline(in, line)) {
    ++line_no;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    auto eq = line.find('=');
    if (eq == std::string::npos)
      throw std::runtime_error(path + ":" + std::to_string(line_no) + ": expected key=value");
    kv[trim(line.substr(0, eq))] = trim(line.substr(eq + 1));
  }
  return kv;
}

}  // namespace ngclab
