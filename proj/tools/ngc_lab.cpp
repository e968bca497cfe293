#include <CLI11.hpp>

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "ngclab/distributions.hpp"
#include "ngclab/experiments.hpp"
#include "ngclab/instance_io.hpp"

using namespace ngclab;

namespace {

constexpr int kExitCheck = 1;
constexpr int kExitUsage = 2;
constexpr int kExitInternal = 3;

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Config files become trailing flags unless the flag is already on the
// command line, so flags win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config" && i + 1 < args.size()) {
      path = args[i + 1];
      args.erase(args.begin() + i, args.begin() + i + 2);
      break;
    }
    if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
      args.erase(args.begin() + i);
      break;
    }
  }
  if (path.empty()) return args;
  std::map<std::string, std::string> kv;
  try {
    kv = read_config_file(path);
  } catch (const std::exception& e) {
    throw UsageError(e.what());
  }
  auto given = [&](const std::string& key) {
    for (const auto& a : args)
      if (a == "--" + key || a.rfind("--" + key + "=", 0) == 0) return true;
    return false;
  };
  if (auto it = kv.find("suite"); it != kv.end()) {
    bool has_command = args.size() > 1 && args[1].rfind("-", 0) != 0;
    if (!has_command) args.insert(args.begin() + 1, it->second);
    kv.erase(it);
  }
  static const std::set<std::string> switches = {"reveal", "pad", "batched"};
  for (const auto& [key, value] : kv) {
    if (given(key)) continue;
    if (switches.count(key)) {
      if (value == "1" || value == "true" || value == "yes") args.push_back("--" + key);
      continue;
    }
    args.push_back("--" + key);
    args.push_back(value);
  }
  return args;
}

struct CsvOut {
  std::ofstream file;
  std::ostream* os = &std::cout;

  explicit CsvOut(const std::string& path) {
    if (!path.empty()) {
      file.open(path);
      if (!file) throw UsageError("cannot open output file " + path);
      os = &file;
    }
    *os << csv_header() << '\n' << std::flush;
  }
  RowSink sink() {
    return [this](const CsvRow& r) { *os << to_csv(r) << '\n' << std::flush; };
  }
};

int finish(const SuiteOutcome& o) {
  for (const auto& f : o.failures) std::cerr << "check failed: " << f << '\n';
  return o.pass ? 0 : kExitCheck;
}

}  // namespace

int main(int argc, char** argv) {
  std::vector<std::string> args(argv, argv + argc);
  try {
    args = expand_config(args);
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }

  CLI::App app{"Experiments on noisy gap cycle counting instances"};
  app.require_subcommand(1);
  std::uint64_t seed = default_master_seed(1);
  std::string out;
  app.add_option("--seed", seed, "master seed (default: NGC_LAB_SEED or 1)");
  app.add_option("--out", out, "output path (default: stdout)");
  app.add_option("--config", "key=value file; flags override it");

  // gen
  auto* gen = app.add_subcommand("gen", "sample an instance and write it");
  std::uint32_t n = 0, k = 0, s = 1, t = 0;
  std::optional<int> theta;
  bool reveal = false, pad = false, batched = false;
  std::int64_t W = 0;
  gen->add_option("--n", n, "vertex count")->required();
  gen->add_option("--k", k, "cycle parameter")->required();
  gen->add_option("--theta", theta, "force theta")->check(CLI::Range(0, 1));
  gen->add_flag("--reveal", reveal, "include theta and the witness");
  gen->add_flag("--pad", pad, "pad to arbitrary k >= 4");
  gen->add_option("--mst", W, "add MST augmentation edges with weight W");
  gen->add_flag("--batched", batched, "sample the batched (segment) variant");
  gen->add_option("--s", s, "segments (batched)");
  gen->add_option("--t", t, "gadgets per segment (batched)");
  for (auto* sub : {gen}) {
    sub->add_option("--seed", seed);
    sub->add_option("--out", out);
  }

  auto* val = app.add_subcommand("validate", "check an instance file against the census law");
  std::string file;
  val->add_option("file", file, "instance file")->required();

  auto* ps = app.add_subcommand("partition-stats", "clean and active index rates under random partitions");
  std::uint32_t w = 512;
  std::uint64_t trials = 10000;
  ps->add_option("--w", w, "gadget width");

  auto* rc = app.add_subcommand("reduce-check", "embed DHX into hybrids and check the focus parity");
  std::uint32_t m = 4;
  rc->add_option("--m", m, "groups per hybrid");
  rc->add_option("--t", t, "gadgets");

  auto* sr = app.add_subcommand("stream-run", "run a streaming algorithm on sampled instances");
  std::string algorithm = "union-find", mode = "stream";
  double epsilon = 0.25;
  std::uint32_t r = 1024;
  sr->add_option("--n", n, "vertex count")->required();
  sr->add_option("--k", k, "cycle parameter")->required();
  sr->add_option("--algorithm", algorithm, "union-find | cc")->check(CLI::IsMember({"union-find", "cc"}));
  sr->add_option("--mode", mode, "stream | protocol")->check(CLI::IsMember({"stream", "protocol"}));
  sr->add_option("--epsilon", epsilon, "estimator accuracy");
  sr->add_option("--r", r, "estimator seeds");

  auto* bs = app.add_subcommand("bias-scan", "mean squared bias against the level-k inequality");
  std::uint32_t logA = 10, level = 2, cube = 12;
  bs->add_option("--m", cube, "cube dimension");
  bs->add_option("--logA", logA, "log2 of the support size");
  bs->add_option("--k", level, "subset size");

  auto* ss = app.add_subcommand("stochastic-stats", "edge and index probabilities under stochastic samples");
  double c = 1.0;
  std::uint32_t edges = 1000;
  ss->add_option("--c", c, "sampling rate");
  ss->add_option("--edges", edges, "edge count");

  auto* wc = app.add_subcommand("walk-cover", "random-walk cycle length distinguisher");
  std::uint32_t instances = 100;
  std::uint64_t walks = 0, cover = 100000;
  wc->add_option("--k", k, "cycle parameter");
  wc->add_option("--m", m, "instance scale, n = 4km");
  wc->add_option("--instances", instances, "instances to classify");
  wc->add_option("--walks", walks, "walk budget (default 64 * 4^(2k))");
  wc->add_option("--cover-trials", cover, "walks on a lone 2k-cycle");

  for (auto* sub : {ps, rc, sr, bs, ss, wc}) {
    sub->add_option("--trials", trials, "trials");
    sub->add_option("--seed", seed);
    sub->add_option("--out", out);
  }
  for (auto* sub : {val}) sub->add_option("--seed", seed);

  std::vector<std::string> rest(args.begin() + 1, args.end());
  std::reverse(rest.begin(), rest.end());
  try {
    app.parse(rest);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  const Seed root(seed);
  try {
    if (*gen) {
      NgcInstance inst;
      if (batched) {
        if (t == 0 || s == 0) throw UsageError("--batched needs --s and --t");
        inst = sample_ngc_batched(n, k, s, t, root, theta);
      } else if (pad) {
        inst = sample_ngc_padded(n, k, root, theta);
      } else {
        if (k < 4 || k % 3 != 1)
          throw UsageError("k = " + std::to_string(k) +
                           " violates the k = 3t+1 constraint (t >= 1); pass --pad for other k >= 4");
        inst = sample_ngc(n, k, root, theta);
      }
      if (W != 0) {
        auto aug = mst_augment(inst, W);
        if (aug.degenerate) std::cerr << "warning: m = 1, the MST weight gap is empty\n";
        inst = std::move(aug.instance);
      }
      const std::string text = write_instance(inst, reveal);
      NgcInstance back = read_instance_string(text);
      if (out.empty()) {
        std::cout << text << std::flush;
      } else {
        std::ofstream f(out);
        if (!f) throw UsageError("cannot open output file " + out);
        f << text;
      }
      std::cerr << "edges " << inst.edges.size() << " (re-parsed " << back.edges.size() << ")\n";
      std::cerr << exact_census(inst.edges, inst.n).summary() << '\n';
      if (back.edges != inst.edges) {
        std::cerr << "error: instance did not survive a round trip\n";
        return kExitInternal;
      }
      return 0;
    }
    if (*val) {
      NgcInstance inst = read_instance_file(file);
      Validation v = validate_instance(inst);
      std::cout << v.message << '\n' << v.census.summary() << '\n';
      return v.ok ? 0 : kExitCheck;
    }
    CsvOut csv(out);
    if (*ps) return finish(suite_partition_stats(w, trials, root.child("partition-stats"), csv.sink()));
    if (*rc) {
      if (t == 0) t = 2;
      return finish(suite_reduce_check(m, t, trials, root.child("reduce-check"), csv.sink()));
    }
    if (*sr)
      return finish(suite_stream_run(n, k, algorithm, epsilon, r, mode, trials, root.child("stream-run"), csv.sink()));
    if (*bs) return finish(suite_bias_scan(cube, logA, level, trials, root.child("bias-scan"), csv.sink()));
    if (*ss) return finish(suite_stochastic_stats(c, edges, trials, root.child("stochastic-stats"), csv.sink()));
    if (*wc) {
      if (k == 0) k = 4;
      if (walks == 0) {
        if (4 * k > 62) throw UsageError("default walk budget overflows; pass --walks");
        walks = 64ull << (4 * k);
      }
      return finish(suite_walk_cover(k, m, instances, walks, cover, root.child("walk-cover"), csv.sink()));
    }
  } catch (const UsageError& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const FormatError& e) {
    std::cerr << "format error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const std::logic_error& e) {
    std::cerr << "internal error: " << e.what() << '\n';
    return kExitInternal;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitInternal;
  }
  return kExitUsage;
}
