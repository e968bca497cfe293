#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "ngclab/distribution_table.hpp"
#include "ngclab/distributions.hpp"
#include "ngclab/graph.hpp"
#include "ngclab/message.hpp"
#include "ngclab/rng.hpp"

namespace ngclab {

enum class OrderMode : std::uint8_t { given, uniform_random, batched_random, stochastic };

struct StreamEvent {
  Edge edge;
  std::int64_t weight = 1;
  std::uint32_t index = 0;  // position of the edge in the source edge list
};

struct Stream {
  OrderMode mode = OrderMode::given;
  double c = 0.0;
  std::vector<StreamEvent> events;
};

// batches (one id per edge) are required for batched_random; c is used by
// stochastic mode, which emits ceil(c |E|) samples with repetition.
Stream make_stream(const std::vector<Edge>& edges, OrderMode mode, const Seed& seed, double c = 1.0,
                   const std::vector<std::uint32_t>* batches = nullptr,
                   const std::vector<std::int64_t>* weights = nullptr);
Stream make_stream(const NgcInstance& instance, OrderMode mode, const Seed& seed, double c = 1.0);

Census exact_census(const Stream& stream, std::uint32_t n);

// Single-pass algorithm with a serializable state.
class StreamingAlgorithm {
 public:
  virtual ~StreamingAlgorithm() = default;
  // A new object with the same configuration and no state.
  virtual std::unique_ptr<StreamingAlgorithm> fresh() const = 0;
  virtual void init(std::uint32_t n) = 0;
  virtual void process(const Edge& e) = 0;
  virtual Message serialize() const = 0;
  virtual void deserialize(const Message& bits) = 0;
  virtual double finalize() const = 0;
  // Always equal to serialize().size().
  virtual std::size_t state_bits() const = 0;
  virtual std::string name() const = 0;
};

double run_stream(StreamingAlgorithm& algorithm, const Stream& stream, std::uint32_t n);

// Exact connected-component count. State: one parent id per vertex.
class UnionFindCounter : public StreamingAlgorithm {
 public:
  std::unique_ptr<StreamingAlgorithm> fresh() const override { return std::make_unique<UnionFindCounter>(); }
  void init(std::uint32_t n) override;
  void process(const Edge& e) override { uf_.unite(e.u, e.v); }
  Message serialize() const override;
  void deserialize(const Message& bits) override;
  double finalize() const override { return uf_.components(); }
  std::size_t state_bits() const override;
  std::string name() const override { return "union-find"; }

 private:
  std::uint32_t n_ = 0;
  UnionFind uf_;
};

// Records the arrival order. State: a 32-bit count, then two ids per edge.
class EdgeRecorder : public StreamingAlgorithm {
 public:
  std::unique_ptr<StreamingAlgorithm> fresh() const override { return std::make_unique<EdgeRecorder>(); }
  void init(std::uint32_t n) override;
  void process(const Edge& e) override { seen_.push_back(e); }
  Message serialize() const override;
  void deserialize(const Message& bits) override;
  double finalize() const override { return static_cast<double>(seen_.size()); }
  std::size_t state_bits() const override;
  std::string name() const override { return "edge-recorder"; }
  const std::vector<Edge>& seen() const { return seen_; }

 private:
  std::uint32_t n_ = 0;
  std::vector<Edge> seen_;
};

// Truncated exploration from r sampled vertices: each seed's set absorbs
// arriving edges with exactly one endpoint inside while it has fewer than
// cap vertices; such an edge arriving at a full set marks the seed dirty.
// Estimate: (n/r) * sum over clean seeds of 1/|C|.
// State: per seed one dirty bit and cap slots of ids (empty slot = n).
class ComponentEstimator : public StreamingAlgorithm {
 public:
  ComponentEstimator(double epsilon, std::uint32_t r, std::uint32_t cap, Seed seed);
  std::unique_ptr<StreamingAlgorithm> fresh() const override;
  void init(std::uint32_t n) override;
  void process(const Edge& e) override;
  Message serialize() const override;
  void deserialize(const Message& bits) override;
  double finalize() const override;
  std::size_t state_bits() const override;
  std::string name() const override { return "cc-estimator"; }

  std::uint32_t cap() const { return cap_; }
  std::uint32_t seeds() const { return r_; }

 private:
  bool contains(std::uint32_t s, std::uint32_t v) const;
  void absorb(std::uint32_t s, std::uint32_t v);
  void rebuild_index();

  double epsilon_;
  std::uint32_t r_, cap_;
  Seed seed_;
  std::uint32_t n_ = 0;
  std::vector<std::vector<std::uint32_t>> sets_;
  std::vector<std::uint8_t> dirty_;
  std::vector<std::vector<std::uint32_t>> member_of_;  // vertex -> seeds whose set holds it
};

std::uint32_t default_cc_cap(double epsilon);

// One-shot wrapper: runs a fresh ComponentEstimator over the stream.
struct CcEstimate {
  double estimate = 0.0;
  std::size_t state_bits = 0;
};
CcEstimate cc_estimate(const Stream& stream, std::uint32_t n, double epsilon, std::uint32_t r,
                       std::uint32_t cap, const Seed& seed);

// Degree <= 2 only. Paths with p vertices give floor(p/2) resp. ceil(p/2);
// cycles with c vertices give floor(c/2) for both.
std::uint64_t matching_size_exact(const std::vector<Edge>& edges, std::uint32_t n);
std::uint64_t mis_size_exact(const std::vector<Edge>& edges, std::uint32_t n);

struct MstResult {
  std::int64_t weight = 0;
  std::uint32_t components = 0;  // 1 when connected
};
MstResult mst_weight_exact(const std::vector<Edge>& edges, const std::vector<std::int64_t>& weights,
                           std::uint32_t n);

struct WalkSample {
  std::vector<std::uint32_t> vertices;  // X_0 .. X_l
  std::uint32_t start() const { return vertices.front(); }
  std::uint32_t length() const { return static_cast<std::uint32_t>(vertices.size() - 1); }
};

WalkSample random_walk(const Adjacency& adj, std::uint32_t start, std::uint32_t steps, Engine& rng);
WalkSample random_walk(const std::vector<Edge>& edges, std::uint32_t n, std::uint32_t start, std::uint32_t steps,
                       const Seed& seed);

// Outcome keys are comma-separated vertex lists.
std::string walk_key(const WalkSample& w);
DistributionTable walk_distribution_exact(const Adjacency& adj, std::uint32_t start, std::uint32_t steps);

// Length of the cycle the walk certifies: every visited vertex has two
// distinct traversed incident edges. Requires a simple graph.
std::optional<std::uint32_t> certified_cycle_length(const WalkSample& w);

enum class CycleClass : std::uint8_t { k_cycles, two_k_cycles, unknown };
const char* to_string(CycleClass c);

CycleClass detect_cycle_length_from_walks(const std::vector<WalkSample>& walks, std::uint32_t n, std::uint32_t k);

// Draws up to max_walks walks of the given length from uniform start
// vertices, stopping at the first certified cycle.
struct WalkDistinguisher {
  CycleClass result = CycleClass::unknown;
  std::uint64_t walks_used = 0;
};
WalkDistinguisher run_walk_distinguisher(const NgcInstance& instance, std::uint32_t walk_length,
                                         std::uint64_t max_walks, const Seed& seed);

}  // namespace ngclab
