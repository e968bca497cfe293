#pragma once

#include <cstdint>
#include <functional>
#include <limits>
#include <memory>
#include <stdexcept>
#include <string>
#include <vector>

#include "ngclab/distribution_table.hpp"
#include "ngclab/distributions.hpp"
#include "ngclab/message.hpp"
#include "ngclab/partition.hpp"
#include "ngclab/stats.hpp"
#include "ngclab/streaming.hpp"

namespace ngclab {

// Everything both players know before seeing edges. focus_group is the
// group a hybrid distinguisher is asked about (1-based).
struct PublicInfo {
  std::uint32_t n = 0, k = 0, m = 0, width = 0;
  std::uint32_t focus_group = 1;
};
PublicInfo public_info(const NgcInstance& instance, std::uint32_t focus_group = 1);

inline constexpr std::size_t kUnbounded = std::numeric_limits<std::size_t>::max();

class ProtocolBudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// One-way two-player protocol. NGC convention for the output bit: 1 means
// "2k-cycles" (theta = 1). Implementations must be reentrant; all
// randomness comes from the shared seed.
class OneWayProtocol {
 public:
  virtual ~OneWayProtocol() = default;
  virtual std::size_t message_budget(const PublicInfo& info) const = 0;
  virtual Message alice(const PublicInfo& info, const std::vector<Edge>& ea, const Seed& shared) const = 0;
  virtual int bob(const PublicInfo& info, const Message& msg, const std::vector<Edge>& eb,
                  const Seed& shared) const = 0;
  virtual std::string name() const = 0;
};

struct ProtocolRun {
  int output = 0;
  std::size_t message_bits = 0;
};

ProtocolRun run_protocol(const OneWayProtocol& protocol, const NgcInstance& instance,
                         const EdgeAssignment& assignment, const Seed& shared, std::uint32_t focus_group = 1);

// components >= 7n/8k means k-cycles (output 0).
int ngc_threshold_decision(double components, std::uint32_t n, std::uint32_t k);

// Parity of the focus group, read off a complete edge set by following the
// inter-layer path from a^1_h.
int focus_parity_from_edges(const std::vector<Edge>& edges, const PublicInfo& info);

class ConstantProtocol : public OneWayProtocol {
 public:
  explicit ConstantProtocol(int bit) : bit_(bit & 1) {}
  std::size_t message_budget(const PublicInfo&) const override { return 0; }
  Message alice(const PublicInfo&, const std::vector<Edge>&, const Seed&) const override { return {}; }
  int bob(const PublicInfo&, const Message&, const std::vector<Edge>&, const Seed&) const override { return bit_; }
  std::string name() const override { return "constant"; }

 private:
  int bit_;
};

// Alice sends E_A verbatim (two ids per edge); Bob decides on G_A u G_B.
class ForwardAllProtocol : public OneWayProtocol {
 public:
  enum class Goal { ngc_theta, focus_parity };
  explicit ForwardAllProtocol(Goal goal = Goal::ngc_theta) : goal_(goal) {}
  std::size_t message_budget(const PublicInfo&) const override { return kUnbounded; }
  Message alice(const PublicInfo& info, const std::vector<Edge>& ea, const Seed& shared) const override;
  int bob(const PublicInfo& info, const Message& msg, const std::vector<Edge>& eb, const Seed& shared) const override;
  std::string name() const override { return "forward-all"; }

 private:
  Goal goal_;
};

// Zero communication: Bob outputs 1 iff E_B alone contains a complete 2k-cycle.
class BobCycleDetector : public OneWayProtocol {
 public:
  std::size_t message_budget(const PublicInfo&) const override { return 0; }
  Message alice(const PublicInfo&, const std::vector<Edge>&, const Seed&) const override { return {}; }
  int bob(const PublicInfo& info, const Message& msg, const std::vector<Edge>& eb, const Seed& shared) const override;
  std::string name() const override { return "bob-2k-cycle"; }
};

using EstimateDecision = std::function<int(double estimate, const PublicInfo& info)>;

// Alice shuffles E_A, runs the algorithm and sends its state; Bob resumes on
// a shuffled E_B and maps the final estimate to a bit.
class StreamingProtocol : public OneWayProtocol {
 public:
  StreamingProtocol(std::unique_ptr<StreamingAlgorithm> prototype, EstimateDecision decision,
                    std::size_t budget = kUnbounded);
  std::size_t message_budget(const PublicInfo&) const override { return budget_; }
  Message alice(const PublicInfo& info, const std::vector<Edge>& ea, const Seed& shared) const override;
  int bob(const PublicInfo& info, const Message& msg, const std::vector<Edge>& eb, const Seed& shared) const override;
  std::string name() const override { return "streaming:" + prototype_->name(); }

  struct Trace {
    double estimate = 0.0;
    std::size_t message_bits = 0;
    std::unique_ptr<StreamingAlgorithm> final_state;
  };
  Trace simulate(const PublicInfo& info, const std::vector<Edge>& ea, const std::vector<Edge>& eb,
                 const Seed& shared) const;

 private:
  std::unique_ptr<StreamingAlgorithm> bob_state(const PublicInfo& info, const Message& msg,
                                                const std::vector<Edge>& eb, const Seed& shared) const;
  std::unique_ptr<StreamingAlgorithm> prototype_;
  EstimateDecision decision_;
  std::size_t budget_;
};

std::unique_ptr<StreamingProtocol> streaming_as_protocol(std::unique_ptr<StreamingAlgorithm> algorithm,
                                                         EstimateDecision decision);

// Players 1..l in order: each shuffles its own batches (and the edges in
// each batch), resumes the forwarded state and passes it on.
class LPlayerStreamingProtocol {
 public:
  LPlayerStreamingProtocol(std::unique_ptr<StreamingAlgorithm> prototype, std::uint32_t l, EstimateDecision decision);

  struct Run {
    double estimate = 0.0;
    int output = 0;
    std::size_t max_message_bits = 0;
    std::vector<std::size_t> message_bits;  // message sent by players 1..l-1
    std::unique_ptr<StreamingAlgorithm> final_state;
  };
  Run run(const NgcInstance& instance, const EdgeAssignment& assignment, const Seed& shared) const;
  std::uint32_t players() const { return l_; }

 private:
  std::unique_ptr<StreamingAlgorithm> prototype_;
  std::uint32_t l_;
  EstimateDecision decision_;
};

std::unique_ptr<LPlayerStreamingProtocol> streaming_as_l_protocol(std::unique_ptr<StreamingAlgorithm> algorithm,
                                                                  std::uint32_t l, EstimateDecision decision);

// Per-h distinguishing advantage between H(h-1) and H(h) (labels drawn
// uniformly, uniform edge split, focus group h). The protocol's output bit
// is read as its guess for the parity of group h. advantage = 2 Pr[correct] - 1.
struct HybridScanRow {
  std::uint32_t h = 0;
  Proportion correct;
  double advantage() const { return 2.0 * correct.estimate() - 1.0; }
  double ci_low() const { return 2.0 * correct.ci_low() - 1.0; }
  double ci_high() const { return 2.0 * correct.ci_high() - 1.0; }
};
struct HybridScan {
  std::vector<HybridScanRow> rows;
  std::uint32_t argmax_h = 0;
  HybridScanRow end_to_end;  // H(0) against H(m), focus group 1
};
HybridScan hybrid_scan(const OneWayProtocol& protocol, std::uint32_t m, std::uint32_t t, std::uint64_t trials,
                       const Seed& seed);

// Exact TVD between out(protocol) = (message, E_B) under H(h-1) and H(h),
// enumerating every witness and every edge split. Tiny parameters only.
double exact_hybrid_out_tvd(const OneWayProtocol& protocol, std::uint32_t m, std::uint32_t t, std::uint32_t h,
                            const Seed& shared);

}  // namespace ngclab
