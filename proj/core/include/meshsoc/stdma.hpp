#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <map>
#include <vector>

#include "meshsoc/centrality.hpp"
#include "meshsoc/csv.hpp"
#include "meshsoc/error.hpp"
#include "meshsoc/graph.hpp"

namespace meshsoc::stdma {

// Spatial TDMA with hash-lottery slot elections.
//
// Every node holds a number of lottery tickets per slot. Ticket values are a
// public hash of (owner, slot, index), so any node that knows the ticket
// counts of its 2-hop neighbourhood can replay every contender's draw and
// decide locally whether it won. Two nodes within two hops always see each
// other, which makes simultaneous wins between them impossible.

struct SlotId {
  std::uint64_t value = 0;

  friend constexpr auto operator<=>(SlotId, SlotId) = default;
};

/// frame_count * frame_size + (position - 1); position is 1-based.
/// Throws InvalidArgument when position is outside [1, frame_size].
SlotId form_slot_id(std::uint64_t frame_count, std::size_t position, std::size_t frame_size);

/// max(1, round-half-up(closeness * scale)). The floor of one ticket keeps
/// zero-priority nodes in every election.
std::uint32_t ticket_count(double closeness, std::uint32_t scale);

/// Bit-exact ticket hash:
///   x = node * 0x9E3779B97F4A7C15 ^ slot * 0xC2B2AE3D27D4EB4F
///       ^ index * 0xD6E8FEB86659FD93        (mod 2^64)
/// followed by the SplitMix64 finalizer.
std::uint64_t draw_ticket(NodeId node, SlotId slot, std::uint32_t index) noexcept;

struct Ticket {
  std::uint64_t value = 0;
  NodeId owner;
  std::uint32_t index = 0;
};

/// Election order: higher value wins; equal values go to the smaller owner id,
/// then to the smaller index.
bool outranks(const Ticket& a, const Ticket& b) noexcept;

/// Strongest of `node`'s `count` tickets for `slot`. count must be >= 1.
Ticket best_ticket(NodeId node, SlotId slot, std::uint32_t count) noexcept;

enum class Mode { SociallyAware, RandomBaseline };

struct Flow {
  NodeId src;
  NodeId dst;
  double rate_bps = 0.0;
};

struct StdmaConfig {
  Graph graph;
  std::size_t frame_size = 20;
  std::uint32_t ticket_scale = 10;
  Mode mode = Mode::SociallyAware;
  std::vector<Flow> flows;
  double packet_bits = 500.0;
  double slot_duration = 0.005;
  double sim_duration = 60.0;
  /// CBR sources are active in [traffic_start, traffic_stop); a negative
  /// stop means "until sim_duration".
  double traffic_start = 0.0;
  double traffic_stop = -1.0;
  std::uint64_t seed = 1;
  /// HELLO broadcast period. Closeness is disseminated by oracle in the
  /// simulator, so this is informational only.
  double hello_period = 0.002;
};

/// Throws InvalidArgument on a malformed configuration.
void validate(const StdmaConfig& cfg);

/// One flow per ordered pair of distinct nodes, all at `rate_bps`.
std::vector<Flow> all_pairs_flows(const Graph& g, double rate_bps);

/// Random-baseline ticket count for (node, slot): uniform in [1, scale],
/// derived from the run seed so every node computes the same value.
std::uint32_t random_ticket_count(std::uint64_t seed, NodeId node, SlotId slot,
                                  std::uint32_t scale) noexcept;

/// What a node knows when it runs its election: its own id and the closeness
/// of every node within two hops.
struct TwoHopView {
  NodeId self;
  std::vector<NodeId> contenders;       ///< 2-hop neighbourhood, excluding self
  std::map<NodeId, double> closeness;   ///< should cover self and contenders

  /// View taken directly from the topology and a closeness table.
  static TwoHopView from_graph(const Graph& g, NodeId self, const CentralityScores& closeness);
};

/// Stale or incomplete closeness knowledge.
class MissingClosenessError : public Error {
 public:
  using Error::Error;
};

/// Slot positions (1-based) of frame `frame_count` that `view.self` wins.
/// Only cfg.frame_size, cfg.ticket_scale, cfg.mode and cfg.seed are used.
/// Throws MissingClosenessError in socially-aware mode when a contender has
/// no closeness entry.
std::vector<std::size_t> build_schedule(const TwoHopView& view, std::uint64_t frame_count,
                                        const StdmaConfig& cfg);

/// Network-wide view of the elections: every node's 2-hop contender set and
/// social ticket count, precomputed once for a static topology. winners()
/// gives the same answer per node as build_schedule() on that node's view,
/// with each node's strongest ticket drawn only once per slot.
class Election {
 public:
  /// `closeness` must score every node of `g` (ignored in random mode).
  Election(const Graph& g, const StdmaConfig& cfg, const CentralityScores& closeness);

  std::size_t size() const noexcept { return ids_.size(); }
  std::uint32_t tickets(std::size_t node, SlotId slot) const noexcept;
  std::span<const std::uint32_t> contenders(std::size_t node) const { return two_hop_.at(node); }

  /// won[i] != 0 iff dense node i wins `slot`. `won` is resized to size().
  void winners(SlotId slot, std::vector<std::uint8_t>& won) const;

  /// Unordered winner pairs within two hops of each other.
  std::size_t conflicts(const std::vector<std::uint8_t>& won) const;

 private:
  std::vector<NodeId> ids_;
  std::vector<std::vector<std::uint32_t>> two_hop_;
  std::vector<std::uint32_t> social_tickets_;
  Mode mode_;
  std::uint32_t scale_;
  std::uint64_t seed_;
};

/// Two nodes within two hops both won the same slot.
class ConflictViolation : public InvariantViolation {
 public:
  ConflictViolation(std::uint64_t slot, std::size_t conflicts);

  std::uint64_t slot() const noexcept { return slot_; }
  std::size_t conflicts() const noexcept { return conflicts_; }

 private:
  std::uint64_t slot_;
  std::size_t conflicts_;
};

struct FlowStats {
  Flow flow;
  std::size_t generated = 0;
  std::size_t delivered = 0;
  double goodput_bps = 0.0;
};

struct StdmaResult {
  std::size_t slots = 0;
  std::size_t generated = 0;
  std::size_t delivered = 0;
  double throughput_bps = 0.0;  ///< delivered payload bits / sim_duration
  /// Delay statistics in seconds; zero when nothing was delivered.
  double mean_delay = 0.0;
  double median_delay = 0.0;
  double p95_delay = 0.0;
  std::vector<double> delays;  ///< per delivered packet, in delivery order
  std::vector<FlowStats> flows;
  std::vector<std::size_t> wins;           ///< won slots per node (dense order)
  std::vector<std::size_t> transmissions;  ///< used won slots per node
  double slot_utilization = 0.0;           ///< transmissions / won slots
  std::size_t conflict_violations = 0;
};

/// Slot-synchronous simulation. Closeness is computed once on the full
/// graph. In each slot every node runs its election, each winner forwards
/// the head of its FIFO one hop along the shortest path to the packet's
/// destination (smallest next-hop id on ties), and the packet becomes
/// available at the receiver in the following slot. A winner with an empty
/// queue leaves its slot idle.
///
/// Throws ConflictViolation if two winners are ever within two hops.
StdmaResult simulate(const StdmaConfig& cfg);

std::string_view to_string(Mode mode) noexcept;  ///< "social" or "random"

/// Header `mode,rate,throughput_bps,mean_delay_s,p95_delay_s,delivered,generated`.
CsvTable result_table();
void append_result(CsvTable& table, Mode mode, double rate_bps, const StdmaResult& result);

/// One (mode, rate) cell of a delay-vs-throughput sweep, averaged over seeds.
struct SweepRow {
  Mode mode = Mode::SociallyAware;
  double rate_bps = 0.0;
  double throughput_bps = 0.0;
  double mean_delay = 0.0;
  double p95_delay = 0.0;
  double delivered = 0.0;
  double generated = 0.0;
  std::size_t seeds = 0;
};

/// Runs both modes at every rate for seeds base.seed .. base.seed + seeds - 1.
/// Every flow of `base` is re-rated to the sweep rate; with no flows, all
/// ordered pairs are used.
std::vector<SweepRow> sweep(const StdmaConfig& base, std::span<const double> rates,
                            std::size_t seeds);

/// Same header as result_table(); counts are seed averages.
CsvTable sweep_table(std::span<const SweepRow> rows);

}  // namespace meshsoc::stdma
