#include "meshsoc/stdma.hpp"

#include <algorithm>
#include <cmath>
#include <deque>
#include <string>

#include "meshsoc/rng.hpp"

namespace meshsoc::stdma {

SlotId form_slot_id(std::uint64_t frame_count, std::size_t position, std::size_t frame_size) {
  if (position < 1 || position > frame_size)
    throw InvalidArgument("slot position " + std::to_string(position) + " outside [1, " +
                          std::to_string(frame_size) + "]");
  return SlotId{frame_count * frame_size + (position - 1)};
}

std::uint32_t ticket_count(double closeness, std::uint32_t scale) {
  if (!(closeness >= 0.0)) throw InvalidArgument("closeness must be non-negative");
  if (scale == 0) throw InvalidArgument("ticket scale must be positive");
  const double scaled = std::floor(closeness * static_cast<double>(scale) + 0.5);
  return std::max<std::uint32_t>(1, static_cast<std::uint32_t>(scaled));
}

std::uint64_t draw_ticket(NodeId node, SlotId slot, std::uint32_t index) noexcept {
  const std::uint64_t x = (std::uint64_t{node.value} * 0x9E3779B97F4A7C15ULL) ^
                          (slot.value * 0xC2B2AE3D27D4EB4FULL) ^
                          (std::uint64_t{index} * 0xD6E8FEB86659FD93ULL);
  return mix64(x);
}

bool outranks(const Ticket& a, const Ticket& b) noexcept {
  if (a.value != b.value) return a.value > b.value;
  if (a.owner != b.owner) return a.owner < b.owner;
  return a.index < b.index;
}

Ticket best_ticket(NodeId node, SlotId slot, std::uint32_t count) noexcept {
  Ticket best{draw_ticket(node, slot, 0), node, 0};
  for (std::uint32_t i = 1; i < count; ++i) {
    const Ticket t{draw_ticket(node, slot, i), node, i};
    if (outranks(t, best)) best = t;
  }
  return best;
}

std::uint32_t random_ticket_count(std::uint64_t seed, NodeId node, SlotId slot,
                                  std::uint32_t scale) noexcept {
  SplitMix64 rng(mix64(seed) ^ draw_ticket(node, slot, 0xFFFFFFFFu));
  return 1 + static_cast<std::uint32_t>(rng.below(scale));
}

std::string_view to_string(Mode mode) noexcept {
  return mode == Mode::SociallyAware ? "social" : "random";
}

void validate(const StdmaConfig& cfg) {
  if (cfg.frame_size < 1) throw InvalidArgument("frame size must be at least 1");
  if (cfg.ticket_scale < 1) throw InvalidArgument("ticket scale must be at least 1");
  if (!(cfg.packet_bits > 0.0)) throw InvalidArgument("packet size must be positive");
  if (!(cfg.slot_duration > 0.0)) throw InvalidArgument("slot duration must be positive");
  if (!(cfg.sim_duration > 0.0)) throw InvalidArgument("simulation duration must be positive");
  if (!(cfg.traffic_start >= 0.0)) throw InvalidArgument("traffic start must be non-negative");
  if (cfg.graph.empty()) throw InvalidArgument("simulation needs at least one node");
  for (const auto& f : cfg.flows) {
    if (!cfg.graph.contains(f.src) || !cfg.graph.contains(f.dst))
      throw InvalidArgument("flow endpoint is not a node of the topology");
    if (f.src == f.dst) throw InvalidArgument("flow source equals destination");
    if (!(f.rate_bps > 0.0)) throw InvalidArgument("flow rate must be positive");
  }
}

std::vector<Flow> all_pairs_flows(const Graph& g, double rate_bps) {
  std::vector<Flow> flows;
  flows.reserve(g.size() * (g.size() > 0 ? g.size() - 1 : 0));
  for (const auto src : g.ids())
    for (const auto dst : g.ids())
      if (src != dst) flows.push_back({src, dst, rate_bps});
  return flows;
}

TwoHopView TwoHopView::from_graph(const Graph& g, NodeId self, const CentralityScores& closeness) {
  TwoHopView view;
  view.self = self;
  view.contenders = k_hop_neighborhood(g, self, 2);
  view.closeness.emplace(self, closeness.value(self));
  for (const auto c : view.contenders) view.closeness.emplace(c, closeness.value(c));
  return view;
}

std::vector<std::size_t> build_schedule(const TwoHopView& view, std::uint64_t frame_count,
                                        const StdmaConfig& cfg) {
  const auto tickets_of = [&](NodeId node, SlotId slot) -> std::uint32_t {
    if (cfg.mode == Mode::RandomBaseline)
      return random_ticket_count(cfg.seed, node, slot, cfg.ticket_scale);
    const auto it = view.closeness.find(node);
    if (it == view.closeness.end())
      throw MissingClosenessError("no closeness known for node " + std::to_string(node.value));
    return ticket_count(it->second, cfg.ticket_scale);
  };

  std::vector<std::size_t> won;
  for (std::size_t j = 1; j <= cfg.frame_size; ++j) {
    const auto slot = form_slot_id(frame_count, j, cfg.frame_size);
    const auto local = best_ticket(view.self, slot, tickets_of(view.self, slot));
    Ticket winner = local;
    for (const auto c : view.contenders) {
      const auto t = best_ticket(c, slot, tickets_of(c, slot));
      if (outranks(t, winner)) winner = t;
    }
    if (winner.owner == view.self) won.push_back(j);
  }
  return won;
}

Election::Election(const Graph& g, const StdmaConfig& cfg, const CentralityScores& closeness)
    : ids_(g.ids().begin(), g.ids().end()),
      two_hop_(g.size()),
      social_tickets_(g.size(), 1),
      mode_(cfg.mode),
      scale_(cfg.ticket_scale),
      seed_(cfg.seed) {
  for (std::size_t i = 0; i < g.size(); ++i) {
    for (const auto c : k_hop_neighborhood(g, ids_[i], 2))
      two_hop_[i].push_back(static_cast<std::uint32_t>(g.index(c)));
    if (mode_ == Mode::SociallyAware)
      social_tickets_[i] = ticket_count(closeness.value(ids_[i]), scale_);
  }
}

std::uint32_t Election::tickets(std::size_t node, SlotId slot) const noexcept {
  if (mode_ == Mode::RandomBaseline) return random_ticket_count(seed_, ids_[node], slot, scale_);
  return social_tickets_[node];
}

void Election::winners(SlotId slot, std::vector<std::uint8_t>& won) const {
  const auto n = ids_.size();
  std::vector<Ticket> best(n);
  for (std::size_t i = 0; i < n; ++i) best[i] = best_ticket(ids_[i], slot, tickets(i, slot));
  won.assign(n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    bool wins = true;
    for (const auto c : two_hop_[i]) {
      if (outranks(best[c], best[i])) {
        wins = false;
        break;
      }
    }
    won[i] = wins ? 1 : 0;
  }
}

std::size_t Election::conflicts(const std::vector<std::uint8_t>& won) const {
  std::size_t count = 0;
  for (std::size_t i = 0; i < won.size(); ++i) {
    if (!won[i]) continue;
    for (const auto c : two_hop_[i])
      if (c > i && won[c]) ++count;
  }
  return count;
}

ConflictViolation::ConflictViolation(std::uint64_t slot, std::size_t conflicts)
    : InvariantViolation(std::to_string(conflicts) + " two-hop transmission conflict(s) in slot " +
                         std::to_string(slot)),
      slot_(slot),
      conflicts_(conflicts) {}

namespace {

struct Packet {
  std::uint32_t flow;
  std::uint32_t dst;
  double generated_at;
};

struct PendingGeneration {
  double at;
  std::uint32_t flow;
};

// next_hop[u] toward one destination; kUnreachable at the destination itself
// and at nodes that cannot reach it.
std::vector<std::uint32_t> next_hops_toward(const Graph& g, std::size_t dst) {
  const auto dist = bfs_distances(g, dst);
  std::vector<std::uint32_t> next(g.size(), kUnreachable);
  for (std::size_t u = 0; u < g.size(); ++u) {
    if (u == dst || dist[u] == kUnreachable) continue;
    for (const auto v : g.neighbors(u)) {  // ascending, so the first match is the smallest id
      if (dist[v] + 1 == dist[u]) {
        next[u] = v;
        break;
      }
    }
  }
  return next;
}

double percentile_nearest_rank(const std::vector<double>& sorted, double q) {
  const auto rank = static_cast<std::size_t>(std::ceil(q * static_cast<double>(sorted.size())));
  return sorted[std::clamp<std::size_t>(rank, 1, sorted.size()) - 1];
}

}  // namespace

StdmaResult simulate(const StdmaConfig& cfg) {
  validate(cfg);
  const Graph& g = cfg.graph;
  const auto n = g.size();

  CentralityScores closeness;
  if (n >= 2) {
    closeness = closeness_centrality(g);
  } else {
    closeness.metric = CentralityMetric::Closeness;
    closeness.nodes.assign(g.ids().begin(), g.ids().end());
    closeness.values.assign(n, 0.0);
  }
  const Election election(g, cfg, closeness);

  // Shortest-hop forwarding tables, one per destination in use.
  std::map<std::uint32_t, std::vector<std::uint32_t>> routes;
  std::vector<std::uint32_t> flow_src(cfg.flows.size());
  std::vector<std::uint32_t> flow_dst(cfg.flows.size());
  for (std::size_t f = 0; f < cfg.flows.size(); ++f) {
    flow_src[f] = static_cast<std::uint32_t>(g.index(cfg.flows[f].src));
    flow_dst[f] = static_cast<std::uint32_t>(g.index(cfg.flows[f].dst));
    auto it = routes.find(flow_dst[f]);
    if (it == routes.end()) it = routes.emplace(flow_dst[f], next_hops_toward(g, flow_dst[f])).first;
    if (it->second[flow_src[f]] == kUnreachable)
      throw InvalidArgument("flow destination unreachable from its source");
  }

  const double stop = cfg.traffic_stop < 0.0 ? cfg.sim_duration
                                             : std::min(cfg.traffic_stop, cfg.sim_duration);
  std::vector<double> interval(cfg.flows.size());
  std::vector<double> phase(cfg.flows.size());
  std::vector<std::uint64_t> emitted(cfg.flows.size(), 0);
  SplitMix64 phase_rng(cfg.seed);
  for (std::size_t f = 0; f < cfg.flows.size(); ++f) {
    interval[f] = cfg.packet_bits / cfg.flows[f].rate_bps;
    phase[f] = cfg.traffic_start + phase_rng.uniform01() * interval[f];
  }
  const auto emission_time = [&](std::size_t f) {
    return phase[f] + static_cast<double>(emitted[f]) * interval[f];
  };

  StdmaResult result;
  result.slots = static_cast<std::size_t>(std::floor(cfg.sim_duration / cfg.slot_duration + 1e-9));
  result.wins.assign(n, 0);
  result.transmissions.assign(n, 0);
  result.flows.resize(cfg.flows.size());
  for (std::size_t f = 0; f < cfg.flows.size(); ++f) result.flows[f].flow = cfg.flows[f];

  std::vector<std::deque<Packet>> queues(n);
  std::vector<std::uint8_t> won;
  std::vector<PendingGeneration> due;
  std::vector<std::pair<std::uint32_t, Packet>> in_flight;

  for (std::size_t s = 0; s < result.slots; ++s) {
    const double slot_start = static_cast<double>(s) * cfg.slot_duration;
    const double slot_end = static_cast<double>(s + 1) * cfg.slot_duration;

    due.clear();
    for (std::size_t f = 0; f < cfg.flows.size(); ++f) {
      for (double t = emission_time(f); t <= slot_start && t < stop; t = emission_time(f)) {
        due.push_back({t, static_cast<std::uint32_t>(f)});
        ++emitted[f];
      }
    }
    std::sort(due.begin(), due.end(), [](const auto& a, const auto& b) {
      return a.at != b.at ? a.at < b.at : a.flow < b.flow;
    });
    for (const auto& d : due) {
      queues[flow_src[d.flow]].push_back({d.flow, flow_dst[d.flow], d.at});
      ++result.flows[d.flow].generated;
    }

    const SlotId slot{s};
    election.winners(slot, won);
    if (const auto c = election.conflicts(won); c > 0) {
      result.conflict_violations += c;
      throw ConflictViolation(s, c);
    }

    in_flight.clear();
    for (std::size_t i = 0; i < n; ++i) {
      if (!won[i]) continue;
      ++result.wins[i];
      if (queues[i].empty()) continue;
      ++result.transmissions[i];
      const Packet p = queues[i].front();
      queues[i].pop_front();
      in_flight.emplace_back(routes.at(p.dst)[i], p);
    }
    for (const auto& [receiver, p] : in_flight) {
      if (receiver == p.dst) {
        result.delays.push_back(slot_end - p.generated_at);
        ++result.flows[p.flow].delivered;
      } else {
        queues[receiver].push_back(p);
      }
    }
  }

  // Emissions after the last slot boundary but before the end of traffic
  // still count as generated.
  for (std::size_t f = 0; f < cfg.flows.size(); ++f) {
    for (double t = emission_time(f); t < stop; t = emission_time(f)) {
      ++emitted[f];
      ++result.flows[f].generated;
    }
  }

  for (auto& fs : result.flows) {
    result.generated += fs.generated;
    result.delivered += fs.delivered;
    fs.goodput_bps = static_cast<double>(fs.delivered) * cfg.packet_bits / cfg.sim_duration;
  }
  result.throughput_bps =
      static_cast<double>(result.delivered) * cfg.packet_bits / cfg.sim_duration;

  if (!result.delays.empty()) {
    double sum = 0.0;
    for (const double d : result.delays) sum += d;
    result.mean_delay = sum / static_cast<double>(result.delays.size());
    auto sorted = result.delays;
    std::sort(sorted.begin(), sorted.end());
    const auto m = sorted.size();
    result.median_delay = m % 2 ? sorted[m / 2] : 0.5 * (sorted[m / 2 - 1] + sorted[m / 2]);
    result.p95_delay = percentile_nearest_rank(sorted, 0.95);
  }

  std::size_t total_wins = 0;
  std::size_t total_tx = 0;
  for (std::size_t i = 0; i < n; ++i) {
    total_wins += result.wins[i];
    total_tx += result.transmissions[i];
  }
  result.slot_utilization =
      total_wins ? static_cast<double>(total_tx) / static_cast<double>(total_wins) : 0.0;
  return result;
}

CsvTable result_table() {
  CsvTable table;
  table.header = {"mode",        "rate",      "throughput_bps", "mean_delay_s",
                  "p95_delay_s", "delivered", "generated"};
  table.key_columns = 2;
  return table;
}

void append_result(CsvTable& table, Mode mode, double rate_bps, const StdmaResult& result) {
  table.rows.push_back({std::string(to_string(mode)), rate_bps, result.throughput_bps,
                        result.mean_delay, result.p95_delay,
                        static_cast<std::int64_t>(result.delivered),
                        static_cast<std::int64_t>(result.generated)});
}

std::vector<SweepRow> sweep(const StdmaConfig& base, std::span<const double> rates,
                            std::size_t seeds) {
  if (seeds == 0) throw InvalidArgument("sweep needs at least one seed");
  std::vector<SweepRow> rows;
  for (const auto mode : {Mode::SociallyAware, Mode::RandomBaseline}) {
    for (const double rate : rates) {
      SweepRow row;
      row.mode = mode;
      row.rate_bps = rate;
      row.seeds = seeds;
      StdmaConfig cfg = base;
      cfg.mode = mode;
      if (cfg.flows.empty()) {
        cfg.flows = all_pairs_flows(cfg.graph, rate);
      } else {
        for (auto& f : cfg.flows) f.rate_bps = rate;
      }
      for (std::size_t k = 0; k < seeds; ++k) {
        cfg.seed = base.seed + k;
        const auto r = simulate(cfg);
        row.throughput_bps += r.throughput_bps;
        row.mean_delay += r.mean_delay;
        row.p95_delay += r.p95_delay;
        row.delivered += static_cast<double>(r.delivered);
        row.generated += static_cast<double>(r.generated);
      }
      const auto count = static_cast<double>(seeds);
      row.throughput_bps /= count;
      row.mean_delay /= count;
      row.p95_delay /= count;
      row.delivered /= count;
      row.generated /= count;
      rows.push_back(row);
    }
  }
  return rows;
}

CsvTable sweep_table(std::span<const SweepRow> rows) {
  auto table = result_table();
  for (const auto& r : rows)
    table.rows.push_back({std::string(to_string(r.mode)), r.rate_bps, r.throughput_bps,
                          r.mean_delay, r.p95_delay, r.delivered, r.generated});
  return table;
}

}  // namespace meshsoc::stdma
