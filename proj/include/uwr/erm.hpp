#pragma once

#include <optional>
#include <span>
#include <vector>

#include "uwr/channel.hpp"
#include "uwr/core.hpp"

namespace uwr {

// Per-(node, candidate-relay) evaluation used by both the partition gate and
// the relay-selection learners. Capacities are at Prop-1 power (0 when the
// type cannot close); outages are the gate quantity (1 when geometry rules
// the type out). reward is the outage-gated best capacity across types.
struct PairEval {
    std::array<double, 3> outage{1.0, 1.0, 1.0};
    std::array<double, 3> capacity{0.0, 0.0, 0.0};
    double reward = 0.0;
    Link reward_link = Link::UA;
};

PairEval eval_pair(const Scenario& s, const Point3& src, const Point3& dst);

struct RelayDetection {
    std::vector<std::size_t> relays; // indices into scenario.usns, ascending
    // Per node: best direct link to the USV at Prop-1 power with the swept
    // interference applied; nullopt when no type closes.
    std::vector<std::optional<LinkBudget>> direct;
    std::vector<bool> in_a;
};

// Direct-connectivity detection: greedy best link per node, one interference
// sweep (extra sweeps re-select links under the previous sweep's totals),
// then the outage/SINR indicator gate.
RelayDetection detect_relays(const Scenario& s, int sweeps = 1);

// Arithmetic mean of a node's per-relay capacities; the admission bar for
// joining the relayed set.
double mean_capacity_threshold(std::span<const double> capacities_to_relays);

struct ErmChoice {
    int id = 0;       // node id
    int relay_id = 0; // chosen relay's node id
    double reward_bps = 0.0;
    Link link = Link::UA;
};

struct ErmAssignment {
    std::vector<int> set_a; // direct-to-USV (relays)
    std::vector<ErmChoice> set_b;
    std::vector<int> set_c; // isolated nodes, served by AUVs
    std::vector<std::optional<LinkBudget>> direct; // detection diagnostics per node index
};

// The selection result the learners hand back for one node.
struct RelayChoice {
    std::size_t relay_index = 0; // index into detection.relays
    double r_star = 0.0;
    Link link = Link::UA;
};

// Final three-way partition: a non-relay node joins the relayed set iff its
// chosen relay passes the outage gate and strictly beats the node's mean
// per-relay capacity; everything else is isolated.
ErmAssignment partition_erm(const Scenario& s, const RelayDetection& detection,
                            const std::vector<std::optional<RelayChoice>>& rl_choice);

std::vector<std::size_t> set_c_indices(const Scenario& s, const ErmAssignment& a);

} // namespace uwr
