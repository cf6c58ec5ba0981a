#include "uwr/erm.hpp"

#include <algorithm>
#include <unordered_map>

#include "uwr/errors.hpp"

namespace uwr {

PairEval eval_pair(const Scenario& s, const Point3& src, const Point3& dst) {
    PairEval e;
    for (Link l : kAllLinks) {
        const int li = static_cast<int>(l);
        const auto loss = pair_loss(l, src, dst, s);
        if (!loss) continue; // outage stays 1, capacity 0
        e.outage[li] = outage_at_bound(*loss, s.link(l), s.channel);
        if (const auto power = prop1_power(*loss, s.link(l), s.channel)) {
            e.capacity[li] = capacity(*power, *loss, 0.0, s.link(l), s.channel);
        }
    }
    for (Link l : {Link::UL, Link::RF, Link::UA}) {
        const int li = static_cast<int>(l);
        if (e.outage[li] < s.channel.epsilon && e.capacity[li] > e.reward) {
            e.reward = e.capacity[li];
            e.reward_link = l;
        }
    }
    return e;
}

RelayDetection detect_relays(const Scenario& s, int sweeps) {
    const std::size_t n = s.usns.size();
    RelayDetection det;
    det.direct.assign(n, std::nullopt);
    det.in_a.assign(n, false);

    InterferenceState totals{}; // first sweep selects links under zero interference
    for (int sweep = 0; sweep < std::max(1, sweeps); ++sweep) {
        for (std::size_t i = 0; i < n; ++i)
            det.direct[i] = best_link(s.usns[i].pos, s.usv.pos, totals, s);
        InterferenceState next{};
        for (const auto& b : det.direct) {
            if (b && b->outage < s.channel.epsilon) next.of(b->link) += b->rx_power;
        }
        totals = next;
    }

    // Apply each node's own-type interference (excluding its own contribution)
    // and run the indicator gate.
    for (std::size_t i = 0; i < n; ++i) {
        auto& b = det.direct[i];
        if (!b) continue;
        double interf = totals.of(b->link);
        if (b->outage < s.channel.epsilon) interf -= b->rx_power;
        if (interf < 0.0) interf = 0.0;
        b->sinr = b->rx_power / (s.channel.n0_w + interf);
        b->capacity = s.link(b->link).bandwidth_hz * std::log2(1.0 + b->sinr);
        if (b->outage < s.channel.epsilon && b->sinr > s.channel.gamma) {
            det.in_a[i] = true;
            det.relays.push_back(i);
        }
    }
    return det;
}

double mean_capacity_threshold(std::span<const double> capacities_to_relays) {
    if (capacities_to_relays.empty())
        throw EmptyRelaySetError("mean_capacity_threshold: no relays");
    double sum = 0.0;
    for (double c : capacities_to_relays) sum += c;
    return sum / static_cast<double>(capacities_to_relays.size());
}

ErmAssignment partition_erm(const Scenario& s, const RelayDetection& detection,
                            const std::vector<std::optional<RelayChoice>>& rl_choice) {
    const std::size_t n = s.usns.size();
    ErmAssignment out;
    out.direct = detection.direct;
    for (std::size_t i : detection.relays) out.set_a.push_back(s.usns[i].id);

    for (std::size_t i = 0; i < n; ++i) {
        if (detection.in_a[i]) continue;
        bool admitted = false;
        if (!detection.relays.empty() && i < rl_choice.size() && rl_choice[i]) {
            const auto& choice = *rl_choice[i];
            std::vector<PairEval> pairs(detection.relays.size());
            std::vector<double> rewards(detection.relays.size());
            for (std::size_t a = 0; a < detection.relays.size(); ++a) {
                pairs[a] = eval_pair(s, s.usns[i].pos, s.usns[detection.relays[a]].pos);
                rewards[a] = pairs[a].reward;
            }
            const double bar = mean_capacity_threshold(rewards);
            const auto& chosen = pairs.at(choice.relay_index);
            if (chosen.reward > 0.0 && chosen.reward > bar) { // both indicators strict
                out.set_b.push_back({s.usns[i].id,
                                     s.usns[detection.relays[choice.relay_index]].id,
                                     chosen.reward, chosen.reward_link});
                admitted = true;
            }
        }
        if (!admitted) out.set_c.push_back(s.usns[i].id);
    }
    return out;
}

std::vector<std::size_t> set_c_indices(const Scenario& s, const ErmAssignment& a) {
    std::unordered_map<int, std::size_t> by_id;
    for (std::size_t i = 0; i < s.usns.size(); ++i) by_id[s.usns[i].id] = i;
    std::vector<std::size_t> out;
    out.reserve(a.set_c.size());
    for (int id : a.set_c) out.push_back(by_id.at(id));
    std::sort(out.begin(), out.end());
    return out;
}

} // namespace uwr
