#include "uwr/rl.hpp"

#include <algorithm>
#include <cmath>

#include "uwr/errors.hpp"

namespace uwr {

std::array<double, 6> RelayEnv::state_of(std::size_t action) const {
    const auto& p = pairs[action];
    return {p.outage[0], p.outage[1], p.outage[2],
            p.capacity[0], p.capacity[1], p.capacity[2]};
}

double RelayEnv::max_reward() const {
    double m = 0.0;
    for (const auto& p : pairs) m = std::max(m, p.reward);
    return m;
}

std::size_t RelayEnv::argmax_reward() const {
    std::size_t best = 0;
    for (std::size_t a = 1; a < pairs.size(); ++a)
        if (pairs[a].reward > pairs[best].reward) best = a;
    return best;
}

RelayEnv make_relay_env(const Scenario& s, std::size_t learner,
                        std::span<const std::size_t> relay_indices) {
    if (relay_indices.empty()) throw EmptyRelaySetError("make_relay_env: empty relay set");
    RelayEnv env;
    env.learner = learner;
    env.relays.assign(relay_indices.begin(), relay_indices.end());
    env.pairs.reserve(env.relays.size());
    for (std::size_t k : env.relays)
        env.pairs.push_back(eval_pair(s, s.usns[learner].pos, s.usns[k].pos));
    return env;
}

double q_update(double q, double r, double max_q_next, double alpha, double beta) {
    return (1.0 - alpha) * q + alpha * (r + beta * max_q_next);
}

double sarsa_update(double q, double r, double q_next_committed, double alpha, double beta) {
    return (1.0 - alpha) * q + alpha * (r + beta * q_next_committed);
}

GreedyPick epsilon_greedy(std::span<const double> q_values, double ell, Rng& rng) {
    if (q_values.empty()) throw Error("epsilon_greedy: no actions");
    if (ell > 0.0 && rng.next_double() < ell)
        return {rng.index(q_values.size()), true};
    std::size_t best = 0;
    for (std::size_t a = 1; a < q_values.size(); ++a)
        if (q_values[a] > q_values[best]) best = a;
    return {best, false};
}

std::uint32_t QTable::state_key(const std::array<double, 6>& state) const {
    // Outage entries: 2 bins around the threshold. Capacity entries: 8
    // log-spaced bins spanning kb/s..10 Gb/s.
    std::uint32_t key = 0;
    for (int i = 0; i < 3; ++i) {
        key = (key << 1) | (state[i] < epsilon_bin_ ? 1u : 0u);
    }
    for (int i = 3; i < 6; ++i) {
        std::uint32_t bin = 0;
        if (state[i] > 0.0) {
            const double lg = std::log10(state[i]);
            bin = static_cast<std::uint32_t>(std::clamp(lg - 3.0, 0.0, 7.0));
        }
        key = (key << 3) | bin;
    }
    return key;
}

std::vector<double>& QTable::row(std::uint32_t key, std::size_t n_actions) {
    auto& r = table_[key];
    if (r.size() != n_actions) r.assign(n_actions, 0.0);
    return r;
}

double QTable::max_q(std::uint32_t key, std::size_t n_actions) {
    const auto& r = row(key, n_actions);
    return *std::max_element(r.begin(), r.end());
}

namespace {

void check_bound(double q, double r_max, double beta) {
    const double bound = (beta < 1.0 ? r_max / (1.0 - beta) : r_max) * (1.0 + 1e-9) + 1e-12;
    if (!(std::abs(q) <= bound))
        throw Error("tabular update escaped the contraction bound");
}

template <bool OnPolicy>
TrainResult train_tabular(const RelayEnv& env, const RlHyper& h, Rng& rng, bool keep_trace) {
    const std::size_t n = env.num_actions();
    if (n == 0) throw EmptyRelaySetError("train: empty relay set");
    TrainResult out;
    if (n == 1) {
        out.relay_action = 0;
        out.r_star = env.reward_of(0);
        return out;
    }

    QTable q(h.alpha, h.beta, h.outage_bin);
    const double r_max = env.max_reward();

    std::size_t current = 0;
    for (int episode = 0; episode < h.episodes; ++episode) {
        double reward_sum = 0.0;
        for (int t = 0; t < h.epochs; ++t) {
            const auto s_key = q.state_key(env.state_of(current));
            const auto pick = epsilon_greedy(q.row(s_key, n), h.ell, rng);
            const double r = env.reward_of(pick.action);
            const auto s_next = q.state_key(env.state_of(pick.action));
            double updated;
            if constexpr (OnPolicy) {
                const auto next_pick = epsilon_greedy(q.row(s_next, n), h.ell, rng);
                updated = sarsa_update(q.row(s_key, n)[pick.action], r,
                                       q.row(s_next, n)[next_pick.action], h.alpha, h.beta);
            } else {
                updated = q_update(q.row(s_key, n)[pick.action], r, q.max_q(s_next, n),
                                   h.alpha, h.beta);
            }
            check_bound(updated, r_max, h.beta);
            q.row(s_key, n)[pick.action] = updated;
            reward_sum += r;
            current = pick.action;
        }
        if (keep_trace) {
            const auto key = q.state_key(env.state_of(current));
            const auto& row = q.row(key, n);
            const std::size_t greedy = static_cast<std::size_t>(
                std::max_element(row.begin(), row.end()) - row.begin());
            out.trace.push_back({episode, reward_sum / h.epochs, greedy});
        }
    }

    const auto final_key = q.state_key(env.state_of(current));
    const auto& row = q.row(final_key, n);
    out.relay_action =
        static_cast<std::size_t>(std::max_element(row.begin(), row.end()) - row.begin());
    out.r_star = env.reward_of(out.relay_action);
    return out;
}

} // namespace

TrainResult train_qlearning(const RelayEnv& env, const RlHyper& h, Rng rng, bool keep_trace) {
    return train_tabular<false>(env, h, rng, keep_trace);
}

TrainResult train_sarsa(const RelayEnv& env, const RlHyper& h, Rng rng, bool keep_trace) {
    return train_tabular<true>(env, h, rng, keep_trace);
}

void ReplayBuffer::push(Transition t) {
    buf_.push_back(std::move(t));
    if (buf_.size() > capacity_) buf_.pop_front();
}

QNet::QNet(std::size_t input_dim, std::size_t hidden, std::size_t out_dim, Rng& rng)
    : in_(input_dim), hidden_(hidden), out_(out_dim) {
    w_.resize(o_b3() + out_);
    auto init = [&](std::size_t from, std::size_t count, std::size_t fan_in) {
        const double scale = 1.0 / std::sqrt(static_cast<double>(fan_in));
        for (std::size_t i = 0; i < count; ++i)
            w_[from + i] = rng.uniform(-scale, scale);
    };
    init(o_w1(), in_ * hidden_, in_);
    init(o_w2(), hidden_ * hidden_, hidden_);
    init(o_w3(), hidden_ * out_, hidden_);
    // biases start at zero
}

std::vector<double> QNet::forward(std::span<const double> input) const {
    std::vector<double> h1(hidden_), h2(hidden_), out(out_);
    for (std::size_t j = 0; j < hidden_; ++j) {
        double acc = w_[o_b1() + j];
        for (std::size_t i = 0; i < in_; ++i) acc += w_[o_w1() + j * in_ + i] * input[i];
        h1[j] = std::tanh(acc);
    }
    for (std::size_t j = 0; j < hidden_; ++j) {
        double acc = w_[o_b2() + j];
        for (std::size_t i = 0; i < hidden_; ++i) acc += w_[o_w2() + j * hidden_ + i] * h1[i];
        h2[j] = std::tanh(acc);
    }
    for (std::size_t j = 0; j < out_; ++j) {
        double acc = w_[o_b3() + j];
        for (std::size_t i = 0; i < hidden_; ++i) acc += w_[o_w3() + j * hidden_ + i] * h2[i];
        out[j] = acc;
    }
    return out;
}

double QNet::loss(const std::vector<Transition>& batch, std::span<const double> targets) const {
    double total = 0.0;
    for (std::size_t m = 0; m < batch.size(); ++m) {
        const auto q = forward(batch[m].phi);
        const double diff = targets[m] - q[batch[m].action];
        total += diff * diff;
    }
    return total / static_cast<double>(batch.size());
}

void QNet::accumulate_gradient(const Transition& t, double target, double scale,
                               std::vector<double>& grad) const {
    // Forward pass keeping activations.
    std::vector<double> h1(hidden_), h2(hidden_);
    for (std::size_t j = 0; j < hidden_; ++j) {
        double acc = w_[o_b1() + j];
        for (std::size_t i = 0; i < in_; ++i) acc += w_[o_w1() + j * in_ + i] * t.phi[i];
        h1[j] = std::tanh(acc);
    }
    for (std::size_t j = 0; j < hidden_; ++j) {
        double acc = w_[o_b2() + j];
        for (std::size_t i = 0; i < hidden_; ++i) acc += w_[o_w2() + j * hidden_ + i] * h1[i];
        h2[j] = std::tanh(acc);
    }
    double q_sa = w_[o_b3() + t.action];
    for (std::size_t i = 0; i < hidden_; ++i)
        q_sa += w_[o_w3() + t.action * hidden_ + i] * h2[i];

    // d(loss_m)/d(q_sa) for loss_m = (target - q_sa)^2 is -2 (target - q_sa).
    const double dq = -2.0 * (target - q_sa) * scale;

    // Output layer: only the taken action's row carries gradient.
    std::vector<double> dh2(hidden_, 0.0);
    for (std::size_t i = 0; i < hidden_; ++i) {
        grad[o_w3() + t.action * hidden_ + i] += dq * h2[i];
        dh2[i] = dq * w_[o_w3() + t.action * hidden_ + i];
    }
    grad[o_b3() + t.action] += dq;

    std::vector<double> dh1(hidden_, 0.0);
    for (std::size_t j = 0; j < hidden_; ++j) {
        const double dpre = dh2[j] * (1.0 - h2[j] * h2[j]);
        for (std::size_t i = 0; i < hidden_; ++i) {
            grad[o_w2() + j * hidden_ + i] += dpre * h1[i];
            dh1[i] += dpre * w_[o_w2() + j * hidden_ + i];
        }
        grad[o_b2() + j] += dpre;
    }
    for (std::size_t j = 0; j < hidden_; ++j) {
        const double dpre = dh1[j] * (1.0 - h1[j] * h1[j]);
        for (std::size_t i = 0; i < in_; ++i)
            grad[o_w1() + j * in_ + i] += dpre * t.phi[i];
        grad[o_b1() + j] += dpre;
    }
}

void QNet::sgd_step(std::span<const double> grad, double step_size) {
    for (std::size_t i = 0; i < w_.size(); ++i) w_[i] -= step_size * grad[i];
}

bool QNet::finite() const {
    for (double v : w_)
        if (!std::isfinite(v)) return false;
    return true;
}

TrainResult train_dqn(const RelayEnv& env, const RlHyper& h, Rng rng, bool keep_trace) {
    const std::size_t n = env.num_actions();
    if (n == 0) throw EmptyRelaySetError("train_dqn: empty relay set");
    TrainResult out;
    if (n == 1) {
        out.relay_action = 0;
        out.r_star = env.reward_of(0);
        return out;
    }
    if (h.replay_capacity < h.minibatch)
        throw Error("train_dqn: replay capacity below minibatch size");

    // Rewards are capacities (up to ~1e9 b/s); normalize so targets are O(1).
    const double r_scale = std::max(env.max_reward(), 1.0);
    const std::size_t window = static_cast<std::size_t>(std::max(1, h.window));
    const std::size_t input_dim = 6 * window;

    QNet net(input_dim, static_cast<std::size_t>(h.hidden), n, rng);
    ReplayBuffer replay(static_cast<std::size_t>(h.replay_capacity));
    std::vector<double> grad(net.params().size());

    auto stack = [&](const std::vector<std::array<double, 6>>& history) {
        std::vector<double> phi(input_dim, 0.0);
        // Most recent state first; older states fill the tail, zero-padded.
        for (std::size_t w = 0; w < window && w < history.size(); ++w) {
            const auto& st = history[history.size() - 1 - w];
            for (std::size_t i = 0; i < 6; ++i) {
                // Capacities normalized alongside rewards; outages are already
                // probabilities.
                phi[w * 6 + i] = i < 3 ? st[i] : st[i] / r_scale;
            }
        }
        return phi;
    };

    std::vector<std::array<double, 6>> history{env.state_of(0)};
    std::size_t current = 0;
    for (int episode = 0; episode < h.episodes; ++episode) {
        double reward_sum = 0.0;
        for (int t = 0; t < h.epochs; ++t) {
            const auto phi = stack(history);
            const auto qv = net.forward(phi);
            const auto pick = epsilon_greedy(qv, h.ell, rng);
            const double r = env.reward_of(pick.action);
            history.push_back(env.state_of(pick.action));
            if (history.size() > window + 1) history.erase(history.begin());
            const auto phi_next = stack(history);
            replay.push({phi, pick.action, r / r_scale, phi_next});
            current = pick.action;
            reward_sum += r;

            if (replay.size() >= static_cast<std::size_t>(h.minibatch)) {
                std::vector<Transition> batch;
                std::vector<double> targets;
                batch.reserve(static_cast<std::size_t>(h.minibatch));
                for (int m = 0; m < h.minibatch; ++m) {
                    const auto& tr = replay.at(rng.index(replay.size()));
                    const auto q_next = net.forward(tr.phi_next);
                    const double max_next = *std::max_element(q_next.begin(), q_next.end());
                    batch.push_back(tr);
                    targets.push_back(tr.reward + h.beta * max_next);
                }
                std::fill(grad.begin(), grad.end(), 0.0);
                const double scale = 1.0 / static_cast<double>(batch.size());
                for (std::size_t m = 0; m < batch.size(); ++m)
                    net.accumulate_gradient(batch[m], targets[m], scale, grad);
                net.sgd_step(grad, h.step_size);
                if (!net.finite())
                    throw DivergedParametersError("train_dqn: parameters became non-finite");
            }
        }
        if (keep_trace) {
            const auto qv = net.forward(stack(history));
            const std::size_t greedy = static_cast<std::size_t>(
                std::max_element(qv.begin(), qv.end()) - qv.begin());
            out.trace.push_back({episode, reward_sum / h.epochs, greedy});
        }
    }

    const auto qv = net.forward(stack(history));
    out.relay_action =
        static_cast<std::size_t>(std::max_element(qv.begin(), qv.end()) - qv.begin());
    out.r_star = env.reward_of(out.relay_action);
    (void)current;
    return out;
}

const char* rl_method_name(RlMethod m) {
    switch (m) {
        case RlMethod::QLearning: return "qlearning";
        case RlMethod::Sarsa: return "sarsa";
        case RlMethod::Dqn: return "dqn";
    }
    return "?";
}

MethodResult select_best(std::span<const MethodResult> results) {
    if (results.empty()) throw Error("select_best: no method results");
    std::size_t best = 0;
    for (std::size_t i = 1; i < results.size(); ++i) {
        const bool better = results[i].result.r_star > results[best].result.r_star;
        const bool tie_earlier_method =
            results[i].result.r_star == results[best].result.r_star &&
            static_cast<int>(results[i].method) < static_cast<int>(results[best].method);
        if (better || tie_earlier_method) best = i;
    }
    return results[best];
}

std::size_t nearest_relay_action(const Scenario& s, const RelayEnv& env) {
    if (env.relays.empty()) throw EmptyRelaySetError("nearest_relay_action");
    std::size_t best = 0;
    double best_d = distance(s.usns[env.learner].pos, s.usns[env.relays[0]].pos);
    for (std::size_t a = 1; a < env.relays.size(); ++a) {
        const double d = distance(s.usns[env.learner].pos, s.usns[env.relays[a]].pos);
        if (d < best_d) {
            best_d = d;
            best = a;
        }
    }
    return best;
}

} // namespace uwr
