#pragma once

#include <array>
#include <cstdint>
#include <deque>
#include <optional>
#include <span>
#include <unordered_map>
#include <vector>

#include "uwr/erm.hpp"
#include "uwr/rng.hpp"

namespace uwr {

// Static selection environment for one learner node: action a picks relay
// relays[a]; the observed state is the chosen relay's per-type outage and
// capacity vector. Rewards do not depend on history, so the learners face an
// |A|-armed contextual selection task they can solve exactly.
struct RelayEnv {
    std::size_t learner = 0;               // node index
    std::vector<std::size_t> relays;       // node indices of the relay set
    std::vector<PairEval> pairs;           // per action

    std::size_t num_actions() const { return relays.size(); }
    std::array<double, 6> state_of(std::size_t action) const;
    double reward_of(std::size_t action) const { return pairs[action].reward; }
    double max_reward() const;
    std::size_t argmax_reward() const; // first index on ties
};

RelayEnv make_relay_env(const Scenario& s, std::size_t learner,
                        std::span<const std::size_t> relay_indices);

struct RlHyper {
    double alpha = 0.1;      // learning rate
    double beta = 0.9;       // discount
    double ell = 0.1;        // exploration probability
    int episodes = 500;      // L
    int epochs = 50;         // T per episode
    int window = 1;          // stacked states fed to the approximator
    int replay_capacity = 1000;
    int minibatch = 32;      // M: transitions sampled per update
    double step_size = 0.05; // approximator SGD step
    int hidden = 32;         // approximator hidden width
    double outage_bin = 0.01; // table discretization boundary for outage entries
};

// Eq.-style tabular update rules.
double q_update(double q, double r, double max_q_next, double alpha, double beta);
double sarsa_update(double q, double r, double q_next_committed, double alpha, double beta);

struct GreedyPick {
    std::size_t action = 0;
    bool explored = false;
};

// With probability 1 - ell returns the argmax (first index on ties),
// otherwise a uniformly random action.
GreedyPick epsilon_greedy(std::span<const double> q_values, double ell, Rng& rng);

// Discretized-state action-value table.
class QTable {
public:
    QTable(double alpha, double beta, double epsilon_bin)
        : alpha_(alpha), beta_(beta), epsilon_bin_(epsilon_bin) {}

    std::uint32_t state_key(const std::array<double, 6>& state) const;
    std::vector<double>& row(std::uint32_t key, std::size_t n_actions);
    double max_q(std::uint32_t key, std::size_t n_actions);

    double alpha() const { return alpha_; }
    double beta() const { return beta_; }

private:
    double alpha_;
    double beta_;
    double epsilon_bin_; // outage bin boundary
    std::unordered_map<std::uint32_t, std::vector<double>> table_;
};

struct EpisodeTrace {
    int episode = 0;
    double mean_reward = 0.0;
    std::size_t chosen = 0;
};

struct TrainResult {
    std::size_t relay_action = 0; // index into env.relays
    double r_star = 0.0;
    std::vector<EpisodeTrace> trace;
};

TrainResult train_qlearning(const RelayEnv& env, const RlHyper& h, Rng rng,
                            bool keep_trace = false);
TrainResult train_sarsa(const RelayEnv& env, const RlHyper& h, Rng rng,
                        bool keep_trace = false);

// Bounded FIFO transition store.
struct Transition {
    std::vector<double> phi;      // stacked state window
    std::size_t action = 0;
    double reward = 0.0;          // normalized
    std::vector<double> phi_next;
};

class ReplayBuffer {
public:
    explicit ReplayBuffer(std::size_t capacity) : capacity_(capacity) {}
    void push(Transition t);
    std::size_t size() const { return buf_.size(); }
    const Transition& at(std::size_t i) const { return buf_[i]; }

private:
    std::size_t capacity_;
    std::deque<Transition> buf_;
};

// Two-hidden-layer tanh MLP mapping a stacked state window to per-action
// values. Hand-rolled so the analytic gradient stays inspectable against
// finite differences.
class QNet {
public:
    QNet(std::size_t input_dim, std::size_t hidden, std::size_t out_dim, Rng& rng);

    std::vector<double> forward(std::span<const double> input) const;

    // Mean squared TD error against fixed targets, and its exact gradient.
    double loss(const std::vector<Transition>& batch, std::span<const double> targets) const;
    void accumulate_gradient(const Transition& t, double target, double scale,
                             std::vector<double>& grad) const;
    void sgd_step(std::span<const double> grad, double step_size);

    std::vector<double>& params() { return w_; }
    const std::vector<double>& params() const { return w_; }
    bool finite() const;

    std::size_t input_dim() const { return in_; }
    std::size_t out_dim() const { return out_; }

private:
    std::size_t in_, hidden_, out_;
    std::vector<double> w_; // [W1 | b1 | W2 | b2 | W3 | b3]
    // Layout offsets.
    std::size_t o_w1() const { return 0; }
    std::size_t o_b1() const { return in_ * hidden_; }
    std::size_t o_w2() const { return o_b1() + hidden_; }
    std::size_t o_b2() const { return o_w2() + hidden_ * hidden_; }
    std::size_t o_w3() const { return o_b2() + hidden_; }
    std::size_t o_b3() const { return o_w3() + hidden_ * out_; }
    friend struct QNetScratch;
};

TrainResult train_dqn(const RelayEnv& env, const RlHyper& h, Rng rng,
                      bool keep_trace = false);

enum class RlMethod : int { QLearning = 0, Sarsa = 1, Dqn = 2 };
const char* rl_method_name(RlMethod m);

// Maximum-R* winner across methods; ties go to the earlier method in
// (tabular, on-policy, neural) order.
struct MethodResult {
    RlMethod method = RlMethod::QLearning;
    TrainResult result;
};
MethodResult select_best(std::span<const MethodResult> results);

// Geometric baseline: the nearest relay, regardless of link quality.
std::size_t nearest_relay_action(const Scenario& s, const RelayEnv& env);

} // namespace uwr
