// Command-line front end: scenario generation, emergency-response-mode
// selection, relay-selection training, AUV deployment, and the
// time-vs-energy tradeoff search, each runnable standalone from persisted
// artifacts.
#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "uwr/errors.hpp"
#include "uwr/pipeline.hpp"

namespace {

constexpr int kExitConfig = 2;
constexpr int kExitStageInput = 3;
constexpr int kExitStageFailure = 4;
constexpr int kExitIo = 5;

void add_common(CLI::App* cmd, uwr::PipelineConfig& cfg) {
    cmd->add_option("--scenario", cfg.scenario_path,
                    "Scenario file to load (instead of the generated artifact)");
    cmd->add_option("--out", cfg.out_dir, "Artifact directory")->capture_default_str();
    cmd->add_option("--seed", cfg.seed, "Run seed")->capture_default_str();
    cmd->add_option("--threads", cfg.threads, "Worker threads (0 = hardware)");
    cmd->add_flag("--quiet{0}", cfg.verbosity, "Suppress progress output");
}

void add_gen(CLI::App* cmd, uwr::PipelineConfig& cfg) {
    cmd->add_option("--usns", cfg.gen.usn_count, "Number of sensor nodes")
        ->capture_default_str();
    cmd->add_option("--box-x", cfg.gen.box_x, "Area width, m")->capture_default_str();
    cmd->add_option("--box-y", cfg.gen.box_y, "Area height, m")->capture_default_str();
    cmd->add_option("--depth", cfg.gen.box_depth, "Maximum node depth, m")
        ->capture_default_str();
    cmd->add_option("--packet-bits", cfg.gen.packet_bits, "Packet size per node, bits")
        ->capture_default_str();
    cmd->add_option("--gamma", cfg.gen.gamma, "SINR threshold")->capture_default_str();
    cmd->add_option("--epsilon", cfg.gen.epsilon, "Outage threshold")
        ->capture_default_str();
    cmd->add_option("--n-max", cfg.gen.n_max, "Per-AUV serving capacity")
        ->capture_default_str();
    cmd->add_option("--e-max", cfg.gen.e_max, "Per-AUV energy budget, J")
        ->capture_default_str();
}

void add_rl(CLI::App* cmd, uwr::PipelineConfig& cfg) {
    cmd->add_flag("--no-qlearning{false}", cfg.method_qlearning, "Disable tabular Q-learning");
    cmd->add_flag("--no-sarsa{false}", cfg.method_sarsa, "Disable Sarsa");
    cmd->add_flag("--no-dqn{false}", cfg.method_dqn, "Disable the neural method");
    cmd->add_option("--rl-episodes", cfg.rl.episodes, "Training episodes (L)")
        ->capture_default_str();
    cmd->add_option("--rl-epochs", cfg.rl.epochs, "Epochs per episode (T)")
        ->capture_default_str();
    cmd->add_option("--rl-alpha", cfg.rl.alpha, "Learning rate")->capture_default_str();
    cmd->add_option("--rl-beta", cfg.rl.beta, "Discount factor")->capture_default_str();
    cmd->add_option("--rl-ell", cfg.rl.ell, "Exploration probability")
        ->capture_default_str();
    cmd->add_flag("--no-trace{false}", cfg.write_trace, "Skip the per-episode trace file");
}

void add_deploy(CLI::App* cmd, uwr::PipelineConfig& cfg, std::string& velocity_mode) {
    cmd->add_option("--x1", cfg.deploy_x1, "Initial AUV count")->capture_default_str();
    cmd->add_option("--x2", cfg.deploy_x2, "Isolated-node transmit power, W")
        ->capture_default_str();
    cmd->add_option("--velocity-mode", velocity_mode, "verbatim|corrected")
        ->capture_default_str();
}

void add_mop(CLI::App* cmd, uwr::PipelineConfig& cfg, bool& ratio) {
    cmd->add_option("--subproblems", cfg.moea.subproblems, "Decomposition size (N)")
        ->capture_default_str();
    cmd->add_option("--neighborhood", cfg.moea.neighborhood, "Mating neighborhood (T)")
        ->capture_default_str();
    cmd->add_option("--generations", cfg.moea.generations, "Generations")
        ->capture_default_str();
    cmd->add_flag("--select-ratio", ratio,
                  "Select the tradeoff by minimum energy/time ratio instead of the knee");
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Underwater emergency response network simulator"};
    app.require_subcommand(1);

    uwr::PipelineConfig cfg;
    std::string velocity_mode = "verbatim";
    bool ratio = false;

    auto* c_gen = app.add_subcommand("generate", "Generate and persist a scenario");
    add_common(c_gen, cfg);
    add_gen(c_gen, cfg);

    auto* c_erm = app.add_subcommand(
        "erm", "Detect relays, train relay selection, partition the nodes");
    add_common(c_erm, cfg);
    add_rl(c_erm, cfg);

    auto* c_rl = app.add_subcommand(
        "rl", "Method comparison with per-episode traces and the greedy baseline");
    add_common(c_rl, cfg);
    add_rl(c_rl, cfg);

    auto* c_dep = app.add_subcommand("deploy", "Cluster isolated nodes and plan AUVs");
    add_common(c_dep, cfg);
    add_deploy(c_dep, cfg, velocity_mode);

    auto* c_mop = app.add_subcommand("mop", "Search the time-vs-energy tradeoff front");
    add_common(c_mop, cfg);
    add_deploy(c_mop, cfg, velocity_mode);
    add_mop(c_mop, cfg, ratio);

    auto* c_plots = app.add_subcommand("plots", "Re-emit plot series from artifacts");
    add_common(c_plots, cfg);

    auto* c_all = app.add_subcommand("all", "Run the full pipeline");
    add_common(c_all, cfg);
    add_gen(c_all, cfg);
    add_rl(c_all, cfg);
    add_deploy(c_all, cfg, velocity_mode);
    add_mop(c_all, cfg, ratio);

    CLI11_PARSE(app, argc, argv);

    cfg.select_by_ratio = ratio;
    if (velocity_mode == "corrected") {
        cfg.velocity_mode = uwr::VelocityMode::Corrected;
    } else if (velocity_mode != "verbatim") {
        std::fprintf(stderr, "error: unknown velocity mode '%s'\n", velocity_mode.c_str());
        return kExitConfig;
    }
    if (!cfg.scenario_path.empty()) cfg.use_generation = false;

    uwr::StageSet stages;
    if (c_gen->parsed()) stages.generate = true;
    if (c_erm->parsed()) stages.erm = true;
    if (c_rl->parsed()) stages.rl = true;
    if (c_dep->parsed()) stages.deploy = true;
    if (c_mop->parsed()) stages.mop = true;
    if (c_plots->parsed()) stages.plots = true;
    if (c_all->parsed()) {
        stages = uwr::StageSet::all();
        stages.generate = cfg.use_generation;
    }

    try {
        const auto report = uwr::run_pipeline(cfg, stages);
        if (cfg.verbosity > 0) {
            if (report.n_total > 0)
                std::fprintf(stderr, "partition: |A|=%zu |B|=%zu |C|=%zu of %zu\n",
                             report.n_a, report.n_b, report.n_c, report.n_total);
            for (const auto& n : report.notices)
                std::fprintf(stderr, "notice: %s\n", n.c_str());
            std::fprintf(stderr, "artifacts in %s\n", cfg.out_dir.c_str());
        }
        return 0;
    } catch (const uwr::InvalidConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const uwr::StageInputError& e) {
        std::fprintf(stderr, "stage input error: %s\n", e.what());
        return kExitStageInput;
    } catch (const uwr::IoError& e) {
        std::fprintf(stderr, "io error: %s\n", e.what());
        return kExitIo;
    } catch (const uwr::Error& e) {
        std::fprintf(stderr, "stage failure: %s\n", e.what());
        return kExitStageFailure;
    }
}
