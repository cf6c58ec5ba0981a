#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "uwr/core.hpp"
#include "uwr/erm.hpp"
#include "uwr/moea.hpp"
#include "uwr/rl.hpp"

namespace uwr {

struct StageSet {
    bool generate = false;
    bool erm = false;
    bool rl = false;
    bool deploy = false;
    bool mop = false;
    bool plots = false;

    static StageSet all() { return {true, true, true, true, true, true}; }
};

struct PipelineConfig {
    // Exactly one scenario source: a file path, or the inline generation block.
    std::string scenario_path;
    bool use_generation = true;
    ScenarioConfig gen;
    std::uint64_t seed = 1;

    std::string out_dir = "out";

    bool method_qlearning = true;
    bool method_sarsa = true;
    bool method_dqn = true;
    RlHyper rl;
    int interference_sweeps = 1;
    bool write_trace = true;

    VelocityMode velocity_mode = VelocityMode::Verbatim;
    bool select_by_ratio = false; // knee rule by default
    MoeadConfig moea;

    // Standalone deploy-stage decision variables.
    int deploy_x1 = 1;
    double deploy_x2 = 0.01;

    int threads = 0; // 0 = hardware concurrency
    int verbosity = 1;
};

struct RunReport {
    // Wall-clock per stage; printed to the console, never persisted, so that
    // artifacts stay byte-identical across runs.
    std::vector<std::pair<std::string, double>> stage_seconds;

    std::size_t n_total = 0, n_a = 0, n_b = 0, n_c = 0;
    std::map<std::string, double> rl_mean_reward;
    double baseline_mean_reward = 0.0;
    double best_mean_reward = 0.0;

    int clusters_used = 0;
    double deploy_makespan = 0.0;
    double deploy_energy = 0.0;

    bool has_archive = false;
    ArchiveEntry knee{};
    ArchiveEntry ee{};
    double f1_at_single_auv = 0.0;
    double multi_auv_saving_pct = 0.0;

    std::vector<std::string> notices;
    std::vector<std::string> files_written;
};

// Executes the selected stages in dependency order; stages not selected are
// fed from previously persisted artifacts in out_dir.
RunReport run_pipeline(const PipelineConfig& cfg, const StageSet& stages);

// Re-derives every plot-ready series from the persisted artifacts;
// byte-idempotent.
std::vector<std::string> emit_plots(const PipelineConfig& cfg);

// Persisted-artifact helpers shared by stages and tests.
void write_partition_file(const Scenario& s, const ErmAssignment& a,
                          const std::string& path);
ErmAssignment read_partition_file(const Scenario& s, const std::string& path);

void write_checksum_manifest(const std::string& out_dir,
                             const std::vector<std::string>& files);

} // namespace uwr
