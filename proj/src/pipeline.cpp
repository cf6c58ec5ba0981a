#include "uwr/pipeline.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <optional>
#include <span>
#include <thread>

#include <json.hpp>

#include "uwr/deploy.hpp"
#include "uwr/errors.hpp"
#include "uwr/scenario_io.hpp"

namespace uwr {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

Link link_from_name(const std::string& name) {
    for (Link l : kAllLinks)
        if (name == link_name(l)) return l;
    throw FormatError("unknown link name: " + name);
}

struct StageClock {
    RunReport& report;
    std::string stage;
    int verbosity;
    std::chrono::steady_clock::time_point start = std::chrono::steady_clock::now();
    ~StageClock() {
        const double sec =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        report.stage_seconds.push_back({stage, sec});
        if (verbosity > 0) std::fprintf(stderr, "[%s] %.2f s\n", stage.c_str(), sec);
    }
};

std::string artifact(const PipelineConfig& cfg, const char* name) {
    return (fs::path(cfg.out_dir) / name).string();
}

Scenario load_scenario(const PipelineConfig& cfg) {
    if (!cfg.scenario_path.empty()) return read_scenario_file(cfg.scenario_path);
    const auto path = artifact(cfg, "scenario.json");
    if (!fs::exists(path))
        throw StageInputError("scenario artifact missing: " + path +
                              " (run the generate stage first)");
    return read_scenario_file(path);
}

// Per-node relay selection with the configured methods; dqn divergence falls
// back to the tabular result.
struct NodeSelection {
    std::optional<RelayChoice> choice;
    std::vector<MethodResult> methods;
    bool dqn_diverged = false;
};

NodeSelection select_for_node(const Scenario& s, const PipelineConfig& cfg,
                              std::span<const std::size_t> relays, std::size_t node,
                              bool keep_trace) {
    NodeSelection out;
    if (relays.empty()) return out;
    const auto env = make_relay_env(s, node, relays);
    RlHyper h = cfg.rl;
    h.outage_bin = s.channel.epsilon;

    std::optional<TrainResult> tabular;
    if (cfg.method_qlearning) {
        auto r = train_qlearning(env, h, Rng(s.seed, "rl.qlearning", node), keep_trace);
        tabular = r;
        out.methods.push_back({RlMethod::QLearning, std::move(r)});
    }
    if (cfg.method_sarsa) {
        auto r = train_sarsa(env, h, Rng(s.seed, "rl.sarsa", node), keep_trace);
        if (!tabular) tabular = r;
        out.methods.push_back({RlMethod::Sarsa, std::move(r)});
    }
    if (cfg.method_dqn) {
        try {
            auto r = train_dqn(env, h, Rng(s.seed, "rl.dqn", node), keep_trace);
            out.methods.push_back({RlMethod::Dqn, std::move(r)});
        } catch (const DivergedParametersError&) {
            out.dqn_diverged = true;
            TrainResult fb =
                tabular ? *tabular
                        : train_qlearning(env, h, Rng(s.seed, "rl.qlearning", node), false);
            out.methods.push_back({RlMethod::Dqn, std::move(fb)});
        }
    }
    if (out.methods.empty()) return out;

    const auto best = select_best(out.methods);
    RelayChoice choice;
    choice.relay_index = best.result.relay_action;
    choice.r_star = best.result.r_star;
    choice.link = env.pairs[best.result.relay_action].reward_link;
    out.choice = choice;
    return out;
}

// Runs fn(node_slot) over the learner list on the configured thread count;
// results land in index-addressed slots so scheduling cannot reorder output.
template <typename Fn>
void parallel_over(std::size_t count, int threads, Fn&& fn) {
    unsigned n_threads = threads > 0 ? static_cast<unsigned>(threads)
                                     : std::max(1u, std::thread::hardware_concurrency());
    n_threads = std::min<unsigned>(n_threads, count == 0 ? 1 : static_cast<unsigned>(count));
    if (n_threads <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (unsigned t = 0; t < n_threads; ++t) {
        pool.emplace_back([&] {
            for (;;) {
                const std::size_t i = next.fetch_add(1);
                if (i >= count) return;
                fn(i);
            }
        });
    }
    for (auto& th : pool) th.join();
}

json deployment_to_json(const Scenario& s, const Deployment& dep, int x1, double x2,
                        VelocityMode mode) {
    json auvs = json::array();
    for (const auto& p : dep.plans) {
        json members = json::array();
        for (std::size_t m : p.cluster.members) members.push_back(s.usns[m].id);
        auvs.push_back({{"id", p.auv_id},
                        {"x", p.cluster.centroid.x},
                        {"y", p.cluster.centroid.y},
                        {"z", p.cluster.centroid.z},
                        {"members", members},
                        {"velocity", p.velocity},
                        {"t_r", p.t_r},
                        {"t_m", p.t_m},
                        {"e_r", p.e_r},
                        {"e_b", p.e_b},
                        {"e_l", p.e_l},
                        {"e_s", p.e_s},
                        {"e_e", p.e_e},
                        {"e_total", p.total_energy},
                        {"feasible", p.feasible},
                        {"reason", p.infeasible_reason}});
    }
    return json{{"format_version", 1},
                {"x1_requested", x1},
                {"x2", x2},
                {"velocity_mode", mode == VelocityMode::Verbatim ? "verbatim" : "corrected"},
                {"clusters_used", dep.clusters_used},
                {"auvs", auvs}};
}

std::string deployment_tsv(const json& dep) {
    std::string out =
        "auv\tx\ty\tz\tmembers\tvelocity\tt_r\tt_m\te_r\te_b\te_l\te_s\te_e\te_total\tfeasible\n";
    for (const auto& a : dep.at("auvs")) {
        std::string members;
        for (const auto& m : a.at("members")) {
            if (!members.empty()) members += ",";
            members += std::to_string(m.get<int>());
        }
        out += std::to_string(a.at("id").get<int>()) + "\t" + fmt(a.at("x").get<double>()) +
               "\t" + fmt(a.at("y").get<double>()) + "\t" + fmt(a.at("z").get<double>()) +
               "\t" + members + "\t" + fmt(a.at("velocity").get<double>()) + "\t" +
               fmt(a.at("t_r").get<double>()) + "\t" + fmt(a.at("t_m").get<double>()) + "\t" +
               fmt(a.at("e_r").get<double>()) + "\t" + fmt(a.at("e_b").get<double>()) + "\t" +
               fmt(a.at("e_l").get<double>()) + "\t" + fmt(a.at("e_s").get<double>()) + "\t" +
               fmt(a.at("e_e").get<double>()) + "\t" + fmt(a.at("e_total").get<double>()) +
               "\t" + (a.at("feasible").get<bool>() ? "1" : "0") + "\n";
    }
    return out;
}

std::string front_tsv(const json& front) {
    std::string out = "x1\tx2\tf1_seconds\tf2_joules\tfeasible\tknee_flag\tee_flag\n";
    for (const auto& p : front.at("points")) {
        out += std::to_string(p.at("x1").get<int>()) + "\t" + fmt(p.at("x2").get<double>()) +
               "\t" + fmt(p.at("f1").get<double>()) + "\t" + fmt(p.at("f2").get<double>()) +
               "\t" + (p.at("feasible").get<bool>() ? "1" : "0") + "\t" +
               (p.at("knee").get<bool>() ? "1" : "0") + "\t" +
               (p.at("ee").get<bool>() ? "1" : "0") + "\n";
    }
    return out;
}

std::string scatter_tsv(const Scenario& s, const json& partition) {
    std::map<int, std::pair<std::string, std::string>> label; // id -> (erm, link)
    std::map<int, int> relay_of;
    for (const auto& a : partition.at("set_a"))
        label[a.at("id").get<int>()] = {"A", a.at("link").get<std::string>()};
    for (const auto& b : partition.at("set_b")) {
        label[b.at("id").get<int>()] = {"B", b.at("link").get<std::string>()};
        relay_of[b.at("id").get<int>()] = b.at("relay_id").get<int>();
    }
    for (const auto& c : partition.at("set_c")) label[c.get<int>()] = {"C", "-"};

    std::string out = "id\tx\ty\tz\term\tlink\trelay_id\n";
    for (const auto& n : s.usns) {
        const auto& [erm, link] = label.at(n.id);
        const auto it = relay_of.find(n.id);
        out += std::to_string(n.id) + "\t" + fmt(n.pos.x) + "\t" + fmt(n.pos.y) + "\t" +
               fmt(n.pos.z) + "\t" + erm + "\t" + link + "\t" +
               (it == relay_of.end() ? std::string("-") : std::to_string(it->second)) + "\n";
    }
    return out;
}

void note_file(RunReport& report, const std::string& path) {
    report.files_written.push_back(path);
}

} // namespace

void write_partition_file(const Scenario& s, const ErmAssignment& a,
                          const std::string& path) {
    json set_a = json::array();
    std::map<int, std::size_t> index_by_id;
    for (std::size_t i = 0; i < s.usns.size(); ++i) index_by_id[s.usns[i].id] = i;
    for (int id : a.set_a) {
        const auto& b = a.direct.at(index_by_id.at(id));
        set_a.push_back({{"id", id}, {"link", b ? link_name(b->link) : "-"}});
    }
    json set_b = json::array();
    for (const auto& c : a.set_b)
        set_b.push_back({{"id", c.id},
                         {"relay_id", c.relay_id},
                         {"reward_bps", c.reward_bps},
                         {"link", link_name(c.link)}});
    json doc{{"format_version", 1},
             {"set_a", set_a},
             {"set_b", set_b},
             {"set_c", a.set_c}};
    write_text_file(path, doc.dump(2) + "\n");
}

ErmAssignment read_partition_file(const Scenario& s, const std::string& path) {
    if (!fs::exists(path))
        throw StageInputError("partition artifact missing: " + path +
                              " (run the erm stage first)");
    json doc;
    try {
        doc = json::parse(read_text_file(path));
    } catch (const json::exception& e) {
        throw FormatError(std::string("partition: invalid JSON: ") + e.what());
    }
    if (doc.value("format_version", 0) != 1)
        throw FormatError("partition: unsupported format_version");
    ErmAssignment a;
    for (const auto& e : doc.at("set_a")) a.set_a.push_back(e.at("id").get<int>());
    for (const auto& e : doc.at("set_b"))
        a.set_b.push_back({e.at("id").get<int>(), e.at("relay_id").get<int>(),
                           e.at("reward_bps").get<double>(),
                           link_from_name(e.at("link").get<std::string>())});
    for (const auto& e : doc.at("set_c")) a.set_c.push_back(e.get<int>());
    // Sanity: the partition must cover the scenario exactly once.
    std::vector<int> ids;
    for (int id : a.set_a) ids.push_back(id);
    for (const auto& b : a.set_b) ids.push_back(b.id);
    for (int id : a.set_c) ids.push_back(id);
    std::sort(ids.begin(), ids.end());
    std::vector<int> expect;
    for (const auto& n : s.usns) expect.push_back(n.id);
    std::sort(expect.begin(), expect.end());
    if (ids != expect)
        throw FormatError("partition: node sets do not partition the scenario");
    return a;
}

void write_checksum_manifest(const std::string& out_dir,
                             const std::vector<std::string>& files) {
    std::vector<std::string> names;
    for (const auto& f : files) names.push_back(fs::path(f).filename().string());
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    std::string out;
    for (const auto& name : names) {
        const auto content = read_text_file((fs::path(out_dir) / name).string());
        char line[128];
        std::snprintf(line, sizeof line, "%016llx %zu %s\n",
                      static_cast<unsigned long long>(fnv1a64(content)), content.size(),
                      name.c_str());
        out += line;
    }
    write_text_file((fs::path(out_dir) / "manifest.txt").string(), out);
}

RunReport run_pipeline(const PipelineConfig& cfg, const StageSet& stages) {
    RunReport report;
    fs::create_directories(cfg.out_dir);

    if (!cfg.scenario_path.empty() && cfg.use_generation && stages.generate)
        throw InvalidConfigError("exactly one scenario source: file path or generation block");

    // --- generate ---------------------------------------------------------
    if (stages.generate) {
        StageClock clock{report, "generate", cfg.verbosity};
        if (!cfg.use_generation)
            throw InvalidConfigError("generate stage requires a generation block");
        const Scenario s = generate_scenario(cfg.gen, cfg.seed);
        const auto violations = validate_scenario(s);
        if (!violations.empty())
            throw InvalidConfigError("generated scenario invalid: " + violations[0].field +
                                     ": " + violations[0].message);
        const auto path = artifact(cfg, "scenario.json");
        write_scenario_file(s, path);
        note_file(report, path);
    }

    std::optional<Scenario> scenario;
    auto the_scenario = [&]() -> const Scenario& {
        if (!scenario) scenario = load_scenario(cfg);
        return *scenario;
    };

    // --- erm: detection + embedded selection + partition -------------------
    if (stages.erm) {
        StageClock clock{report, "erm", cfg.verbosity};
        const Scenario& s = the_scenario();
        const auto det = detect_relays(s, cfg.interference_sweeps);

        std::vector<std::size_t> learners;
        for (std::size_t i = 0; i < s.usns.size(); ++i)
            if (!det.in_a[i]) learners.push_back(i);

        std::vector<std::optional<RelayChoice>> choice(s.usns.size());
        std::vector<char> diverged(learners.size(), 0);
        parallel_over(learners.size(), cfg.threads, [&](std::size_t li) {
            const auto sel = select_for_node(s, cfg, det.relays, learners[li], false);
            choice[learners[li]] = sel.choice;
            diverged[li] = sel.dqn_diverged ? 1 : 0;
        });
        if (std::count(diverged.begin(), diverged.end(), 1) > 0)
            report.notices.push_back("dqn diverged on some nodes; tabular fallback used");

        const auto assignment = partition_erm(s, det, choice);
        report.n_total = s.usns.size();
        report.n_a = assignment.set_a.size();
        report.n_b = assignment.set_b.size();
        report.n_c = assignment.set_c.size();

        const auto path = artifact(cfg, "partition.json");
        write_partition_file(s, assignment, path);
        note_file(report, path);
        const auto scatter_path = artifact(cfg, "erm_scatter.tsv");
        write_text_file(scatter_path,
                        scatter_tsv(s, json::parse(read_text_file(path))));
        note_file(report, scatter_path);
    }

    // --- rl: method comparison, traces, baseline ---------------------------
    if (stages.rl) {
        StageClock clock{report, "rl", cfg.verbosity};
        const Scenario& s = the_scenario();
        const auto assignment = read_partition_file(s, artifact(cfg, "partition.json"));
        report.n_total = s.usns.size();
        report.n_a = assignment.set_a.size();
        report.n_b = assignment.set_b.size();
        report.n_c = assignment.set_c.size();

        std::map<int, std::size_t> index_by_id;
        for (std::size_t i = 0; i < s.usns.size(); ++i) index_by_id[s.usns[i].id] = i;
        std::vector<std::size_t> relays;
        for (int id : assignment.set_a) relays.push_back(index_by_id.at(id));
        std::sort(relays.begin(), relays.end());

        std::vector<std::size_t> learners;
        for (std::size_t i = 0; i < s.usns.size(); ++i)
            if (!std::binary_search(relays.begin(), relays.end(), i)) learners.push_back(i);

        json summary{{"format_version", 1}};
        std::string trace = "method\tnode\tepisode\tmean_reward\tchosen_relay\n";
        if (relays.empty() || learners.empty()) {
            report.notices.push_back("rl stage: no relays or no learners; nothing to train");
            summary["methods"] = json::object();
            summary["baseline_mean_reward"] = 0.0;
            summary["best_mean_reward"] = 0.0;
            summary["per_node"] = json::array();
        } else {
            std::vector<NodeSelection> results(learners.size());
            parallel_over(learners.size(), cfg.threads, [&](std::size_t li) {
                results[li] =
                    select_for_node(s, cfg, relays, learners[li], cfg.write_trace);
            });
            std::map<std::string, double> method_sum;
            std::map<std::string, int> method_cnt;
            double baseline_sum = 0.0, best_sum = 0.0;
            json per_node = json::array();
            for (std::size_t li = 0; li < learners.size(); ++li) {
                const std::size_t node = learners[li];
                const auto env = make_relay_env(s, node, relays);
                json entry{{"id", s.usns[node].id}};
                for (const auto& mr : results[li].methods) {
                    const std::string name = rl_method_name(mr.method);
                    method_sum[name] += mr.result.r_star;
                    method_cnt[name] += 1;
                    entry[name + "_relay"] = s.usns[env.relays[mr.result.relay_action]].id;
                    entry[name + "_reward_bps"] = mr.result.r_star;
                    if (cfg.write_trace) {
                        for (const auto& t : mr.result.trace) {
                            trace += name + "\t" + std::to_string(s.usns[node].id) + "\t" +
                                     std::to_string(t.episode) + "\t" + fmt(t.mean_reward) +
                                     "\t" +
                                     std::to_string(s.usns[env.relays[t.chosen]].id) + "\n";
                        }
                    }
                }
                const std::size_t base = nearest_relay_action(s, env);
                const double base_r = env.reward_of(base);
                baseline_sum += base_r;
                entry["baseline_relay"] = s.usns[env.relays[base]].id;
                entry["baseline_reward_bps"] = base_r;
                if (results[li].choice) best_sum += results[li].choice->r_star;
                per_node.push_back(entry);
            }
            json methods = json::object();
            for (const auto& [name, sum] : method_sum) {
                const double mean = sum / method_cnt[name];
                methods[name] = {{"mean_reward_bps", mean}};
                report.rl_mean_reward[name] = mean;
            }
            summary["methods"] = methods;
            report.baseline_mean_reward = baseline_sum / learners.size();
            report.best_mean_reward = best_sum / learners.size();
            summary["baseline_mean_reward"] = report.baseline_mean_reward;
            summary["best_mean_reward"] = report.best_mean_reward;
            summary["per_node"] = per_node;
        }
        const auto path = artifact(cfg, "rl_summary.json");
        write_text_file(path, summary.dump(2) + "\n");
        note_file(report, path);
        if (cfg.write_trace) {
            const auto tpath = artifact(cfg, "rl_trace.tsv");
            write_text_file(tpath, trace);
            note_file(report, tpath);
        }
    }

    // --- deploy -------------------------------------------------------------
    if (stages.deploy) {
        StageClock clock{report, "deploy", cfg.verbosity};
        const Scenario& s = the_scenario();
        const auto assignment = read_partition_file(s, artifact(cfg, "partition.json"));
        const auto isolated = set_c_indices(s, assignment);
        if (isolated.empty()) {
            report.notices.push_back("deploy stage skipped: isolated set is empty");
            if (cfg.verbosity > 0)
                std::fprintf(stderr, "deploy: no isolated nodes; stage skipped\n");
        } else {
            const auto dep =
                deploy(s, isolated, cfg.deploy_x1, cfg.deploy_x2, cfg.velocity_mode);
            report.clusters_used = dep.clusters_used;
            for (const auto& p : dep.plans) {
                if (!p.feasible) continue;
                report.deploy_makespan = std::max(report.deploy_makespan, p.t_r + p.t_m);
                report.deploy_energy += p.total_energy;
            }
            const auto j =
                deployment_to_json(s, dep, cfg.deploy_x1, cfg.deploy_x2, cfg.velocity_mode);
            const auto path = artifact(cfg, "deployment.json");
            write_text_file(path, j.dump(2) + "\n");
            note_file(report, path);
            const auto tpath = artifact(cfg, "deployment.tsv");
            write_text_file(tpath, deployment_tsv(j));
            note_file(report, tpath);
        }
    }

    // --- mop ------------------------------------------------------------------
    if (stages.mop) {
        StageClock clock{report, "mop", cfg.verbosity};
        const Scenario& s = the_scenario();
        const auto assignment = read_partition_file(s, artifact(cfg, "partition.json"));
        const auto isolated = set_c_indices(s, assignment);
        if (isolated.empty()) {
            report.notices.push_back("mop stage skipped: isolated set is empty");
            if (cfg.verbosity > 0)
                std::fprintf(stderr, "mop: no isolated nodes; stage skipped\n");
        } else {
            MoeadConfig mc = cfg.moea;
            mc.velocity_mode = cfg.velocity_mode;
            const auto archive = moead_run(s, isolated, mc);
            report.has_archive = !archive.entries.empty();

            json points = json::array();
            json selected;
            if (!archive.entries.empty()) {
                const auto knee = knee_select(archive);
                const auto ee = energy_efficiency_select(archive);
                report.knee = knee;
                report.ee = ee;
                const auto& pick = cfg.select_by_ratio ? ee : knee;

                // Directional multi-AUV check at the selected power level.
                const auto single =
                    evaluate({1, pick.x.x2}, s, isolated, cfg.velocity_mode);
                report.f1_at_single_auv = single.f1;
                if (pick.x.x1 > 1 && single.f1 > 0.0)
                    report.multi_auv_saving_pct =
                        (single.f1 - pick.f.f1) / single.f1 * 100.0;

                auto sorted = archive.entries;
                std::sort(sorted.begin(), sorted.end(),
                          [](const ArchiveEntry& a, const ArchiveEntry& b) {
                              if (a.f.f1 != b.f.f1) return a.f.f1 < b.f.f1;
                              return a.f.f2 < b.f.f2;
                          });
                for (const auto& e : sorted) {
                    const bool is_knee = e.x.x1 == knee.x.x1 && e.x.x2 == knee.x.x2;
                    const bool is_ee = e.x.x1 == ee.x.x1 && e.x.x2 == ee.x.x2;
                    points.push_back({{"x1", e.x.x1},
                                      {"x2", e.x.x2},
                                      {"f1", e.f.f1},
                                      {"f2", e.f.f2},
                                      {"feasible", e.f.feasible},
                                      {"cv", e.f.constraint_violation},
                                      {"knee", is_knee},
                                      {"ee", is_ee}});
                }
                selected = {{"rule", cfg.select_by_ratio ? "ratio" : "knee"},
                            {"x1", pick.x.x1},
                            {"x2", pick.x.x2},
                            {"f1", pick.f.f1},
                            {"f2", pick.f.f2},
                            {"f1_at_single_auv", report.f1_at_single_auv},
                            {"multi_auv_saving_pct", report.multi_auv_saving_pct}};
            } else {
                report.notices.push_back("mop: no feasible point found; empty front");
                selected = json::object();
            }
            json front{{"format_version", 1}, {"points", points}, {"selected", selected}};
            const auto path = artifact(cfg, "front.json");
            write_text_file(path, front.dump(2) + "\n");
            note_file(report, path);
            const auto tpath = artifact(cfg, "front.tsv");
            write_text_file(tpath, front_tsv(front));
            note_file(report, tpath);
        }
    }

    // --- plots -----------------------------------------------------------------
    if (stages.plots) {
        StageClock clock{report, "plots", cfg.verbosity};
        for (const auto& f : emit_plots(cfg)) note_file(report, f);
    }

    // --- report + manifest -------------------------------------------------------
    {
        json rep{{"format_version", 1},
                 {"partition",
                  {{"total", report.n_total},
                   {"a", report.n_a},
                   {"b", report.n_b},
                   {"c", report.n_c}}},
                 {"rl",
                  {{"baseline_mean_reward", report.baseline_mean_reward},
                   {"best_mean_reward", report.best_mean_reward}}},
                 {"deploy",
                  {{"clusters_used", report.clusters_used},
                   {"makespan_s", report.deploy_makespan},
                   {"energy_j", report.deploy_energy}}},
                 {"notices", report.notices}};
        json means = json::object();
        for (const auto& [k, v] : report.rl_mean_reward) means[k] = v;
        rep["rl"]["mean_reward_per_method"] = means;
        if (report.has_archive) {
            rep["mop"] = {{"knee_x1", report.knee.x.x1},
                          {"knee_x2", report.knee.x.x2},
                          {"knee_f1", report.knee.f.f1},
                          {"knee_f2", report.knee.f.f2},
                          {"ee_x1", report.ee.x.x1},
                          {"ee_x2", report.ee.x.x2},
                          {"f1_at_single_auv", report.f1_at_single_auv},
                          {"multi_auv_saving_pct", report.multi_auv_saving_pct}};
        }
        std::vector<std::string> names;
        for (const auto& f : report.files_written)
            names.push_back(fs::path(f).filename().string());
        std::sort(names.begin(), names.end());
        rep["files"] = names;
        const auto path = artifact(cfg, "report.json");
        write_text_file(path, rep.dump(2) + "\n");
        note_file(report, path);
        write_checksum_manifest(cfg.out_dir, report.files_written);
        note_file(report, artifact(cfg, "manifest.txt"));
    }
    return report;
}

std::vector<std::string> emit_plots(const PipelineConfig& cfg) {
    std::vector<std::string> written;
    const auto scen_path = artifact(cfg, "scenario.json");
    const auto part_path = artifact(cfg, "partition.json");
    if (fs::exists(scen_path) && fs::exists(part_path)) {
        const auto s = read_scenario_file(scen_path);
        const auto partition = json::parse(read_text_file(part_path));
        const auto path = artifact(cfg, "erm_scatter.tsv");
        write_text_file(path, scatter_tsv(s, partition));
        written.push_back(path);
    }
    const auto dep_path = artifact(cfg, "deployment.json");
    if (fs::exists(dep_path)) {
        const auto dep = json::parse(read_text_file(dep_path));
        const auto path = artifact(cfg, "deployment.tsv");
        write_text_file(path, deployment_tsv(dep));
        written.push_back(path);
    }
    const auto front_path = artifact(cfg, "front.json");
    if (fs::exists(front_path)) {
        const auto front = json::parse(read_text_file(front_path));
        const auto path = artifact(cfg, "front.tsv");
        write_text_file(path, front_tsv(front));
        written.push_back(path);
    }
    return written;
}

} // namespace uwr
