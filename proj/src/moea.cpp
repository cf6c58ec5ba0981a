#include "uwr/moea.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "uwr/channel.hpp"
#include "uwr/errors.hpp"
#include "uwr/rng.hpp"

namespace uwr {

namespace {

// Smallest power at which some link type closes for the pair; +inf when none
// can (even at its bound).
double cheapest_requirement(const Scenario& s, const Point3& src, const Point3& dst) {
    double best = std::numeric_limits<double>::infinity();
    for (Link l : kAllLinks) {
        const auto loss = pair_loss(l, src, dst, s);
        if (!loss) continue;
        const auto p = prop1_power(*loss, s.link(l), s.channel);
        if (p) best = std::min(best, *p);
    }
    return best;
}

} // namespace

ObjectivePoint evaluate(const DecisionVector& x, const Scenario& s,
                        std::span<const std::size_t> isolated, VelocityMode mode) {
    ObjectivePoint f;
    const auto dep = deploy(s, isolated, x.x1, x.x2, mode);

    double violation = 0.0;
    double makespan = 0.0;
    double energy = 0.0;
    for (const auto& plan : dep.plans) {
        if (plan.feasible) {
            makespan = std::max(makespan, plan.t_r + plan.t_m);
            energy += plan.total_energy;
            if (plan.total_energy > s.auv_template.e_max)
                violation += plan.total_energy - s.auv_template.e_max;
        } else {
            // A plan that could not be built still charges its fixed terms and
            // counts as a violated energy constraint so the search can rank it.
            violation += s.auv_template.e_max;
        }
    }
    // Power constraint: every member must be reachable at x2.
    for (const auto& plan : dep.plans) {
        for (std::size_t m : plan.cluster.members) {
            const double need =
                cheapest_requirement(s, s.usns[m].pos, plan.cluster.centroid);
            if (std::isinf(need)) {
                violation += s.link(Link::UA).p_max_w;
            } else if (need > x.x2) {
                violation += need - x.x2;
            }
        }
    }

    f.f1 = makespan;
    f.f2 = energy;
    f.constraint_violation = violation;
    f.feasible = violation == 0.0;
    return f;
}

double tchebycheff(const ObjectivePoint& f, double lambda1, double lambda2,
                   double z1, double z2) {
    return std::max(lambda1 * std::abs(f.f1 - z1), lambda2 * std::abs(f.f2 - z2));
}

bool dominates(const ObjectivePoint& p, const ObjectivePoint& q) {
    return p.f1 <= q.f1 && p.f2 <= q.f2 && (p.f1 < q.f1 || p.f2 < q.f2);
}

namespace {

// Feasibility-first comparison for subproblem acceptance.
bool accepts(const ObjectivePoint& cand, const ObjectivePoint& incumbent,
             double g_cand, double g_inc) {
    if (cand.feasible && !incumbent.feasible) return true;
    if (!cand.feasible && incumbent.feasible) return false;
    if (!cand.feasible) return cand.constraint_violation <= incumbent.constraint_violation;
    return g_cand <= g_inc;
}

void archive_add(ParetoArchive& archive, const ArchiveEntry& e) {
    if (!e.f.feasible) return;
    for (const auto& have : archive.entries)
        if (dominates(have.f, e.f)) return;
    std::erase_if(archive.entries,
                  [&](const ArchiveEntry& have) { return dominates(e.f, have.f); });
    archive.entries.push_back(e);
}

} // namespace

ParetoArchive moead_run(const Scenario& s, std::span<const std::size_t> isolated,
                        const MoeadConfig& cfg) {
    if (isolated.empty()) throw Error("moead_run: empty isolated set");
    const int n_sub = std::max(2, cfg.subproblems);
    const int x1_max = static_cast<int>(isolated.size());
    Rng rng(s.seed, "moead");

    // Evenly spread weights on the 2-simplex.
    std::vector<std::pair<double, double>> lambda(n_sub);
    for (int i = 0; i < n_sub; ++i) {
        const double t = static_cast<double>(i) / (n_sub - 1);
        lambda[i] = {1.0 - t, t};
    }
    // T nearest neighbors by weight distance.
    const int t_size = std::clamp(cfg.neighborhood, 2, n_sub);
    std::vector<std::vector<int>> neighbors(n_sub);
    for (int i = 0; i < n_sub; ++i) {
        std::vector<std::pair<double, int>> by_dist;
        for (int j = 0; j < n_sub; ++j) {
            const double dl = lambda[i].first - lambda[j].first;
            by_dist.push_back({dl * dl, j});
        }
        std::sort(by_dist.begin(), by_dist.end());
        for (int k = 0; k < t_size; ++k) neighbors[i].push_back(by_dist[k].second);
    }

    auto repair = [&](DecisionVector v) {
        v.x1 = std::clamp(v.x1, 1, x1_max);
        v.x2 = std::clamp(v.x2, cfg.x2_min, cfg.x2_max);
        return v;
    };

    std::vector<DecisionVector> pop(n_sub);
    std::vector<ObjectivePoint> fv(n_sub);
    ParetoArchive archive;
    archive.z1 = std::numeric_limits<double>::infinity();
    archive.z2 = std::numeric_limits<double>::infinity();

    auto note = [&](const DecisionVector& x, const ObjectivePoint& f) {
        if (f.feasible) {
            archive.z1 = std::min(archive.z1, f.f1);
            archive.z2 = std::min(archive.z2, f.f2);
        }
        archive_add(archive, {x, f});
    };

    for (int i = 0; i < n_sub; ++i) {
        pop[i] = repair({1 + static_cast<int>(rng.next_below(static_cast<std::uint64_t>(x1_max))),
                         rng.uniform(cfg.x2_min, cfg.x2_max)});
        fv[i] = evaluate(pop[i], s, isolated, cfg.velocity_mode);
        note(pop[i], fv[i]);
    }

    for (int gen = 0; gen < cfg.generations; ++gen) {
        for (int i = 0; i < n_sub; ++i) {
            const auto& nb = neighbors[i];
            const int m = nb[static_cast<int>(rng.index(nb.size()))];
            const int n = nb[static_cast<int>(rng.index(nb.size()))];

            // Blend crossover on x2, uniform pick + random walk on x1.
            DecisionVector child;
            const double lo = std::min(pop[m].x2, pop[n].x2);
            const double hi = std::max(pop[m].x2, pop[n].x2);
            const double span = hi - lo;
            child.x2 = rng.uniform(lo - cfg.crossover_blend * span,
                                   hi + cfg.crossover_blend * span);
            child.x1 = rng.next_double() < 0.5 ? pop[m].x1 : pop[n].x1;
            if (rng.next_double() < cfg.mutation_prob)
                child.x1 += rng.next_double() < 0.5 ? -1 : 1;
            if (rng.next_double() < cfg.mutation_prob)
                child.x2 += rng.uniform(-0.1, 0.1) * (cfg.x2_max - cfg.x2_min);
            child = repair(child);

            const auto f = evaluate(child, s, isolated, cfg.velocity_mode);
            note(child, f);

            for (int k : nb) {
                const double g_cand =
                    tchebycheff(f, lambda[k].first, lambda[k].second, archive.z1, archive.z2);
                const double g_inc = tchebycheff(fv[k], lambda[k].first, lambda[k].second,
                                                 archive.z1, archive.z2);
                if (accepts(f, fv[k], g_cand, g_inc)) {
                    pop[k] = child;
                    fv[k] = f;
                }
            }
        }
    }
    return archive;
}

ArchiveEntry knee_select(const ParetoArchive& archive) {
    if (archive.entries.empty()) throw Error("knee_select: empty archive");
    double min1 = archive.entries[0].f.f1, max1 = min1;
    double min2 = archive.entries[0].f.f2, max2 = min2;
    for (const auto& e : archive.entries) {
        min1 = std::min(min1, e.f.f1);
        max1 = std::max(max1, e.f.f1);
        min2 = std::min(min2, e.f.f2);
        max2 = std::max(max2, e.f.f2);
    }
    const double r1 = max1 - min1, r2 = max2 - min2;

    const ArchiveEntry* best = nullptr;
    double best_score = -1.0;
    double best_f1 = 0.0;
    for (const auto& e : archive.entries) {
        const double u1 = r1 > 0.0 ? (max1 - e.f.f1) / r1 : 0.5;
        const double u2 = r2 > 0.0 ? (max2 - e.f.f2) / r2 : 0.5;
        const double denom = u1 + u2;
        double w1 = 0.5, w2 = 0.5;
        if (denom > 0.0) {
            w1 = u1 / denom;
            w2 = u2 / denom;
        }
        const double score = std::min(w1, w2);
        if (!best || score > best_score ||
            (score == best_score && e.f.f1 < best_f1)) {
            best = &e;
            best_score = score;
            best_f1 = e.f.f1;
        }
    }
    return *best;
}

ArchiveEntry energy_efficiency_select(const ParetoArchive& archive) {
    if (archive.entries.empty()) throw Error("energy_efficiency_select: empty archive");
    const ArchiveEntry* best = nullptr;
    double best_ratio = std::numeric_limits<double>::infinity();
    for (const auto& e : archive.entries) {
        if (e.f.f1 <= 0.0) throw Error("energy_efficiency_select: f1 must be > 0");
        const double ratio = e.f.f2 / e.f.f1;
        if (ratio < best_ratio) {
            best_ratio = ratio;
            best = &e;
        }
    }
    return *best;
}

std::vector<ArchiveEntry> filter_nondominated(std::span<const ArchiveEntry> pts) {
    std::vector<ArchiveEntry> out;
    for (const auto& p : pts) {
        bool dominated = false;
        for (const auto& q : pts) {
            if (dominates(q.f, p.f)) {
                dominated = true;
                break;
            }
        }
        if (!dominated) out.push_back(p);
    }
    return out;
}

std::vector<ArchiveEntry> brute_force_pareto(const Scenario& s,
                                             std::span<const std::size_t> isolated,
                                             std::span<const double> x2_levels,
                                             VelocityMode mode) {
    std::vector<ArchiveEntry> all;
    for (int x1 = 1; x1 <= static_cast<int>(isolated.size()); ++x1) {
        for (double x2 : x2_levels) {
            DecisionVector x{x1, x2};
            const auto f = evaluate(x, s, isolated, mode);
            if (f.feasible) all.push_back({x, f});
        }
    }
    return filter_nondominated(all);
}

double hypervolume(std::span<const ArchiveEntry> front, double ref1, double ref2) {
    std::vector<std::pair<double, double>> pts;
    for (const auto& e : front)
        if (e.f.f1 < ref1 && e.f.f2 < ref2) pts.push_back({e.f.f1, e.f.f2});
    if (pts.empty()) return 0.0;
    std::sort(pts.begin(), pts.end());
    double hv = 0.0;
    double prev_f2 = ref2;
    for (const auto& [f1, f2] : pts) {
        if (f2 >= prev_f2) continue; // dominated in the sweep
        hv += (ref1 - f1) * (prev_f2 - f2);
        prev_f2 = f2;
    }
    return hv;
}

} // namespace uwr
