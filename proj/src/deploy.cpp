#include "uwr/deploy.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>

#include "uwr/channel.hpp"
#include "uwr/errors.hpp"
#include "uwr/rng.hpp"

namespace uwr {

namespace {
double integral_part(double x) { return std::floor(x); }
double remainder_part(double x) { return x - std::floor(x); }
} // namespace

double energy_buoyancy(double depth_abs, const EnergyParams& p) {
    if (depth_abs < 0.0) throw Error("energy_buoyancy: depth must be >= 0");
    if (depth_abs > p.d_max)
        throw DepthExceededError("energy_buoyancy: depth exceeds rated maximum");
    const double x = depth_abs / (2.0 * p.d_max);
    return 2.0 * p.m_b / (p.eta_b * p.rho) *
           (integral_part(x) * p.rho * p.g * p.d_max +
            p.rho * p.g * remainder_part(x) * p.d_max + integral_part(x) * p.p0);
}

double energy_linear(double d_j0, double cos_theta, double depth_abs,
                     const EnergyParams& p) {
    if (d_j0 < 0.0) throw Error("energy_linear: distance must be >= 0");
    const double x = depth_abs / (2.0 * p.d_max);
    const double reach = d_j0 * cos_theta;
    return (2.0 * integral_part(x) + 1.0) * p.m_l * p.a_l * p.a_l * reach * reach *
           reach * reach / p.eta_l;
}

double energy_rotation(double psi0, double psi1, const EnergyParams& p) {
    const double d = psi1 - psi0;
    return p.a_s * p.a_s * d * d * d * d / (2.0 * p.eta_s);
}

double energy_electronic(double d_j0, double v, const EnergyParams& p) {
    if (v <= 0.0) throw ZeroVelocityError("energy_electronic: velocity must be > 0");
    return p.a_e * d_j0 / v;
}

double lloyd_objective(std::span<const Point3> points,
                       const std::vector<Cluster>& clusters) {
    double total = 0.0;
    for (const auto& c : clusters) {
        for (std::size_t m : c.members) {
            const double dx = points[m].x - c.centroid.x;
            const double dy = points[m].y - c.centroid.y;
            total += dx * dx + dy * dy;
        }
    }
    return total;
}

namespace {

double sq_h(const Point3& a, const Point3& b) {
    const double dx = a.x - b.x, dy = a.y - b.y;
    return dx * dx + dy * dy;
}

// Farthest-point seeding: first centroid random, each next one maximizes the
// horizontal distance to the chosen set (deterministic tie-break by index).
std::vector<Point3> seed_centroids(std::span<const Point3> points, int k, Rng& rng) {
    std::vector<Point3> seeds;
    seeds.reserve(static_cast<std::size_t>(k));
    seeds.push_back(points[rng.index(points.size())]);
    std::vector<double> dist2(points.size());
    while (static_cast<int>(seeds.size()) < k) {
        std::size_t far = 0;
        double far_d = -1.0;
        for (std::size_t i = 0; i < points.size(); ++i) {
            double best = std::numeric_limits<double>::infinity();
            for (const auto& c : seeds) best = std::min(best, sq_h(points[i], c));
            dist2[i] = best;
            if (best > far_d) {
                far_d = best;
                far = i;
            }
        }
        seeds.push_back(points[far]);
    }
    return seeds;
}

// One Lloyd run at fixed k. Returns clusters with capacity possibly violated;
// the caller adapts k.
std::vector<Cluster> lloyd(std::span<const Point3> points, int k, Rng& rng) {
    auto centroids = seed_centroids(points, k, rng);
    std::vector<std::size_t> assign(points.size(), 0);
    bool changed = true;
    int guard = 0;
    while (changed && guard++ < 1000) {
        changed = false;
        for (std::size_t i = 0; i < points.size(); ++i) {
            std::size_t best = 0;
            double best_d = sq_h(points[i], centroids[0]);
            for (std::size_t c = 1; c < centroids.size(); ++c) {
                const double d = sq_h(points[i], centroids[c]);
                if (d < best_d) {
                    best_d = d;
                    best = c;
                }
            }
            if (best != assign[i]) {
                assign[i] = best;
                changed = true;
            }
        }
        std::vector<double> sx(centroids.size(), 0.0), sy(centroids.size(), 0.0);
        std::vector<std::size_t> count(centroids.size(), 0);
        for (std::size_t i = 0; i < points.size(); ++i) {
            sx[assign[i]] += points[i].x;
            sy[assign[i]] += points[i].y;
            ++count[assign[i]];
        }
        for (std::size_t c = 0; c < centroids.size(); ++c) {
            if (count[c] == 0) continue; // empty cluster keeps its centroid
            centroids[c].x = sx[c] / static_cast<double>(count[c]);
            centroids[c].y = sy[c] / static_cast<double>(count[c]);
        }
    }

    std::vector<Cluster> clusters(centroids.size());
    for (std::size_t c = 0; c < centroids.size(); ++c) clusters[c].centroid = centroids[c];
    for (std::size_t i = 0; i < points.size(); ++i)
        clusters[assign[i]].members.push_back(i);
    // Drop empties, set z to the member mean depth.
    std::vector<Cluster> out;
    for (auto& c : clusters) {
        if (c.members.empty()) continue;
        double z = 0.0;
        for (std::size_t m : c.members) z += points[m].z;
        c.centroid.z = z / static_cast<double>(c.members.size());
        out.push_back(std::move(c));
    }
    return out;
}

} // namespace

std::vector<Cluster> akmc(std::span<const Point3> points, int k_init, int n_max,
                          std::uint64_t seed, std::uint64_t salt) {
    if (points.empty()) throw Error("akmc: empty point set");
    if (n_max < 1) throw Error("akmc: n_max must be >= 1");
    int k = std::clamp(k_init, 1, static_cast<int>(points.size()));
    for (;;) {
        Rng rng(seed, "akmc", salt * 1000003ULL + static_cast<std::uint64_t>(k));
        auto clusters = lloyd(points, k, rng);
        const bool over = std::any_of(clusters.begin(), clusters.end(), [&](const Cluster& c) {
            return static_cast<int>(c.members.size()) > n_max;
        });
        if (!over) return clusters;
        if (k >= static_cast<int>(points.size())) {
            // Coincident points can defeat splitting; serve them one per AUV.
            std::vector<Cluster> singles;
            for (std::size_t i = 0; i < points.size(); ++i)
                singles.push_back({points[i], {i}});
            return singles;
        }
        ++k;
    }
}

double optimal_velocity(double d_j0, double fixed_energy, const EnergyParams& p,
                        double v_max, double e_max, VelocityMode mode) {
    if (fixed_energy >= e_max)
        throw EnergyExhaustedError("optimal_velocity: fixed energy consumes the budget");
    double v;
    if (d_j0 <= 0.0) {
        v = v_max;
    } else if (mode == VelocityMode::Verbatim) {
        v = std::min(p.a_e * d_j0 / (e_max - fixed_energy), v_max);
    } else {
        // Electronics energy falls with speed, so the budget bounds v from
        // below; the time-optimal feasible choice is the cap.
        v = v_max;
    }
    if (fixed_energy + energy_electronic(d_j0, v_max, p) > e_max)
        throw EnergyExhaustedError("optimal_velocity: budget violated even at v_max");
    return v;
}

CollectionResult time_collect(const Cluster& cluster, std::span<const UsnNode> nodes,
                              const Point3& auv_pos, double x2, const Scenario& s) {
    if (cluster.members.empty()) throw Error("time_collect: empty cluster");
    CollectionResult res;
    for (std::size_t m : cluster.members) {
        const auto& node = nodes[m];
        // Best admissible link at the shared member power: the type's bound
        // must admit x2 and the received power must meet the threshold.
        std::optional<LinkBudget> best;
        for (Link l : {Link::UL, Link::RF, Link::UA}) {
            if (x2 > s.link(l).p_max_w) continue;
            auto b = budget_at(l, node.pos, auv_pos, x2, 0.0, s);
            if (!b || b->rx_power < s.channel.p_min_w) continue;
            if (!best || b->capacity > best->capacity) best = *b;
        }
        if (!best)
            throw InfeasibleLinkError("time_collect: node " + std::to_string(node.id) +
                                      " closes no link at the given power");
        const double d = distance(node.pos, auv_pos);
        res.t_r += node.packet_bits / best->capacity + d / s.link(best->link).prop_speed;
        res.e_r += s.energy.e_r_per_bit * node.packet_bits;
        res.member_links.push_back(best->link);
        res.member_caps.push_back(best->capacity);
    }
    return res;
}

double time_motion(const Point3& auv_pos, const Usv& usv, double v) {
    if (v <= 0.0) throw ZeroVelocityError("time_motion: velocity must be > 0");
    return distance(auv_pos, usv.pos) / v;
}

Deployment deploy(const Scenario& s, std::span<const std::size_t> isolated,
                  int x1, double x2, VelocityMode mode) {
    if (isolated.empty()) throw Error("deploy: empty isolated set");
    std::vector<Point3> pts;
    pts.reserve(isolated.size());
    for (std::size_t i : isolated) pts.push_back(s.usns[i].pos);

    auto clusters = akmc(pts, x1, s.n_max, s.seed, /*salt=*/static_cast<std::uint64_t>(x1));

    Deployment dep;
    dep.clusters_used = static_cast<int>(clusters.size());
    int auv_id = 0;
    for (auto& c : clusters) {
        AuvPlan plan;
        plan.auv_id = auv_id++;
        // Remap members to scenario node indices.
        Cluster mapped;
        mapped.centroid = c.centroid;
        for (std::size_t m : c.members) mapped.members.push_back(isolated[m]);
        plan.cluster = mapped;

        const double depth = std::abs(c.centroid.z);
        const double d_j0 = distance(c.centroid, s.usv.pos);
        const double horiz = horizontal_distance(c.centroid, s.usv.pos);
        const double cos_glide = d_j0 > 0.0 ? horiz / d_j0 : 1.0;
        // Outbound heading vs return heading: a half-turn unless the transit
        // is purely vertical.
        const double dpsi = horiz > 1e-9 ? std::numbers::pi : 0.0;

        try {
            CollectionResult col;
            {
                std::vector<UsnNode> members;
                members.reserve(c.members.size());
                for (std::size_t m : c.members) members.push_back(s.usns[isolated[m]]);
                Cluster dense{c.centroid, {}};
                for (std::size_t m = 0; m < members.size(); ++m) dense.members.push_back(m);
                col = time_collect(dense, members, c.centroid, x2, s);
            }
            plan.t_r = col.t_r;
            plan.e_r = col.e_r;
            plan.e_b = energy_buoyancy(depth, s.energy);
            plan.e_l = energy_linear(d_j0, cos_glide, depth, s.energy);
            plan.e_s = energy_rotation(0.0, dpsi, s.energy);
            const double fixed = plan.e_r + plan.e_b + plan.e_l + plan.e_s;
            plan.velocity = optimal_velocity(d_j0, fixed, s.energy, s.auv_template.v_max,
                                             s.auv_template.e_max, mode);
            plan.e_e = energy_electronic(d_j0, plan.velocity, s.energy);
            plan.t_m = time_motion(c.centroid, s.usv, plan.velocity);
            plan.total_energy = plan.e_r + plan.e_b + plan.e_l + plan.e_s + plan.e_e;
            if (plan.total_energy > s.auv_template.e_max * (1.0 + 1e-12)) {
                plan.feasible = false;
                plan.infeasible_reason = "energy budget exceeded";
            }
        } catch (const Error& e) {
            plan.feasible = false;
            plan.infeasible_reason = e.what();
        }
        dep.plans.push_back(std::move(plan));
    }
    return dep;
}

} // namespace uwr
