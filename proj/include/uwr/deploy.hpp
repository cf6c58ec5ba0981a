#pragma once

#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "uwr/core.hpp"

namespace uwr {

// Buoyancy-system energy for one descent/ascent to the given depth.
// Linear in depth while the depth stays within the rated maximum.
double energy_buoyancy(double depth_abs, const EnergyParams& p);

// Linear-propulsion energy; quartic in the horizontal projection
// d_j0 * cos(theta) of the transit.
double energy_linear(double d_j0, double cos_theta, double depth_abs,
                     const EnergyParams& p);

// Rotational energy for a heading change from psi0 to psi1.
double energy_rotation(double psi0, double psi1, const EnergyParams& p);

// Electronics draw over the transit, inversely proportional to velocity.
double energy_electronic(double d_j0, double v, const EnergyParams& p);

struct Cluster {
    Point3 centroid; // AUV suspension position (z = member mean depth)
    std::vector<std::size_t> members; // indices into the point set
};

// Adaptive capacity-bounded k-means on the horizontal plane: Lloyd
// iterations with farthest-point seeding; whenever a cluster exceeds n_max
// members the cluster count is incremented and clustering restarts. Returns
// clusters that all respect the capacity. k never exceeds the point count.
std::vector<Cluster> akmc(std::span<const Point3> points, int k_init, int n_max,
                          std::uint64_t seed, std::uint64_t salt = 0);

// Sum of squared horizontal distances to assigned centroids.
double lloyd_objective(std::span<const Point3> points,
                       const std::vector<Cluster>& clusters);

enum class VelocityMode { Verbatim, Corrected };

// Closed-form transit velocity. Verbatim mode applies the published law
// min{a_E d / (E_max - fixed), v_max}; corrected mode returns v_max whenever
// the energy budget admits it (the electronics term falls with speed, so the
// energy constraint bounds velocity from below). Both modes verify the
// energy budget post-hoc and throw EnergyExhaustedError when even v_max
// cannot satisfy it.
double optimal_velocity(double d_j0, double fixed_energy, const EnergyParams& p,
                        double v_max, double e_max, VelocityMode mode);

struct CollectionResult {
    double t_r = 0.0; // transmission + propagation time over all members
    double e_r = 0.0; // collection-side energy
    std::vector<Link> member_links;
    std::vector<double> member_caps;
};

// Per-cluster collection accounting: every member transmits its packet to
// the AUV at power x2 over its best admissible link.
CollectionResult time_collect(const Cluster& cluster, std::span<const UsnNode> nodes,
                              const Point3& auv_pos, double x2, const Scenario& s);

double time_motion(const Point3& auv_pos, const Usv& usv, double v);

struct AuvPlan {
    int auv_id = 0;
    Cluster cluster;
    double velocity = 0.0;
    double t_r = 0.0;
    double t_m = 0.0;
    double e_r = 0.0, e_b = 0.0, e_l = 0.0, e_s = 0.0, e_e = 0.0;
    double total_energy = 0.0;
    bool feasible = true;
    std::string infeasible_reason;
};

struct Deployment {
    std::vector<AuvPlan> plans;
    int clusters_used = 0; // after capacity adaptation
};

// Full deployment of the isolated set: cluster, position, per-AUV times,
// energies, and velocity. Infeasible plans are reported, not dropped.
Deployment deploy(const Scenario& s, std::span<const std::size_t> isolated,
                  int x1, double x2, VelocityMode mode = VelocityMode::Verbatim);

} // namespace uwr
