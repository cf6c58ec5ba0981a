#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "uwr/deploy.hpp"

namespace uwr {

// Decision variables of the deployment tradeoff: AUV count and the shared
// transmit power of the isolated nodes.
struct DecisionVector {
    int x1 = 1;      // AUV count handed to the clustering stage
    double x2 = 0.0; // watts
};

struct ObjectivePoint {
    double f1 = 0.0; // makespan, s
    double f2 = 0.0; // total energy, J
    bool feasible = false;
    double constraint_violation = 0.0;
};

struct ArchiveEntry {
    DecisionVector x;
    ObjectivePoint f;
};

struct ParetoArchive {
    std::vector<ArchiveEntry> entries;
    double z1 = 0.0, z2 = 0.0; // reference point (per-objective minima seen)
};

struct MoeadConfig {
    int subproblems = 50;     // N
    int neighborhood = 10;    // T
    int generations = 100;
    double crossover_blend = 0.5; // BLX-alpha for x2
    double mutation_prob = 0.2;
    VelocityMode velocity_mode = VelocityMode::Verbatim;
    double x2_min = 0.0;
    double x2_max = 5.0;
};

// Objective evaluation: runs the deployment and folds per-member power
// shortfalls (g1) and per-AUV energy overruns (g2) into the violation.
ObjectivePoint evaluate(const DecisionVector& x, const Scenario& s,
                        std::span<const std::size_t> isolated, VelocityMode mode);

// Weighted max-deviation from the reference point (minimization form).
double tchebycheff(const ObjectivePoint& f, double lambda1, double lambda2,
                   double z1, double z2);

// true when p dominates q under minimization.
bool dominates(const ObjectivePoint& p, const ObjectivePoint& q);

ParetoArchive moead_run(const Scenario& s, std::span<const std::size_t> isolated,
                        const MoeadConfig& cfg);

// Balanced-weight knee: maximize the smaller of the two range-normalized
// weights; ties resolved by f1 order.
ArchiveEntry knee_select(const ParetoArchive& archive);

// Minimum f2/f1 ratio point.
ArchiveEntry energy_efficiency_select(const ParetoArchive& archive);

// Exhaustive reference front over x1 in [1, |isolated|] and the given x2
// levels; feasible, mutually non-dominated points only.
std::vector<ArchiveEntry> brute_force_pareto(const Scenario& s,
                                             std::span<const std::size_t> isolated,
                                             std::span<const double> x2_levels,
                                             VelocityMode mode);

std::vector<ArchiveEntry> filter_nondominated(std::span<const ArchiveEntry> pts);

// 2D hypervolume against the given reference point (minimization; points
// beyond the reference contribute nothing).
double hypervolume(std::span<const ArchiveEntry> front, double ref1, double ref2);

} // namespace uwr
