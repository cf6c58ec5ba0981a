#pragma once

#include <array>
#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

namespace uwr {

// Sea surface is z = 0; everything underwater has z <= 0. Formulas that
// need a depth magnitude take |z| at the call site.
struct Point3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    friend bool operator==(const Point3&, const Point3&) = default;
};

double distance(const Point3& a, const Point3& b);
double horizontal_distance(const Point3& a, const Point3& b);

struct UsnNode {
    int id = 0;
    Point3 pos;
    double packet_bits = 1e6; // p in the collection-time model
};

struct AuvNode {
    int id = 0;
    Point3 pos;
    double v_max = 1.0;   // m/s
    double e_max = 5e9;   // J, per-vehicle energy budget
};

struct Usv {
    Point3 pos; // z must be exactly 0
};

enum class Link : int { UL = 0, UA = 1, RF = 2 };
constexpr std::array<Link, 3> kAllLinks{Link::UL, Link::UA, Link::RF};
const char* link_name(Link l);

// Per-type radio/acoustic/optical constants.
struct LinkParams {
    double freq_hz = 0.0;     // carrier frequency
    double p_max_w = 0.0;     // transmit power bound
    double prop_speed = 0.0;  // omega, m/s
    double bandwidth_hz = 0.0;
};

struct ChannelParams {
    double eta_t = 0.9;        // optical transmitter efficiency
    double eta_r = 0.9;        // optical receiver efficiency
    double c_lambda = 0.1514;  // extinction coefficient a(l)+b(l), 1/m
    double a_rec = 0.01;       // receiver aperture, m^2
    double theta0_rad = 0.0;   // beam divergence half-angle
    double kappa = 1.5;        // acoustic spreading, in [1,2]
    double s = 0.5;            // shipping factor, in [0,1]
    double w = 0.5;            // wind speed, m/s
    double mu = 1.256e-6;      // permeability, H/m
    double iota = 0.01;        // conductivity, S/m
    double n0_w = 1e-16;       // noise power, W (-130 dBm)
    double sigma_db = 4.0;     // shadowing std, dB
    double p_min_w = 0.0;      // received-power threshold, W
    double epsilon = 0.01;     // outage threshold
    double gamma = 0.1;        // SINR threshold
};

struct EnergyParams {
    double rho = 1027.0;     // seawater density, kg/m^3
    double eta_b = 0.7;      // buoyancy engine efficiency
    double m_b = 0.494;      // net buoyancy mass, kg
    double g = 9.8;          // m/s^2
    double d_max = 200.0;    // maximum depth, m
    double p0 = 101325.0;    // atmospheric pressure, Pa
    double m_l = 11.0;       // movable block mass, kg
    double a_l = 0.1;        // linear system constant
    double eta_l = 0.85;     // linear system efficiency
    double a_s = 1.0;        // rotational system constant
    double eta_s = 0.85;     // rotational system efficiency
    double a_e = 1.5;        // electronic system constant
    double e_r_per_bit = 1e-7; // collection-side energy, J/bit
};

struct Scenario {
    std::vector<UsnNode> usns;
    AuvNode auv_template;
    Usv usv;
    std::array<LinkParams, 3> links{}; // indexed by Link
    ChannelParams channel;
    EnergyParams energy;
    std::uint64_t seed = 1;
    int n_max = 15; // per-AUV serving capacity
    // Box the nodes were drawn in; kept for validation and plotting.
    double box_x = 500.0, box_y = 500.0, box_depth = 200.0;

    const LinkParams& link(Link l) const { return links[static_cast<int>(l)]; }
    friend bool operator==(const Scenario&, const Scenario&) = default;
};

inline bool operator==(const UsnNode& a, const UsnNode& b) {
    return a.id == b.id && a.pos == b.pos && a.packet_bits == b.packet_bits;
}
inline bool operator==(const AuvNode& a, const AuvNode& b) {
    return a.id == b.id && a.pos == b.pos && a.v_max == b.v_max && a.e_max == b.e_max;
}
inline bool operator==(const Usv& a, const Usv& b) { return a.pos == b.pos; }
inline bool operator==(const LinkParams& a, const LinkParams& b) {
    return a.freq_hz == b.freq_hz && a.p_max_w == b.p_max_w &&
           a.prop_speed == b.prop_speed && a.bandwidth_hz == b.bandwidth_hz;
}
inline bool operator==(const ChannelParams& a, const ChannelParams& b) {
    return a.eta_t == b.eta_t && a.eta_r == b.eta_r && a.c_lambda == b.c_lambda &&
           a.a_rec == b.a_rec && a.theta0_rad == b.theta0_rad && a.kappa == b.kappa &&
           a.s == b.s && a.w == b.w && a.mu == b.mu && a.iota == b.iota &&
           a.n0_w == b.n0_w && a.sigma_db == b.sigma_db && a.p_min_w == b.p_min_w &&
           a.epsilon == b.epsilon && a.gamma == b.gamma;
}
inline bool operator==(const EnergyParams& a, const EnergyParams& b) {
    return a.rho == b.rho && a.eta_b == b.eta_b && a.m_b == b.m_b && a.g == b.g &&
           a.d_max == b.d_max && a.p0 == b.p0 && a.m_l == b.m_l && a.a_l == b.a_l &&
           a.eta_l == b.eta_l && a.a_s == b.a_s && a.eta_s == b.eta_s &&
           a.a_e == b.a_e && a.e_r_per_bit == b.e_r_per_bit;
}

// Generation request. Defaults reproduce the reference parameter table.
struct ScenarioConfig {
    int usn_count = 100;
    double box_x = 500.0;
    double box_y = 500.0;
    double box_depth = 200.0;
    double packet_bits = 1e6;
    bool usv_at_center = true;
    Point3 usv_pos{}; // used when usv_at_center is false (z forced to 0)
    double p_min_db_over_n0 = 5.0;
    double gamma = 0.1;
    double epsilon = 0.01;
    double sigma_db = 4.0;
    int n_max = 15;
    double v_max = 1.0;
    double e_max = 5e9;
};

ChannelParams default_channel_params();
EnergyParams default_energy_params();
std::array<LinkParams, 3> default_link_params();

// Deterministic in (config, seed). Positions are uniform in the box with
// z in [-depth, 0).
Scenario generate_scenario(const ScenarioConfig& config, std::uint64_t seed);

struct Violation {
    std::string field;
    std::string message;
};

// Violations are data, not faults; empty result means all invariants hold.
std::vector<Violation> validate_scenario(const Scenario& s);

// dB <-> linear power helpers (dB re 1 W).
inline double watts_to_db(double w) { return 10.0 * std::log10(w); }
inline double db_to_watts(double db) { return std::pow(10.0, db / 10.0); }

} // namespace uwr
