#include "uwr/core.hpp"

#include <algorithm>
#include <numbers>

#include "uwr/errors.hpp"
#include "uwr/rng.hpp"

namespace uwr {

double distance(const Point3& a, const Point3& b) {
    const double dx = a.x - b.x, dy = a.y - b.y, dz = a.z - b.z;
    return std::sqrt(dx * dx + dy * dy + dz * dz);
}

double horizontal_distance(const Point3& a, const Point3& b) {
    return std::hypot(a.x - b.x, a.y - b.y);
}

const char* link_name(Link l) {
    switch (l) {
        case Link::UL: return "UL";
        case Link::UA: return "UA";
        case Link::RF: return "RF";
    }
    return "?";
}

ChannelParams default_channel_params() {
    ChannelParams p;
    p.theta0_rad = 68.0 * std::numbers::pi / 180.0;
    p.p_min_w = p.n0_w * std::pow(10.0, 5.0 / 10.0); // threshold 5 dB over noise
    return p;
}

EnergyParams default_energy_params() { return EnergyParams{}; }

std::array<LinkParams, 3> default_link_params() {
    std::array<LinkParams, 3> links{};
    // Bandwidths are chosen to land the three types in their Gbps/kbps/Mbps
    // data-rate classes at threshold SINR.
    links[static_cast<int>(Link::UL)] = {1e13, 0.01, 2.25e8, 1e9};
    links[static_cast<int>(Link::UA)] = {20e3, 5.0, 1500.0, 1e4};
    links[static_cast<int>(Link::RF)] = {5e6, 5.0, 2.25e8, 1e6};
    return links;
}

Scenario generate_scenario(const ScenarioConfig& config, std::uint64_t seed) {
    if (config.usn_count < 1)
        throw InvalidConfigError("usn_count must be >= 1");
    if (config.box_x <= 0 || config.box_y <= 0 || config.box_depth <= 0)
        throw InvalidConfigError("box dimensions must be positive");
    if (config.packet_bits <= 0)
        throw InvalidConfigError("packet_bits must be positive");

    Scenario s;
    s.seed = seed;
    s.box_x = config.box_x;
    s.box_y = config.box_y;
    s.box_depth = config.box_depth;
    s.n_max = config.n_max;
    s.links = default_link_params();
    s.channel = default_channel_params();
    s.channel.p_min_w = s.channel.n0_w * db_to_watts(config.p_min_db_over_n0);
    s.channel.gamma = config.gamma;
    s.channel.epsilon = config.epsilon;
    s.channel.sigma_db = config.sigma_db;
    s.energy = default_energy_params();
    s.auv_template = AuvNode{0, Point3{}, config.v_max, config.e_max};

    if (config.usv_at_center) {
        s.usv.pos = {config.box_x / 2.0, config.box_y / 2.0, 0.0};
    } else {
        s.usv.pos = {config.usv_pos.x, config.usv_pos.y, 0.0};
    }

    Rng rng(seed, "scenario");
    s.usns.reserve(static_cast<std::size_t>(config.usn_count));
    for (int i = 0; i < config.usn_count; ++i) {
        UsnNode n;
        n.id = i;
        n.pos.x = rng.uniform(0.0, config.box_x);
        n.pos.y = rng.uniform(0.0, config.box_y);
        n.pos.z = -config.box_depth + config.box_depth * rng.next_double(); // [-depth, 0)
        n.packet_bits = config.packet_bits;
        s.usns.push_back(n);
    }
    return s;
}

namespace {

void check(std::vector<Violation>& out, bool ok, std::string field, std::string msg) {
    if (!ok) out.push_back({std::move(field), std::move(msg)});
}

} // namespace

std::vector<Violation> validate_scenario(const Scenario& s) {
    std::vector<Violation> v;
    check(v, !s.usns.empty(), "usns", "at least one USN required");

    std::vector<int> ids;
    for (const auto& n : s.usns) {
        const std::string tag = "usn[" + std::to_string(n.id) + "]";
        check(v, std::isfinite(n.pos.x) && std::isfinite(n.pos.y), tag + ".pos",
              "x, y must be finite");
        check(v, n.pos.z <= 0.0 && n.pos.z >= -s.energy.d_max, tag + ".pos.z",
              "z must lie in [-D_max, 0]");
        check(v, n.pos.x >= 0.0 && n.pos.x <= s.box_x && n.pos.y >= 0.0 && n.pos.y <= s.box_y,
              tag + ".pos", "position outside configured box");
        check(v, n.packet_bits > 0.0, tag + ".packet_bits", "packet size must be > 0");
        ids.push_back(n.id);
    }
    std::sort(ids.begin(), ids.end());
    check(v, std::adjacent_find(ids.begin(), ids.end()) == ids.end(), "usns",
          "node ids must be unique");

    check(v, s.auv_template.v_max > 0.0, "auv.v_max", "must be > 0");
    check(v, s.auv_template.e_max > 0.0, "auv.e_max", "must be > 0");
    check(v, s.usv.pos.z == 0.0, "usv.pos.z", "USV must sit exactly at the surface (z = 0)");

    const auto& ul = s.link(Link::UL);
    const auto& ua = s.link(Link::UA);
    const auto& rf = s.link(Link::RF);
    check(v, ua.prop_speed == 1500.0, "links.ua.prop_speed", "must be 1500 m/s");
    check(v, ul.prop_speed == 2.25e8, "links.ul.prop_speed", "must be 2.25e8 m/s");
    check(v, rf.prop_speed == 2.25e8, "links.rf.prop_speed", "must be 2.25e8 m/s");
    for (Link l : kAllLinks) {
        const std::string tag = std::string("links.") + link_name(l);
        check(v, s.link(l).p_max_w > 0.0, tag + ".p_max_w", "must be > 0");
        check(v, s.link(l).freq_hz > 0.0, tag + ".freq_hz", "must be > 0");
        check(v, s.link(l).bandwidth_hz > 0.0, tag + ".bandwidth_hz", "must be > 0");
    }

    const auto& c = s.channel;
    check(v, c.kappa >= 1.0 && c.kappa <= 2.0, "channel.kappa",
          "spreading coefficient must lie in [1,2]");
    check(v, c.s >= 0.0 && c.s <= 1.0, "channel.s", "shipping factor must lie in [0,1]");
    check(v, c.epsilon > 0.0 && c.epsilon < 1.0, "channel.epsilon", "must lie in (0,1)");
    check(v, c.eta_t > 0.0 && c.eta_r > 0.0, "channel.eta", "efficiencies must be > 0");
    check(v, c.c_lambda > 0.0, "channel.c_lambda", "must be > 0");
    check(v, c.a_rec > 0.0, "channel.a_rec", "must be > 0");
    check(v, c.theta0_rad > 0.0, "channel.theta0_rad", "must be > 0");
    check(v, c.w >= 0.0, "channel.w", "wind speed must be >= 0");
    check(v, c.mu > 0.0 && c.iota > 0.0, "channel.mu_iota", "must be > 0");
    check(v, c.n0_w > 0.0, "channel.n0_w", "must be > 0");
    check(v, c.sigma_db > 0.0, "channel.sigma_db", "must be > 0");
    check(v, c.p_min_w > 0.0, "channel.p_min_w", "must be > 0");
    check(v, c.gamma > 0.0, "channel.gamma", "must be > 0");

    const auto& e = s.energy;
    check(v, e.rho > 0.0 && e.m_b > 0.0 && e.g > 0.0 && e.d_max > 0.0 && e.p0 > 0.0 &&
              e.m_l > 0.0 && e.a_l > 0.0 && e.a_s > 0.0 && e.a_e > 0.0 &&
              e.e_r_per_bit >= 0.0,
          "energy", "physical quantities must be positive");
    check(v, e.eta_b > 0.0 && e.eta_b <= 1.0 && e.eta_l > 0.0 && e.eta_l <= 1.0 &&
              e.eta_s > 0.0 && e.eta_s <= 1.0,
          "energy.eta", "efficiencies must lie in (0,1]");

    check(v, s.n_max >= 1, "run.n_max", "per-AUV capacity must be >= 1");
    return v;
}

} // namespace uwr
