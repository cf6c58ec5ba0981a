#include "uwr/channel.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "uwr/errors.hpp"

namespace uwr {

namespace {
constexpr double kLog10E = 0.43429448190325176; // log10(e)
}

double pl_ul(double d, double cos_theta, const ChannelParams& p) {
    if (d <= 0.0) throw Error("pl_ul: d must be > 0");
    if (cos_theta < std::cos(p.theta0_rad))
        throw OutOfBeamError("pl_ul: receiver outside divergence cone");
    if (cos_theta <= 0.0 || cos_theta > 1.0)
        throw Error("pl_ul: cos_theta must lie in (0, 1]");
    // attenuation = -10 log10( eta_t eta_r e^{-c d} A cos(theta)
    //                          / (2 pi d^2 (1 - cos(theta0))) )
    const double log_gain =
        std::log10(p.eta_t * p.eta_r * p.a_rec * cos_theta) - p.c_lambda * d * kLog10E -
        std::log10(2.0 * std::numbers::pi * d * d * (1.0 - std::cos(p.theta0_rad)));
    return -10.0 * log_gain;
}

double thorp_phi_db(double f_khz) {
    const double f2 = f_khz * f_khz;
    return 0.11 * f2 / (1.0 + f2) + 44.0 * f2 / (4100.0 + f2) + 2.75e-4 * f2 + 0.003;
}

double pl_ua(double d, double f_khz, double kappa) {
    if (d <= 0.0) throw Error("pl_ua: d must be > 0");
    return kappa * 10.0 * std::log10(d) + d / 1000.0 * thorp_phi_db(f_khz);
}

std::array<double, 4> ua_noise_terms_db(double f_khz, double s, double w) {
    const double lf = std::log10(f_khz);
    const double turbulence = 17.0 - 30.0 * lf;
    const double shipping =
        40.0 + 20.0 * (s - 0.5) + 26.0 * lf - 60.0 * std::log10(f_khz + 0.3);
    const double waves =
        50.0 + 7.5 * std::sqrt(w) + 20.0 * lf - 40.0 * std::log10(f_khz + 0.4);
    const double thermal = -15.0 + 20.0 * lf;
    return {turbulence, shipping, waves, thermal};
}

double ua_noise_total(double f_khz, double s, double w) {
    const auto t = ua_noise_terms_db(f_khz, s, w);
    return db_to_watts(t[0] + t[1] + t[2] + t[3]);
}

double pl_rf(double d, double f_hz, const ChannelParams& p) {
    if (d < 0.0) throw Error("pl_rf: d must be >= 0");
    return 8.686 * std::sqrt(std::numbers::pi * p.mu * f_hz * p.iota) * d;
}

double q_function(double x) { return 0.5 * std::erfc(x / std::numbers::sqrt2); }

double outage_prob(double rx_power_w, const ChannelParams& p) {
    if (rx_power_w <= 0.0) throw Error("outage_prob: rx_power must be > 0");
    const double rx_db = watts_to_db(rx_power_w);
    const double p_min_db = watts_to_db(p.p_min_w);
    return 1.0 - q_function((p_min_db - rx_db) / p.sigma_db);
}

double capacity(double tx_power_w, double loss_db, double interference_w,
                const LinkParams& link, const ChannelParams& p) {
    const double rx = tx_power_w / db_to_watts(loss_db);
    const double sinr = rx / (p.n0_w + interference_w);
    return link.bandwidth_hz * std::log2(1.0 + sinr);
}

std::optional<double> prop1_power(double loss_db, const LinkParams& link,
                                  const ChannelParams& p) {
    const double power = db_to_watts(watts_to_db(p.p_min_w) + loss_db);
    if (power > link.p_max_w) return std::nullopt;
    return power;
}

double outage_at_bound(double loss_db, const LinkParams& link, const ChannelParams& p) {
    return outage_prob(link.p_max_w / db_to_watts(loss_db), p);
}

std::optional<double> pair_loss(Link l, const Point3& src, const Point3& dst,
                                const Scenario& s) {
    const double d = distance(src, dst);
    // Near-field floor: the loss models are calibrated for d >= 1 m and all
    // increase with d there, so closer geometry evaluates at 1 m.
    const double d_eff = std::max(d, 1.0);
    switch (l) {
        case Link::UL: {
            const double cos_theta = d > 0.0 ? horizontal_distance(src, dst) / d : 1.0;
            if (cos_theta < std::cos(s.channel.theta0_rad) || cos_theta <= 0.0)
                return std::nullopt;
            return pl_ul(d_eff, cos_theta, s.channel);
        }
        case Link::UA:
            return pl_ua(d_eff, s.link(Link::UA).freq_hz / 1000.0, s.channel.kappa);
        case Link::RF:
            return pl_rf(d_eff, s.link(Link::RF).freq_hz, s.channel);
    }
    return std::nullopt;
}

std::optional<LinkBudget> budget_at(Link l, const Point3& src, const Point3& dst,
                                    double tx_power_w, double interference_w,
                                    const Scenario& s) {
    const auto loss = pair_loss(l, src, dst, s);
    if (!loss) return std::nullopt;
    LinkBudget b;
    b.link = l;
    b.loss_db = *loss;
    b.tx_power = tx_power_w;
    b.rx_power = tx_power_w / db_to_watts(*loss);
    b.sinr = b.rx_power / (s.channel.n0_w + interference_w);
    b.capacity = s.link(l).bandwidth_hz * std::log2(1.0 + b.sinr);
    b.outage = outage_at_bound(*loss, s.link(l), s.channel);
    return b;
}

std::optional<LinkBudget> best_link(const Point3& src, const Point3& dst,
                                    const InterferenceState& interf, const Scenario& s) {
    if (src == dst) throw Error("best_link: src == dst");
    std::optional<LinkBudget> best;
    // Fixed tie-break order: UL, then RF, then UA.
    for (Link l : {Link::UL, Link::RF, Link::UA}) {
        const auto loss = pair_loss(l, src, dst, s);
        if (!loss) continue;
        const auto power = prop1_power(*loss, s.link(l), s.channel);
        if (!power) continue;
        auto b = budget_at(l, src, dst, *power, interf.of(l), s);
        if (!b) continue;
        if (!best || b->capacity > best->capacity ||
            (b->capacity == best->capacity && b->tx_power < best->tx_power)) {
            best = *b;
        }
    }
    return best;
}

double interference_for(std::size_t i,
                        const std::vector<std::optional<LinkBudget>>& assignments,
                        const ChannelParams& p) {
    if (i >= assignments.size() || !assignments[i]) return 0.0;
    const Link mine = assignments[i]->link;
    double total = 0.0;
    for (std::size_t j = 0; j < assignments.size(); ++j) {
        if (j == i || !assignments[j]) continue;
        const auto& b = *assignments[j];
        if (b.link != mine) continue;
        if (!(b.outage < p.epsilon)) continue; // strict indicator gate
        total += b.rx_power;
    }
    return total;
}

} // namespace uwr
