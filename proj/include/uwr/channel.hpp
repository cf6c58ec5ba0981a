#pragma once

#include <array>
#include <optional>

#include "uwr/core.hpp"

namespace uwr {

// One evaluated link. rx_power = tx_power / 10^(loss_db/10). `outage` is the
// probability the link fails to deliver the received-power threshold even at
// the type's power bound; it is the gate quantity of the detection and
// selection rules, independent of the operating tx_power.
struct LinkBudget {
    Link link = Link::UL;
    double loss_db = 0.0;
    double tx_power = 0.0;
    double rx_power = 0.0;
    double sinr = 0.0;
    double capacity = 0.0; // bits/s
    double outage = 1.0;
};

// Aggregate co-channel interference at the USV, one sum per link type
// (received powers of transmitters sharing that type, outage-gated).
struct InterferenceState {
    std::array<double, 3> watts{0.0, 0.0, 0.0};

    double of(Link l) const { return watts[static_cast<int>(l)]; }
    double& of(Link l) { return watts[static_cast<int>(l)]; }
};

// Optical LoS attenuation in dB. cos_theta is the receiver's elevation
// cosine off the transmitter's horizontal beam plane. Computed in the log
// domain so large d cannot underflow the gain. Throws OutOfBeamError when
// the receiver sits outside the divergence cone.
double pl_ul(double d, double cos_theta, const ChannelParams& p);

// Thorp absorption, dB/km; f in kHz.
double thorp_phi_db(double f_khz);

// Acoustic attenuation in dB: spreading + absorption.
double pl_ua(double d, double f_khz, double kappa);

// Ambient acoustic noise total: the four dB terms summed, then dB -> linear.
double ua_noise_total(double f_khz, double s, double w);
// The four components (turbulence, shipping, waves, thermal) in dB.
std::array<double, 4> ua_noise_terms_db(double f_khz, double s, double w);

// Conductive-medium RF attenuation in dB; linear in d.
double pl_rf(double d, double f_hz, const ChannelParams& p);

// Upper-tail standard normal probability.
double q_function(double x);

// Probability the (shadowed) received power falls below the threshold.
double outage_prob(double rx_power_w, const ChannelParams& p);

// Shannon capacity at the given operating point.
double capacity(double tx_power_w, double loss_db, double interference_w,
                const LinkParams& link, const ChannelParams& p);

// Minimum transmit power whose received power meets the threshold exactly;
// nullopt when that exceeds the type's power bound.
std::optional<double> prop1_power(double loss_db, const LinkParams& link,
                                  const ChannelParams& p);

// Path loss for a src -> dst pair on the given type; nullopt for an optical
// receiver outside the beam cone.
std::optional<double> pair_loss(Link l, const Point3& src, const Point3& dst,
                                const Scenario& s);

// Outage at the type's power bound for the given loss (the gate quantity).
double outage_at_bound(double loss_db, const LinkParams& link, const ChannelParams& p);

// Greedy per-pair selection: evaluates all three budgets at their Prop-1
// powers and returns the capacity maximizer (ties: lower tx power, then
// UL > RF > UA). nullopt when no type closes within its power bound.
std::optional<LinkBudget> best_link(const Point3& src, const Point3& dst,
                                    const InterferenceState& interf, const Scenario& s);

// Budget for a specific type at a specific operating power; nullopt when the
// geometry rules the type out (beam cone).
std::optional<LinkBudget> budget_at(Link l, const Point3& src, const Point3& dst,
                                    double tx_power_w, double interference_w,
                                    const Scenario& s);

// Co-type interference seen by node `i`: received powers of the other
// assigned transmitters sharing its type, counting only those whose outage
// passes the threshold gate. Contributors with no assignment are skipped.
double interference_for(std::size_t i,
                        const std::vector<std::optional<LinkBudget>>& assignments,
                        const ChannelParams& p);

} // namespace uwr
