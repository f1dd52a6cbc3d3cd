#ifndef DOUGHSLIT_DOUGH_MODEL_HPP
#define DOUGHSLIT_DOUGH_MODEL_HPP

#include <cmath>
#include <utility>
#include <vector>

#include "doughslit/error.hpp"

namespace doughslit::dough {

/// One Monte Carlo configuration: two mass weights and three force levels.
struct DoughEvent {
    int w_left = 1;
    int w_right = 1;
    int f_left = 1;
    int f_center = 1;
    int f_right = 1;

    bool operator==(const DoughEvent&) const = default;
};

inline std::pair<double, double> mass_split(int w_left, int w_right, double total_mass) {
    if (w_left < 1 || w_right < 1) throw InvalidParameter("mass weights must be at least 1");
    if (!(total_mass > 0.0)) throw InvalidParameter("total mass must be positive");
    const double sum = static_cast<double>(w_left + w_right);
    return {total_mass * w_left / sum, total_mass * w_right / sum};
}

inline std::pair<double, double> effective_forces(const DoughEvent& e) {
    return {static_cast<double>(e.f_left + e.f_center), static_cast<double>(e.f_right + e.f_center)};
}

/// Sum of both effective forces.
inline double total_force(const DoughEvent& e) {
    const auto [fl, fr] = effective_forces(e);
    return fl + fr;
}

/// Centre of mass of the two branches.
inline double merge_position(double m_left, double m_right, double y_left, double y_right) {
    if (m_left < 0.0 || m_right < 0.0) throw InvalidParameter("branch masses must be nonnegative");
    const double m = m_left + m_right;
    if (!(m > 0.0)) throw InvalidParameter("branch masses are both zero");
    return (m_left * y_left + m_right * y_right) / m;
}

/**
 * Position at integer step t for a body starting at y0 under acceleration a.
 * Before t_interact the motion is uniformly accelerated; from t_interact on
 * it continues with the fixed velocity t_interact * a.
 */
inline double position_at(double y0, double a, int t_interact, int t) {
    if (t < t_interact) return y0 + 0.5 * a * static_cast<double>(t) * static_cast<double>(t);
    const double tm1 = static_cast<double>(t_interact - 1);
    const double y_switch = y0 + 0.5 * a * tm1 * tm1;
    return y_switch + static_cast<double>(t_interact) * a * static_cast<double>(t - t_interact + 1);
}

struct Trajectory {
    std::vector<double> positions;  ///< Y(0) .. Y(T)
    double merge_y = 0.0;
    DoughEvent event;

    double arrival() const { return positions.back(); }
};

inline std::vector<double> trajectory_positions(double y0, double force, double mass, int t_interact, int total_steps) {
    if (!(mass > 0.0)) throw InvalidParameter("mass must be positive");
    if (t_interact < 1 || total_steps < t_interact) throw InvalidParameter("need 1 <= t_interact <= total_steps");
    const double a = force / mass;
    std::vector<double> y(static_cast<std::size_t>(total_steps) + 1);
    for (int t = 0; t <= total_steps; ++t) y[static_cast<std::size_t>(t)] = position_at(y0, a, t_interact, t);
    return y;
}

inline Trajectory trajectory(double merge_y, double total_force, double mass, int t_interact, int total_steps,
                             const DoughEvent& event = {}) {
    return {trajectory_positions(merge_y, total_force, mass, t_interact, total_steps), merge_y, event};
}

enum class RatioClass { Below, Equal, Above };

struct WorkEnergyRatio {
    double a = 0.0;  ///< dX dP / (hbar / 2)
    double b = 0.0;  ///< dE dT / (hbar / 2)
    double ratio = 0.0;
    RatioClass kind = RatioClass::Equal;
};

/// Ratio of slit work dW = (dP / dT) dX to the energy spread dE, with hbar = 1.
inline WorkEnergyRatio work_energy_ratio(double dx, double dp, double dt, double de) {
    if (!(dx > 0.0 && dp > 0.0 && dt > 0.0 && de > 0.0))
        throw InvalidParameter("uncertainties must be positive");
    constexpr double half_hbar = 0.5;
    WorkEnergyRatio r;
    r.a = dx * dp / half_hbar;
    r.b = de * dt / half_hbar;
    if (r.a < 1.0) throw InvalidParameter("position-momentum product violates the uncertainty bound");
    if (r.b < 1.0) throw InvalidParameter("energy-time product violates the uncertainty bound");
    r.ratio = r.a / r.b;
    if (std::abs(r.ratio - 1.0) <= 1e-12) r.kind = RatioClass::Equal;
    else r.kind = r.ratio < 1.0 ? RatioClass::Below : RatioClass::Above;
    return r;
}

}  // namespace doughslit::dough

#endif  // DOUGHSLIT_DOUGH_MODEL_HPP
