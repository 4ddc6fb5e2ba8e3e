#include "irsim/scenario.hpp"

#include <cmath>

#include "irsim/errors.hpp"

namespace irsim {

void scenario_config::validate() const {
    auto fail = [](const std::string &msg) { throw config_error(config_error::kind::constraint, msg); };
    if (!(radio.carrier_frequency_hz > 0.0))
        fail("radio.carrier_frequency_ghz must be positive");
    if (!(radio.bandwidth_hz > 0.0))
        fail("radio.bandwidth_mhz must be positive");
    if (radio.num_ap_antennas < 1)
        fail("radio.ap_antennas must be at least 1");
    if (k_users < 1)
        fail("network.k_users must be at least 1");
    if (l_irs < k_users)
        fail("network.l_irs must be at least network.k_users (one-to-one matching)");
    if (k_users > radio.num_ap_antennas)
        fail("network.k_users must not exceed radio.ap_antennas (zero-forcing needs K <= N)");
    if (!(area_side_m > 0.0))
        fail("network.area_side_m must be positive");
    if (user_height_m < 0.0 || ap_height_m < 0.0)
        fail("heights must be non-negative");
    if (reflectors_per_side < 1)
        fail("irs.reflectors_per_side must be at least 1");
    if (!(tirs_height_m >= 0.0) || !(airs_altitude_m >= 0.0))
        fail("surface heights must be non-negative");
    if (!tirs_positions.empty() && static_cast<int>(tirs_positions.size()) != l_irs - 1)
        fail("irs.tirs_positions must list exactly network.l_irs - 1 panels when given");
    if (trials < 1)
        fail("sim.trials must be at least 1");
    if (max_iters < 1)
        fail("sim.max_iters must be at least 1");
}

const char *to_string(sweep_variable v) {
    switch (v) {
    case sweep_variable::none:
        return "none";
    case sweep_variable::ap_power_dbm:
        return "ap_power_dbm";
    case sweep_variable::reflectors_per_side:
        return "reflectors_per_side";
    case sweep_variable::area_side_m:
        return "area_side_m";
    }
    return "?";
}

void sweep_spec::validate() const {
    base.validate();
    if (variable == sweep_variable::none)
        throw config_error(config_error::kind::constraint, "sweep.variable is not set");
    if (values.empty())
        throw config_error(config_error::kind::constraint, "sweep.values must be non-empty");
    for (size_t i = 0; i < values.size(); ++i) {
        if (i > 0 && !(values[i] > values[i - 1]))
            throw config_error(config_error::kind::constraint, "sweep.values must be strictly increasing");
        if (variable == sweep_variable::reflectors_per_side &&
            (values[i] < 1.0 || values[i] != std::floor(values[i])))
            throw config_error(config_error::kind::constraint,
                               "sweep.values must be positive integers for reflectors_per_side");
        if (variable != sweep_variable::reflectors_per_side && !(values[i] > 0.0))
            throw config_error(config_error::kind::constraint, "sweep.values must be positive");
    }
}

network_geometry build_geometry(const scenario_config &config) {
    config.validate();
    const double side = config.area_side_m;
    const double spacing = 0.5 * config.radio.wavelength_m();
    const int m = config.reflectors_per_side;

    network_geometry geom;
    geom.ap = {0.5 * side, 0.0, config.ap_height_m};
    geom.users.assign(static_cast<size_t>(config.k_users), position{0.5 * side, 0.5 * side, config.user_height_m});

    const int num_tirs = config.l_irs - 1;
    std::vector<position> tirs = config.tirs_positions;
    if (tirs.empty() && num_tirs > 0) {
        // Walk the east -> north -> west perimeter walls at even spacing.
        for (int i = 0; i < num_tirs; ++i) {
            const double t = (i + 0.5) / num_tirs * 3.0 * side;
            position p;
            if (t < side)
                p = {side, t, config.tirs_height_m};
            else if (t < 2.0 * side)
                p = {side - (t - side), side, config.tirs_height_m};
            else
                p = {0.0, side - (t - 2.0 * side), config.tirs_height_m};
            tirs.push_back(p);
        }
    }
    for (const auto &p : tirs) {
        irs_panel panel = make_panel(irs_tier::terrestrial, m, m, spacing, p);
        // Panel plane parallel to its wall so the normal faces the area.
        if (p.x <= 0.0 || p.x >= side) {
            panel.axis_y = {0.0, 1.0, 0.0};
            panel.axis_z = {0.0, 0.0, 1.0};
        } else {
            panel.axis_y = {1.0, 0.0, 0.0};
            panel.axis_z = {0.0, 0.0, 1.0};
        }
        geom.panels.push_back(std::move(panel));
    }
    const position airs = config.airs_position.value_or(position{0.5 * side, 0.5 * side, config.airs_altitude_m});
    geom.panels.push_back(make_panel(irs_tier::aerial, m, m, spacing, airs));
    return geom;
}

void drop_users(network_geometry &geom, const scenario_config &config, rng_stream &rng) {
    for (auto &user : geom.users) {
        user.x = rng.uniform(0.0, config.area_side_m);
        user.y = rng.uniform(0.0, config.area_side_m);
        user.z = config.user_height_m;
    }
}

scenario_config with_sweep_value(const scenario_config &base, sweep_variable variable, double value) {
    scenario_config config = base;
    switch (variable) {
    case sweep_variable::none:
        break;
    case sweep_variable::ap_power_dbm:
        config.radio.ap_power_budget_dbm = value;
        break;
    case sweep_variable::reflectors_per_side:
        config.reflectors_per_side = static_cast<int>(value);
        break;
    case sweep_variable::area_side_m:
        config.area_side_m = value;
        break;
    }
    return config;
}

} // namespace irsim
