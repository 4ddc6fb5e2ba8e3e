#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "irsim/channel.hpp"
#include "irsim/jbua.hpp"
#include "irsim/radio.hpp"
#include "irsim/rng.hpp"

namespace irsim {

// A complete experiment description. Radio defaults follow the reference
// deployment (15 GHz carrier, 400 MHz bandwidth, -174 dBm/Hz noise density,
// 10 dB noise figure, 43.2 dBm budget); array sizes default to desk scale so
// sweeps stay CI-friendly, full_scale() switches to the 256-antenna,
// 100x100-element deployment.
struct scenario_config {
    radio_params radio;

    int k_users = 4;
    int l_irs = 4;
    double area_side_m = 200.0;
    double user_height_m = 1.5;
    double ap_height_m = 25.0;

    int reflectors_per_side = 20; // m_y = m_z per panel
    double tirs_height_m = 15.0;
    double airs_altitude_m = 120.0;
    std::vector<position> tirs_positions;     // empty = auto-placed on the area perimeter
    std::optional<position> airs_position;    // nullopt = hovering over the area center

    channel_model_options channel;

    objective_mode objective = objective_mode::clean_zf;
    power_policy policy = power_policy::equal_power;
    int max_iters = 10;

    int trials = 10000;
    std::uint64_t master_seed = 1;

    void apply_full_scale() {
        radio.num_ap_antennas = 256;
        reflectors_per_side = 100;
    }

    void validate() const; // throws config_error on constraint violations
};

enum class sweep_variable { none, ap_power_dbm, reflectors_per_side, area_side_m };

const char *to_string(sweep_variable v);

struct sweep_spec {
    sweep_variable variable = sweep_variable::none;
    std::vector<double> values; // non-empty, strictly increasing
    scenario_config base;

    void validate() const;
};

// Fixed part of the scene: AP on the south edge midpoint, L-1 terrestrial
// panels walked along the east/north/west perimeter walls, one aerial panel
// over the center. Explicit panel positions in the config win.
network_geometry build_geometry(const scenario_config &config);

// Uniform user drop over the square service area at the configured height.
// Consumes 2 draws per user in user order.
void drop_users(network_geometry &geom, const scenario_config &config, rng_stream &rng);

scenario_config with_sweep_value(const scenario_config &base, sweep_variable variable, double value);

} // namespace irsim
