#include "irsim/radio.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

namespace irsim {

double dbm_to_watts(double dbm) { return std::pow(10.0, dbm / 10.0) * 1e-3; }

double watts_to_dbm(double watts) {
    if (watts <= 0.0)
        throw std::invalid_argument("watts_to_dbm: power must be positive");
    return 10.0 * std::log10(watts * 1e3);
}

double wave_number(double frequency_hz) {
    if (!(frequency_hz > 0.0))
        throw std::invalid_argument("wave_number: frequency must be positive");
    return 2.0 * std::numbers::pi * frequency_hz / speed_of_light;
}

double path_loss_linear(double distance_m, double frequency_hz) {
    if (!(distance_m > 0.0))
        throw std::invalid_argument("path_loss_linear: distance must be positive");
    if (!(frequency_hz > 0.0))
        throw std::invalid_argument("path_loss_linear: frequency must be positive");
    const double ratio = speed_of_light / (4.0 * std::numbers::pi * frequency_hz * distance_m);
    return ratio * ratio;
}

double noise_power_watts(const radio_params &params) {
    const double dbm =
        params.noise_density_dbm_per_hz + 10.0 * std::log10(params.bandwidth_hz) + params.noise_figure_db;
    return dbm_to_watts(dbm);
}

} // namespace irsim
