#pragma once

namespace irsim {

inline constexpr double speed_of_light = 299792458.0; // m/s

// Carrier, bandwidth, noise and transmit-power budget of the access point.
struct radio_params {
    double carrier_frequency_hz = 15e9;
    double bandwidth_hz = 400e6;
    double noise_density_dbm_per_hz = -174.0;
    double noise_figure_db = 10.0;
    double ap_power_budget_dbm = 43.2;
    int num_ap_antennas = 16;

    bool valid() const {
        return carrier_frequency_hz > 0.0 && bandwidth_hz > 0.0 && num_ap_antennas >= 1;
    }

    double wavelength_m() const { return speed_of_light / carrier_frequency_hz; }
};

double dbm_to_watts(double dbm);
double watts_to_dbm(double watts);

// 2*pi*f/c [rad/m]. Throws std::invalid_argument for f <= 0.
double wave_number(double frequency_hz);

// Free-space gain (c / (4*pi*f*d))^2, in (0, 1] for d at or beyond the
// reference distance. Throws std::invalid_argument for d <= 0 or f <= 0.
double path_loss_linear(double distance_m, double frequency_hz);

// Receiver noise power sigma^2 = density + 10*log10(B) + NF, converted to watts.
double noise_power_watts(const radio_params &params);

} // namespace irsim
