#pragma once

#include <Eigen/Dense>

#include "irsim/channel.hpp"
#include "irsim/radio.hpp"

namespace irsim {

enum class power_policy { equal_power, equal_rate };

// Unit-norm beam directions plus per-user transmit powers.
struct precoder {
    Eigen::MatrixXcd directions; // N x K, unit columns
    Eigen::VectorXd powers;      // p_k >= 0, watts

    int num_users() const { return static_cast<int>(directions.cols()); }
};

struct link_metrics {
    Eigen::VectorXd sinr;
    Eigen::VectorXd rate_bps_hz;           // log2(1 + sinr)
    Eigen::VectorXd interference_power_w;  // zero under the interference-free model
    double sum_rate_bps_hz = 0.0;
};

struct zf_result {
    Eigen::MatrixXcd directions; // N x K, unit columns
    Eigen::VectorXd weights;     // norms of the raw pseudo-inverse columns
};

// Threshold on cond(H) beyond which a scene is treated as degenerate.
inline constexpr double zf_condition_limit = 1e12;

// Right pseudo-inverse W = H^H (H H^H)^{-1}, so H*W = I_K. Columns are
// returned normalized; `weights` holds the discarded norms (the per-user
// inverse gains). Requires K <= N. Throws singular_channel_error when H is
// rank-deficient under the condition-number threshold; the caller decides
// whether to resample the trial.
zf_result zero_forcing(const Eigen::MatrixXcd &channel);

// Per-user powers meeting the budget with equality:
//   equal_power: p_k = P/K for every user,
//   equal_rate:  p_k proportional to weights_k^2 (equal post-ZF SINR).
Eigen::VectorXd allocate_power(const Eigen::VectorXd &zf_weights, const radio_params &params, power_policy policy);

// SINR with the interference double-sum taken over all surfaces: the desired
// signal arrives via user k's assigned surface, every other user's beam
// interferes through every panel.
Eigen::VectorXd sinr_general(const std::vector<std::vector<Eigen::VectorXcd>> &cascaded_all,
                             const assignment &matched, const precoder &beams, double noise_watts);

// Interference-free SINR p*|h^H w|^2 / sigma^2.
double sinr_zf(const Eigen::VectorXcd &cascade, const Eigen::VectorXcd &direction, double power_watts,
               double noise_watts);

// log2(1 + sinr). Throws std::invalid_argument for sinr < 0.
double rate(double sinr);

// Interference-free achievable rate of every (surface, user) pair treated as
// the assigned link, with the equal power split P/K. This is the table both
// the matching solvers and the baselines rank on.
Eigen::MatrixXd pair_rate_table(const channel_set &channels, const radio_params &params);

} // namespace irsim
