#include "irsim/beamforming.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include "irsim/errors.hpp"

namespace irsim {

zf_result zero_forcing(const Eigen::MatrixXcd &channel) {
    const Eigen::Index k = channel.rows();
    const Eigen::Index n = channel.cols();
    if (k < 1 || n < 1)
        throw std::invalid_argument("zero_forcing: empty channel matrix");
    if (k > n)
        throw std::invalid_argument("zero_forcing: more users than antennas");

    Eigen::JacobiSVD<Eigen::MatrixXcd> svd(channel);
    const double s_max = svd.singularValues()(0);
    const double s_min = svd.singularValues()(k - 1);
    if (!(s_min > 0.0) || s_max / s_min > zf_condition_limit)
        throw singular_channel_error("zero_forcing: channel matrix is rank deficient (cond > 1e12)");

    // W = H^H (H H^H)^{-1}; the Gram matrix is Hermitian positive definite for
    // full-rank H, so solve through its Cholesky factor.
    const Eigen::MatrixXcd gram = channel * channel.adjoint();
    const Eigen::MatrixXcd raw =
        channel.adjoint() * gram.llt().solve(Eigen::MatrixXcd::Identity(k, k));

    zf_result out;
    out.directions.resize(n, k);
    out.weights.resize(k);
    for (Eigen::Index j = 0; j < k; ++j) {
        const double norm = raw.col(j).norm();
        if (!(norm > 0.0))
            throw singular_channel_error("zero_forcing: zero pseudo-inverse column");
        out.weights(j) = norm;
        out.directions.col(j) = raw.col(j) / norm;
    }
    return out;
}

Eigen::VectorXd allocate_power(const Eigen::VectorXd &zf_weights, const radio_params &params,
                               power_policy policy) {
    const Eigen::Index k = zf_weights.size();
    if (k < 1)
        throw std::invalid_argument("allocate_power: no users");
    if ((zf_weights.array() <= 0.0).any())
        throw std::invalid_argument("allocate_power: weights must be positive");
    const double budget = dbm_to_watts(params.ap_power_budget_dbm);
    Eigen::VectorXd powers(k);
    switch (policy) {
    case power_policy::equal_power:
        powers.setConstant(budget / static_cast<double>(k));
        break;
    case power_policy::equal_rate: {
        // Post-ZF SINR is p_j / weights_j^2; equalize it under the budget.
        const Eigen::VectorXd squared = zf_weights.array().square();
        powers = budget * squared / squared.sum();
        break;
    }
    }
    return powers;
}

Eigen::VectorXd sinr_general(const std::vector<std::vector<Eigen::VectorXcd>> &cascaded_all,
                             const assignment &matched, const precoder &beams, double noise_watts) {
    const int l_irs = static_cast<int>(cascaded_all.size());
    const int k_users = matched.num_users();
    Eigen::VectorXd out(k_users);
    for (int k = 0; k < k_users; ++k) {
        const int lk = matched.irs_of(k);
        if (lk < 0)
            throw invalid_assignment_error("sinr_general: user has no surface");
        const Eigen::VectorXcd &own = cascaded_all[static_cast<size_t>(lk)][static_cast<size_t>(k)];
        const double signal =
            beams.powers(k) * std::norm(own.dot(beams.directions.col(k)));
        double interference = 0.0;
        for (int i = 0; i < k_users; ++i) {
            if (i == k)
                continue;
            for (int l = 0; l < l_irs; ++l) {
                const Eigen::VectorXcd &via = cascaded_all[static_cast<size_t>(l)][static_cast<size_t>(k)];
                interference += beams.powers(i) * std::norm(via.dot(beams.directions.col(i)));
            }
        }
        out(k) = signal / (interference + noise_watts);
    }
    return out;
}

double sinr_zf(const Eigen::VectorXcd &cascade, const Eigen::VectorXcd &direction, double power_watts,
               double noise_watts) {
    if (!(noise_watts > 0.0))
        throw std::invalid_argument("sinr_zf: noise power must be positive");
    return power_watts * std::norm(cascade.dot(direction)) / noise_watts;
}

double rate(double sinr) {
    if (sinr < 0.0)
        throw std::invalid_argument("rate: SINR must be non-negative");
    return std::log1p(sinr) / std::numbers::ln2;
}

Eigen::MatrixXd pair_rate_table(const channel_set &channels, const radio_params &params) {
    const int l_irs = channels.num_irs();
    const int k_users = channels.num_users();
    const double sigma2 = noise_power_watts(params);
    const double per_user = dbm_to_watts(params.ap_power_budget_dbm) / static_cast<double>(k_users);
    Eigen::MatrixXd table(l_irs, k_users);
    for (int l = 0; l < l_irs; ++l)
        for (int k = 0; k < k_users; ++k) {
            // Pair treated as the assigned link: matched filter on its own
            // cascade, so |h^H w|^2 = ||h||^2.
            const double gain = channels.cascaded[static_cast<size_t>(l)][static_cast<size_t>(k)].squaredNorm();
            table(l, k) = rate(per_user * gain / sigma2);
        }
    return table;
}

} // namespace irsim
