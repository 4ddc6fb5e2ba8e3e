#include "irsim/jbua.hpp"

#include <cmath>

#include "irsim/errors.hpp"

namespace irsim {

evaluation evaluate_assignment(const channel_set &channels, const assignment &matched,
                               const radio_params &params, objective_mode mode, power_policy policy) {
    const Eigen::MatrixXcd h = channel_matrix(channels.cascaded, matched);
    const zf_result zf = zero_forcing(h);
    const double sigma2 = noise_power_watts(params);

    evaluation out;
    out.beams.directions = zf.directions;
    out.beams.powers = allocate_power(zf.weights, params, policy);

    const int k_users = matched.num_users();
    out.metrics.sinr.resize(k_users);
    out.metrics.rate_bps_hz.resize(k_users);
    out.metrics.interference_power_w = Eigen::VectorXd::Zero(k_users);

    if (mode == objective_mode::clean_zf) {
        for (int k = 0; k < k_users; ++k) {
            const auto &own =
                channels.cascaded[static_cast<size_t>(matched.irs_of(k))][static_cast<size_t>(k)];
            out.metrics.sinr(k) = sinr_zf(own, out.beams.directions.col(k), out.beams.powers(k), sigma2);
        }
    } else {
        const auto cascades = cascades_under_assignment(channels, matched);
        out.metrics.sinr = sinr_general(cascades, matched, out.beams, sigma2);
        for (int k = 0; k < k_users; ++k) {
            double interference = 0.0;
            for (int i = 0; i < k_users; ++i) {
                if (i == k)
                    continue;
                for (size_t l = 0; l < cascades.size(); ++l)
                    interference += out.beams.powers(i) *
                                    std::norm(cascades[l][static_cast<size_t>(k)].dot(out.beams.directions.col(i)));
            }
            out.metrics.interference_power_w(k) = interference;
        }
    }

    double sum = 0.0;
    for (int k = 0; k < k_users; ++k) {
        out.metrics.rate_bps_hz(k) = rate(out.metrics.sinr(k));
        sum += out.metrics.rate_bps_hz(k);
    }
    out.metrics.sum_rate_bps_hz = sum;
    return out;
}

double objective(const assignment &matched, const precoder &beams, const channel_set &channels,
                 double noise_watts, objective_mode mode) {
    double sum = 0.0;
    if (mode == objective_mode::clean_zf) {
        for (int k = 0; k < matched.num_users(); ++k) {
            const auto &own =
                channels.cascaded[static_cast<size_t>(matched.irs_of(k))][static_cast<size_t>(k)];
            sum += rate(sinr_zf(own, beams.directions.col(k), beams.powers(k), noise_watts));
        }
    } else {
        const auto cascades = cascades_under_assignment(channels, matched);
        const Eigen::VectorXd sinr = sinr_general(cascades, matched, beams, noise_watts);
        for (int k = 0; k < matched.num_users(); ++k)
            sum += rate(sinr(k));
    }
    return sum;
}

namespace {

bool non_decreasing(const std::vector<double> &values) {
    for (size_t i = 1; i < values.size(); ++i)
        if (values[i] < values[i - 1] * (1.0 - 1e-12) - 1e-15)
            return false;
    return true;
}

} // namespace

jbua_solution solve(const channel_set &channels, const network_geometry &geom, const radio_params &params,
                    const solve_options &opts) {
    const int k_users = channels.num_users();
    const int l_irs = channels.num_irs();
    if (k_users > l_irs)
        throw infeasible_matching_error("solve: more users than surfaces");

    // Association step works on the assignment-independent per-pair table, so
    // the alternation reaches its fixed point after at most one true-rate pass.
    const preference_matrix prefs = build_preferences(pair_rate_table(channels, params));

    // Distance-proxy start: prefer short AP-surface-user paths.
    Eigen::MatrixXd proxy(l_irs, k_users);
    for (int l = 0; l < l_irs; ++l) {
        const double d_ap = distance(geom.ap, geom.panels[static_cast<size_t>(l)].center);
        for (int k = 0; k < k_users; ++k)
            proxy(l, k) =
                1.0 / (d_ap * distance(geom.panels[static_cast<size_t>(l)].center, geom.users[static_cast<size_t>(k)]));
    }

    jbua_solution solution;
    assignment current = deferred_acceptance(build_preferences(proxy)).matched;
    evaluation eval;
    bool evaluated = false;

    for (int iter = 1; iter <= opts.max_iters; ++iter) {
        eval = evaluate_assignment(channels, current, params, opts.objective, opts.policy);
        evaluated = true;
        solution.sum_rate_history.push_back(eval.metrics.sum_rate_bps_hz);
        solution.iterations = iter;

        assignment next = deferred_acceptance(prefs).matched;
        if (next == current) {
            solution.converged = true;
            break;
        }
        current = std::move(next);
        evaluated = false;
    }
    if (!evaluated) { // loop exhausted max_iters with a fresh assignment
        eval = evaluate_assignment(channels, current, params, opts.objective, opts.policy);
        solution.sum_rate_history.push_back(eval.metrics.sum_rate_bps_hz);
    }

    solution.matched = std::move(current);
    solution.beams = std::move(eval.beams);
    solution.metrics = std::move(eval.metrics);
    solution.monotone = non_decreasing(solution.sum_rate_history);
    return solution;
}

bool constraint_report::all_pass() const {
    for (const auto &c : checks)
        if (!c.pass)
            return false;
    return true;
}

constraint_report audit_constraints(const Eigen::MatrixXd &association_matrix, const precoder &beams,
                                    const radio_params &params) {
    constexpr double tol = 1e-9;
    constraint_report report;

    const double min_power = beams.powers.size() > 0 ? beams.powers.minCoeff() : 0.0;
    report.checks.push_back({"nonnegative_powers", min_power >= -tol, std::max(0.0, -min_power)});

    double used = 0.0;
    for (int k = 0; k < beams.num_users(); ++k)
        used += beams.powers(k) * beams.directions.col(k).squaredNorm();
    const double budget = dbm_to_watts(params.ap_power_budget_dbm);
    const double excess = used - budget;
    report.checks.push_back({"power_budget", excess <= tol * budget, std::max(0.0, excess)});

    double col_residual = 0.0;
    for (int k = 0; k < association_matrix.cols(); ++k)
        col_residual = std::max(col_residual, std::abs(association_matrix.col(k).sum() - 1.0));
    report.checks.push_back({"user_served_once", col_residual <= tol, col_residual});

    double row_residual = 0.0;
    for (int l = 0; l < association_matrix.rows(); ++l)
        row_residual = std::max(row_residual, association_matrix.row(l).sum() - 1.0);
    row_residual = std::max(0.0, row_residual);
    report.checks.push_back({"surface_serves_at_most_one", row_residual <= tol, row_residual});

    double binary_residual = 0.0;
    for (int l = 0; l < association_matrix.rows(); ++l)
        for (int k = 0; k < association_matrix.cols(); ++k) {
            const double v = association_matrix(l, k);
            binary_residual = std::max(binary_residual, std::min(std::abs(v), std::abs(v - 1.0)));
        }
    report.checks.push_back({"binary_entries", binary_residual <= tol, binary_residual});

    return report;
}

constraint_report audit_constraints(const jbua_solution &solution, const radio_params &params) {
    return audit_constraints(solution.matched.matrix(), solution.beams, params);
}

} // namespace irsim
