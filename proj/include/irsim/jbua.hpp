#pragma once

#include <string>
#include <vector>

#include "irsim/beamforming.hpp"
#include "irsim/channel.hpp"

namespace irsim {

// Objective flavor: the interference-free post-ZF rate, or the literal
// all-surfaces interference sum. clean_zf is the default; the literal mode is
// kept for sensitivity reporting because ZF only nulls interference through
// the assigned cascades.
enum class objective_mode { clean_zf, literal_interference };

struct solve_options {
    int max_iters = 10;
    objective_mode objective = objective_mode::clean_zf;
    power_policy policy = power_policy::equal_power;
};

struct evaluation {
    precoder beams;
    link_metrics metrics;
};

// Precoder and metrics for a fixed association: build the channel matrix from
// the assigned cascades, zero-force, split the power budget, score.
evaluation evaluate_assignment(const channel_set &channels, const assignment &matched,
                               const radio_params &params, objective_mode mode, power_policy policy);

// Sum rate of a given (assignment, precoder) pair recomputed from scratch.
double objective(const assignment &matched, const precoder &beams, const channel_set &channels,
                 double noise_watts, objective_mode mode);

struct jbua_solution {
    assignment matched;
    precoder beams;
    link_metrics metrics;
    int iterations = 0;
    bool converged = false;
    std::vector<double> sum_rate_history; // one entry per evaluated iterate
    bool monotone = true;                 // history non-decreasing (logged, not enforced)
};

// Alternating decomposition: beamforming given the association, then
// user-surface matching given per-pair rates, until the association reaches a
// fixed point or max_iters. Initialized from a distance-proxy matching.
jbua_solution solve(const channel_set &channels, const network_geometry &geom, const radio_params &params,
                    const solve_options &opts = {});

struct constraint_check {
    std::string name;
    bool pass = true;
    double residual = 0.0;
};

struct constraint_report {
    std::vector<constraint_check> checks;
    bool all_pass() const;
};

// Audits nonnegative powers, the AP power budget, and the association
// matrix's column/row sums and binarity. Reporting only, never throws.
constraint_report audit_constraints(const Eigen::MatrixXd &association_matrix, const precoder &beams,
                                    const radio_params &params);
constraint_report audit_constraints(const jbua_solution &solution, const radio_params &params);

} // namespace irsim
