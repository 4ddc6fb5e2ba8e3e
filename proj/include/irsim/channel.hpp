#pragma once

#include <Eigen/Dense>
#include <vector>

#include "irsim/association.hpp"
#include "irsim/geometry.hpp"
#include "irsim/irs.hpp"
#include "irsim/radio.hpp"
#include "irsim/rng.hpp"

namespace irsim {

// Full scene: one multi-antenna AP, K single-antenna users, L reflecting
// surfaces. Direct AP-user links are blocked; all service flows through the
// surfaces.
struct network_geometry {
    position ap;
    std::vector<position> users;
    std::vector<irs_panel> panels;

    int num_users() const { return static_cast<int>(users.size()); }
    int num_irs() const { return static_cast<int>(panels.size()); }

    void validate() const; // throws on K < 1, L < K, or coincident nodes
};

struct channel_model_options {
    // Use the panel-center distance for every entry's phase instead of the
    // per-element distance (the magnitudes stay per-element either way).
    bool center_phase_approx = false;
    // Add an i.i.d. complex-Gaussian component on top of the deterministic
    // line-of-sight term, mixed by the Rician K-factor.
    bool rician_enabled = false;
    double rician_k_factor_db = 10.0;
};

// AP antenna-array element positions: half-wavelength uniform planar array in
// the local x-z plane when N is a perfect square, else a uniform linear array
// along x. Centered at `center`.
std::vector<position> ap_array_positions(const position &center, int num_antennas, double wavelength_m);

// Entry (m, n): sqrt(pathloss(antenna n -> element m)) * exp(-j*w*d). M x N.
Eigen::MatrixXcd ap_to_irs_channel(const network_geometry &geom, const radio_params &params, int irs_index,
                                   const channel_model_options &opts = {}, rng_stream *fading = nullptr);

// Entry m: sqrt(pathloss(element m -> user k)) * exp(-j*w*d). Length M.
Eigen::VectorXcd irs_to_user_channel(const network_geometry &geom, const radio_params &params, int irs_index,
                                     int user_index, const channel_model_options &opts = {},
                                     rng_stream *fading = nullptr);

// h = F^H * Theta * f. Throws std::invalid_argument on dimension mismatch.
Eigen::VectorXcd cascaded_channel(const Eigen::MatrixXcd &ap_to_irs, const Eigen::MatrixXcd &reflection,
                                  const Eigen::VectorXcd &irs_to_user);

// Every per-pair matrix/vector of a scene, with each pair's cascade taken
// under co-phasing for that pair (amplitudes 1).
struct channel_set {
    std::vector<Eigen::MatrixXcd> ap_to_irs;                  // [L], M x N
    std::vector<std::vector<Eigen::VectorXcd>> irs_to_user;   // [L][K], M
    std::vector<std::vector<Eigen::VectorXcd>> cascaded;      // [L][K], N

    int num_irs() const { return static_cast<int>(ap_to_irs.size()); }
    int num_users() const { return ap_to_irs.empty() ? 0 : static_cast<int>(irs_to_user[0].size()); }
};

channel_set build_channels(const network_geometry &geom, const radio_params &params,
                           const channel_model_options &opts = {}, rng_stream *fading = nullptr);

// Row k = h_{l(k),k}^H for user k's assigned surface. K x N. Throws
// invalid_assignment_error when some user has no surface.
Eigen::MatrixXcd channel_matrix(const std::vector<std::vector<Eigen::VectorXcd>> &cascaded,
                                const assignment &matched);

// Cascades of every (surface, user) pair once panel phases are fixed by an
// assignment: a surface serving user k is co-phased for k, an idle surface
// keeps zero phases. Feeds the all-surfaces interference sum.
std::vector<std::vector<Eigen::VectorXcd>> cascades_under_assignment(const channel_set &channels,
                                                                     const assignment &matched);

} // namespace irsim
