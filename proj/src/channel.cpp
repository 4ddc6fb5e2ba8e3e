#include "irsim/channel.hpp"

#include <cmath>
#include <complex>
#include <stdexcept>

#include "irsim/errors.hpp"

namespace irsim {

namespace {

using cd = std::complex<double>;

// LoS entry, optionally blended with a complex-Gaussian component at the
// given K-factor. Variance of the sum stays equal to the path loss.
cd channel_entry(double loss, double phase_rad, const channel_model_options &opts, rng_stream *fading) {
    const double amp = std::sqrt(loss);
    cd entry = std::polar(amp, -phase_rad);
    if (opts.rician_enabled) {
        if (fading == nullptr)
            throw std::invalid_argument("channel: rician fading needs an RNG stream");
        const double kf = std::pow(10.0, opts.rician_k_factor_db / 10.0);
        const double los_scale = std::sqrt(kf / (kf + 1.0));
        const double nlos_scale = amp * std::sqrt(1.0 / (2.0 * (kf + 1.0)));
        entry = los_scale * entry + cd(nlos_scale * fading->normal(), nlos_scale * fading->normal());
    }
    return entry;
}

} // namespace

void network_geometry::validate() const {
    if (num_users() < 1)
        throw std::invalid_argument("network_geometry: need at least one user");
    if (num_irs() < num_users())
        throw std::invalid_argument("network_geometry: need at least as many surfaces as users");
    if (!ap.finite() || ap.z < 0.0)
        throw std::invalid_argument("network_geometry: AP position must be finite with z >= 0");
    for (const auto &u : users)
        if (!u.finite() || u.z < 0.0)
            throw std::invalid_argument("network_geometry: user positions must be finite with z >= 0");
    for (const auto &p : panels) {
        p.validate();
        if (distance(ap, p.center) <= 0.0)
            throw degenerate_geometry_error("network_geometry: AP coincides with a surface center");
        for (const auto &u : users)
            if (distance(p.center, u) <= 0.0)
                throw degenerate_geometry_error("network_geometry: user coincides with a surface center");
    }
}

std::vector<position> ap_array_positions(const position &center, int num_antennas, double wavelength_m) {
    if (num_antennas < 1)
        throw std::invalid_argument("ap_array_positions: need at least one antenna");
    const double s = 0.5 * wavelength_m;
    std::vector<position> out;
    out.reserve(static_cast<size_t>(num_antennas));
    const int side = static_cast<int>(std::lround(std::sqrt(static_cast<double>(num_antennas))));
    if (side * side == num_antennas) {
        for (int iz = 0; iz < side; ++iz)
            for (int ix = 0; ix < side; ++ix)
                out.push_back({center.x + (ix - 0.5 * (side - 1)) * s, center.y,
                               center.z + (iz - 0.5 * (side - 1)) * s});
    } else {
        for (int ix = 0; ix < num_antennas; ++ix)
            out.push_back({center.x + (ix - 0.5 * (num_antennas - 1)) * s, center.y, center.z});
    }
    return out;
}

Eigen::MatrixXcd ap_to_irs_channel(const network_geometry &geom, const radio_params &params, int irs_index,
                                   const channel_model_options &opts, rng_stream *fading) {
    if (irs_index < 0 || irs_index >= geom.num_irs())
        throw std::invalid_argument("ap_to_irs_channel: surface index out of range");
    const irs_panel &panel = geom.panels[static_cast<size_t>(irs_index)];
    const double omega = wave_number(params.carrier_frequency_hz);
    const double d_center = distance(geom.ap, panel.center);
    if (d_center <= 0.0)
        throw degenerate_geometry_error("ap_to_irs_channel: AP coincides with the surface");

    const auto antennas = ap_array_positions(geom.ap, params.num_ap_antennas, params.wavelength_m());
    const int m = panel.num_elements();
    const int n = params.num_ap_antennas;
    Eigen::MatrixXcd f(m, n);
    for (int i = 0; i < m; ++i) {
        const position elem = panel.element_position(i);
        for (int j = 0; j < n; ++j) {
            const double d = distance(antennas[static_cast<size_t>(j)], elem);
            if (d <= 0.0)
                throw degenerate_geometry_error("ap_to_irs_channel: antenna coincides with an element");
            const double loss = path_loss_linear(d, params.carrier_frequency_hz);
            const double phase = omega * (opts.center_phase_approx ? d_center : d);
            f(i, j) = channel_entry(loss, phase, opts, fading);
        }
    }
    return f;
}

Eigen::VectorXcd irs_to_user_channel(const network_geometry &geom, const radio_params &params, int irs_index,
                                     int user_index, const channel_model_options &opts, rng_stream *fading) {
    if (irs_index < 0 || irs_index >= geom.num_irs())
        throw std::invalid_argument("irs_to_user_channel: surface index out of range");
    if (user_index < 0 || user_index >= geom.num_users())
        throw std::invalid_argument("irs_to_user_channel: user index out of range");
    const irs_panel &panel = geom.panels[static_cast<size_t>(irs_index)];
    const position &user = geom.users[static_cast<size_t>(user_index)];
    const double omega = wave_number(params.carrier_frequency_hz);
    const double d_center = distance(panel.center, user);
    if (d_center <= 0.0)
        throw degenerate_geometry_error("irs_to_user_channel: user coincides with the surface");

    const int m = panel.num_elements();
    Eigen::VectorXcd f(m);
    for (int i = 0; i < m; ++i) {
        const double d = distance(panel.element_position(i), user);
        if (d <= 0.0)
            throw degenerate_geometry_error("irs_to_user_channel: user coincides with an element");
        const double loss = path_loss_linear(d, params.carrier_frequency_hz);
        const double phase = omega * (opts.center_phase_approx ? d_center : d);
        f(i) = channel_entry(loss, phase, opts, fading);
    }
    return f;
}

Eigen::VectorXcd cascaded_channel(const Eigen::MatrixXcd &ap_to_irs, const Eigen::MatrixXcd &reflection,
                                  const Eigen::VectorXcd &irs_to_user) {
    const Eigen::Index m = ap_to_irs.rows();
    if (reflection.rows() != m || reflection.cols() != m || irs_to_user.size() != m)
        throw std::invalid_argument("cascaded_channel: dimension mismatch");
    return ap_to_irs.adjoint() * (reflection * irs_to_user);
}

channel_set build_channels(const network_geometry &geom, const radio_params &params,
                           const channel_model_options &opts, rng_stream *fading) {
    geom.validate();
    const int l_irs = geom.num_irs();
    const int k_users = geom.num_users();

    channel_set out;
    out.ap_to_irs.reserve(static_cast<size_t>(l_irs));
    out.irs_to_user.resize(static_cast<size_t>(l_irs));
    out.cascaded.resize(static_cast<size_t>(l_irs));
    for (int l = 0; l < l_irs; ++l) {
        out.ap_to_irs.push_back(ap_to_irs_channel(geom, params, l, opts, fading));
        auto &to_users = out.irs_to_user[static_cast<size_t>(l)];
        auto &cascades = out.cascaded[static_cast<size_t>(l)];
        to_users.reserve(static_cast<size_t>(k_users));
        cascades.reserve(static_cast<size_t>(k_users));
        const Eigen::MatrixXcd &f = out.ap_to_irs.back();
        for (int k = 0; k < k_users; ++k) {
            to_users.push_back(irs_to_user_channel(geom, params, l, k, opts, fading));
            const Eigen::VectorXcd &g = to_users.back();
            const Eigen::VectorXd theta = configure_phases(f, g);
            const Eigen::VectorXcd phased =
                theta.unaryExpr([](double t) { return std::polar(1.0, t); }).cwiseProduct(g);
            cascades.push_back(f.adjoint() * phased);
        }
    }
    return out;
}

Eigen::MatrixXcd channel_matrix(const std::vector<std::vector<Eigen::VectorXcd>> &cascaded,
                                const assignment &matched) {
    const int k_users = matched.num_users();
    if (k_users < 1 || cascaded.empty())
        throw std::invalid_argument("channel_matrix: empty inputs");
    const Eigen::Index n = cascaded[0][0].size();
    Eigen::MatrixXcd h(k_users, n);
    for (int k = 0; k < k_users; ++k) {
        const int l = matched.irs_of(k);
        if (l < 0)
            throw invalid_assignment_error("channel_matrix: user " + std::to_string(k) + " has no surface");
        h.row(k) = cascaded[static_cast<size_t>(l)][static_cast<size_t>(k)].adjoint();
    }
    return h;
}

std::vector<std::vector<Eigen::VectorXcd>> cascades_under_assignment(const channel_set &channels,
                                                                     const assignment &matched) {
    const int l_irs = channels.num_irs();
    const int k_users = channels.num_users();
    std::vector<std::vector<Eigen::VectorXcd>> out(static_cast<size_t>(l_irs));
    for (int l = 0; l < l_irs; ++l) {
        const auto served = matched.user_of(l);
        const Eigen::MatrixXcd &f = channels.ap_to_irs[static_cast<size_t>(l)];
        Eigen::VectorXcd gains;
        if (served) {
            const Eigen::VectorXd theta =
                configure_phases(f, channels.irs_to_user[static_cast<size_t>(l)][static_cast<size_t>(*served)]);
            gains = theta.unaryExpr([](double t) { return std::polar(1.0, t); });
        } else {
            gains = Eigen::VectorXcd::Ones(f.rows()); // idle surface, zero phases
        }
        auto &row = out[static_cast<size_t>(l)];
        row.reserve(static_cast<size_t>(k_users));
        for (int k = 0; k < k_users; ++k)
            row.push_back(f.adjoint() *
                          gains.cwiseProduct(channels.irs_to_user[static_cast<size_t>(l)][static_cast<size_t>(k)]));
    }
    return out;
}

} // namespace irsim
