#include "irsim/irs.hpp"

#include <cmath>
#include <complex>
#include <numbers>
#include <stdexcept>

namespace irsim {

namespace {
constexpr double two_pi = 2.0 * std::numbers::pi;
}

double wrap_phase(double radians) {
    double w = std::fmod(radians, two_pi);
    if (w < 0.0)
        w += two_pi;
    if (w >= two_pi) // fmod can land exactly on 2pi after the rounding above
        w = 0.0;
    return w;
}

position irs_panel::element_position(int m) const {
    const int iy = m % m_y;
    const int iz = m / m_y;
    const double off_y = (iy - 0.5 * (m_y - 1)) * element_spacing_m;
    const double off_z = (iz - 0.5 * (m_z - 1)) * element_spacing_m;
    return {center.x + off_y * axis_y.x + off_z * axis_z.x,
            center.y + off_y * axis_y.y + off_z * axis_z.y,
            center.z + off_y * axis_y.z + off_z * axis_z.z};
}

void irs_panel::validate() const {
    if (m_y < 1 || m_z < 1)
        throw std::invalid_argument("irs_panel: element counts must be at least 1");
    if (!(element_spacing_m > 0.0))
        throw std::invalid_argument("irs_panel: element spacing must be positive");
    if (!center.finite() || center.z < 0.0)
        throw std::invalid_argument("irs_panel: center must be finite with z >= 0");
    if (amplitudes.size() != num_elements() || phases.size() != num_elements())
        throw std::invalid_argument("irs_panel: amplitude/phase vectors must have M entries");
    for (int m = 0; m < num_elements(); ++m) {
        const double k = amplitudes(m);
        const double t = phases(m);
        if (!(k >= 0.0 && k <= 1.0))
            throw std::invalid_argument("irs_panel: amplitudes must lie in [0,1]");
        if (!(t >= 0.0 && t < two_pi))
            throw std::invalid_argument("irs_panel: phases must lie in [0,2pi)");
    }
}

irs_panel make_panel(irs_tier tier, int m_y, int m_z, double spacing_m, const position &center) {
    irs_panel panel;
    panel.tier = tier;
    panel.m_y = m_y;
    panel.m_z = m_z;
    panel.element_spacing_m = spacing_m;
    panel.center = center;
    if (tier == irs_tier::aerial) {
        panel.axis_y = {1.0, 0.0, 0.0};
        panel.axis_z = {0.0, 1.0, 0.0};
    } else {
        panel.axis_y = {0.0, 1.0, 0.0};
        panel.axis_z = {0.0, 0.0, 1.0};
    }
    panel.amplitudes = Eigen::VectorXd::Ones(panel.num_elements());
    panel.phases = Eigen::VectorXd::Zero(panel.num_elements());
    panel.validate();
    return panel;
}

Eigen::MatrixXcd reflection_matrix(const irs_panel &panel) {
    panel.validate();
    const int m = panel.num_elements();
    Eigen::MatrixXcd theta = Eigen::MatrixXcd::Zero(m, m);
    for (int i = 0; i < m; ++i)
        theta(i, i) = std::polar(panel.amplitudes(i), panel.phases(i));
    return theta;
}

Eigen::VectorXd configure_phases(const Eigen::MatrixXcd &ap_to_irs, const Eigen::VectorXcd &irs_to_user) {
    if (ap_to_irs.rows() != irs_to_user.size())
        throw std::invalid_argument("configure_phases: element counts disagree");
    if (ap_to_irs.cols() < 1)
        throw std::invalid_argument("configure_phases: need at least one AP antenna");
    const Eigen::Index m = irs_to_user.size();
    Eigen::VectorXd theta(m);
    // Element m contributes conj(F(m,0)) * e^{j theta} * f(m) to the cascade
    // at the reference antenna; this phase makes each contribution real >= 0.
    for (Eigen::Index i = 0; i < m; ++i)
        theta(i) = wrap_phase(std::arg(ap_to_irs(i, 0)) - std::arg(irs_to_user(i)));
    return theta;
}

} // namespace irsim
