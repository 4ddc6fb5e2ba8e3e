#pragma once

#include <Eigen/Dense>

#include "irsim/geometry.hpp"

namespace irsim {

enum class irs_tier { terrestrial, aerial };

// One reflecting surface: m_y x m_z passive elements on a uniform planar grid.
// axis_y/axis_z span the panel plane (orthonormal); element (iy, iz) sits at
// center + (iy - (m_y-1)/2)*s*axis_y + (iz - (m_z-1)/2)*s*axis_z.
struct irs_panel {
    irs_tier tier = irs_tier::terrestrial;
    int m_y = 1;
    int m_z = 1;
    double element_spacing_m = 0.01;
    position center;
    axis3 axis_y{0.0, 1.0, 0.0};
    axis3 axis_z{0.0, 0.0, 1.0};
    Eigen::VectorXd amplitudes; // kappa_m in [0,1], size m_y*m_z
    Eigen::VectorXd phases;     // theta_m in [0,2pi), size m_y*m_z

    int num_elements() const { return m_y * m_z; }

    // Element index m runs y-fastest: m = iz*m_y + iy.
    position element_position(int m) const;

    void validate() const; // throws std::invalid_argument on broken invariants
};

// Lossless panel with all phases zero, axes chosen by tier (terrestrial panels
// stand upright, the aerial panel lies horizontal).
irs_panel make_panel(irs_tier tier, int m_y, int m_z, double spacing_m, const position &center);

// diag(kappa_m * exp(j*theta_m)).
Eigen::MatrixXcd reflection_matrix(const irs_panel &panel);

// Co-phasing rule: pick theta_m so that every element's cascaded contribution
// toward AP antenna 1 (the phase reference) is real and non-negative, i.e.
// theta_m = arg(F(m,0)) - arg(f(m)) mod 2pi. |h[0]| then equals the sum of the
// per-element magnitudes, the maximum reachable for that antenna.
Eigen::VectorXd configure_phases(const Eigen::MatrixXcd &ap_to_irs, const Eigen::VectorXcd &irs_to_user);

// Wrap into [0, 2pi).
double wrap_phase(double radians);

} // namespace irsim
