#pragma once

// Explicit Chern-Ricci flow on Vaisman models. The solution stays inside the
// two-parameter family Omega_{alpha,beta} = alpha * (-d(J theta)) + beta *
// theta ^ J theta with alpha(t) = 1 - (n/2) t, beta = 1, so the flow is
// represented exactly; a generic RK4 integration of the projected system
// exists as an independence check that the family is closed under the flow.

#include "vaisman/curvature.hpp"

namespace vaisman {

struct FlowState {
    double t = 0.0;
    double alpha = 1.0;   // coefficient of -d(J theta)
    double beta = 1.0;    // coefficient of theta ^ J theta
    double T = 0.0;       // collapse time 2/n
    double zeta = 0.0;    // alpha - 1
};

FlowState flow_state(int n, double t);

// Omega(t) = Omega_0 - t Ric^(1)(Omega_0); valid for 0 <= t < 2/n.
HermitianModel flow_metric(const HermitianModel& base, double t);

// Norm of the central-difference flow residual
// (Omega(t+dt) - Omega(t-dt)) / (2 dt) + Ric^(1)(Omega(t)) at x.
double flow_residual(const HermitianModel& base, double t, double dt, const Pt<double>& x);

struct FlowRow {
    double t = 0.0;
    double alpha = 0.0;
    double s_chern = 0.0;
    double scal_direct = 0.0;
    double scal_formula = 0.0;
    double vol_ratio = 0.0;
    double residual_flow = 0.0;
};

std::vector<FlowRow> flow_diagnostics(const HermitianModel& base, const std::vector<double>& t_grid,
                                      uint64_t seed = 7);

struct TrichotomyTimes {
    double T = 0.0;         // collapse time 2/n
    double t_zero = 0.0;    // T - 1/n^2, where scal(g(t)) changes sign
    double zeta_zero = 0.0; // (1-2n)/(2n)
    double zeta_flat = 0.0; // -1/n, the Levi-Civita Ricci-flat member
};

TrichotomyTimes trichotomy_times(int n);

// RK4 integration of the flow reduced to (alpha, beta), using pointwise
// Ric^(1) of the reconstructed metric at each stage. Returns the final
// coefficients; exactness of (alpha, beta) = (1 - n t/2, 1) is the check
// that the family is closed under the flow.
std::pair<double, double> flow_rk4_coefficients(const HermitianModel& base, double t_end, int steps,
                                                uint64_t seed = 7);

// Limit tensor h_T = theta (x) theta + J theta (x) J theta at x, in the real
// chart frame; symmetric positive semidefinite of rank 2.
std::vector<double> limit_tensor(const HermitianModel& base, const Pt<double>& x);

}  // namespace vaisman
