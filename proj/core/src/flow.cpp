#include "vaisman/flow.hpp"

#include <cmath>

namespace vaisman {

FlowState flow_state(int n, double t) {
    FlowState st;
    st.T = 2.0 / n;
    if (t < 0.0 || t >= st.T) throw std::domain_error("flow: need 0 <= t < 2/n");
    st.t = t;
    st.alpha = 1.0 - 0.5 * n * t;
    st.beta = 1.0;
    st.zeta = st.alpha - 1.0;
    return st;
}

HermitianModel flow_metric(const HermitianModel& base, double t) {
    FlowState st = flow_state(base.n, t);
    return zeta_family(base, st.zeta);
}

double flow_residual(const HermitianModel& base, double t, double dt, const Pt<double>& x) {
    FlowState st = flow_state(base.n, t);
    if (t - dt < 0.0 || t + dt >= st.T) throw std::domain_error("flow_residual: stencil leaves [0, T)");
    Form plus = flow_metric(base, t + dt).omega(x);
    Form minus = flow_metric(base, t - dt).omega(x);
    Form dot = (plus - minus) * (0.5 / dt);
    Form ric = chern_ricci(flow_metric(base, t), x);
    return sup_coeff(dot + ric);
}

std::vector<FlowRow> flow_diagnostics(const HermitianModel& base, const std::vector<double>& t_grid,
                                      uint64_t seed) {
    const int n = base.n;
    Rng rng(seed);
    Pt<double> x = base.sample(rng);
    double vol0 = [&] {
        MetricAtPoint m = metric_at(base, x);
        return value(m.det_h);
    }();

    std::vector<FlowRow> rows;
    rows.reserve(t_grid.size());
    for (double t : t_grid) {
        HermitianModel mt = flow_metric(base, t);
        FlowRow row;
        row.t = t;
        row.alpha = 1.0 - 0.5 * n * t;
        row.s_chern = chern_scalar(mt, x);
        row.scal_direct = riemann_scalar_direct(mt, x);
        row.scal_formula = scal_formula(n, -0.5 * n * t);
        row.vol_ratio = value(metric_at(mt, x).det_h) / vol0;  // Omega(t)^n / Omega_0^n
        // central-difference residual; clamp the stencil center into (0, T - dt)
        double dt = 1e-3;
        double tc = std::min(std::max(t, dt), 2.0 / n - 2.0 * dt);
        row.residual_flow = flow_residual(base, tc, dt, x);
        rows.push_back(row);
    }
    return rows;
}

TrichotomyTimes trichotomy_times(int n) {
    if (n < 2) throw std::invalid_argument("trichotomy_times: need n >= 2");
    TrichotomyTimes tt;
    tt.T = 2.0 / n;
    tt.t_zero = tt.T - 1.0 / (static_cast<double>(n) * n);
    tt.zeta_zero = zeta_zero(n);
    tt.zeta_flat = zeta_flat(n);
    return tt;
}

namespace {

// Project a (1,1)-form onto span{-d(J theta), theta ^ J theta} at a point by
// least squares on coefficient tables.
std::pair<double, double> project_onto_family(const Form& target, const Form& A, const Form& B) {
    const FormPart<double>* pt = target.find(1, 1);
    const FormPart<double>* pa = A.find(1, 1);
    const FormPart<double>* pb = B.find(1, 1);
    if (!pt || !pa || !pb) throw std::logic_error("project_onto_family: missing (1,1) parts");
    double aa = 0.0, ab = 0.0, bb = 0.0, ta = 0.0, tb = 0.0;
    for (size_t i = 0; i < pa->c.size(); ++i) {
        aa += pa->c[i].re * pa->c[i].re + pa->c[i].im * pa->c[i].im;
        bb += pb->c[i].re * pb->c[i].re + pb->c[i].im * pb->c[i].im;
        ab += pa->c[i].re * pb->c[i].re + pa->c[i].im * pb->c[i].im;
        ta += pt->c[i].re * pa->c[i].re + pt->c[i].im * pa->c[i].im;
        tb += pt->c[i].re * pb->c[i].re + pt->c[i].im * pb->c[i].im;
    }
    double det = aa * bb - ab * ab;
    return {(ta * bb - tb * ab) / det, (tb * aa - ta * ab) / det};
}

}  // namespace

std::pair<double, double> flow_rk4_coefficients(const HermitianModel& base, double t_end, int steps,
                                                uint64_t seed) {
    Rng rng(seed);
    Pt<double> probe = base.sample(rng);
    FormField negdj = base.neg_djtheta;
    FormField thjth = base.theta_jtheta;

    // d(alpha,beta)/dt from pointwise Ric^(1) of the reconstructed metric
    auto rhs = [&](double alpha, double beta) {
        HermitianModel mab = base;
        mab.id = base.id + "+family";
        mab.omega = FormField([negdj, thjth, alpha, beta](const auto& p) {
            return negdj(p) * alpha + thjth(p) * beta;
        }, "omega_family");
        Form ric = chern_ricci(mab, probe);
        auto [a, b] = project_onto_family(ric, negdj(probe), thjth(probe));
        return std::make_pair(-a, -b);
    };

    double alpha = 1.0, beta = 1.0;
    double h = t_end / steps;
    for (int k = 0; k < steps; ++k) {
        auto [k1a, k1b] = rhs(alpha, beta);
        auto [k2a, k2b] = rhs(alpha + 0.5 * h * k1a, beta + 0.5 * h * k1b);
        auto [k3a, k3b] = rhs(alpha + 0.5 * h * k2a, beta + 0.5 * h * k2b);
        auto [k4a, k4b] = rhs(alpha + h * k3a, beta + h * k3b);
        alpha += h / 6.0 * (k1a + 2.0 * k2a + 2.0 * k3a + k4a);
        beta += h / 6.0 * (k1b + 2.0 * k2b + 2.0 * k3b + k4b);
    }
    return {alpha, beta};
}

std::vector<double> limit_tensor(const HermitianModel& base, const Pt<double>& x) {
    const int n2 = 2 * base.n;
    Form theta = base.theta(x);
    std::vector<double> th(n2), jth(n2);
    std::vector<double> e(n2, 0.0);
    Form jtheta = j_action(theta);
    for (int mu = 0; mu < n2; ++mu) {
        e[mu] = 1.0;
        th[mu] = eval_form<double>(theta, {e.data()}).re;
        jth[mu] = eval_form<double>(jtheta, {e.data()}).re;
        e[mu] = 0.0;
    }
    std::vector<double> h(static_cast<size_t>(n2) * n2);
    for (int mu = 0; mu < n2; ++mu)
        for (int nu = 0; nu < n2; ++nu)
            h[static_cast<size_t>(mu) * n2 + nu] = th[mu] * th[nu] + jth[mu] * jth[nu];
    return h;
}

}  // namespace vaisman
