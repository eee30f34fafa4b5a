#include "vaisman/curvature.hpp"

#include <cmath>

namespace vaisman {

namespace {

// log det of the Hermitian coefficient matrix of Omega, as a scalar field
template <class Om>
auto log_det_field(const Om& omega) {
    return [omega](const auto& pt) {
        using T = std::decay_t<decltype(pt.x[0])>;
        auto m = metric_from_form(omega(pt));
        return Cx<T>{log(m.det_h), T(0.0)};
    };
}

struct Codifferentials {
    Form delstar_omega;    // (0,1)
    Form delbarstar_omega; // (1,0)
    Form ddstar;           // del delstar Omega, (1,1)
    Form dbdbstar;         // delbar delbarstar Omega, (1,1)
};

Codifferentials codifferentials(const HermitianModel& model, const Pt<double>& x) {
    FormField om = model.omega;
    auto met = [om](const auto& pt) { return metric_from_form(om(pt)); };
    Codifferentials out;
    out.delstar_omega = delstar_of(om, met, x);
    out.delbarstar_omega = delbarstar_of(om, met, x);
    out.ddstar = del_of([&](const auto& pt) { return delstar_of(om, met, pt); }, x);
    out.dbdbstar = delbar_of([&](const auto& pt) { return delbarstar_of(om, met, pt); }, x);
    return out;
}

double form_rel_err(const Form& got, const Form& want) {
    double scale = std::max({1.0, sup_coeff(got), sup_coeff(want)});
    return sup_coeff(got - want) / scale;
}

double scalar_rel_err(double got, double want) {
    return std::abs(got - want) / std::max({1.0, std::abs(got), std::abs(want)});
}

}  // namespace

Form chern_ricci(const HermitianModel& model, const Pt<double>& x) {
    Form ric = ddc_scalar(log_det_field(model.omega), x);
    ric *= -0.5;
    return ric;
}

Form lc_ricci(const HermitianModel& model, const Pt<double>& x) {
    Codifferentials cd = codifferentials(model, x);
    return chern_ricci(model, x) - (cd.ddstar + cd.dbdbstar) * 0.5;
}

Form upsilon(const HermitianModel& model, const Pt<double>& x) {
    if (!model.has_cone)
        throw std::logic_error("upsilon: model exposes no local conformal potential");
    // Upsilon = -(1/2) d d^c log det(e^{-f_U} Omega), f_U = -lee_scale log rho^2
    FormField om = model.omega;
    ScalarField lr2 = model.log_rho2;
    double lee = model.lee_scale;
    int n = model.n;
    auto weighted = [om, lr2, lee, n](const auto& pt) {
        using T = std::decay_t<decltype(pt.x[0])>;
        auto m = metric_from_form(om(pt));
        return Cx<T>{log(m.det_h) + lee * n * lr2(pt).re, T(0.0)};
    };
    Form ups = ddc_scalar(weighted, x);
    ups *= -0.5;
    return ups;
}

double chern_scalar(const HermitianModel& model, const Pt<double>& x) {
    MetricAtPoint m = metric_at(model, x);
    return trace_omega(chern_ricci(model, x), m).re;
}

double torsion_norm_sq(const HermitianModel& model, const Pt<double>& x) {
    FormField om = model.omega;
    MetricAtPoint m = metric_at(model, x);
    Form omega = model.omega(x);
    Form ddbar = del_of([&](const auto& pt) { return delbar_of(om, pt); }, x);
    Form lam = lefschetz_adjoint(ddbar, m) * kI;
    Codifferentials cd = codifferentials(model, x);
    return inner(lam, omega, m).re + inner(cd.ddstar + cd.dbdbstar, omega, m).re;
}

double riemann_scalar_direct(const HermitianModel& model, const Pt<double>& x) {
    return scalar_curvature(real_metric_field(model), x);
}

double riemann_scalar_via_relation(const HermitianModel& model, const Pt<double>& x) {
    MetricAtPoint m = metric_at(model, x);
    Form omega = model.omega(x);
    Codifferentials cd = codifferentials(model, x);
    double s_c = chern_scalar(model, x);
    double mixed = inner(cd.ddstar + cd.dbdbstar, omega, m).re;
    double delstar_sq = norm_sq(cd.delstar_omega, m);
    return 2.0 * s_c + (mixed - 2.0 * delstar_sq) - 0.5 * torsion_norm_sq(model, x);
}

CurvatureReport curvature_report(const HermitianModel& model, const Pt<double>& x,
                                 double tol_identity, double tol_oracle) {
    const int n = model.n;
    const double zeta = model.zeta;
    CurvatureReport rep;
    rep.model = model.id;
    rep.zeta = zeta;
    rep.point.assign(x.x.begin(), x.x.begin() + x.n2);

    MetricAtPoint m = metric_at(model, x);
    Form ric = chern_ricci(model, x);
    Form lcric = lc_ricci(model, x);

    rep.s_chern = trace_omega(ric, m).re;
    rep.scal_direct = riemann_scalar_direct(model, x);
    rep.scal_via_relation = riemann_scalar_via_relation(model, x);
    rep.torsion_sq = torsion_norm_sq(model, x);
    rep.chern_ricci_norm = std::sqrt(std::abs(norm_sq(ric, m)));
    rep.lc_ricci_norm = std::sqrt(std::abs(norm_sq(lcric, m)));

    RicciData rd = ricci_tensor(real_metric_field(model), x);
    std::vector<double> ev = sym_eigenvalues(rd.ricci, 2 * n);
    rep.ric_eigen_min = ev.front();
    rep.ric_eigen_max = ev.back();

    auto add = [&](const std::string& name, double err, double tol) {
        rep.checks.push_back({name, "", err, tol, err <= tol});
    };

    if (model.has_cone) {
        Form negdj = model.neg_djtheta(x);
        rep.djtheta_norm = std::sqrt(std::abs(norm_sq(negdj, m)));
        add("chern_ricci_vs_djtheta", form_rel_err(ric, negdj * (0.5 * n)), tol_identity);
        double coeff = 0.5 * (n - (n - 1.0) / (1.0 + zeta));
        add("lc_ricci_family_law", form_rel_err(lcric, negdj * coeff), tol_identity);
        add("chern_scalar_formula", scalar_rel_err(rep.s_chern, chern_scalar_formula(n, zeta)), tol_identity);
        add("torsion_formula", scalar_rel_err(rep.torsion_sq, torsion_sq_formula(n, zeta)), tol_identity);
        add("scal_formula", scalar_rel_err(rep.scal_direct, scal_formula(n, zeta)), tol_oracle);
    }
    add("scal_cross_oracle", scalar_rel_err(rep.scal_direct, rep.scal_via_relation), tol_oracle);

    rep.pass = true;
    for (const auto& c : rep.checks) rep.pass = rep.pass && c.pass;
    return rep;
}

VerificationReport run_verification(const HermitianModel& base, int points, uint64_t seed,
                                    const std::vector<double>& zetas, double tol_identity,
                                    double tol_oracle) {
    const int n = base.n;
    VerificationReport rep;
    rep.model = base.id;
    rep.seed = seed;
    rep.points = points;

    Rng rng(seed);
    std::vector<Pt<double>> xs(points);
    for (auto& x : xs) x = base.sample(rng);

    struct Acc {
        std::string name, param;
        double tol = kTolIdentity;
        double worst = 0.0;
    };
    std::vector<Acc> accs;
    auto acc = [&](const std::string& name, const std::string& param, double tol) -> Acc& {
        for (auto& a : accs)
            if (a.name == name && a.param == param) return a;
        accs.push_back({name, param, tol, 0.0});
        return accs.back();
    };
    auto record = [&](const std::string& name, const std::string& param, double tol, double err) {
        Acc& a = acc(name, param, tol);
        a.worst = std::max(a.worst, err);
    };

    // --- base-model invariants -------------------------------------------------
    for (const auto& x : xs) {
        MetricAtPoint m = metric_at(base, x);
        Form omega = base.omega(x);
        Form theta = base.theta(x);
        FormField om = base.omega;
        FormField th = base.theta;

        // Lee form from the trace of d Omega
        Form domega = d_of(om, x);
        Form lee = lefschetz_adjoint(domega, m) * (1.0 / (n - 1.0));
        record("lee_form_trace", "", tol_identity, form_rel_err(lee, theta));

        // l.c.K. structure equation and closedness of theta
        record("lck_structure", "", tol_identity, form_rel_err(domega, wedge(theta, omega)));
        record("lee_form_closed", "", tol_identity, sup_coeff(d_of(th, x)));

        // unit Lee form after calibration
        record("lee_form_unit", "", tol_identity, std::abs(inner(theta, theta, m).re - 1.0));

        // -d(J theta) >= 0 (eigenvalues of the Hermitian coefficient matrix)
        Form negdj = base.neg_djtheta(x);
        const FormPart<double>* part = negdj.find(1, 1);
        std::vector<C> hm(part->c.size());
        for (size_t i = 0; i < hm.size(); ++i) hm[i] = part->c[i] * (-kI);
        std::vector<double> ev = hermitian_eigenvalues(hm, n);
        record("neg_djtheta_nonneg", "", tol_identity, std::max(0.0, -ev.front()));

        // primitive part of d Omega: Lambda((dOmega)_0) = 0, (dOmega)_0 ^ Omega^{n-2} = 0
        Form primitive = domega - lefschetz(lefschetz_adjoint(domega, m), m) * (1.0 / (n - 1.0));
        record("primitive_trace_free", "", tol_identity,
               sup_coeff(lefschetz_adjoint(primitive, m)) / std::max(1.0, sup_coeff(domega)));
        record("primitive_wedge", "", tol_identity,
               sup_coeff(wedge(primitive, wedge_pow(omega, n - 2))) / std::max(1.0, sup_coeff(domega)));

        // deck invariance of Omega
        Form pulled = deck_pullback_omega(base, x);
        record("deck_invariance", "", 1e-9, form_rel_err(pulled, omega));

        // parallel Lee form (Levi-Civita connection of g)
        {
            RealMetricField g = real_metric_field(base);
            auto theta_components = [th, n](const auto& pt) {
                using T = std::decay_t<decltype(pt.x[0])>;
                BasicForm<T> f = th(pt);
                std::vector<T> comp(2 * n);
                std::vector<T> e(2 * n, T(0.0));
                for (int mu = 0; mu < 2 * n; ++mu) {
                    e[mu] = T(1.0);
                    comp[mu] = eval_form<T>(f, {e.data()}).re;
                    e[mu] = T(0.0);
                }
                return comp;
            };
            std::vector<double> nab = covariant_derivative_oneform(g, theta_components, x);
            double worst = 0.0;
            for (double v : nab) worst = std::max(worst, std::abs(v));
            record("lee_form_parallel", "", tol_oracle, worst);
        }

        // Upsilon vanishes for the cone-induced metric
        record("upsilon_vanishes", "", tol_identity, sup_coeff(upsilon(base, x)));
    }

    // --- family laws at each zeta ------------------------------------------------
    for (double zeta : zetas) {
        HermitianModel mz = zeta_family(base, zeta);
        char buf[32];
        std::snprintf(buf, sizeof(buf), "zeta=%g", zeta);
        std::string param(buf);
        FormField om = mz.omega;
        FormField th = mz.theta;

        for (const auto& x : xs) {
            MetricAtPoint m = metric_at(mz, x);
            Form omega = mz.omega(x);
            Form theta = mz.theta(x);
            Form negdj = mz.neg_djtheta(x);
            double u = 1.0 + mz.zeta;

            // d(Omega^{n-1}) = (n-1) theta ^ Omega^{n-1}
            auto om_pow = [om, n](const auto& pt) { return wedge_pow(om(pt), n - 1); };
            Form lhs = d_of(om_pow, x);
            Form rhs = wedge(theta, wedge_pow(omega, n - 1)) * (n - 1.0);
            record("d_omega_power", param, tol_identity, form_rel_err(lhs, rhs));

            // torsion (1,0)-form: Lambda(del Omega) = -i delbar* Omega
            auto met = [om](const auto& pt) { return metric_from_form(om(pt)); };
            Form tau = lefschetz_adjoint(del_of(om, x), m);
            Form tau_codiff = delbarstar_of(om, met, x) * (-kI);
            record("torsion_form_codiff", param, tol_identity, form_rel_err(tau, tau_codiff));

            // theta = J(delta Omega) / (n-1)
            Form delta_omega = codiff_of(om, met, x);
            record("lee_from_codiff", param, tol_identity,
                   form_rel_err(j_action(delta_omega) * (1.0 / (n - 1.0)), theta));

            // Vaisman decomposition Omega_zeta = -(1+zeta) d(J theta) + theta ^ J theta
            Form recon = negdj * u + mz.theta_jtheta(x);
            record("vaisman_decomposition", param, tol_identity, form_rel_err(omega, recon));

            // d(J theta_zeta) = -(2/(n-1)) i delbar tau
            auto jtheta = [th](const auto& pt) { return j_action(th(pt)); };
            Form djth = d_of(jtheta, x);
            auto tau_field = [om, met](const auto& pt) {
                return lefschetz_adjoint(del_of(om, pt), metric_from_form(om(pt)));
            };
            Form dbar_tau = delbar_of(tau_field, x);
            record("djtheta_vs_dbar_tau", param, tol_identity,
                   form_rel_err(djth, dbar_tau * (kI * (-2.0 / (n - 1.0)))));

            // codifferential sum and the Chern/Levi-Civita Ricci laws
            Codifferentials cd = codifferentials(mz, x);
            Form sum = cd.ddstar + cd.dbdbstar;
            record("codiff_sum", param, tol_identity,
                   form_rel_err(sum, negdj * ((n - 1.0) / u)));

            Form ric = chern_ricci(mz, x);
            record("chern_ricci_vs_djtheta", param, tol_identity,
                   form_rel_err(ric, negdj * (0.5 * n)));

            Form lcric = lc_ricci(mz, x);
            record("lc_ricci_family_law", param, tol_identity,
                   form_rel_err(lcric, negdj * (0.5 * (n - (n - 1.0) / u))));

            // Ric^(1) = Upsilon - (n/2) d(J theta_model)
            Form ups = upsilon(mz, x);
            Form djth_model = negdj * (-mz.lee_scale);
            record("chern_ricci_vs_upsilon", param, tol_identity,
                   form_rel_err(ric, ups - djth_model * (0.5 * n)));

            // *Omega = Omega^{n-1}/(n-1)!
            double fct = 1.0;
            for (int k = 2; k <= n - 1; ++k) fct *= k;
            record("star_omega", param, tol_identity,
                   form_rel_err(hodge_star(omega, m), wedge_pow(omega, n - 1) * (1.0 / fct)));

            // scalar identities of the family
            double want = (n - 1.0) / u;
            record("codiff_inner", param, tol_identity,
                   scalar_rel_err(inner(sum, omega, m).re, want * want));
            record("delstar_norm", param, tol_identity,
                   scalar_rel_err(norm_sq(cd.delstar_omega, m), 0.5 * want * want));
            record("chern_scalar_formula", param, tol_identity,
                   scalar_rel_err(trace_omega(ric, m).re, chern_scalar_formula(n, mz.zeta)));
            record("torsion_formula", param, tol_identity,
                   scalar_rel_err(torsion_norm_sq(mz, x), torsion_sq_formula(n, mz.zeta)));
        }

        // cross-oracle scalar checks are through the Riemann tensor: one batch per zeta
        {
            double s_lo = 0.0, s_hi = 0.0;
            for (size_t i = 0; i < xs.size(); ++i) {
                double scal = riemann_scalar_direct(mz, xs[i]);
                record("scal_formula", param, tol_oracle,
                       scalar_rel_err(scal, scal_formula(n, mz.zeta)));
                record("scal_cross_oracle", param, tol_oracle,
                       scalar_rel_err(scal, riemann_scalar_via_relation(mz, xs[i])));
                s_lo = i == 0 ? scal : std::min(s_lo, scal);
                s_hi = i == 0 ? scal : std::max(s_hi, scal);
            }
            // homogeneity: constancy across the fundamental domain
            record("scal_constancy", param, 1e-7,
                   (s_hi - s_lo) / std::max(1.0, std::abs(s_hi)));
        }
    }

    for (const auto& a : accs)
        rep.records.push_back({a.name, a.param, a.worst, a.tol, a.worst <= a.tol});
    rep.pass = true;
    for (const auto& r : rep.records) rep.pass = rep.pass && r.pass;
    return rep;
}

bool trichotomy_holds(const HermitianModel& base, const std::vector<double>& zetas, uint64_t seed) {
    Rng rng(seed);
    Pt<double> x = base.sample(rng);
    for (double z : zetas) {
        HermitianModel mz = zeta_family(base, z);
        double scal = riemann_scalar_direct(mz, x);
        double want = z - zeta_zero(base.n);
        if (want > 0.0 && !(scal > 0.0)) return false;
        if (want < 0.0 && !(scal < 0.0)) return false;
        if (want == 0.0 && std::abs(scal) > kTolOracle) return false;
    }
    return true;
}

}  // namespace vaisman
