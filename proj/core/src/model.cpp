#include "vaisman/model.hpp"

#include <cmath>
#include <sstream>

namespace vaisman {

namespace {

template <class S>
Cx<S> coord(const Pt<S>& p, int j) {
    return {p.x[2 * j], p.x[2 * j + 1]};
}

// ----- Hopf cone over the round sphere: chart C^n minus the origin -----------

struct HopfKernel {
    int n;

    template <class S>
    S r2(const Pt<S>& p) const {
        S s(0.0);
        for (int i = 0; i < 2 * n; ++i) s += p.x[i] * p.x[i];
        return s;
    }

    template <class S>
    BasicForm<S> theta(const Pt<S>& p, double lee) const {
        S rr = r2(p);
        BasicForm<S> f(n);
        auto& hol = f.table(1, 0);
        auto& anti = f.table(0, 1);
        for (int j = 0; j < n; ++j) {
            Cx<S> u = conj(coord(p, j)) / rr * (-lee);
            hol[j] = u;
            anti[j] = conj(u);
        }
        return f;
    }

    // -d(J theta) = 2i del delbar log r^2
    template <class S>
    BasicForm<S> neg_djtheta(const Pt<S>& p) const {
        S rr = r2(p);
        S rr2 = rr * rr;
        std::vector<Cx<S>> h(static_cast<size_t>(n) * n);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k) {
                Cx<S> v = conj(coord(p, j)) * coord(p, k) / rr2 * (-2.0);
                if (j == k) v += Cx<S>{2.0 / rr, S(0.0)};
                h[static_cast<size_t>(j) * n + k] = v;
            }
        return form_from_hermitian<S>(n, h);
    }

    template <class S>
    BasicForm<S> theta_jtheta(const Pt<S>& p) const {
        S rr = r2(p);
        S rr2 = rr * rr;
        std::vector<Cx<S>> h(static_cast<size_t>(n) * n);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                h[static_cast<size_t>(j) * n + k] = conj(coord(p, j)) * coord(p, k) / rr2 * 2.0;
        return form_from_hermitian<S>(n, h);
    }

    template <class S>
    BasicForm<S> omega_cy(const Pt<S>&) const {
        std::vector<Cx<S>> h(static_cast<size_t>(n) * n);
        for (int j = 0; j < n; ++j) h[static_cast<size_t>(j) * n + j] = Cx<S>{S(0.5), S(0.0)};
        return form_from_hermitian<S>(n, h);
    }

    template <class S>
    BasicForm<S> omega(const Pt<S>& p, double kappa) const {
        S rr = r2(p);
        std::vector<Cx<S>> h(static_cast<size_t>(n) * n);
        for (int j = 0; j < n; ++j) h[static_cast<size_t>(j) * n + j] = Cx<S>{0.5 * kappa / rr, S(0.0)};
        return form_from_hermitian<S>(n, h);
    }
};

// ----- Fano sphere-bundle cone: O(-l) over CP^m, chart (z in C^m, w != 0) ----
//
// Fiber metric H = (1+|z|^2)^l |w|^2, cone radius rho = r^{1/l} = H^{1/(2l)}.
// The exponent is I(X)/(l (dim X + 1)) = 1/l for X = CP^m; with it the cone
// Kahler form (1/4) dd^c rho^2 is Ricci-flat.

struct LensKernel {
    int m;    // dim of the projective base
    int ell;  // tensor power
    int n;    // chart dimension, m+1
    double s; // 1.0 / ell

    template <class S>
    S one_z2(const Pt<S>& p) const {
        S s2(1.0);
        for (int i = 0; i < 2 * m; ++i) s2 += p.x[i] * p.x[i];
        return s2;
    }

    template <class S>
    S w2(const Pt<S>& p) const {
        return p.x[2 * m] * p.x[2 * m] + p.x[2 * m + 1] * p.x[2 * m + 1];
    }

    template <class S>
    S log_H(const Pt<S>& p) const {
        return static_cast<double>(ell) * log(one_z2(p)) + log(w2(p));
    }

    template <class S>
    S H(const Pt<S>& p) const {
        return exp(log_H(p));
    }

    template <class S>
    S rho2(const Pt<S>& p) const {
        return exp(s * log_H(p));
    }

    template <class S>
    BasicForm<S> theta(const Pt<S>& p, double lee) const {
        // theta = -d log rho^2 = -s d log H
        S oz = one_z2(p);
        Cx<S> w = coord(p, m);
        BasicForm<S> f(n);
        auto& hol = f.table(1, 0);
        auto& anti = f.table(0, 1);
        for (int j = 0; j < m; ++j) {
            Cx<S> u = conj(coord(p, j)) / oz * (-lee * s * ell);
            hol[j] = u;
            anti[j] = conj(u);
        }
        Cx<S> uw = conj(w) / w2(p) * (-lee * s);
        hol[m] = uw;
        anti[m] = conj(uw);
        return f;
    }

    template <class S>
    BasicForm<S> neg_djtheta(const Pt<S>& p) const {
        // 2 s l * del delbar log(1+|z|^2); the fiber block is pluriharmonic
        S oz = one_z2(p);
        S oz2 = oz * oz;
        std::vector<Cx<S>> h(static_cast<size_t>(n) * n);
        for (int j = 0; j < m; ++j)
            for (int k = 0; k < m; ++k) {
                Cx<S> v = conj(coord(p, j)) * coord(p, k) / oz2 * (-2.0 * s * ell);
                if (j == k) v += Cx<S>{2.0 * s * ell / oz, S(0.0)};
                h[static_cast<size_t>(j) * n + k] = v;
            }
        return form_from_hermitian<S>(n, h);
    }

    template <class S>
    BasicForm<S> theta_jtheta(const Pt<S>& p) const {
        S oz = one_z2(p);
        std::vector<Cx<S>> u(n);
        for (int j = 0; j < m; ++j) u[j] = conj(coord(p, j)) / oz * (-s * ell);
        u[m] = conj(coord(p, m)) / w2(p) * (-s);
        std::vector<Cx<S>> h(static_cast<size_t>(n) * n);
        for (int j = 0; j < n; ++j)
            for (int k = 0; k < n; ++k)
                h[static_cast<size_t>(j) * n + k] = u[j] * conj(u[k]) * 2.0;
        return form_from_hermitian<S>(n, h);
    }

    template <class S>
    std::vector<Cx<S>> omega_cy_h(const Pt<S>& p) const {
        auto pot = [this](const auto& q) {
            using T = std::decay_t<decltype(q.x[0])>;
            return Cx<T>{rho2(q), T(0.0)};
        };
        std::vector<Cx<S>> h = complex_hessian(pot, p);
        for (auto& v : h) v = v * 0.5;
        return h;
    }

    template <class S>
    BasicForm<S> omega_cy(const Pt<S>& p) const {
        return form_from_hermitian<S>(n, omega_cy_h(p));
    }

    template <class S>
    BasicForm<S> omega(const Pt<S>& p, double kappa) const {
        std::vector<Cx<S>> h = omega_cy_h(p);
        S weight = exp(-s * log_H(p)) * kappa;  // kappa / rho^2
        for (auto& v : h) v = v * weight;
        return form_from_hermitian<S>(n, h);
    }
};

// Least-squares scalar ratio of (1,1) coefficient tables: target ~ kappa * raw.
double solve_scale(const Form& target, const Form& raw) {
    const FormPart<double>* pt = target.find(1, 1);
    const FormPart<double>* pr = raw.find(1, 1);
    if (!pt || !pr) throw std::logic_error("calibration: missing (1,1) tables");
    double num = 0.0, den = 0.0;
    for (size_t i = 0; i < pr->c.size(); ++i) {
        num += pt->c[i].re * pr->c[i].re + pt->c[i].im * pr->c[i].im;
        den += abs2(pr->c[i]);
    }
    if (den == 0.0) throw std::logic_error("calibration: vanishing fundamental form");
    return num / den;
}

// Solve for kappa at the base point, then verify the Vaisman identity and the
// unit Lee-form normalization at sampled points.
template <class MakeOmega>
double calibrate(const HermitianModel& model, const MakeOmega& omega_raw, const Pt<double>& base) {
    Form target = model.neg_djtheta(base) + model.theta_jtheta(base);
    double kappa = solve_scale(target, omega_raw(base));

    Rng rng(0x5eedull);
    for (int rep = 0; rep < 8; ++rep) {
        Pt<double> x = model.sample(rng);
        Form want = model.neg_djtheta(x) + model.theta_jtheta(x);
        Form got = omega_raw(x) * kappa;
        double scale = std::max(1.0, sup_coeff(want));
        if (sup_coeff(want - got) > 1e-10 * scale)
            throw std::logic_error(model.id + ": calibration failed the Vaisman identity");
        MetricAtPoint mp = metric_from_form(got);
        double tn = inner(model.theta(x), model.theta(x), mp).re;
        if (std::abs(tn - 1.0) > 1e-9)
            throw std::logic_error(model.id + ": calibrated Lee form is not unit");
    }
    return kappa;
}

std::vector<C> identity_matrix(int n) {
    std::vector<C> id(static_cast<size_t>(n) * n, C{});
    for (int i = 0; i < n; ++i) id[static_cast<size_t>(i) * n + i] = C{1.0, 0.0};
    return id;
}

}  // namespace

HermitianModel hopf_cone(int n) {
    if (n < 2 || n > 5) throw std::invalid_argument("hopf: need 2 <= n <= 5");
    HopfKernel ker{n};
    HermitianModel model;
    model.id = "hopf:" + std::to_string(n);
    model.kind = ModelKind::hopf;
    model.n = n;
    model.c = std::exp(1.0);
    model.fiber_exp = 1.0;

    model.theta = FormField([ker](const auto& p) { return ker.theta(p, 1.0); }, "theta");
    model.neg_djtheta = FormField([ker](const auto& p) { return ker.neg_djtheta(p); }, "-d(Jtheta)");
    model.theta_jtheta = FormField([ker](const auto& p) { return ker.theta_jtheta(p); }, "theta^Jtheta");
    model.omega_cy = FormField([ker](const auto& p) { return ker.omega_cy(p); }, "omega_cy");
    model.log_rho2 = ScalarField([ker](const auto& p) {
        using T = std::decay_t<decltype(p.x[0])>;
        return Cx<T>{log(ker.r2(p)), T(0.0)};
    }, "log rho^2");
    model.rho2 = ScalarField([ker](const auto& p) {
        using T = std::decay_t<decltype(p.x[0])>;
        return Cx<T>{ker.r2(p), T(0.0)};
    }, "rho^2");

    double c = model.c;
    model.sample = [n, c](Rng& rng) {
        Pt<double> p;
        p.n2 = 2 * n;
        double norm2 = 0.0;
        for (int i = 0; i < 2 * n; ++i) {
            p.x[i] = rng.gaussian();
            norm2 += p.x[i] * p.x[i];
        }
        double radius = std::exp(rng.uniform() * std::log(c)) / std::sqrt(norm2);
        for (int i = 0; i < 2 * n; ++i) p.x[i] *= radius;
        return p;
    };
    model.euler = [n](const Pt<double>& p) {
        return std::vector<double>(p.x.begin(), p.x.begin() + 2 * n);
    };
    model.to_link = [ker, n](const Pt<double>& p) {
        double r = std::sqrt(ker.r2(p));
        Pt<double> q = p;
        for (int i = 0; i < 2 * n; ++i) q.x[i] /= r;
        return q;
    };

    Pt<double> base;
    base.n2 = 2 * n;
    base.x[0] = 1.0;
    model.kappa = calibrate(model, [ker](const Pt<double>& p) { return ker.omega(p, 1.0); }, base);
    double kappa = model.kappa;
    model.omega = FormField([ker, kappa](const auto& p) { return ker.omega(p, kappa); }, "omega");
    model.deck = identity_matrix(n);
    for (auto& v : model.deck) v = v * model.c;
    return model;
}

HermitianModel lens_cone(int m, int ell) {
    if (m < 1 || m > 4 || ell < 1 || ell > 8) throw std::invalid_argument("lens: need 1 <= m <= 4, 1 <= l <= 8");
    LensKernel ker{m, ell, m + 1, 1.0 / ell};
    HermitianModel model;
    model.id = "lens:" + std::to_string(m) + ":" + std::to_string(ell);
    model.kind = ModelKind::lens;
    model.n = m + 1;
    model.c = std::exp(1.0);
    model.fiber_exp = static_cast<double>(ell);

    model.theta = FormField([ker](const auto& p) { return ker.theta(p, 1.0); }, "theta");
    model.neg_djtheta = FormField([ker](const auto& p) { return ker.neg_djtheta(p); }, "-d(Jtheta)");
    model.theta_jtheta = FormField([ker](const auto& p) { return ker.theta_jtheta(p); }, "theta^Jtheta");
    model.omega_cy = FormField([ker](const auto& p) { return ker.omega_cy(p); }, "omega_cy");
    model.log_rho2 = ScalarField([ker](const auto& p) {
        using T = std::decay_t<decltype(p.x[0])>;
        return Cx<T>{ker.s * ker.log_H(p), T(0.0)};
    }, "log rho^2");
    model.rho2 = ScalarField([ker](const auto& p) {
        using T = std::decay_t<decltype(p.x[0])>;
        return Cx<T>{ker.rho2(p), T(0.0)};
    }, "rho^2");

    double c = model.c;
    model.sample = [ker, c](Rng& rng) {
        Pt<double> p;
        p.n2 = 2 * ker.n;
        for (int i = 0; i < 2 * ker.m; ++i) p.x[i] = 0.6 * rng.gaussian();
        // pick log rho uniform in the fundamental domain, solve for |w|
        double log_rho = rng.uniform() * std::log(c);
        double oz = 1.0;
        for (int i = 0; i < 2 * ker.m; ++i) oz += p.x[i] * p.x[i];
        // log H = 2 log rho / s ; log|w|^2 = log H - l log(1+|z|^2)
        double log_w2 = 2.0 * log_rho / ker.s - ker.ell * std::log(oz);
        double w_abs = std::exp(0.5 * log_w2);
        double phase = rng.uniform() * 2.0 * M_PI;
        p.x[2 * ker.m] = w_abs * std::cos(phase);
        p.x[2 * ker.m + 1] = w_abs * std::sin(phase);
        return p;
    };
    model.euler = [ker](const Pt<double>& p) {
        std::vector<double> v(2 * ker.n, 0.0);
        v[2 * ker.m] = p.x[2 * ker.m] / ker.s;
        v[2 * ker.m + 1] = p.x[2 * ker.m + 1] / ker.s;
        return v;
    };
    model.to_link = [ker](const Pt<double>& p) {
        double h = value(ker.H(p));
        Pt<double> q = p;
        q.x[2 * ker.m] /= std::sqrt(h);
        q.x[2 * ker.m + 1] /= std::sqrt(h);
        return q;
    };

    // g_{C,a} = a g_C + (1-a) dr (x) dr + (a^2-a) r^2 eta (x) eta, with r^2 = H
    model.deformed_cone = [ker](double a) {
        if (a <= 0.0) throw std::invalid_argument("a_deformation: need a > 0");
        auto eval = [ker, a](const auto& p) {
            using T = std::decay_t<decltype(p.x[0])>;
            const int n2 = 2 * ker.n;
            auto pot = [&ker](const auto& q) {
                using U = std::decay_t<decltype(q.x[0])>;
                return Cx<U>{ker.H(q), U(0.0)};
            };
            std::vector<Cx<T>> hC = complex_hessian(pot, p);
            for (auto& v : hC) v = v * 0.5;
            SymMat<T> g = real_metric_from_form(form_from_hermitian<T>(ker.n, hC));
            // first derivatives of H for dr and eta
            T Hv = ker.H(p);
            std::vector<T> dH(n2);
            for (int mu = 0; mu < n2; ++mu) {
                auto lifted = lift_point(p, mu);
                dH[mu] = ker.H(lifted).d;
            }
            T r = sqrt(Hv);
            std::vector<T> dr(n2), eta(n2);
            for (int mu = 0; mu < n2; ++mu) dr[mu] = dH[mu] / (2.0 * r);
            for (int k = 0; k < ker.n; ++k) {
                eta[2 * k] = dH[2 * k + 1] / Hv * (-0.5);  // -1/2 dlogH(J e_x)
                eta[2 * k + 1] = dH[2 * k] / Hv * 0.5;
            }
            for (int mu = 0; mu < n2; ++mu)
                for (int nu = 0; nu < n2; ++nu) {
                    T v = g[static_cast<size_t>(mu) * n2 + nu] * a;
                    v += dr[mu] * dr[nu] * (1.0 - a);
                    v += eta[mu] * eta[nu] * Hv * (a * a - a);
                    g[static_cast<size_t>(mu) * n2 + nu] = v;
                }
            return g;
        };
        return RealMetricField(eval, 2 * ker.n);
    };

    Pt<double> base;
    base.n2 = 2 * model.n;
    base.x[2 * m] = 1.0;  // z = 0, w = 1
    model.kappa = calibrate(model, [ker](const Pt<double>& p) { return ker.omega(p, 1.0); }, base);
    double kappa = model.kappa;
    model.omega = FormField([ker, kappa](const auto& p) { return ker.omega(p, kappa); }, "omega");
    model.deck = identity_matrix(model.n);
    model.deck[static_cast<size_t>(m) * model.n + m] = C{std::pow(model.c, model.fiber_exp), 0.0};
    return model;
}

HermitianModel flat_chart(int n) {
    if (n < 1 || n > 5) throw std::invalid_argument("flat: need 1 <= n <= 5");
    HermitianModel model;
    model.id = "flat:" + std::to_string(n);
    model.kind = ModelKind::flat;
    model.n = n;
    model.has_cone = false;
    model.kappa = 1.0;
    model.omega = FormField([n](const auto& p) {
        using T = std::decay_t<decltype(p.x[0])>;
        std::vector<Cx<T>> h(static_cast<size_t>(n) * n);
        for (int j = 0; j < n; ++j) h[static_cast<size_t>(j) * n + j] = Cx<T>{T(0.5), T(0.0)};
        return form_from_hermitian<T>(n, h);
    }, "omega");
    model.sample = [n](Rng& rng) {
        Pt<double> p;
        p.n2 = 2 * n;
        for (int i = 0; i < 2 * n; ++i) p.x[i] = rng.gaussian();
        return p;
    };
    return model;
}

HermitianModel zeta_family(const HermitianModel& base, double zeta) {
    if (!base.has_cone) throw std::logic_error("zeta_family: model has no Vaisman structure");
    double total = base.zeta + zeta;
    if (total <= -1.0) throw std::domain_error("zeta_family: need zeta > -1 (metric degenerates)");
    HermitianModel model = base;
    model.zeta = total;
    model.lee_scale = 1.0 / (1.0 + total);
    FormField om = base.omega;
    FormField dj = base.neg_djtheta;
    model.omega = FormField([om, dj, zeta](const auto& p) {
        return om(p) + dj(p) * zeta;
    }, "omega_zeta");
    FormField th = base.theta;
    double rescale = (1.0 + base.zeta) / (1.0 + total);
    model.theta = FormField([th, rescale](const auto& p) { return th(p) * rescale; }, "theta_zeta");
    return model;
}

DeckDescriptor suspension_data(const HermitianModel& model, double c, const std::vector<C>& unitary) {
    if (!model.has_cone) throw std::logic_error("suspension: model has no cone structure");
    if (c <= 1.0) throw std::invalid_argument("suspension: need c > 1");
    const int n = model.n;
    int k = model.kind == ModelKind::hopf ? n : 1;
    std::vector<C> u = unitary.empty() ? identity_matrix(k) : unitary;
    if (static_cast<int>(u.size()) != k * k)
        throw std::invalid_argument("suspension: unitary block must be " + std::to_string(k) + "x" +
                                    std::to_string(k));
    // reject non-unitary chart maps: they are not Sasaki automorphisms
    for (int i = 0; i < k; ++i)
        for (int j = 0; j < k; ++j) {
            C dot{};
            for (int l = 0; l < k; ++l) dot += u[static_cast<size_t>(i) * k + l] * conj(u[static_cast<size_t>(j) * k + l]);
            double want = i == j ? 1.0 : 0.0;
            if (std::abs(dot.re - want) > 1e-12 || std::abs(dot.im) > 1e-12)
                throw std::invalid_argument("suspension: chart map is not unitary");
        }
    DeckDescriptor deck;
    deck.c = c;
    deck.fundamental_length = std::log(c * c);
    deck.chart_map = identity_matrix(n);
    if (model.kind == ModelKind::hopf) {
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) deck.chart_map[static_cast<size_t>(i) * n + j] = u[static_cast<size_t>(i) * n + j] * c;
    } else {
        deck.chart_map[static_cast<size_t>(n - 1) * n + (n - 1)] =
            u[0] * std::pow(c, model.fiber_exp);
    }
    return deck;
}

HermitianModel with_suspension(HermitianModel model, const DeckDescriptor& deck) {
    model.c = deck.c;
    model.deck = deck.chart_map;
    return model;
}

Pt<double> deck_apply(const HermitianModel& model, const Pt<double>& x) {
    const int n = model.n;
    Pt<double> out;
    out.n2 = x.n2;
    for (int j = 0; j < n; ++j) {
        C zj{};
        for (int k = 0; k < n; ++k) zj += model.deck[static_cast<size_t>(j) * n + k] * coord(x, k);
        out.x[2 * j] = zj.re;
        out.x[2 * j + 1] = zj.im;
    }
    return out;
}

Form deck_pullback_omega(const HermitianModel& model, const Pt<double>& x) {
    Form at_image = model.omega(deck_apply(model, x));
    return pullback_linear(at_image, model.deck);
}

RealMetricField real_metric_field(const HermitianModel& model) {
    FormField om = model.omega;
    return RealMetricField([om](const auto& p) { return real_metric_from_form(om(p)); }, 2 * model.n);
}

RealMetricField a_deformation(const HermitianModel& model, double a) {
    if (!model.deformed_cone) throw std::logic_error("a_deformation: only defined for lens models");
    return model.deformed_cone(a);
}

SasakiCheckReport sasaki_check(const HermitianModel& model, const Pt<double>& x_in) {
    if (!model.has_cone) throw std::logic_error("sasaki_check: model has no cone structure");
    const int n = model.n;
    const int n2 = 2 * n;
    Pt<double> x = model.to_link(x_in);

    ScalarField lr2 = model.log_rho2;
    auto eta_form = [lr2](const auto& p) {
        // eta = d^c log rho = (1/2) J(d log rho^2)
        return j_action(d_scalar(lr2, p)) * 0.5;
    };

    Form eta = eta_form(x);
    std::vector<double> etav(n2);
    {
        std::vector<double> e(n2, 0.0);
        for (int mu = 0; mu < n2; ++mu) {
            e[mu] = 1.0;
            etav[mu] = eval_form<double>(eta, {e.data()}).re;
            e[mu] = 0.0;
        }
    }
    std::vector<double> xi(n2);
    {
        std::vector<double> eu = model.euler(x);
        for (int k = 0; k < n; ++k) {  // xi = J(rho d_rho)
            xi[2 * k] = -eu[2 * k + 1];
            xi[2 * k + 1] = eu[2 * k];
        }
    }

    SasakiCheckReport rep;
    {
        double pairing = 0.0;
        for (int mu = 0; mu < n2; ++mu) pairing += etav[mu] * xi[mu];
        rep.eta_xi = std::abs(pairing - 1.0);
    }

    Form deta = d_of(eta_form, x);
    {
        std::vector<double> e(n2, 0.0);
        double worst = 0.0;
        for (int mu = 0; mu < n2; ++mu) {
            e[mu] = 1.0;
            C v = eval_form<double>(deta, {xi.data(), e.data()});
            worst = std::max(worst, std::hypot(v.re, v.im));
            e[mu] = 0.0;
        }
        rep.xi_hook_deta = worst;
    }

    // tangent basis of the link: kernel of d rho
    Form drho2 = d_scalar(model.rho2, x);
    std::vector<double> drho(n2);
    {
        std::vector<double> e(n2, 0.0);
        for (int mu = 0; mu < n2; ++mu) {
            e[mu] = 1.0;
            drho[mu] = 0.5 * eval_form<double>(drho2, {e.data()}).re;  // rho = 1 here
            e[mu] = 0.0;
        }
    }
    int pivot = 0;
    for (int mu = 1; mu < n2; ++mu)
        if (std::abs(drho[mu]) > std::abs(drho[pivot])) pivot = mu;
    std::vector<std::vector<double>> basis;
    for (int mu = 0; mu < n2; ++mu) {
        if (mu == pivot) continue;
        std::vector<double> b(n2, 0.0);
        b[mu] = 1.0;
        b[pivot] = -drho[mu] / drho[pivot];
        basis.push_back(std::move(b));
    }

    std::vector<double> euler = model.euler(x);
    auto apply_phi = [&](const std::vector<double>& v) {
        // Phi(X) = J X + eta(X) * (rho d_rho)
        double ev = 0.0;
        for (int mu = 0; mu < n2; ++mu) ev += etav[mu] * v[mu];
        std::vector<double> out(n2);
        for (int k = 0; k < n; ++k) {
            out[2 * k] = -v[2 * k + 1] + ev * euler[2 * k];
            out[2 * k + 1] = v[2 * k] + ev * euler[2 * k + 1];
        }
        return out;
    };

    {
        double worst = 0.0;
        for (const auto& b : basis) {
            std::vector<double> pb = apply_phi(apply_phi(b));
            double ev = 0.0;
            for (int mu = 0; mu < n2; ++mu) ev += etav[mu] * b[mu];
            for (int mu = 0; mu < n2; ++mu)
                worst = std::max(worst, std::abs(pb[mu] + b[mu] - ev * xi[mu]));
        }
        rep.phi_square = worst;
    }

    // g_Q = (1/2) d eta (1 (x) Phi) + eta (x) eta on the link tangent
    Form omega_cy = model.omega_cy(x);
    auto g_cy = [&](const std::vector<double>& u, const std::vector<double>& v) {
        std::vector<double> jv(n2);
        for (int k = 0; k < n; ++k) {
            jv[2 * k] = -v[2 * k + 1];
            jv[2 * k + 1] = v[2 * k];
        }
        return eval_form<double>(omega_cy, {u.data(), jv.data()}).re;
    };
    {
        double worst = 0.0;
        for (const auto& bi : basis)
            for (const auto& bj : basis) {
                std::vector<double> pbj = apply_phi(bj);
                double lhs = g_cy(bi, bj);
                double ei = 0.0, ej = 0.0;
                for (int mu = 0; mu < n2; ++mu) {
                    ei += etav[mu] * bi[mu];
                    ej += etav[mu] * bj[mu];
                }
                double rhs = 0.5 * eval_form<double>(deta, {bi.data(), pbj.data()}).re + ei * ej;
                worst = std::max(worst, std::abs(lhs - rhs));
            }
        rep.metric_reconstruction = worst;
    }

    {
        FormField ocy = model.omega_cy;
        RealMetricField gcy([ocy](const auto& p) { return real_metric_from_form(ocy(p)); }, n2);
        RicciData ric = ricci_tensor(gcy, x_in);
        double worst = 0.0;
        for (double v : ric.ricci) worst = std::max(worst, std::abs(v));
        rep.ricci_cone = worst;
    }
    return rep;
}

HermitianModel parse_model(const std::string& descriptor) {
    std::istringstream in(descriptor);
    std::string kind;
    if (!std::getline(in, kind, ':')) throw std::invalid_argument("bad model: " + descriptor);
    auto read_int = [&](int& out) {
        std::string tok;
        if (!std::getline(in, tok, ':')) throw std::invalid_argument("bad model: " + descriptor);
        try {
            size_t pos = 0;
            out = std::stoi(tok, &pos);
            if (pos != tok.size()) throw std::invalid_argument("");
        } catch (...) {
            throw std::invalid_argument("bad model: " + descriptor);
        }
    };
    if (kind == "hopf") {
        int n;
        read_int(n);
        return hopf_cone(n);
    }
    if (kind == "lens") {
        int m, ell;
        read_int(m);
        read_int(ell);
        return lens_cone(m, ell);
    }
    throw std::invalid_argument("unknown model kind: " + descriptor);
}

}  // namespace vaisman
