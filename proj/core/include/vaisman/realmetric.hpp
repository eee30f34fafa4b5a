#pragma once

// Real 2n-dimensional metric fields and the Levi-Civita curvature quantities
// assembled from them: Christoffel symbols from first metric jets, Riemann /
// Ricci / scalar curvature from second jets. This path never touches the
// complex machinery, so it serves as an independent oracle for the Hermitian
// scalar-curvature identities.

#include <memory>
#include <vector>

#include "vaisman/field.hpp"

namespace vaisman {

// 2n x 2n symmetric matrix, row-major.
template <class S>
using SymMat = std::vector<S>;

class RealMetricField {
    struct Concept {
        virtual ~Concept() = default;
        virtual SymMat<double> ev(const Pt<double>&) const = 0;
        virtual SymMat<D1> ev(const Pt<D1>&) const = 0;
        virtual SymMat<D2> ev(const Pt<D2>&) const = 0;
    };
    template <class F>
    struct Holder final : Concept {
        F f;
        explicit Holder(F fn) : f(std::move(fn)) {}
        SymMat<double> ev(const Pt<double>& x) const override { return f(x); }
        SymMat<D1> ev(const Pt<D1>& x) const override { return f(x); }
        SymMat<D2> ev(const Pt<D2>& x) const override { return f(x); }
    };

public:
    RealMetricField() = default;
    template <class F, class = std::enable_if_t<!std::is_same_v<std::decay_t<F>, RealMetricField>>>
    RealMetricField(F f, int dim) : impl_(std::make_shared<Holder<F>>(std::move(f))), dim_(dim) {}

    template <class S>
    SymMat<S> operator()(const Pt<S>& x) const { return impl_->ev(x); }

    int dim() const { return dim_; }
    bool valid() const { return impl_ != nullptr; }

private:
    std::shared_ptr<const Concept> impl_;
    int dim_ = 0;
};

// Real metric g(X,Y) = Omega(X, JY) of a fundamental 2-form evaluated at a point.
template <class S>
SymMat<S> real_metric_from_form(const BasicForm<S>& omega) {
    const int n2 = 2 * omega.dim();
    SymMat<S> g(static_cast<size_t>(n2) * n2, S(0.0));
    // frame vectors are constant; J e_{2k} = e_{2k+1}, J e_{2k+1} = -e_{2k}
    std::vector<S> eu(n2, S(0.0)), ev(n2, S(0.0));
    for (int mu = 0; mu < n2; ++mu) {
        for (int nu = mu; nu < n2; ++nu) {
            for (auto& s : eu) s = S(0.0);
            for (auto& s : ev) s = S(0.0);
            eu[mu] = S(1.0);
            int jnu = (nu & 1) ? nu - 1 : nu + 1;
            ev[jnu] = S((nu & 1) ? -1.0 : 1.0);
            Cx<S> val = eval_form<S>(omega, {eu.data(), ev.data()});
            g[static_cast<size_t>(mu) * n2 + nu] = val.re;
            g[static_cast<size_t>(nu) * n2 + mu] = val.re;
        }
    }
    return g;
}

// Matrix inverse by Gauss-Jordan with partial pivoting on values.
template <class S>
std::vector<S> sym_inverse(std::vector<S> a, int n) {
    std::vector<S> inv(static_cast<size_t>(n) * n, S(0.0));
    for (int i = 0; i < n; ++i) inv[static_cast<size_t>(i) * n + i] = S(1.0);
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::abs(value(a[static_cast<size_t>(col) * n + col]));
        for (int r = col + 1; r < n; ++r) {
            double cand = std::abs(value(a[static_cast<size_t>(r) * n + col]));
            if (cand > best) { best = cand; piv = r; }
        }
        if (best == 0.0) throw std::domain_error("singular metric");
        if (piv != col)
            for (int c = 0; c < n; ++c) {
                std::swap(a[static_cast<size_t>(piv) * n + c], a[static_cast<size_t>(col) * n + c]);
                std::swap(inv[static_cast<size_t>(piv) * n + c], inv[static_cast<size_t>(col) * n + c]);
            }
        S d = a[static_cast<size_t>(col) * n + col];
        for (int c = 0; c < n; ++c) {
            a[static_cast<size_t>(col) * n + c] = a[static_cast<size_t>(col) * n + c] / d;
            inv[static_cast<size_t>(col) * n + c] = inv[static_cast<size_t>(col) * n + c] / d;
        }
        for (int r = 0; r < n; ++r) {
            if (r == col) continue;
            S f = a[static_cast<size_t>(r) * n + col];
            if (value(f) == 0.0) continue;
            for (int c = 0; c < n; ++c) {
                a[static_cast<size_t>(r) * n + c] = a[static_cast<size_t>(r) * n + c] - f * a[static_cast<size_t>(col) * n + c];
                inv[static_cast<size_t>(r) * n + c] = inv[static_cast<size_t>(r) * n + c] - f * inv[static_cast<size_t>(col) * n + c];
            }
        }
    }
    return inv;
}

// Christoffel symbols Gamma[rho][mu][nu] (index rho*n2*n2 + mu*n2 + nu).
template <class S>
std::vector<S> christoffel(const RealMetricField& g, const Pt<S>& x) {
    const int n2 = g.dim();
    SymMat<S> g0 = g(x);
    std::vector<S> ginv = sym_inverse<S>(g0, n2);
    // dg[sigma][mu][nu] = d_sigma g_{mu nu}
    std::vector<S> dg(static_cast<size_t>(n2) * n2 * n2);
    for (int sigma = 0; sigma < n2; ++sigma) {
        SymMat<Dual<S>> gd = g(lift_point(x, sigma));
        for (int mu = 0; mu < n2; ++mu)
            for (int nu = 0; nu < n2; ++nu)
                dg[(static_cast<size_t>(sigma) * n2 + mu) * n2 + nu] = gd[static_cast<size_t>(mu) * n2 + nu].d;
    }
    std::vector<S> gamma(static_cast<size_t>(n2) * n2 * n2, S(0.0));
    for (int rho = 0; rho < n2; ++rho)
        for (int mu = 0; mu < n2; ++mu)
            for (int nu = mu; nu < n2; ++nu) {
                S sum(0.0);
                for (int sigma = 0; sigma < n2; ++sigma) {
                    S term = dg[(static_cast<size_t>(mu) * n2 + sigma) * n2 + nu] +
                             dg[(static_cast<size_t>(nu) * n2 + sigma) * n2 + mu] -
                             dg[(static_cast<size_t>(sigma) * n2 + mu) * n2 + nu];
                    sum += ginv[static_cast<size_t>(rho) * n2 + sigma] * term;
                }
                sum = sum * 0.5;
                gamma[(static_cast<size_t>(rho) * n2 + mu) * n2 + nu] = sum;
                gamma[(static_cast<size_t>(rho) * n2 + nu) * n2 + mu] = sum;
            }
    return gamma;
}

struct RicciData {
    std::vector<double> ricci;  // 2n x 2n symmetric
    double scalar = 0.0;
};

// Ricci tensor and scalar curvature from second metric jets.
inline RicciData ricci_tensor(const RealMetricField& g, const Pt<double>& x) {
    const int n2 = g.dim();
    // Gamma and its first derivatives
    std::vector<double> gamma0 = christoffel(g, x);
    std::vector<std::vector<double>> dgamma(n2);
    for (int mu = 0; mu < n2; ++mu) {
        std::vector<D1> gd = christoffel(g, lift_point(x, mu));
        dgamma[mu].resize(gd.size());
        for (size_t i = 0; i < gd.size(); ++i) dgamma[mu][i] = gd[i].d;
    }
    auto G = [&](int r, int m, int nu) { return gamma0[(static_cast<size_t>(r) * n2 + m) * n2 + nu]; };
    auto dG = [&](int d, int r, int m, int nu) { return dgamma[d][(static_cast<size_t>(r) * n2 + m) * n2 + nu]; };

    RicciData out;
    out.ricci.assign(static_cast<size_t>(n2) * n2, 0.0);
    // Ric_{sigma nu} = R^mu_{sigma mu nu}
    //               = d_mu Gamma^mu_{nu sigma} - d_nu Gamma^mu_{mu sigma}
    //                 + Gamma^mu_{mu lam} Gamma^lam_{nu sigma} - Gamma^mu_{nu lam} Gamma^lam_{mu sigma}
    for (int sigma = 0; sigma < n2; ++sigma)
        for (int nu = sigma; nu < n2; ++nu) {
            double sum = 0.0;
            for (int mu = 0; mu < n2; ++mu) {
                sum += dG(mu, mu, nu, sigma) - dG(nu, mu, mu, sigma);
                for (int lam = 0; lam < n2; ++lam)
                    sum += G(mu, mu, lam) * G(lam, nu, sigma) - G(mu, nu, lam) * G(lam, mu, sigma);
            }
            out.ricci[static_cast<size_t>(sigma) * n2 + nu] = sum;
            out.ricci[static_cast<size_t>(nu) * n2 + sigma] = sum;
        }
    SymMat<double> g0 = g(x);
    std::vector<double> ginv = sym_inverse<double>(g0, n2);
    for (int sigma = 0; sigma < n2; ++sigma)
        for (int nu = 0; nu < n2; ++nu)
            out.scalar += ginv[static_cast<size_t>(sigma) * n2 + nu] * out.ricci[static_cast<size_t>(sigma) * n2 + nu];
    return out;
}

inline double scalar_curvature(const RealMetricField& g, const Pt<double>& x) {
    return ricci_tensor(g, x).scalar;
}

// Covariant derivative (nabla_mu theta)_nu of a real 1-form given as a
// callable returning its frame components.
template <class ThetaFn>
std::vector<double> covariant_derivative_oneform(const RealMetricField& g, const ThetaFn& theta,
                                                 const Pt<double>& x) {
    const int n2 = g.dim();
    std::vector<double> gamma = christoffel(g, x);
    std::vector<double> th0 = theta(x);
    std::vector<double> out(static_cast<size_t>(n2) * n2);
    for (int mu = 0; mu < n2; ++mu) {
        std::vector<D1> thd = theta(lift_point(x, mu));
        for (int nu = 0; nu < n2; ++nu) {
            double v = thd[nu].d;
            for (int lam = 0; lam < n2; ++lam)
                v -= gamma[(static_cast<size_t>(lam) * n2 + mu) * n2 + nu] * th0[lam];
            out[static_cast<size_t>(mu) * n2 + nu] = v;
        }
    }
    return out;
}

// Eigenvalues of a symmetric matrix by cyclic Jacobi rotations.
inline std::vector<double> sym_eigenvalues(std::vector<double> a, int n) {
    for (int sweep = 0; sweep < 64; ++sweep) {
        double off = 0.0;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) off += a[static_cast<size_t>(p) * n + q] * a[static_cast<size_t>(p) * n + q];
        if (off < 1e-26) break;
        for (int p = 0; p < n; ++p)
            for (int q = p + 1; q < n; ++q) {
                double apq = a[static_cast<size_t>(p) * n + q];
                if (std::abs(apq) < 1e-300) continue;
                double app = a[static_cast<size_t>(p) * n + p], aqq = a[static_cast<size_t>(q) * n + q];
                double phi = 0.5 * std::atan2(2.0 * apq, aqq - app);
                double c = std::cos(phi), s = std::sin(phi);
                for (int k = 0; k < n; ++k) {
                    double akp = a[static_cast<size_t>(k) * n + p], akq = a[static_cast<size_t>(k) * n + q];
                    a[static_cast<size_t>(k) * n + p] = c * akp - s * akq;
                    a[static_cast<size_t>(k) * n + q] = s * akp + c * akq;
                }
                for (int k = 0; k < n; ++k) {
                    double apk = a[static_cast<size_t>(p) * n + k], aqk = a[static_cast<size_t>(q) * n + k];
                    a[static_cast<size_t>(p) * n + k] = c * apk - s * aqk;
                    a[static_cast<size_t>(q) * n + k] = s * apk + c * aqk;
                }
            }
    }
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = a[static_cast<size_t>(i) * n + i];
    std::sort(ev.begin(), ev.end());
    return ev;
}

// Eigenvalues of a Hermitian matrix via its real symmetric embedding
// [[Re, -Im], [Im, Re]] (each eigenvalue appears twice).
inline std::vector<double> hermitian_eigenvalues(const std::vector<C>& h, int n) {
    std::vector<double> a(static_cast<size_t>(2 * n) * 2 * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            a[static_cast<size_t>(i) * 2 * n + j] = h[static_cast<size_t>(i) * n + j].re;
            a[static_cast<size_t>(i) * 2 * n + (n + j)] = -h[static_cast<size_t>(i) * n + j].im;
            a[static_cast<size_t>(n + i) * 2 * n + j] = h[static_cast<size_t>(i) * n + j].im;
            a[static_cast<size_t>(n + i) * 2 * n + (n + j)] = h[static_cast<size_t>(i) * n + j].re;
        }
    std::vector<double> all = sym_eigenvalues(std::move(a), 2 * n);
    std::vector<double> ev(n);
    for (int i = 0; i < n; ++i) ev[i] = all[2 * i];  // pairs coincide
    return ev;
}

}  // namespace vaisman
