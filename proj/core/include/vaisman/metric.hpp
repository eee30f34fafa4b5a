#pragma once

// Pointwise Hermitian metric data and the metric operations on forms: Hodge
// star, inner product, Lefschetz operator and its adjoint.
//
// The star is computed in three steps: transform the coefficient table to a
// unitary coframe (Cholesky factor of h), apply the flat-space star there,
// transform back. The flat-space star on monomials phi^A ^ phibar^B is built
// once per (n,p,q) by expanding into the real orthonormal frame, starring
// basis covectors, and collapsing back; its coefficients are exact dyadic
// complex numbers.

#include <atomic>
#include <mutex>
#include <stdexcept>
#include <utility>
#include <vector>

#include "vaisman/form.hpp"

namespace vaisman {

// --- flat star table ---------------------------------------------------------

struct FlatStarTable {
    int tp = 0, tq = 0;  // target bidegree
    // per source index (I-rank * C(n,q) + J-rank): list of (target index, coeff)
    std::vector<std::vector<std::pair<int, C>>> map;
};

namespace detail {

struct EMono {  // monomial in the real orthonormal coframe
    uint32_t mask = 0;  // bits over 2n real indices
    C coeff{1.0, 0.0};
};

// Append covector e^t to a sorted monomial, tracking the sign.
inline bool emono_append(EMono& m, int t) {
    uint32_t bit = 1u << t;
    if (m.mask & bit) return false;
    int above = std::popcount(m.mask & ~(bit | (bit - 1)));
    if (above & 1) m.coeff = m.coeff * -1.0;
    m.mask |= bit;
    return true;
}

inline const FlatStarTable& flat_star_table(int n, int p, int q) {
    static std::mutex mu;
    static FlatStarTable tables[kMaxComplexDim + 1][kMaxComplexDim + 1][kMaxComplexDim + 1];
    static std::atomic<bool> built[kMaxComplexDim + 1][kMaxComplexDim + 1][kMaxComplexDim + 1] = {};
    FlatStarTable& tab = tables[n][p][q];
    if (built[n][p][q].load(std::memory_order_acquire)) return tab;
    std::lock_guard<std::mutex> lock(mu);
    if (built[n][p][q].load(std::memory_order_relaxed)) return tab;

    const int n2 = 2 * n;
    const auto& ti = index_table(n, p);
    const auto& tj = index_table(n, q);
    const auto& tio = index_table(n, n - q);
    const auto& tjo = index_table(n, n - p);
    tab.tp = n - q;
    tab.tq = n - p;
    tab.map.assign(ti.masks.size() * tj.masks.size(), {});

    for (size_t ia = 0; ia < ti.masks.size(); ++ia) {
        for (size_t jb = 0; jb < tj.masks.size(); ++jb) {
            // phi^A ^ phibar^B -> real monomials
            std::vector<EMono> terms{EMono{}};
            int idx[kMaxComplexDim], cnt = 0;
            mask_entries(ti.masks[ia], idx, cnt);
            for (int u = 0; u < cnt; ++u) {
                // phi^a = e^{2a} + i e^{2a+1}
                std::vector<EMono> next;
                for (const EMono& t : terms) {
                    EMono t1 = t;
                    if (emono_append(t1, 2 * idx[u])) next.push_back(t1);
                    EMono t2 = t;
                    t2.coeff = t2.coeff * kI;
                    if (emono_append(t2, 2 * idx[u] + 1)) next.push_back(t2);
                }
                terms = std::move(next);
            }
            mask_entries(tj.masks[jb], idx, cnt);
            for (int u = 0; u < cnt; ++u) {
                // phibar^a = e^{2a} - i e^{2a+1}
                std::vector<EMono> next;
                for (const EMono& t : terms) {
                    EMono t1 = t;
                    if (emono_append(t1, 2 * idx[u])) next.push_back(t1);
                    EMono t2 = t;
                    t2.coeff = t2.coeff * (C{0.0, -1.0});
                    if (emono_append(t2, 2 * idx[u] + 1)) next.push_back(t2);
                }
                terms = std::move(next);
            }
            // real star: *e^M = sign(M, M^c) e^{M^c}
            for (EMono& t : terms) {
                t.coeff = t.coeff * static_cast<double>(complement_sign(t.mask, n2));
                uint32_t full = (1u << n2) - 1;
                t.mask = full & ~t.mask;
            }
            // collapse back to phi-monomials of bidegree (n-q, n-p)
            std::vector<C> target(tio.masks.size() * tjo.masks.size(), C{});
            for (const EMono& t : terms) {
                // substitute e^{2a} = (phi^a + phibar^a)/2, e^{2a+1} = (phi^a - phibar^a)/(2i)
                struct PMono {
                    uint32_t hol = 0, anti = 0;
                    C coeff{1.0, 0.0};
                    int inversions = 0;   // antiholomorphic factors seen so far
                    bool dead = false;
                };
                std::vector<PMono> expand{PMono{}};
                int ridx[2 * kMaxComplexDim], rcnt = 0;
                mask_entries(t.mask, ridx, rcnt);
                for (int u = 0; u < rcnt; ++u) {
                    int a = ridx[u] / 2;
                    bool is_y = ridx[u] & 1;
                    std::vector<PMono> next;
                    for (const PMono& pm : expand) {
                        // choose phi^a
                        {
                            PMono c = pm;
                            if (c.hol & (1u << a)) c.dead = true;
                            else {
                                // phi factor must move left past all anti factors
                                // already placed, and past hol factors above a
                                int above = std::popcount(c.hol & ~((1u << a) | ((1u << a) - 1)));
                                int swaps = c.inversions + above;
                                c.coeff = c.coeff * (is_y ? C{0.0, -0.5} : C{0.5, 0.0});
                                if (swaps & 1) c.coeff = c.coeff * -1.0;
                                c.hol |= 1u << a;
                            }
                            if (!c.dead) next.push_back(c);
                        }
                        // choose phibar^a
                        {
                            PMono c = pm;
                            if (c.anti & (1u << a)) c.dead = true;
                            else {
                                int above = std::popcount(c.anti & ~((1u << a) | ((1u << a) - 1)));
                                c.coeff = c.coeff * (is_y ? C{0.0, 0.5} : C{0.5, 0.0});
                                if (above & 1) c.coeff = c.coeff * -1.0;
                                c.anti |= 1u << a;
                                c.inversions += 1;
                            }
                            if (!c.dead) next.push_back(c);
                        }
                    }
                    expand = std::move(next);
                }
                for (const PMono& pm : expand) {
                    if (std::popcount(pm.hol) != n - q || std::popcount(pm.anti) != n - p) continue;
                    size_t pos = static_cast<size_t>(tio.rank[pm.hol]) * tjo.masks.size() + tjo.rank[pm.anti];
                    target[pos] += pm.coeff * t.coeff;
                }
            }
            auto& out = tab.map[ia * tj.masks.size() + jb];
            for (size_t u = 0; u < target.size(); ++u)
                if (target[u].re != 0.0 || target[u].im != 0.0)
                    out.emplace_back(static_cast<int>(u), target[u]);
        }
    }
    built[n][p][q].store(true, std::memory_order_release);
    return tab;
}

}  // namespace detail

// --- pointwise metric ---------------------------------------------------------

template <class S>
struct BasicMetric {
    int n = 0;
    std::vector<Cx<S>> h;     // n x n Hermitian positive-definite, row-major
    std::vector<Cx<S>> chol;  // lower-triangular R with h = R R^H
    std::vector<Cx<S>> P;     // unitary coframe: phi_a = sum_j P[a][j] dz^j
    std::vector<Cx<S>> Pinv;  // dz^j = sum_a Pinv[j][a] phi_a
    S det_h{};
    Cx<S> vol_coeff{};        // coefficient of dz^{1..n} ^ dzbar^{1..n} in Omega^n/n!

    BasicMetric() = default;
    explicit BasicMetric(int dim, std::vector<Cx<S>> hmat) : n(dim), h(std::move(hmat)) {
        if (static_cast<int>(h.size()) != n * n) throw std::invalid_argument("metric: bad matrix size");
        // symmetrize away rounding noise before factoring
        for (int j = 0; j < n; ++j)
            for (int k = j; k < n; ++k) {
                Cx<S> avg = (h[j * n + k] + conj(h[k * n + j])) * 0.5;
                h[j * n + k] = avg;
                h[k * n + j] = conj(avg);
            }
        factor();
    }

    void factor() {
        chol.assign(static_cast<size_t>(n) * n, Cx<S>{});
        det_h = S(1.0);
        for (int j = 0; j < n; ++j) {
            Cx<S> sum = h[j * n + j];
            for (int k = 0; k < j; ++k) sum -= chol[j * n + k] * conj(chol[j * n + k]);
            if (value(sum.re) <= 0.0)
                throw std::domain_error("metric not positive definite");
            S piv = sqrt(sum.re);
            chol[j * n + j] = Cx<S>{piv, S(0.0)};
            det_h = det_h * (piv * piv);
            for (int i = j + 1; i < n; ++i) {
                Cx<S> s2 = h[i * n + j];
                for (int k = 0; k < j; ++k) s2 -= chol[i * n + k] * conj(chol[j * n + k]);
                chol[i * n + j] = s2 / piv;
            }
        }
        // P = sqrt(2) * R^T, so that (1/2) sum_a P_{aj} conj(P_{ak}) = h_{jk}
        P.assign(static_cast<size_t>(n) * n, Cx<S>{});
        const double rt2 = std::sqrt(2.0);
        for (int a = 0; a < n; ++a)
            for (int j = 0; j < n; ++j) P[a * n + j] = chol[j * n + a] * rt2;
        // invert the triangular-ish P (it is R^T scaled: upper triangular)
        Pinv.assign(static_cast<size_t>(n) * n, Cx<S>{});
        // solve P^T? P is upper triangular in (a,j) with nonzeros for j >= a? R lower => R^T upper.
        // Pinv defined by dz_j = sum_a Pinv[j][a] phi_a, i.e. Pinv = P^{-1} with
        // (P^{-1} P) = Id. Back substitution column by column.
        for (int col = 0; col < n; ++col) {
            // solve P x = e_col for x; P[a][j] nonzero for j >= a.
            std::vector<Cx<S>> x(n, Cx<S>{});
            for (int a = n - 1; a >= 0; --a) {
                Cx<S> rhs = (a == col) ? Cx<S>{S(1.0), S(0.0)} : Cx<S>{};
                for (int j = a + 1; j < n; ++j) rhs -= P[a * n + j] * x[j];
                x[a] = rhs / P[a * n + a];
            }
            // x solves sum_j P[a][j] x[j] = delta_{a,col}; so x[j] = Pinv[j][col]
            for (int j = 0; j < n; ++j) Pinv[j * n + col] = x[j];
        }
        // Omega^n/n! = i^n (-1)^{n(n-1)/2} det(h) dz^{1..n} ^ dzbar^{1..n}
        Cx<S> c = cx_ipow<S>(n);
        if ((n * (n - 1) / 2) & 1) c = -c;
        vol_coeff = c * det_h;
    }

    BasicForm<S> fundamental_form() const { return form_from_hermitian<S>(n, h); }
};

using MetricAtPoint = BasicMetric<double>;

template <class S>
BasicMetric<S> metric_from_form(const BasicForm<S>& omega) {
    const int n = omega.dim();
    const FormPart<S>* part = omega.find(1, 1);
    if (!part) throw std::invalid_argument("metric_from_form: no (1,1) component");
    std::vector<Cx<S>> h(part->c.size());
    for (size_t i = 0; i < h.size(); ++i) h[i] = part->c[i] * (-cx_i<S>());  // h = -i c
    return BasicMetric<S>(n, std::move(h));
}

// --- basis substitution -------------------------------------------------------

// Substitute u_i = sum_j T_{ij} v_j into a (p,q) table over u; conjugate
// transform on the antiholomorphic side.
template <class S>
std::vector<Cx<S>> substitute_table(const std::vector<Cx<S>>& in, int n, int p, int q,
                                    const std::vector<Cx<S>>& T) {
    const auto& ti = index_table(n, p);
    const auto& tj = index_table(n, q);
    const size_t ni = ti.masks.size(), nj = tj.masks.size();

    auto minors = [&](int k, bool conjugate) {
        const auto& tk = index_table(n, k);
        std::vector<Cx<S>> m(tk.masks.size() * tk.masks.size());
        int rows[kMaxComplexDim], cols[kMaxComplexDim], rc = 0, cc = 0;
        std::vector<Cx<S>> sub(static_cast<size_t>(k) * k);
        for (size_t r = 0; r < tk.masks.size(); ++r) {
            mask_entries(tk.masks[r], rows, rc);
            for (size_t c = 0; c < tk.masks.size(); ++c) {
                mask_entries(tk.masks[c], cols, cc);
                for (int a = 0; a < k; ++a)
                    for (int b = 0; b < k; ++b) sub[static_cast<size_t>(a) * k + b] = T[rows[a] * n + cols[b]];
                Cx<S> d = cx_det<S>(sub.data(), k, k);
                m[r * tk.masks.size() + c] = conjugate ? conj(d) : d;
            }
        }
        return m;
    };

    std::vector<Cx<S>> mi = minors(p, false);
    std::vector<Cx<S>> mj = minors(q, true);

    std::vector<Cx<S>> out(ni * nj, Cx<S>{});
    for (size_t I = 0; I < ni; ++I)
        for (size_t J = 0; J < nj; ++J) {
            const Cx<S>& cin = in[I * nj + J];
            C v = cx_value(cin);
            if (v.re == 0.0 && v.im == 0.0) continue;
            for (size_t A = 0; A < ni; ++A) {
                Cx<S> left = cin * mi[I * ni + A];
                for (size_t B = 0; B < nj; ++B) out[A * nj + B] += left * mj[J * nj + B];
            }
        }
    return out;
}

// --- Hodge star, inner product, Lefschetz operators ---------------------------

template <class S>
BasicForm<S> hodge_star(const BasicForm<S>& a, const BasicMetric<S>& m) {
    const int n = a.dim();
    if (n != m.n) throw std::invalid_argument("hodge_star: dimension mismatch");
    BasicForm<S> out(n);
    for (const auto& part : a.parts()) {
        std::vector<Cx<S>> uni = substitute_table<S>(part.c, n, part.p, part.q, m.Pinv);
        const FlatStarTable& fs = detail::flat_star_table(n, part.p, part.q);
        const auto& tjo = index_table(n, fs.tq);
        std::vector<Cx<S>> starred(static_cast<size_t>(binom(n, fs.tp)) * tjo.masks.size(), Cx<S>{});
        for (size_t src = 0; src < uni.size(); ++src) {
            C v = cx_value(uni[src]);
            if (v.re == 0.0 && v.im == 0.0) continue;
            for (const auto& [dst, coeff] : fs.map[src]) starred[dst] += uni[src] * cx_cast<S>(coeff);
        }
        std::vector<Cx<S>> back = substitute_table<S>(starred, n, fs.tp, fs.tq, m.P);
        auto& t = out.table(fs.tp, fs.tq);
        for (size_t i = 0; i < t.size(); ++i) t[i] += back[i];
    }
    out.prune();
    return out;
}

// Hermitian inner product with <alpha, beta> Omega^n/n! = alpha ^ *conj(beta).
// Forms of different bidegree are orthogonal.
template <class S>
Cx<S> inner(const BasicForm<S>& a, const BasicForm<S>& b, const BasicMetric<S>& m) {
    const int n = a.dim();
    if (n != b.dim() || n != m.n) throw std::invalid_argument("inner: dimension mismatch");
    Cx<S> total{};
    for (const auto& pa : a.parts()) {
        const FormPart<S>* pb = b.find(pa.p, pa.q);
        if (!pb) continue;
        std::vector<Cx<S>> ua = substitute_table<S>(pa.c, n, pa.p, pa.q, m.Pinv);
        std::vector<Cx<S>> ub = substitute_table<S>(pb->c, n, pa.p, pa.q, m.Pinv);
        double scale = std::pow(2.0, pa.p + pa.q);
        for (size_t i = 0; i < ua.size(); ++i) total += ua[i] * conj(ub[i]) * scale;
    }
    return total;
}

// Metric norm squared <a, a> (real part; imaginary part is rounding noise).
template <class S>
S norm_sq(const BasicForm<S>& a, const BasicMetric<S>& m) { return inner(a, a, m).re; }

template <class S>
BasicForm<S> lefschetz(const BasicForm<S>& a, const BasicMetric<S>& m) {
    return wedge(m.fundamental_form(), a);
}

// Adjoint of the Lefschetz operator: on k-forms, (-1)^k * L *.
// Degree < 2 parts contract to zero.
template <class S>
BasicForm<S> lefschetz_adjoint(const BasicForm<S>& a, const BasicMetric<S>& m) {
    const int n = a.dim();
    BasicForm<S> out(n);
    for (const auto& part : a.parts()) {
        int k = part.p + part.q;
        if (k < 2) continue;
        BasicForm<S> piece(n);
        piece.table(part.p, part.q) = part.c;
        BasicForm<S> res = hodge_star(lefschetz(hodge_star(piece, m), m), m);
        if (k & 1) res *= -1.0;
        out += res;
    }
    out.prune();
    return out;
}

// Coefficient of the volume monomial dz^{1..n} ^ dzbar^{1..n} of an (n,n)-form.
template <class S>
Cx<S> top_coefficient(const BasicForm<S>& a) {
    const FormPart<S>* part = a.find(a.dim(), a.dim());
    if (!part) return Cx<S>{};
    return part->c[0];
}

// tr_Omega(gamma) defined by tr_Omega(gamma)/n * Omega^n = gamma ^ Omega^{n-1}.
template <class S>
Cx<S> trace_omega(const BasicForm<S>& gamma, const BasicMetric<S>& m) {
    const int n = m.n;
    BasicForm<S> omega = m.fundamental_form();
    Cx<S> numer = top_coefficient(wedge(gamma, wedge_pow(omega, n - 1)));
    Cx<S> denom = top_coefficient(wedge_pow(omega, n));
    return numer * static_cast<double>(n) / denom;
}

}  // namespace vaisman
