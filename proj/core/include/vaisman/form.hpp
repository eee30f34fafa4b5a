#pragma once

// Pointwise exterior algebra of complex-valued forms on the tangent space of a
// complex n-dimensional chart. A Form is a sum of homogeneous (p,q) pieces;
// each piece is a dense table of coefficients over pairs of strictly
// increasing multi-indices, i.e.
//
//     alpha = sum_{|I|=p, |J|=q} c_{I,Jbar} dz^I ^ dzbar^J.
//
// Coefficients live over any scalar in the dual-number tower so that fields
// of forms can be differentiated by evaluation at dual points.

#include <algorithm>
#include <deque>
#include <stdexcept>
#include <vector>

#include "vaisman/combinatorics.hpp"
#include "vaisman/scalars.hpp"

namespace vaisman {

template <class S>
struct FormPart {
    int p = 0;
    int q = 0;
    std::vector<Cx<S>> c;  // size C(n,p) * C(n,q), row index I, column index J
};

template <class S>
class BasicForm {
public:
    BasicForm() = default;
    explicit BasicForm(int n) : n_(n) {
        if (n < 1 || n > kMaxComplexDim) throw std::invalid_argument("BasicForm: 1 <= n <= 6");
    }

    int dim() const { return n_; }
    bool zero() const { return parts_.empty(); }
    const std::deque<FormPart<S>>& parts() const { return parts_; }

    // Mutable access to the (p,q) table, creating it as zero if absent.
    // References stay valid across later table() calls (deque storage,
    // insertion order preserved).
    std::vector<Cx<S>>& table(int p, int q) {
        FormPart<S>* part = find(p, q);
        if (!part) {
            FormPart<S> np;
            np.p = p;
            np.q = q;
            np.c.assign(static_cast<size_t>(binom(n_, p)) * binom(n_, q), Cx<S>{});
            parts_.push_back(std::move(np));
            part = &parts_.back();
        }
        return part->c;
    }

    const FormPart<S>* find(int p, int q) const {
        for (const auto& part : parts_)
            if (part.p == p && part.q == q) return &part;
        return nullptr;
    }
    FormPart<S>* find(int p, int q) {
        for (auto& part : parts_)
            if (part.p == p && part.q == q) return &part;
        return nullptr;
    }

    // Single homogeneous bidegree, or throws. (0,0) for the zero form.
    std::pair<int, int> bidegree() const {
        if (parts_.empty()) return {0, 0};
        if (parts_.size() != 1) throw std::logic_error("form is not of pure bidegree");
        return {parts_[0].p, parts_[0].q};
    }
    int degree() const {
        if (parts_.empty()) return 0;
        int d = parts_[0].p + parts_[0].q;
        for (const auto& part : parts_)
            if (part.p + part.q != d) throw std::logic_error("form is not of pure degree");
        return d;
    }
    bool homogeneous_degree() const {
        if (parts_.empty()) return true;
        int d = parts_[0].p + parts_[0].q;
        for (const auto& part : parts_)
            if (part.p + part.q != d) return false;
        return true;
    }

    BasicForm& operator+=(const BasicForm& o) {
        check_dim(o);
        for (const auto& part : o.parts_) {
            auto& t = table(part.p, part.q);
            for (size_t i = 0; i < t.size(); ++i) t[i] += part.c[i];
        }
        return *this;
    }
    BasicForm& operator-=(const BasicForm& o) {
        check_dim(o);
        for (const auto& part : o.parts_) {
            auto& t = table(part.p, part.q);
            for (size_t i = 0; i < t.size(); ++i) t[i] -= part.c[i];
        }
        return *this;
    }
    template <class K>
    BasicForm& operator*=(const K& k) {
        for (auto& part : parts_)
            for (auto& z : part.c) z = z * k;
        return *this;
    }

    friend BasicForm operator+(BasicForm a, const BasicForm& b) { return a += b; }
    friend BasicForm operator-(BasicForm a, const BasicForm& b) { return a -= b; }
    friend BasicForm operator-(BasicForm a) { return a *= -1.0; }
    template <class K>
    friend BasicForm operator*(BasicForm a, const K& k) { return a *= k; }
    template <class K>
    friend BasicForm operator*(const K& k, BasicForm a) { return a *= k; }

    void prune(double eps = 0.0) {
        parts_.erase(std::remove_if(parts_.begin(), parts_.end(),
                                    [eps](const FormPart<S>& part) {
                                        for (const auto& z : part.c) {
                                            C v = cx_value(z);
                                            if (std::abs(v.re) > eps || std::abs(v.im) > eps) return false;
                                        }
                                        return true;
                                    }),
                     parts_.end());
    }

    // Projection onto one bidegree.
    BasicForm component(int p, int q) const {
        BasicForm out(n_);
        if (const FormPart<S>* part = find(p, q)) {
            out.table(p, q) = part->c;
        }
        return out;
    }

private:
    void check_dim(const BasicForm& o) const {
        if (n_ != o.n_) throw std::invalid_argument("form dimension mismatch");
    }

    int n_ = 0;
    std::deque<FormPart<S>> parts_;
};

using Form = BasicForm<double>;

// --- constructors -----------------------------------------------------------

template <class S>
BasicForm<S> scalar_form(int n, Cx<S> value) {
    BasicForm<S> f(n);
    f.table(0, 0)[0] = value;
    return f;
}

// dz^j (j zero-based)
template <class S>
BasicForm<S> dz_form(int n, int j) {
    BasicForm<S> f(n);
    f.table(1, 0)[index_table(n, 1).rank[1u << j]] = Cx<S>{S(1.0), S(0.0)};
    return f;
}

template <class S>
BasicForm<S> dzbar_form(int n, int j) {
    BasicForm<S> f(n);
    f.table(0, 1)[index_table(n, 1).rank[1u << j]] = Cx<S>{S(1.0), S(0.0)};
    return f;
}

// (1,1)-form  i * sum h_{j kbar} dz^j ^ dzbar^k  from an n x n matrix (row j, col k).
template <class S>
BasicForm<S> form_from_hermitian(int n, const std::vector<Cx<S>>& h) {
    BasicForm<S> f(n);
    auto& t = f.table(1, 1);
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k)
            t[static_cast<size_t>(j) * n + k] = cx_i<S>() * h[static_cast<size_t>(j) * n + k];
    return f;
}

// --- algebra ----------------------------------------------------------------

template <class S>
BasicForm<S> wedge(const BasicForm<S>& a, const BasicForm<S>& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("wedge: dimension mismatch");
    const int n = a.dim();
    BasicForm<S> out(n);
    for (const auto& pa : a.parts()) {
        for (const auto& pb : b.parts()) {
            int p = pa.p + pb.p, q = pa.q + pb.q;
            if (p > n || q > n) continue;
            const auto& ti1 = index_table(n, pa.p);
            const auto& tj1 = index_table(n, pa.q);
            const auto& ti2 = index_table(n, pb.p);
            const auto& tj2 = index_table(n, pb.q);
            const auto& tio = index_table(n, p);
            const auto& tjo = index_table(n, q);
            auto& t = out.table(p, q);
            // dzbar^{J1} past dz^{I2} contributes (-1)^{q1*p2}
            double swap_sign = ((pa.q * pb.p) & 1) ? -1.0 : 1.0;
            for (size_t i1 = 0; i1 < ti1.masks.size(); ++i1) {
                for (size_t j1 = 0; j1 < tj1.masks.size(); ++j1) {
                    const Cx<S>& ca = pa.c[i1 * tj1.masks.size() + j1];
                    C cav = cx_value(ca);
                    if (cav.re == 0.0 && cav.im == 0.0) continue;
                    for (size_t i2 = 0; i2 < ti2.masks.size(); ++i2) {
                        int si = merge_sign(ti1.masks[i1], ti2.masks[i2]);
                        if (!si) continue;
                        for (size_t j2 = 0; j2 < tj2.masks.size(); ++j2) {
                            int sj = merge_sign(tj1.masks[j1], tj2.masks[j2]);
                            if (!sj) continue;
                            const Cx<S>& cb = pb.c[i2 * tj2.masks.size() + j2];
                            double sgn = swap_sign * si * sj;
                            size_t pos = static_cast<size_t>(tio.rank[ti1.masks[i1] | ti2.masks[i2]]) * tjo.masks.size() +
                                         tjo.rank[tj1.masks[j1] | tj2.masks[j2]];
                            t[pos] += (ca * cb) * sgn;
                        }
                    }
                }
            }
        }
    }
    out.prune();
    return out;
}

template <class S>
BasicForm<S> wedge_pow(const BasicForm<S>& a, int k) {
    BasicForm<S> out = scalar_form<S>(a.dim(), Cx<S>{S(1.0), S(0.0)});
    for (int i = 0; i < k; ++i) out = wedge(out, a);
    return out;
}

// Complex conjugation: (p,q) -> (q,p).
template <class S>
BasicForm<S> form_conj(const BasicForm<S>& a) {
    const int n = a.dim();
    BasicForm<S> out(n);
    for (const auto& part : a.parts()) {
        auto& t = out.table(part.q, part.p);
        const auto& ti = index_table(n, part.p);
        const auto& tj = index_table(n, part.q);
        double sgn = ((part.p * part.q) & 1) ? -1.0 : 1.0;
        for (size_t i = 0; i < ti.masks.size(); ++i)
            for (size_t j = 0; j < tj.masks.size(); ++j)
                t[j * ti.masks.size() + i] = conj(part.c[i * tj.masks.size() + j]) * sgn;
    }
    return out;
}

// J acts on a (p,q)-form as multiplication by i^{q-p}; on 1-forms this is
// alpha -> -alpha o J.
template <class S>
BasicForm<S> j_action(const BasicForm<S>& a) {
    BasicForm<S> out(a.dim());
    for (const auto& part : a.parts()) {
        Cx<S> factor = cx_ipow<S>(part.q - part.p);
        auto& t = out.table(part.p, part.q);
        for (size_t i = 0; i < part.c.size(); ++i) t[i] = part.c[i] * factor;
    }
    return out;
}

// --- evaluation on tangent vectors ------------------------------------------

// Determinant of a k x k complex matrix stored with row stride `stride`.
template <class S>
Cx<S> cx_det(const Cx<S>* m, int k, int stride) {
    if (k == 0) return Cx<S>{S(1.0), S(0.0)};
    if (k == 1) return m[0];
    if (k == 2) return m[0] * m[stride + 1] - m[1] * m[stride];
    // Laplace expansion along the first row; k <= 6 in practice.
    Cx<S> out{};
    std::vector<Cx<S>> sub(static_cast<size_t>(k - 1) * (k - 1));
    for (int c = 0; c < k; ++c) {
        for (int r = 1; r < k; ++r) {
            int cc = 0;
            for (int c2 = 0; c2 < k; ++c2) {
                if (c2 == c) continue;
                sub[static_cast<size_t>(r - 1) * (k - 1) + cc] = m[r * stride + c2];
                ++cc;
            }
        }
        Cx<S> minor = cx_det<S>(sub.data(), k - 1, k - 1);
        Cx<S> term = m[c] * minor;
        out += (c & 1) ? -term : term;
    }
    return out;
}

// Real chart frame: coordinates ordered (x_1, y_1, ..., x_n, y_n).
// dz^j(v) = v[2j] + i v[2j+1], dzbar^j(v) = v[2j] - i v[2j+1].
template <class S>
Cx<S> eval_covector(int j, bool bar, const S* v) {
    return bar ? Cx<S>{v[2 * j], -v[2 * j + 1]} : Cx<S>{v[2 * j], v[2 * j + 1]};
}

// Evaluate a k-form on k real tangent vectors (each of length 2n).
template <class S>
Cx<S> eval_form(const BasicForm<S>& a, const std::vector<const S*>& vecs) {
    const int n = a.dim();
    const int k = static_cast<int>(vecs.size());
    Cx<S> total{};
    for (const auto& part : a.parts()) {
        if (part.p + part.q != k) continue;
        const auto& ti = index_table(n, part.p);
        const auto& tj = index_table(n, part.q);
        for (size_t i = 0; i < ti.masks.size(); ++i) {
            for (size_t j = 0; j < tj.masks.size(); ++j) {
                const Cx<S>& coeff = part.c[i * tj.masks.size() + j];
                C cv = cx_value(coeff);
                if (cv.re == 0.0 && cv.im == 0.0) continue;
                // covector list: dz^{i1..ip}, dzbar^{j1..jq}
                int idx[2 * kMaxComplexDim];
                int cnt = 0;
                mask_entries(ti.masks[i], idx, cnt);
                int idxj[2 * kMaxComplexDim];
                int cntj = 0;
                mask_entries(tj.masks[j], idxj, cntj);
                // determinant of the k x k matrix M_{ab} = cov_a(vec_b)
                Cx<S> mat[2 * kMaxComplexDim][2 * kMaxComplexDim];
                for (int b = 0; b < k; ++b) {
                    for (int ai = 0; ai < part.p; ++ai) mat[ai][b] = eval_covector(idx[ai], false, vecs[b]);
                    for (int aj = 0; aj < part.q; ++aj) mat[part.p + aj][b] = eval_covector(idxj[aj], true, vecs[b]);
                }
                total += coeff * cx_det<S>(&mat[0][0], k, 2 * kMaxComplexDim);
            }
        }
    }
    return total;
}

// --- diagnostics -------------------------------------------------------------

// Largest coefficient magnitude (on values, not derivatives).
template <class S>
double sup_coeff(const BasicForm<S>& a) {
    double m = 0.0;
    for (const auto& part : a.parts())
        for (const auto& z : part.c) {
            C v = cx_value(z);
            m = std::max(m, std::sqrt(v.re * v.re + v.im * v.im));
        }
    return m;
}

// value / derivative extraction for forms over dual scalars
template <class S>
BasicForm<S> form_value_part(const BasicForm<Dual<S>>& a) {
    BasicForm<S> out(a.dim());
    for (const auto& part : a.parts()) {
        auto& t = out.table(part.p, part.q);
        for (size_t i = 0; i < part.c.size(); ++i) t[i] = Cx<S>{part.c[i].re.v, part.c[i].im.v};
    }
    return out;
}

template <class S>
BasicForm<S> form_deriv_part(const BasicForm<Dual<S>>& a) {
    BasicForm<S> out(a.dim());
    for (const auto& part : a.parts()) {
        auto& t = out.table(part.p, part.q);
        for (size_t i = 0; i < part.c.size(); ++i) t[i] = Cx<S>{part.c[i].re.d, part.c[i].im.d};
    }
    return out;
}

inline Form form_value(const Form& a) { return a; }
template <class S>
Form form_value(const BasicForm<Dual<S>>& a) { return form_value(form_value_part(a)); }

}  // namespace vaisman
