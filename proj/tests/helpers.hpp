#pragma once

// Shared test utilities: seeded random forms and metrics, residual helpers,
// and a brute-force exterior calculus over the real frame that serves as an
// independent oracle for the complex-table implementation.

#include <cmath>
#include <map>

#include "vaisman/field.hpp"
#include "vaisman/metric.hpp"
#include "vaisman/rng.hpp"

namespace vaisman::testing {

inline C random_cx(Rng& rng) { return {rng.uniform(-1.0, 1.0), rng.uniform(-1.0, 1.0)}; }

inline Form random_form(int n, int p, int q, Rng& rng) {
    Form f(n);
    for (auto& z : f.table(p, q)) z = random_cx(rng);
    return f;
}

// Random Hermitian positive-definite metric h = A A^H + eps.
inline MetricAtPoint random_metric(int n, Rng& rng) {
    std::vector<C> a(static_cast<size_t>(n) * n);
    for (auto& z : a) z = random_cx(rng);
    std::vector<C> h(static_cast<size_t>(n) * n, C{});
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) {
            for (int k = 0; k < n; ++k) h[i * n + j] += a[i * n + k] * conj(a[j * n + k]);
            if (i == j) h[i * n + j] += C{0.25, 0.0};
        }
    return MetricAtPoint(n, std::move(h));
}

inline double max_abs_diff(const Form& a, const Form& b) { return sup_coeff(a - b); }

inline double rel_err(const Form& a, const Form& b) {
    double scale = std::max({1.0, sup_coeff(a), sup_coeff(b)});
    return sup_coeff(a - b) / scale;
}

// --- brute-force oracle over the real coframe ---------------------------------
//
// A form is expanded as a map from bitmasks over the 2n real covectors
// (dx_1, dy_1, ..., dx_n, dy_n) to complex coefficients. Wedge is mask
// merging with inversion signs. This path shares no code with BasicForm.

using RealExpansion = std::map<uint32_t, C>;

inline void real_accumulate(RealExpansion& out, uint32_t mask, C coeff) {
    if (coeff.re == 0.0 && coeff.im == 0.0) return;
    auto [it, inserted] = out.emplace(mask, coeff);
    if (!inserted) it->second += coeff;
}

inline RealExpansion real_expand(const Form& f) {
    RealExpansion out;
    const int n = f.dim();
    for (const auto& part : f.parts()) {
        const auto& ti = index_table(n, part.p);
        const auto& tj = index_table(n, part.q);
        for (size_t i = 0; i < ti.masks.size(); ++i) {
            for (size_t j = 0; j < tj.masks.size(); ++j) {
                C coeff = part.c[i * tj.masks.size() + j];
                if (coeff.re == 0.0 && coeff.im == 0.0) continue;
                // expand dz^I ^ dzbar^J factor by factor
                std::vector<std::pair<uint32_t, C>> terms{{0u, coeff}};
                auto append = [&](int real_idx, C factor) {
                    std::vector<std::pair<uint32_t, C>> next;
                    for (auto& [mask, c] : terms) {
                        uint32_t bit = 1u << real_idx;
                        if (mask & bit) continue;
                        int above = std::popcount(mask & ~(bit | (bit - 1)));
                        C nc = c * factor;
                        if (above & 1) nc = nc * -1.0;
                        next.emplace_back(mask | bit, nc);
                    }
                    terms = std::move(next);
                };
                auto expand_cov = [&](int k, bool bar) {
                    // dz_k = dx_k + i dy_k ; dzbar_k = dx_k - i dy_k
                    std::vector<std::pair<uint32_t, C>> acc;
                    std::vector<std::pair<uint32_t, C>> base = terms;
                    terms = base;
                    append(2 * k, C{1.0, 0.0});
                    acc = terms;
                    terms = base;
                    append(2 * k + 1, bar ? C{0.0, -1.0} : C{0.0, 1.0});
                    for (auto& t : terms) acc.push_back(t);
                    terms = std::move(acc);
                };
                int idx[kMaxComplexDim], cnt = 0;
                mask_entries(ti.masks[i], idx, cnt);
                for (int u = 0; u < cnt; ++u) expand_cov(idx[u], false);
                mask_entries(tj.masks[j], idx, cnt);
                for (int u = 0; u < cnt; ++u) expand_cov(idx[u], true);
                for (auto& [mask, c] : terms) real_accumulate(out, mask, c);
            }
        }
    }
    return out;
}

inline RealExpansion real_wedge(const RealExpansion& a, const RealExpansion& b) {
    RealExpansion out;
    for (const auto& [ma, ca] : a) {
        for (const auto& [mb, cb] : b) {
            int s = merge_sign(ma, mb);
            if (!s) continue;
            real_accumulate(out, ma | mb, ca * cb * static_cast<double>(s));
        }
    }
    return out;
}

inline double real_expansion_diff(const RealExpansion& a, const RealExpansion& b) {
    double m = 0.0;
    auto scan = [&](const RealExpansion& x, const RealExpansion& y) {
        for (const auto& [mask, c] : x) {
            C other{};
            if (auto it = y.find(mask); it != y.end()) other = it->second;
            m = std::max(m, std::hypot(c.re - other.re, c.im - other.im));
        }
    };
    scan(a, b);
    scan(b, a);
    return m;
}

}  // namespace vaisman::testing
