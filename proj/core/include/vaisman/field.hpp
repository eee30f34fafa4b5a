#pragma once

// Fields of forms and scalars on a chart, differentiable by evaluation at
// dual-number points. Free functions implement d, del, delbar, d^c and the
// codifferentials for any callable field; FormField / ScalarField type-erase
// callables for storage on models (jet order capped at 3).

#include <array>
#include <memory>
#include <stdexcept>
#include <string>

#include "vaisman/metric.hpp"

namespace vaisman {

inline constexpr int kMaxRealDim = 2 * kMaxComplexDim;

template <class S>
struct Pt {
    int n2 = 0;  // real dimension, 2n
    std::array<S, kMaxRealDim> x{};

    int cdim() const { return n2 / 2; }
};

inline Pt<double> make_point(std::initializer_list<double> coords) {
    Pt<double> p;
    p.n2 = static_cast<int>(coords.size());
    int i = 0;
    for (double c : coords) p.x[i++] = c;
    return p;
}

template <class S>
Pt<Dual<S>> lift_point(const Pt<S>& p, int direction) {
    Pt<Dual<S>> out;
    out.n2 = p.n2;
    for (int i = 0; i < p.n2; ++i) out.x[i] = Dual<S>{p.x[i], S(i == direction ? 1.0 : 0.0)};
    return out;
}

template <class S>
Pt<S> point_value(const Pt<Dual<S>>& p) {
    Pt<S> out;
    out.n2 = p.n2;
    for (int i = 0; i < p.n2; ++i) out.x[i] = p.x[i].v;
    return out;
}

struct jet_order_error : std::logic_error {
    using std::logic_error::logic_error;
};

// --- type-erased fields --------------------------------------------------------

class FormField {
    struct Concept {
        virtual ~Concept() = default;
        virtual BasicForm<double> ev(const Pt<double>&) const = 0;
        virtual BasicForm<D1> ev(const Pt<D1>&) const = 0;
        virtual BasicForm<D2> ev(const Pt<D2>&) const = 0;
        virtual BasicForm<D3> ev(const Pt<D3>&) const = 0;
    };
    template <class F>
    struct Holder final : Concept {
        F f;
        explicit Holder(F fn) : f(std::move(fn)) {}
        BasicForm<double> ev(const Pt<double>& x) const override { return f(x); }
        BasicForm<D1> ev(const Pt<D1>& x) const override { return f(x); }
        BasicForm<D2> ev(const Pt<D2>& x) const override { return f(x); }
        BasicForm<D3> ev(const Pt<D3>& x) const override { return f(x); }
    };

public:
    FormField() = default;
    template <class F, class = std::enable_if_t<!std::is_same_v<std::decay_t<F>, FormField>>>
    FormField(F f, std::string name = {}, int max_order = 3)
        : impl_(std::make_shared<Holder<F>>(std::move(f))), name_(std::move(name)), max_order_(max_order) {}

    template <class S>
    BasicForm<S> operator()(const Pt<S>& x) const {
        if (!impl_) throw std::logic_error("empty form field");
        if (dual_depth<S>::value > max_order_)
            throw jet_order_error("field '" + name_ + "': jet order " +
                                  std::to_string(dual_depth<S>::value) + " exceeds " +
                                  std::to_string(max_order_));
        return impl_->ev(x);
    }

    bool valid() const { return impl_ != nullptr; }
    const std::string& name() const { return name_; }
    int max_order() const { return max_order_; }

private:
    std::shared_ptr<const Concept> impl_;
    std::string name_;
    int max_order_ = 3;
};

class ScalarField {
    struct Concept {
        virtual ~Concept() = default;
        virtual Cx<double> ev(const Pt<double>&) const = 0;
        virtual Cx<D1> ev(const Pt<D1>&) const = 0;
        virtual Cx<D2> ev(const Pt<D2>&) const = 0;
        virtual Cx<D3> ev(const Pt<D3>&) const = 0;
    };
    template <class F>
    struct Holder final : Concept {
        F f;
        explicit Holder(F fn) : f(std::move(fn)) {}
        Cx<double> ev(const Pt<double>& x) const override { return f(x); }
        Cx<D1> ev(const Pt<D1>& x) const override { return f(x); }
        Cx<D2> ev(const Pt<D2>& x) const override { return f(x); }
        Cx<D3> ev(const Pt<D3>& x) const override { return f(x); }
    };

public:
    ScalarField() = default;
    template <class F, class = std::enable_if_t<!std::is_same_v<std::decay_t<F>, ScalarField>>>
    ScalarField(F f, std::string name = {}, int max_order = 3)
        : impl_(std::make_shared<Holder<F>>(std::move(f))), name_(std::move(name)), max_order_(max_order) {}

    template <class S>
    Cx<S> operator()(const Pt<S>& x) const {
        if (!impl_) throw std::logic_error("empty scalar field");
        if (dual_depth<S>::value > max_order_)
            throw jet_order_error("field '" + name_ + "': jet order " +
                                  std::to_string(dual_depth<S>::value) + " exceeds " +
                                  std::to_string(max_order_));
        return impl_->ev(x);
    }

    bool valid() const { return impl_ != nullptr; }
    const std::string& name() const { return name_; }

private:
    std::shared_ptr<const Concept> impl_;
    std::string name_;
    int max_order_ = 3;
};

// --- exterior differentiation ----------------------------------------------------

// Partial derivative of a form field along real coordinate mu.
template <class F, class S>
auto partial_of(const F& f, const Pt<S>& x, int mu) {
    return form_deriv_part(f(lift_point(x, mu)));
}

namespace detail {

// dF = sum_k dz^k ^ (dF/dz_k) + dzbar^k ^ (dF/dzbar_k); flags select the halves.
template <class F, class S>
BasicForm<S> d_parts(const F& f, const Pt<S>& x, bool hol, bool anti) {
    const int n = x.cdim();
    BasicForm<S> out(n);
    for (int k = 0; k < n; ++k) {
        BasicForm<S> fx = partial_of(f, x, 2 * k);
        BasicForm<S> fy = partial_of(f, x, 2 * k + 1);
        BasicForm<S> fyi = fy * cx_i<S>();
        if (hol) {
            BasicForm<S> fz = (fx - fyi) * 0.5;
            out += wedge(dz_form<S>(n, k), fz);
        }
        if (anti) {
            BasicForm<S> fzb = (fx + fyi) * 0.5;
            out += wedge(dzbar_form<S>(n, k), fzb);
        }
    }
    out.prune();
    return out;
}

}  // namespace detail

template <class F, class S>
BasicForm<S> d_of(const F& f, const Pt<S>& x) { return detail::d_parts(f, x, true, true); }

template <class F, class S>
BasicForm<S> del_of(const F& f, const Pt<S>& x) { return detail::d_parts(f, x, true, false); }

template <class F, class S>
BasicForm<S> delbar_of(const F& f, const Pt<S>& x) { return detail::d_parts(f, x, false, true); }

// d^c = J o d.
template <class F, class S>
BasicForm<S> dc_of(const F& f, const Pt<S>& x) { return j_action(d_of(f, x)); }

// --- scalar field calculus ---------------------------------------------------

template <class F, class S>
Cx<S> scalar_partial(const F& f, const Pt<S>& x, int mu) {
    Cx<Dual<S>> v = f(lift_point(x, mu));
    return {v.re.d, v.im.d};
}

// d of a scalar field as a form: (1,0) + (0,1) parts.
template <class F, class S>
BasicForm<S> d_scalar(const F& f, const Pt<S>& x) {
    const int n = x.cdim();
    BasicForm<S> out(n);
    auto& hol = out.table(1, 0);
    auto& anti = out.table(0, 1);
    for (int k = 0; k < n; ++k) {
        Cx<S> fx = scalar_partial(f, x, 2 * k);
        Cx<S> fy = scalar_partial(f, x, 2 * k + 1);
        hol[k] = (fx - cx_i<S>() * fy) * 0.5;
        anti[k] = (fx + cx_i<S>() * fy) * 0.5;
    }
    return out;
}

// Complex Hessian H_{j kbar} = d^2 f / dz_j dzbar_k via nested duals.
template <class F, class S>
std::vector<Cx<S>> complex_hessian(const F& f, const Pt<S>& x) {
    const int n = x.cdim();
    std::vector<Cx<S>> hess(static_cast<size_t>(2 * n) * (2 * n));
    for (int mu = 0; mu < 2 * n; ++mu) {
        for (int nu = mu; nu < 2 * n; ++nu) {
            Pt<Dual<S>> p1 = lift_point(x, mu);
            Pt<Dual<Dual<S>>> p2;
            p2.n2 = p1.n2;
            for (int i = 0; i < p1.n2; ++i)
                p2.x[i] = Dual<Dual<S>>{p1.x[i], Dual<S>{S(i == nu ? 1.0 : 0.0), S(0.0)}};
            Cx<Dual<Dual<S>>> v = f(p2);
            hess[static_cast<size_t>(mu) * 2 * n + nu] = Cx<S>{v.re.d.d, v.im.d.d};
            hess[static_cast<size_t>(nu) * 2 * n + mu] = hess[static_cast<size_t>(mu) * 2 * n + nu];
        }
    }
    std::vector<Cx<S>> out(static_cast<size_t>(n) * n);
    auto at = [&](int a, int b) { return hess[static_cast<size_t>(a) * 2 * n + b]; };
    for (int j = 0; j < n; ++j)
        for (int k = 0; k < n; ++k) {
            // (1/4) (d_xj - i d_yj)(d_xk + i d_yk) f
            Cx<S> t = at(2 * j, 2 * k) + at(2 * j + 1, 2 * k + 1) +
                      cx_i<S>() * (at(2 * j, 2 * k + 1) - at(2 * j + 1, 2 * k));
            out[static_cast<size_t>(j) * n + k] = t * 0.25;
        }
    return out;
}

// dd^c f = 2i del delbar f as a (1,1)-form.
template <class F, class S>
BasicForm<S> ddc_scalar(const F& f, const Pt<S>& x) {
    const int n = x.cdim();
    std::vector<Cx<S>> hess = complex_hessian(f, x);
    for (auto& c : hess) c = c * 2.0;  // dd^c = 2i del delbar; form ctor supplies the i
    return form_from_hermitian<S>(n, hess);
}

// --- codifferentials ------------------------------------------------------------

// M is a metric field: callable Pt<T> -> BasicMetric<T>.

// del* = -* delbar *
template <class F, class M, class S>
BasicForm<S> delstar_of(const F& f, const M& metric, const Pt<S>& x) {
    auto starred = [&](const auto& pt) { return hodge_star(f(pt), metric(pt)); };
    return -hodge_star(delbar_of(starred, x), metric(x));
}

// delbar* = -* del *
template <class F, class M, class S>
BasicForm<S> delbarstar_of(const F& f, const M& metric, const Pt<S>& x) {
    auto starred = [&](const auto& pt) { return hodge_star(f(pt), metric(pt)); };
    return -hodge_star(del_of(starred, x), metric(x));
}

// delta = -* d *
template <class F, class M, class S>
BasicForm<S> codiff_of(const F& f, const M& metric, const Pt<S>& x) {
    auto starred = [&](const auto& pt) { return hodge_star(f(pt), metric(pt)); };
    return -hodge_star(d_of(starred, x), metric(x));
}

}  // namespace vaisman
