#pragma once

// Forward-mode dual numbers, nestable to any order, plus a complex type that
// works over any scalar in the tower. std::complex<T> is only specified for
// floating-point T, so we carry our own.

#include <cmath>
#include <cstddef>
#include <type_traits>

namespace vaisman {

template <class T>
struct Dual {
    T v{};  // value
    T d{};  // derivative along the active direction

    constexpr Dual() = default;
    constexpr Dual(T value) : v(value) {}
    constexpr Dual(T value, T deriv) : v(value), d(deriv) {}
    constexpr Dual(double value) requires(!std::is_same_v<T, double>) : v(value) {}

    constexpr Dual& operator+=(const Dual& o) { v += o.v; d += o.d; return *this; }
    constexpr Dual& operator-=(const Dual& o) { v -= o.v; d -= o.d; return *this; }
};

template <class T> constexpr Dual<T> operator+(const Dual<T>& a, const Dual<T>& b) { return {a.v + b.v, a.d + b.d}; }
template <class T> constexpr Dual<T> operator-(const Dual<T>& a, const Dual<T>& b) { return {a.v - b.v, a.d - b.d}; }
template <class T> constexpr Dual<T> operator-(const Dual<T>& a) { return {-a.v, -a.d}; }
template <class T> constexpr Dual<T> operator*(const Dual<T>& a, const Dual<T>& b) {
    return {a.v * b.v, a.v * b.d + a.d * b.v};
}
template <class T> constexpr Dual<T> operator/(const Dual<T>& a, const Dual<T>& b) {
    T q = a.v / b.v;
    return {q, (a.d - q * b.d) / b.v};
}

template <class T> constexpr Dual<T> operator+(const Dual<T>& a, double b) { return {a.v + b, a.d}; }
template <class T> constexpr Dual<T> operator+(double a, const Dual<T>& b) { return {a + b.v, b.d}; }
template <class T> constexpr Dual<T> operator-(const Dual<T>& a, double b) { return {a.v - b, a.d}; }
template <class T> constexpr Dual<T> operator-(double a, const Dual<T>& b) { return {a - b.v, -b.d}; }
template <class T> constexpr Dual<T> operator*(const Dual<T>& a, double b) { return {a.v * b, a.d * b}; }
template <class T> constexpr Dual<T> operator*(double a, const Dual<T>& b) { return {b.v * a, b.d * a}; }
template <class T> constexpr Dual<T> operator/(const Dual<T>& a, double b) { return {a.v / b, a.d / b}; }
template <class T> constexpr Dual<T> operator/(double a, const Dual<T>& b) {
    T q = a / b.v;
    return {q, -q * b.d / b.v};
}

using std::exp;
using std::log;
using std::pow;
using std::sqrt;

template <class T> Dual<T> sqrt(const Dual<T>& a) {
    T s = sqrt(a.v);
    return {s, a.d / (2.0 * s)};
}
template <class T> Dual<T> exp(const Dual<T>& a) {
    T e = exp(a.v);
    return {e, a.d * e};
}
template <class T> Dual<T> log(const Dual<T>& a) { return {log(a.v), a.d / a.v}; }
template <class T> Dual<T> pow(const Dual<T>& a, double e) {
    T p = pow(a.v, e);
    return {p, e * pow(a.v, e - 1.0) * a.d};
}

// value() strips all derivative structure.
inline double value(double x) { return x; }
template <class T> double value(const Dual<T>& x) { return value(x.v); }

template <class S> struct dual_depth : std::integral_constant<int, 0> {};
template <class T> struct dual_depth<Dual<T>> : std::integral_constant<int, dual_depth<T>::value + 1> {};

// ---------------------------------------------------------------------------

template <class S>
struct Cx {
    S re{};
    S im{};

    constexpr Cx() = default;
    constexpr Cx(S r) : re(r) {}
    constexpr Cx(S r, S i) : re(r), im(i) {}
    constexpr Cx(double r) requires(!std::is_same_v<S, double>) : re(r) {}

    constexpr Cx& operator+=(const Cx& o) { re += o.re; im += o.im; return *this; }
    constexpr Cx& operator-=(const Cx& o) { re -= o.re; im -= o.im; return *this; }
    constexpr Cx& operator*=(const Cx& o) { *this = *this * o; return *this; }

    friend constexpr Cx operator+(const Cx& a, const Cx& b) { return {a.re + b.re, a.im + b.im}; }
    friend constexpr Cx operator-(const Cx& a, const Cx& b) { return {a.re - b.re, a.im - b.im}; }
    friend constexpr Cx operator-(const Cx& a) { return {-a.re, -a.im}; }
    friend constexpr Cx operator*(const Cx& a, const Cx& b) {
        return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
    }
    friend constexpr Cx operator*(const Cx& a, const S& b) { return {a.re * b, a.im * b}; }
    friend constexpr Cx operator*(const S& a, const Cx& b) { return {b.re * a, b.im * a}; }
    friend constexpr Cx operator*(const Cx& a, double b) requires(!std::is_same_v<S, double>) { return {a.re * b, a.im * b}; }
    friend constexpr Cx operator*(double a, const Cx& b) requires(!std::is_same_v<S, double>) { return {b.re * a, b.im * a}; }
    friend constexpr Cx operator/(const Cx& a, const S& b) { return {a.re / b, a.im / b}; }
    friend constexpr Cx operator/(const Cx& a, double b) requires(!std::is_same_v<S, double>) { return {a.re / b, a.im / b}; }
    friend constexpr Cx operator/(const Cx& a, const Cx& b) {
        S n2 = b.re * b.re + b.im * b.im;
        return {(a.re * b.re + a.im * b.im) / n2, (a.im * b.re - a.re * b.im) / n2};
    }
};

template <class S> constexpr Cx<S> conj(const Cx<S>& a) { return {a.re, -a.im}; }
template <class S> constexpr S abs2(const Cx<S>& a) { return a.re * a.re + a.im * a.im; }

using C = Cx<double>;

inline constexpr C kI{0.0, 1.0};

template <class S> constexpr Cx<S> cx_i() { return Cx<S>{S(0.0), S(1.0)}; }

// i^k for integer k (possibly negative)
template <class S> constexpr Cx<S> cx_ipow(int k) {
    switch (((k % 4) + 4) % 4) {
        case 0: return Cx<S>{S(1.0), S(0.0)};
        case 1: return Cx<S>{S(0.0), S(1.0)};
        case 2: return Cx<S>{S(-1.0), S(0.0)};
        default: return Cx<S>{S(0.0), S(-1.0)};
    }
}

template <class S> Cx<S> cx_cast(const C& z) { return {S(z.re), S(z.im)}; }

inline C cx_value(const C& z) { return z; }
template <class S> C cx_value(const Cx<S>& z) { return {value(z.re), value(z.im)}; }

using D1 = Dual<double>;
using D2 = Dual<D1>;
using D3 = Dual<D2>;
using D4 = Dual<D3>;

}  // namespace vaisman
