#include "vaisman/brieskorn.hpp"

#include <algorithm>
#include <stdexcept>

#include "vaisman/curvature.hpp"

namespace vaisman {

namespace {

__int128 gcd128(__int128 a, __int128 b) {
    if (a < 0) a = -a;
    if (b < 0) b = -b;
    while (b != 0) {
        __int128 t = a % b;
        a = b;
        b = t;
    }
    return a;
}

__int128 checked_mul(__int128 a, __int128 b) {
    if (a == 0 || b == 0) return 0;
    __int128 r = a * b;
    if (r / a != b) throw std::overflow_error("exact rational arithmetic overflow");
    return r;
}

__int128 checked_add(__int128 a, __int128 b) {
    __int128 r = a + b;
    if ((b > 0 && r < a) || (b < 0 && r > a)) throw std::overflow_error("exact rational arithmetic overflow");
    return r;
}

}  // namespace

Rat Rat::of(long long n, long long d) {
    if (d == 0) throw std::invalid_argument("rational with zero denominator");
    Rat r;
    r.num = n;
    r.den = d;
    return r.normalized();
}

Rat Rat::normalized() const {
    Rat r = *this;
    if (r.den < 0) {
        r.num = -r.num;
        r.den = -r.den;
    }
    __int128 g = gcd128(r.num, r.den);
    if (g > 1) {
        r.num /= g;
        r.den /= g;
    }
    return r;
}

Rat operator+(const Rat& a, const Rat& b) {
    Rat r;
    r.num = checked_add(checked_mul(a.num, b.den), checked_mul(b.num, a.den));
    r.den = checked_mul(a.den, b.den);
    return r.normalized();
}

Rat operator-(const Rat& a, const Rat& b) {
    Rat nb = b;
    nb.num = -nb.num;
    return a + nb;
}

bool operator<(const Rat& a, const Rat& b) {
    return (a - b).num < 0;
}

bool operator==(const Rat& a, const Rat& b) {
    Rat d = a - b;
    return d.num == 0;
}

std::string Rat::str() const {
    auto digits = [](__int128 v) {
        bool neg = v < 0;
        if (neg) v = -v;
        std::string s;
        if (v == 0) s = "0";
        while (v > 0) {
            s += static_cast<char>('0' + static_cast<int>(v % 10));
            v /= 10;
        }
        if (neg) s += '-';
        std::reverse(s.begin(), s.end());
        return s;
    };
    if (den == 1) return digits(num);
    return digits(num) + "/" + digits(den);
}

BrieskornTuple check_admissible(const std::vector<long long>& exponents) {
    if (exponents.size() < 4)
        throw std::invalid_argument("brieskorn: need at least 4 exponents (n >= 3)");
    for (size_t i = 0; i < exponents.size(); ++i) {
        if (exponents[i] < 2) throw std::invalid_argument("brieskorn: exponents must be >= 2");
        if (i && exponents[i] < exponents[i - 1])
            throw std::invalid_argument("brieskorn: exponents must be sorted ascending");
    }
    BrieskornTuple t;
    t.exponents = exponents;
    t.n = static_cast<int>(exponents.size()) - 1;
    Rat s = Rat::of(0);
    for (long long a : exponents) s = s + Rat::of(1, a);
    t.sum_inv = s;
    t.upper = Rat::of(1) + Rat::of(t.n, exponents.back());
    Rat one = Rat::of(1);
    if (!(one < s))
        t.verdict = "fails-lower";
    else if (!(s < t.upper))
        t.verdict = "fails-upper";
    else
        t.verdict = "admissible-by-C3";
    t.c3 = t.verdict;
    return t;
}

std::vector<BrieskornTuple> exotic7_catalog() {
    std::vector<BrieskornTuple> out;
    out.reserve(28);
    for (int k = 1; k <= 28; ++k) {
        BrieskornTuple t = check_admissible({2, 2, 2, 3, 6ll * k - 1});
        t.verdict = "catalog-C4";
        out.push_back(std::move(t));
    }
    return out;
}

std::vector<BrieskornTuple> scan(int n, long long max_exponent) {
    if (n < 3) throw std::invalid_argument("scan: need n >= 3");
    if (max_exponent < 2 || max_exponent > 64)
        throw std::invalid_argument("scan: need 2 <= max_exponent <= 64");
    // multisets of size n+1 from [2, max]: C(max - 2 + n + 1, n + 1)
    double count = 1.0;
    for (int i = 0; i < n + 1; ++i) count *= static_cast<double>(max_exponent - 1 + n - i) / (n + 1 - i);
    if (count > 2e6) throw std::invalid_argument("scan: combinatorial limit exceeded");

    std::vector<BrieskornTuple> out;
    std::vector<long long> tuple(n + 1, 2);
    auto rec = [&](auto&& self, int pos, long long lo) -> void {
        if (pos == n + 1) {
            BrieskornTuple t = check_admissible(tuple);
            if (t.verdict == "admissible-by-C3") out.push_back(std::move(t));
            return;
        }
        for (long long a = lo; a <= max_exponent; ++a) {
            tuple[pos] = a;
            self(self, pos + 1, a);
        }
    };
    rec(rec, 0, 2);
    return out;
}

CurvatureProfile curvature_profile(int n) {
    if (n < 2) throw std::invalid_argument("curvature_profile: need n >= 2");
    CurvatureProfile p;
    p.n = n;
    p.zeta_flat = zeta_flat(n);
    p.zeta_zero = zeta_zero(n);
    p.zeta_max = (1.0 - n) / static_cast<double>(n);
    p.scal_sup = scal_supremum(n);
    p.T = 2.0 / n;
    p.t_zero = p.T - 1.0 / (static_cast<double>(n) * n);
    return p;
}

}  // namespace vaisman
