#pragma once

// Exact rational arithmetic for the Brieskorn-Pham sufficient condition
// 1 < sum 1/a_j < 1 + n/a_n, the exotic 7-sphere catalog, enumeration, and
// the per-dimension curvature thresholds of the zeta-family. Verdicts never
// touch floating point; arithmetic overflows raise rather than round.

#include <cstdint>
#include <string>
#include <vector>

namespace vaisman {

// Rational over checked __int128; throws std::overflow_error when an exact
// operation would not fit.
struct Rat {
    __int128 num = 0;
    __int128 den = 1;

    static Rat of(long long n, long long d = 1);
    Rat normalized() const;
    friend Rat operator+(const Rat& a, const Rat& b);
    friend Rat operator-(const Rat& a, const Rat& b);
    friend bool operator<(const Rat& a, const Rat& b);
    friend bool operator==(const Rat& a, const Rat& b);
    std::string str() const;  // "p/q" (or "p" when q = 1)
};

struct BrieskornTuple {
    std::vector<long long> exponents;  // a_0 <= ... <= a_n, each >= 2
    int n = 0;                         // exponents.size() - 1
    Rat sum_inv;                       // S = sum 1/a_j
    Rat upper;                         // 1 + n/a_n
    std::string verdict;               // admissible-by-C3 | fails-lower | fails-upper | catalog-C4
    std::string c3;                    // the inequality outcome, always present
};

// Exact verdict of the sufficient condition. Requires a sorted tuple of
// length >= 4 (n >= 3) with all exponents >= 2.
BrieskornTuple check_admissible(const std::vector<long long>& exponents);

// L(2,2,2,3,6k-1), k = 1..28; these carry Levi-Civita Ricci-flat metrics by
// the parallelizable-boundary route regardless of the inequality, which every
// entry fails on the upper side (reported in `c3`).
std::vector<BrieskornTuple> exotic7_catalog();

// All sorted tuples of length n+1 with entries in [2, max_exponent] that pass
// the inequality, in lexicographic order.
std::vector<BrieskornTuple> scan(int n, long long max_exponent);

struct CurvatureProfile {
    int n = 0;
    double zeta_flat = 0.0;   // -1/n
    double zeta_zero = 0.0;   // (1-2n)/(2n)
    double zeta_max = 0.0;    // (1-n)/n, maximizer of scal
    double scal_sup = 0.0;    // n^2 (n-1)/2, the supremum of scal over the family
    double T = 0.0;           // 2/n
    double t_zero = 0.0;      // T - 1/n^2
};

// Thresholds for links L(a) x S^1: n = (number of variables) - 1.
CurvatureProfile curvature_profile(int n);

}  // namespace vaisman
