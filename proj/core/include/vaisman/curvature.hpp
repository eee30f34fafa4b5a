#pragma once

// Curvature of a Hermitian model at a point: Chern Ricci form, Levi-Civita
// Ricci form, Chern scalar, torsion norm, and the Riemannian scalar curvature
// both directly (Christoffel oracle on the real metric) and assembled from
// the Hermitian identity relating the two scalars.

#include <cstdint>

#include "vaisman/model.hpp"

namespace vaisman {

inline constexpr double kTolIdentity = 1e-8;  // identities computed purely by AD
inline constexpr double kTolOracle = 1e-6;    // anything through the Riemann-tensor oracle
inline constexpr const char* kToolVersion = "0.1.0";

Form chern_ricci(const HermitianModel& model, const Pt<double>& x);
Form lc_ricci(const HermitianModel& model, const Pt<double>& x);
Form upsilon(const HermitianModel& model, const Pt<double>& x);
double chern_scalar(const HermitianModel& model, const Pt<double>& x);
double torsion_norm_sq(const HermitianModel& model, const Pt<double>& x);
double riemann_scalar_direct(const HermitianModel& model, const Pt<double>& x);
double riemann_scalar_via_relation(const HermitianModel& model, const Pt<double>& x);

// Closed forms of the family laws (zeta measured from the unit-Lee base).
inline double chern_scalar_formula(int n, double zeta) {
    return n * (n - 1.0) / (2.0 * (zeta + 1.0));
}
inline double torsion_sq_formula(int n, double zeta) {
    return (n - 1.0) / ((zeta + 1.0) * (zeta + 1.0));
}
inline double scal_formula(int n, double zeta) {
    return n * (n - 1.0) / ((zeta + 1.0) * (zeta + 1.0)) * (zeta - (1.0 - 2.0 * n) / (2.0 * n));
}
// coefficient of -d(J theta) in the Levi-Civita Ricci form of Omega_zeta
inline double lc_ricci_coefficient(int n, double zeta) {
    return 0.5 * (n - (n - 1.0) / (1.0 + zeta));
}
// zero of scal(g_zeta) and the flat point of the Levi-Civita Ricci form
inline double zeta_zero(int n) { return (1.0 - 2.0 * n) / (2.0 * n); }
inline double zeta_flat(int n) { return -1.0 / n; }
// supremum of scal over the family, attained at zeta = (1-n)/n
inline double scal_supremum(int n) { return scal_formula(n, (1.0 - n) / static_cast<double>(n)); }

struct IdentityRecord {
    std::string name;
    std::string param;  // e.g. "zeta=-0.25", empty for base checks
    double max_rel_err = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct CurvatureReport {
    std::string model;
    std::vector<double> point;
    double zeta = 0.0;
    double s_chern = 0.0;
    double scal_direct = 0.0;
    double scal_via_relation = 0.0;
    double torsion_sq = 0.0;
    double chern_ricci_norm = 0.0;
    double lc_ricci_norm = 0.0;
    double djtheta_norm = 0.0;
    double ric_eigen_min = 0.0;   // Riemannian Ricci eigenvalue range (informational)
    double ric_eigen_max = 0.0;
    std::vector<IdentityRecord> checks;
    bool pass = false;
};

CurvatureReport curvature_report(const HermitianModel& model, const Pt<double>& x,
                                 double tol_identity = kTolIdentity, double tol_oracle = kTolOracle);

struct VerificationReport {
    std::string tool_version = kToolVersion;
    std::string model;
    uint64_t seed = 0;
    int points = 0;
    std::vector<IdentityRecord> records;
    bool pass = false;
};

// Full identity suite: base-model invariants plus the zeta-family laws at the
// given parameters, each maximized over `points` seeded sample points.
VerificationReport run_verification(const HermitianModel& base, int points, uint64_t seed,
                                    const std::vector<double>& zetas = {-0.5, 0.0, 1.0},
                                    double tol_identity = kTolIdentity,
                                    double tol_oracle = kTolOracle);

// sign(scal(g_zeta)) at the sampled grid; returns false if any sign disagrees
// with sign(zeta - zeta_zero(n)).
bool trichotomy_holds(const HermitianModel& base, const std::vector<double>& zetas, uint64_t seed);

}  // namespace vaisman
