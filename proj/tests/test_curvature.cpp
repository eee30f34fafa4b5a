#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "helpers.hpp"
#include "vaisman/curvature.hpp"

using namespace vaisman;
using namespace vaisman::testing;

TEST_CASE("flat chart: all curvature vanishes") {
    HermitianModel f = flat_chart(3);
    Rng rng(61);
    for (int rep = 0; rep < 3; ++rep) {
        Pt<double> x = f.sample(rng);
        CHECK(sup_coeff(chern_ricci(f, x)) < 1e-14);
        CHECK(std::abs(chern_scalar(f, x)) < 1e-13);
        CHECK(std::abs(riemann_scalar_direct(f, x)) < 1e-11);
        CHECK(std::abs(riemann_scalar_via_relation(f, x)) < 1e-12);
        CHECK_THROWS_AS(upsilon(f, x), std::logic_error);
    }
}

TEST_CASE("hopf:4 reference values: s_C = 6, scal = 10.5, |T|^2 = 3 at zeta = 0") {
    HermitianModel h = hopf_cone(4);
    Rng rng(67);
    Pt<double> x = h.sample(rng);
    CHECK(chern_scalar(h, x) == doctest::Approx(6.0).epsilon(1e-10));
    CHECK(riemann_scalar_direct(h, x) == doctest::Approx(10.5).epsilon(1e-8));
    CHECK(riemann_scalar_via_relation(h, x) == doctest::Approx(10.5).epsilon(1e-10));
    CHECK(torsion_norm_sq(h, x) == doctest::Approx(3.0).epsilon(1e-10));
}

TEST_CASE("chern scalar at the Levi-Civita Ricci-flat member: n^2/2") {
    // independent evaluation (full tensor computation) against the closed form
    for (int n : {2, 3, 4}) {
        HermitianModel h = hopf_cone(n);
        HermitianModel hz = zeta_family(h, zeta_flat(n));
        Rng rng(71);
        Pt<double> x = h.sample(rng);
        CHECK(chern_scalar(hz, x) == doctest::Approx(0.5 * n * n).epsilon(1e-10));
    }
}

TEST_CASE("levi-civita ricci form: flat point and the family coefficient") {
    Rng rng(73);
    for (auto id : {"hopf:2", "hopf:4", "lens:1:2"}) {
        HermitianModel base = parse_model(id);
        const int n = base.n;
        Pt<double> x = base.sample(rng);
        MetricAtPoint m = metric_at(base, x);

        // zeta = -1/n: flat to near machine precision
        HermitianModel flatm = zeta_family(base, zeta_flat(n));
        CHECK(std::sqrt(std::abs(norm_sq(lc_ricci(flatm, x), metric_at(flatm, x)))) < 1e-11);

        // zeta = 0: R^(1) = -(1/2) d(J theta)
        Form r1 = lc_ricci(base, x);
        CHECK(rel_err(r1, base.neg_djtheta(x) * 0.5) < 1e-11);

        // general zeta, coefficient from the two verified sub-identities
        for (double z : {-0.6, 0.8}) {
            HermitianModel mz = zeta_family(base, z);
            Form got = lc_ricci(mz, x);
            Form want = base.neg_djtheta(x) * lc_ricci_coefficient(n, z);
            CHECK(rel_err(got, want) < 1e-10);
        }
    }
}

TEST_CASE("chern ricci is constant along the perturbation family") {
    HermitianModel h = hopf_cone(3);
    Rng rng(79);
    Pt<double> x = h.sample(rng);
    Form base = chern_ricci(h, x);
    for (double z : {-0.5, 0.5}) {
        Form pert = chern_ricci(zeta_family(h, z), x);
        CHECK(rel_err(pert, base) < 1e-12);
    }
}

TEST_CASE("upsilon: vanishes on cone models, consistency with the Chern Ricci form") {
    Rng rng(83);
    for (auto id : {"hopf:3", "lens:1:2"}) {
        HermitianModel m = parse_model(id);
        Pt<double> x = m.sample(rng);
        CHECK(sup_coeff(upsilon(m, x)) < 1e-11);

        // Ric^(1) = Upsilon - (n/2) d(J theta), d(J theta) = -neg_djtheta here
        Form ric = chern_ricci(m, x);
        Form recon = upsilon(m, x) + m.neg_djtheta(x) * (0.5 * m.n);
        CHECK(rel_err(ric, recon) < 1e-11);
    }
}

TEST_CASE("riemann scalar trichotomy and the closed-form law") {
    HermitianModel h4 = hopf_cone(4);
    Rng rng(89);
    Pt<double> x = h4.sample(rng);

    // zeta = -7/8 is the zero of scal for n = 4
    CHECK(std::abs(riemann_scalar_direct(zeta_family(h4, -7.0 / 8.0), x)) < 1e-9);
    // the supremum 24 is attained at zeta = -3/4
    CHECK(riemann_scalar_direct(zeta_family(h4, -0.75), x) == doctest::Approx(24.0).epsilon(1e-8));
    CHECK(scal_supremum(4) == doctest::Approx(24.0));

    // n=3, zeta=0: scal = n(n-1)(1 - 1/(2n)) = 5
    HermitianModel h3 = hopf_cone(3);
    Pt<double> y = h3.sample(rng);
    CHECK(riemann_scalar_direct(h3, y) == doctest::Approx(5.0).epsilon(1e-8));
    CHECK(riemann_scalar_via_relation(h3, y) == doctest::Approx(5.0).epsilon(1e-10));

    // sign matches sign(zeta - zeta_zero) on the threshold-straddling grid
    for (int n : {2, 4}) {
        HermitianModel h = hopf_cone(n);
        double zz = zeta_zero(n);
        CHECK(trichotomy_holds(h, {-0.9, zz - 0.05, zz + 0.05, 0.0, 1.0}, 7));
    }
}

TEST_CASE("identity suite passes on all acceptance models") {
    for (auto id : {"hopf:2", "lens:1:2"}) {
        HermitianModel m = parse_model(id);
        VerificationReport rep = run_verification(m, 6, 11, {-0.5, zeta_flat(m.n), 0.0, 1.0});
        for (const auto& r : rep.records) {
            INFO(r.name, " ", r.param, " err=", r.max_rel_err);
            CHECK(r.pass);
        }
        CHECK(rep.pass);
    }
}

TEST_CASE("curvature report aggregates finite residuals and pass flags") {
    HermitianModel h = hopf_cone(3);
    Rng rng(97);
    Pt<double> x = h.sample(rng);
    CurvatureReport rep = curvature_report(h, x);
    CHECK(rep.pass);
    CHECK(std::isfinite(rep.scal_direct));
    CHECK(std::isfinite(rep.torsion_sq));
    CHECK(rep.chern_ricci_norm > 0.0);
    CHECK(rep.djtheta_norm > 0.0);
    for (const auto& c : rep.checks) CHECK(std::isfinite(c.max_rel_err));
    // overall pass iff all records pass
    bool all = true;
    for (const auto& c : rep.checks) all = all && c.pass;
    CHECK(rep.pass == all);
}

TEST_CASE("singular metric input is rejected") {
    // zeta -> -1 collapses the fiber directions; beyond it the form is indefinite
    HermitianModel h = hopf_cone(2);
    Rng rng(101);
    Pt<double> x = h.sample(rng);
    HermitianModel bad = h;
    FormField om = h.omega;
    FormField dj = h.neg_djtheta;
    bad.omega = FormField([om, dj](const auto& p) { return om(p) + dj(p) * (-1.2); }, "degenerate");
    CHECK_THROWS_AS(metric_at(bad, x), std::domain_error);
}
