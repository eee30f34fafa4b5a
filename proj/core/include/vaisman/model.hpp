#pragma once

// Chart models of suspensions of Sasaki-Einstein manifolds. A model carries
// its fundamental form Omega = kappa e^{-2 phi} omega_CY, the Lee form theta,
// the two Vaisman building blocks -d(J theta) and theta ^ J theta, the cone
// potential, deck data for the suspension, and samplers for the fundamental
// domain. The calibration constant kappa is solved for numerically at
// construction and verified against the Vaisman identity at sampled points.

#include <functional>
#include <string>

#include "vaisman/field.hpp"
#include "vaisman/realmetric.hpp"
#include "vaisman/rng.hpp"

namespace vaisman {

struct DeckDescriptor {
    double c = 0.0;              // suspension parameter, c > 1
    std::vector<C> chart_map;    // complex-linear deck action on chart coordinates
    double fundamental_length = 0.0;  // log(c^2), the collapsed-circle length
};

enum class ModelKind { flat, hopf, lens };

struct HermitianModel {
    std::string id;
    ModelKind kind = ModelKind::flat;
    int n = 0;                 // complex dimension of the chart
    double kappa = 1.0;        // scalar calibrating Omega against the Vaisman identity
    double zeta = 0.0;         // perturbation parameter of this member of the family
    double lee_scale = 1.0;    // theta = lee_scale * theta_base; 1/(1+zeta)
    double c = 0.0;            // suspension parameter
    double fiber_exp = 1.0;    // deck map scales the cone radius by c via coords^(fiber_exp)
    bool has_cone = true;      // false for the flat reference chart

    FormField omega;           // fundamental form of this model
    FormField omega_cy;        // Kahler form of the underlying cone (unweighted)
    FormField theta;           // Lee form of this model
    FormField neg_djtheta;     // -d(J theta_base), nonnegative (1,1)
    FormField theta_jtheta;    // theta_base ^ J theta_base
    ScalarField log_rho2;      // log rho^2 = 2 phi of the cone potential
    ScalarField rho2;

    std::vector<C> deck;       // n x n complex matrix of the deck map
    std::function<Pt<double>(Rng&)> sample;                     // fundamental-domain sampler
    std::function<std::vector<double>(const Pt<double>&)> euler;  // rho d_rho in the chart frame
    std::function<Pt<double>(const Pt<double>&)> to_link;       // rescale to rho = 1
    std::function<RealMetricField(double)> deformed_cone;       // lens models: g_{C,a}
};

struct SasakiCheckReport {
    double eta_xi = 0.0;          // |eta(xi) - 1|
    double xi_hook_deta = 0.0;    // |xi -| d eta|
    double phi_square = 0.0;      // |Phi^2 + 1 - eta (x) xi| on the link tangent
    double metric_reconstruction = 0.0;  // |g - (1/2) d eta (1 (x) Phi) - eta (x) eta|
    double ricci_cone = 0.0;      // |Ric(g_CY)|
};

HermitianModel hopf_cone(int n);
HermitianModel lens_cone(int m, int ell);
HermitianModel flat_chart(int n);

// Omega_zeta = Omega - zeta d(J theta); requires zeta > -1.
HermitianModel zeta_family(const HermitianModel& base, double zeta);

// Deck data for the suspension with parameter c > 1 and a unitary chart map.
// For hopf models `unitary` is an n x n matrix (defaults to the identity);
// for lens models it is 1 x 1 and acts on the fiber coordinate.
DeckDescriptor suspension_data(const HermitianModel& model, double c,
                               const std::vector<C>& unitary = {});

// Replace the model's deck data.
HermitianModel with_suspension(HermitianModel model, const DeckDescriptor& deck);

// Pointwise residuals of the Sasaki structure relations on the cone.
SasakiCheckReport sasaki_check(const HermitianModel& model, const Pt<double>& x);

// Cone metric of the a-deformed Sasaki structure (lens models).
RealMetricField a_deformation(const HermitianModel& model, double a);

// "hopf:<n>" | "lens:<m>:<l>"
HermitianModel parse_model(const std::string& descriptor);

// --- helpers ------------------------------------------------------------------

inline MetricAtPoint metric_at(const HermitianModel& model, const Pt<double>& x) {
    return metric_from_form(model.omega(x));
}

// Underlying Riemannian metric g = Omega(1 (x) J) as a field.
RealMetricField real_metric_field(const HermitianModel& model);

// Value of the deck map on a chart point.
Pt<double> deck_apply(const HermitianModel& model, const Pt<double>& x);

// Pullback of this model's Omega under the deck map, evaluated at x.
Form deck_pullback_omega(const HermitianModel& model, const Pt<double>& x);

// Pullback of a form table under a complex-linear chart map with matrix M.
template <class S>
BasicForm<S> pullback_linear(const BasicForm<S>& a, const std::vector<Cx<S>>& M) {
    BasicForm<S> out(a.dim());
    for (const auto& part : a.parts())
        out.table(part.p, part.q) = substitute_table<S>(part.c, a.dim(), part.p, part.q, M);
    return out;
}

}  // namespace vaisman
