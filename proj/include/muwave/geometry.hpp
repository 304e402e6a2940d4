#pragma once

// Residual checks for the geometric descriptions of the family:
//   - plane centro-equiaffine curve flow whose curvature equation reduces to
//     muCH,
//   - space centro-equiaffine curve flow whose curvature equations reduce to
//     muDP,
//   - pseudo-spherical one-forms for muCH,
//   - affine-surface Maurer-Cartan forms for muDP.
//
// Conventions: dx ^ dt is positively oriented, so for w = a dx + b dt
//   d w = (b_x - a_t) dx ^ dt,
//   (a dx + b dt) ^ (a' dx + b' dt) = (a b' - a' b) dx ^ dt.
// Time derivatives of form coefficients are never differenced in time; each
// coefficient carries its rate, built from u_t by the chain rule.

#include "muwave/field.hpp"

#include <array>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace muwave {

/// w = dx_coef dx + dt_coef dt, with dx_rate = d/dt of dx_coef.
struct OneForm {
    PeriodicField dx_coef;
    PeriodicField dt_coef;
    PeriodicField dx_rate;
};

/// Coefficient of dx ^ dt in d w.
PeriodicField exterior_d(const OneForm& w);

/// Coefficient of dx ^ dt in a ^ b.
PeriodicField wedge(const OneForm& a, const OneForm& b);

/// Each identity is a sum of terms that should cancel. Its residual is
/// sup |sum| / max(1, max_i sup |term_i|), so spectral round-off amplified
/// by high derivatives is measured against the size of what cancels.
struct GeometryResidualReport {
    std::string id;
    double residual_sup = 0.0;  ///< worst over all parts
    int n = 0;
    std::optional<double> lambda_spec;
    std::string field;  ///< description of the input field
    std::vector<std::pair<std::string, double>> parts;  ///< per-identity sup residuals
};

/// Plane curve flow curvature rate f_ss + 4 phi f + 2 phi_s F, with F the
/// primitive of f satisfying F(0) = inv_constant. Throws PreconditionError
/// if f does not have zero mean.
PeriodicField ca2_curvature_rhs(const PeriodicField& phi, const PeriodicField& f, double inv_constant);

/// sup |ca2_curvature_rhs(m, -u_x, -u(0)) + (u_xxx + 4 m u_x + 2 u m_x)|
/// with m = A u.
GeometryResidualReport ca2_to_much_residual(const PeriodicField& u);

/// Checks that the muCH evolution form, moved to the curve-flow frame
/// (sigma = x - t, u -> u/2), satisfies m_t + u_sss + 4 m u_s + 2 u m_s = 0.
/// m_t is taken as A applied to the evolution right-hand side.
GeometryResidualReport ca2_frame_change_residual(const PeriodicField& u);

struct Ca3Rates {
    PeriodicField alpha_t;
    PeriodicField beta_t;
};

/// Space curve flow curvature rates for velocities F, G, H.
Ca3Rates ca3_curvature_rhs(const PeriodicField& alpha, const PeriodicField& beta, const PeriodicField& F,
                           const PeriodicField& G, const PeriodicField& H);

/// Arc-length preservation constraint F + G_s + (2/3) beta H + (1/3) H_ss.
PeriodicField ca3_constraint(const PeriodicField& beta, const PeriodicField& F, const PeriodicField& G,
                             const PeriodicField& H);

/// Substitutes beta = 0, F = u_s + 2/3, G = -u, H = -1, alpha = -m.
/// Parts: beta_t (vanishes identically), alpha_t - (3 m u_s + u m_s), and
/// alpha_t + A(u_t) with u_t from the muDP right-hand side.
GeometryResidualReport ca3_to_mudp_residual(const PeriodicField& u);

struct PssForms {
    OneForm w1, w2, w3;
};

/// Pseudo-spherical one-forms of muCH with spectral parameter lambda_spec.
/// u_t defaults to the muCH right-hand side. Throws PreconditionError for
/// lambda_spec = 0.
PssForms pss_forms(const PeriodicField& u, double lambda_spec,
                   const std::optional<PeriodicField>& u_t = std::nullopt);

/// Residuals of d w1 = w3 ^ w2, d w2 = w1 ^ w3, d w3 = w1 ^ w2.
GeometryResidualReport pss_structure_residual(const PeriodicField& u, double lambda_spec,
                                              const std::optional<PeriodicField>& u_t = std::nullopt);

/// Maurer-Cartan forms of an affine surface: conn[j][k] = w_j^k and
/// frame[p] = w^p (p = 0, 1); w^3 is identically zero.
struct AffineTable {
    std::array<std::array<OneForm, 3>, 3> conn;
    std::array<OneForm, 2> frame;
};

/// Coefficient table for muDP with spectral parameter lambda_spec. u_t
/// defaults to the muDP right-hand side. Throws PreconditionError for
/// lambda_spec = 0.
AffineTable affine_table(const PeriodicField& u, double lambda_spec,
                         const std::optional<PeriodicField>& u_t = std::nullopt);

/// sup of |sum_j f_j^j| and |sum_j g_j^j|. Pure coefficient algebra.
double affine_trace_residual(const AffineTable& table);

/// Every structure equation of the table: trace, d w_j^l = sum_k w_j^k ^ w_k^l,
/// w^1 ^ w_1^3 + w^2 ^ w_2^3 = 0, and the two frame equations.
GeometryResidualReport affine_structure_residual(const AffineTable& table);

/// Builds the table for u and checks it.
GeometryResidualReport affine_structure_residual(const PeriodicField& u, double lambda_spec,
                                                 const std::optional<PeriodicField>& u_t = std::nullopt);

}  // namespace muwave
