#include "muwave/geometry.hpp"

#include "muwave/evolution.hpp"
#include "muwave/mu_operator.hpp"

#include <algorithm>
#include <cmath>

namespace muwave {
namespace {

PeriodicField d(const PeriodicField& f, int order = 1) { return derivative(f, order); }

PeriodicField constant(const PeriodicGrid& grid, double value) { return PeriodicField(grid, value); }

void check_lambda(double lambda_spec)
{
    if (lambda_spec == 0.0)
        throw PreconditionError("geometry: spectral parameter must be nonzero");
}

PeriodicField evolution_rate(const PeriodicField& u, double lambda, const std::optional<PeriodicField>& u_t)
{
    if (u_t) {
        if (u_t->grid() != u.grid())
            throw PreconditionError("geometry: u_t must share the grid of u");
        return *u_t;
    }
    return rhs(u, ModelParams::from_initial(u, lambda));
}

GeometryResidualReport make_report(std::string id, const PeriodicField& u, std::optional<double> lambda_spec)
{
    GeometryResidualReport r;
    r.id = std::move(id);
    r.n = u.size();
    r.lambda_spec = lambda_spec;
    r.field = "mean " + std::to_string(mean(u)) + ", sup " + std::to_string(u.sup_norm());
    return r;
}

/// Records sup |sum of terms| / max(1, min_scale, max_i sup |term_i|).
void add_part(GeometryResidualReport& r, std::string name, const std::vector<PeriodicField>& terms,
              double min_scale = 0.0)
{
    PeriodicField sum(terms.front().grid(), 0.0);
    double scale = std::max(1.0, min_scale);
    for (const auto& t : terms) {
        sum += t;
        scale = std::max(scale, t.sup_norm());
    }
    const double s = sum.sup_norm() / scale;
    r.parts.emplace_back(std::move(name), s);
    r.residual_sup = std::max(r.residual_sup, s);
}

}  // namespace

PeriodicField exterior_d(const OneForm& w) { return d(w.dt_coef) - w.dx_rate; }

PeriodicField wedge(const OneForm& a, const OneForm& b) { return a.dx_coef * b.dt_coef - b.dx_coef * a.dt_coef; }

PeriodicField ca2_curvature_rhs(const PeriodicField& phi, const PeriodicField& f, double inv_constant)
{
    if (std::abs(mean(f)) > 1e-10 * (1.0 + f.sup_norm()))
        throw PreconditionError("ca2_curvature_rhs: normal velocity must have zero mean");
    const PeriodicField primitive = antiderivative(f, ConstantRule::explicit_value(inv_constant)).values;
    return d(f, 2) + 4.0 * (phi * f) + 2.0 * (d(phi) * primitive);
}

GeometryResidualReport ca2_to_much_residual(const PeriodicField& u)
{
    auto r = make_report("ca2_to_much", u, std::nullopt);
    const PeriodicField m = apply_A(u);
    const PeriodicField ux = d(u);
    const PeriodicField rate = ca2_curvature_rhs(m, -ux, -u[0]);
    add_part(r, "curvature flow vs momentum form", {rate, d(u, 3), 4.0 * (m * ux), 2.0 * (u * d(m))});
    return r;
}

GeometryResidualReport ca2_frame_change_residual(const PeriodicField& U)
{
    auto r = make_report("ca2_frame_change", U, std::nullopt);
    const PeriodicField M = apply_A(U);
    const PeriodicField M_t = apply_A(rhs(U, ModelParams::from_initial(U, 2.0)));
    const PeriodicField u = 0.5 * U;
    const PeriodicField m = 0.5 * M;
    const PeriodicField m_t = 0.5 * (M_t + d(M));
    add_part(r, "m_t + u_sss + 4 m u_s + 2 u m_s", {m_t, d(u, 3), 4.0 * (m * d(u)), 2.0 * (u * d(m))});
    return r;
}

Ca3Rates ca3_curvature_rhs(const PeriodicField& alpha, const PeriodicField& beta, const PeriodicField& F,
                           const PeriodicField& G, const PeriodicField& H)
{
    const PeriodicField Gs = d(G), Hs = d(H), Hss = d(H, 2), Fs = d(F);
    const PeriodicField alpha_s = d(alpha);
    PeriodicField alpha_t = d(d(F, 2) + alpha * (G + 2.0 * Hs) + alpha_s * H) + 2.0 * (alpha * Gs) - beta * Fs +
                            alpha * Hss;
    PeriodicField beta_t = d(3.0 * Fs + d(G, 2) + beta * (G + 2.0 * Hs) + (alpha + d(beta)) * H) +
                           2.0 * (alpha * Hs) + beta * Hss + beta * Gs + alpha_s * H;
    return {std::move(alpha_t), std::move(beta_t)};
}

PeriodicField ca3_constraint(const PeriodicField& beta, const PeriodicField& F, const PeriodicField& G,
                             const PeriodicField& H)
{
    return F + d(G) + (2.0 / 3.0) * (beta * H) + (1.0 / 3.0) * d(H, 2);
}

GeometryResidualReport ca3_to_mudp_residual(const PeriodicField& u)
{
    auto r = make_report("ca3_to_mudp", u, std::nullopt);
    const PeriodicGrid& grid = u.grid();
    const PeriodicField m = apply_A(u);
    const PeriodicField ux = d(u);
    const auto rates = ca3_curvature_rhs(-m, constant(grid, 0.0), ux + 2.0 / 3.0, -u, constant(grid, -1.0));
    // beta_t is a sum of terms that cancel identically; its scale is set by
    // the highest derivative involved.
    add_part(r, "beta_t", {rates.beta_t}, (2.0 * d(u, 3)).sup_norm());
    add_part(r, "alpha_t - (3 m u_s + u m_s)", {rates.alpha_t, -3.0 * (m * ux), -(u * d(m))});
    const PeriodicField m_t = apply_A(rhs(u, ModelParams::from_initial(u, 3.0)));
    add_part(r, "alpha_t + m_t", {rates.alpha_t, m_t});
    return r;
}

PssForms pss_forms(const PeriodicField& u, double lambda_spec, const std::optional<PeriodicField>& u_t)
{
    check_lambda(lambda_spec);
    const double l = lambda_spec;
    const PeriodicGrid& grid = u.grid();
    const double mu = mean(u);
    const PeriodicField m = apply_A(u);
    const PeriodicField m_t = apply_A(evolution_rate(u, 2.0, u_t));
    const PeriodicField ux = d(u);
    const PeriodicField common = (0.5 * l * l) * u - l * (ux + u * m + 0.5) + mu;

    return PssForms{
        {0.5 * (l * m + (2.0 - 0.5 * l * l)), 0.5 * (common - 2.0 * u + 2.0 / l), (0.5 * l) * m_t},
        {constant(grid, l), 1.0 - l * u + ux, constant(grid, 0.0)},
        {0.5 * (l * m - (2.0 + 0.5 * l * l)), 0.5 * (common + 2.0 * u - 2.0 / l), (0.5 * l) * m_t},
    };
}

GeometryResidualReport pss_structure_residual(const PeriodicField& u, double lambda_spec,
                                              const std::optional<PeriodicField>& u_t)
{
    const PssForms f = pss_forms(u, lambda_spec, u_t);
    auto r = make_report("pss_structure", u, lambda_spec);
    add_part(r, "d w1 - w3 ^ w2", {exterior_d(f.w1), -wedge(f.w3, f.w2)});
    add_part(r, "d w2 - w1 ^ w3", {exterior_d(f.w2), -wedge(f.w1, f.w3)});
    add_part(r, "d w3 - w1 ^ w2", {exterior_d(f.w3), -wedge(f.w1, f.w2)});
    return r;
}

AffineTable affine_table(const PeriodicField& u, double lambda_spec, const std::optional<PeriodicField>& u_t)
{
    check_lambda(lambda_spec);
    const double l = lambda_spec;
    const PeriodicGrid& grid = u.grid();
    const double mu = mean(u);
    const PeriodicField m = apply_A(u);
    const PeriodicField m_t = apply_A(evolution_rate(u, 3.0, u_t));
    const PeriodicField ux = d(u);
    const PeriodicField zero = constant(grid, 0.0);
    auto c = [&](double v) { return constant(grid, v); };
    auto form = [&](PeriodicField a, PeriodicField b) { return OneForm{std::move(a), std::move(b), zero}; };

    OneForm w11 = form(zero, 1.0 / (2.0 * l) - ux);
    OneForm w12{l * m, -(1.0 / (4.0 * l)) * ((4.0 * l * l) * (u * m) - (4.0 * l) * ux + 1.0), l * m_t};
    OneForm w13 = form(c(1.0 / (2.0 * l)), -(1.0 / (2.0 * l)) * (u + 2.0 * mu));
    OneForm w21 = form(zero, c(1.0 / l));
    OneForm w22 = form(zero, ux - 1.0 / (2.0 * l));
    OneForm w23 = form(c(1.0 / l), -(1.0 / l) * u);
    OneForm w31 = form(c(-l), l * u);
    OneForm w32 = form(c(0.5 * l), l * (mu - 0.5 * u));
    OneForm w33 = form(zero, zero);
    OneForm h1 = form(c(1.0), -u);
    OneForm h2 = form(c(-0.5), 0.5 * u - mu);
    return AffineTable{{{{w11, w12, w13}, {w21, w22, w23}, {w31, w32, w33}}}, {h1, h2}};
}

double affine_trace_residual(const AffineTable& t)
{
    const PeriodicField f = t.conn[0][0].dx_coef + t.conn[1][1].dx_coef + t.conn[2][2].dx_coef;
    const PeriodicField g = t.conn[0][0].dt_coef + t.conn[1][1].dt_coef + t.conn[2][2].dt_coef;
    return std::max(f.sup_norm(), g.sup_norm());
}

GeometryResidualReport affine_structure_residual(const AffineTable& t)
{
    auto r = make_report("affine_structure", t.frame[0].dt_coef, std::nullopt);
    r.field = "coefficient table";
    const double trace = affine_trace_residual(t);
    r.parts.emplace_back("trace", trace);
    r.residual_sup = trace;
    for (int j = 0; j < 3; ++j) {
        for (int l = 0; l < 3; ++l) {
            std::vector<PeriodicField> terms{exterior_d(t.conn[j][l])};
            for (int k = 0; k < 3; ++k)
                terms.push_back(-wedge(t.conn[j][k], t.conn[k][l]));
            add_part(r, "d w_" + std::to_string(j + 1) + "^" + std::to_string(l + 1), terms);
        }
    }
    add_part(r, "w^1 ^ w_1^3 + w^2 ^ w_2^3", {wedge(t.frame[0], t.conn[0][2]), wedge(t.frame[1], t.conn[1][2])});
    for (int p = 0; p < 2; ++p) {
        add_part(r, "d w^" + std::to_string(p + 1),
                 {exterior_d(t.frame[p]), -wedge(t.frame[0], t.conn[0][p]), -wedge(t.frame[1], t.conn[1][p])});
    }
    return r;
}

GeometryResidualReport affine_structure_residual(const PeriodicField& u, double lambda_spec,
                                                 const std::optional<PeriodicField>& u_t)
{
    auto r = affine_structure_residual(affine_table(u, lambda_spec, u_t));
    r.lambda_spec = lambda_spec;
    r.field = make_report("", u, lambda_spec).field;
    return r;
}

}  // namespace muwave
