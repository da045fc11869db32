#include "smolbgk/jumps.hpp"

#include <cmath>
#include <stdexcept>

namespace smolbgk {

JumpCoefficients printed_coefficients(const RiemannData& rd, BoundaryConvention c) {
    const double xp = rd.x_at_mu1(c);
    const double xm = rd.x_hat_minus_mu1();
    const double diff = xp - xm;
    if (diff == 0.0) throw std::logic_error("printed_coefficients: X(mu1) == X(-mu1)");

    double product = xp * xm;
    const double exact = std::copysign(2.0 / 3.0, product);
    if (std::abs(product - exact) < 1e-6) product = exact;

    const double v1 = rd.v1();
    JumpCoefficients k;
    k.convention = c;
    k.k_tt = v1 - kMu1 * (xp + xm) / diff;
    k.k_tu = -2.0 * kMu1 * product / diff;
    k.k_nt = v1 + kMu1 * (xp + xm - 2.0) / diff;
    k.k_nu = -kMu1 * (xp + xm - 2.0 * product) / diff;
    return k;
}

JumpResult solve_pole_conditions(const ProblemInput& in, const RiemannData& rd,
                                 BoundaryConvention c) {
    const double xp = rd.x_at_mu1(c);
    const double xm = rd.x_hat_minus_mu1();
    const double g = in.g_t;
    const double flow = 2.0 * in.u * kMu1;

    // (xp - 1) ε_T + xp ε_n = -(V₁g + gμ₁ + xp·2Uμ₁)
    // (xm - 1) ε_T + xm ε_n = -(V₁g - gμ₁ - xm·2Uμ₁)
    const double det = xp - xm;
    if (det == 0.0) throw std::logic_error("solve_pole_conditions: singular system");
    const double r1 = -(rd.v1() * g + g * kMu1 + xp * flow);
    const double r2 = -(rd.v1() * g - g * kMu1 - xm * flow);

    JumpResult out;
    out.eps_t = (r1 * xm - r2 * xp) / det;
    out.eps_n = ((xp - 1.0) * r2 - (xm - 1.0) * r1) / det;
    out.c1 = g;
    out.c0 = rd.v1() * g - out.eps_t;
    return out;
}

JumpCoefficients jump_coefficients(const RiemannData& rd, BoundaryConvention c) {
    const JumpResult thermal = solve_pole_conditions({1.0, 0.0}, rd, c);
    const JumpResult flow = solve_pole_conditions({0.0, 0.5}, rd, c);
    return {thermal.eps_t, flow.eps_t, thermal.eps_n, flow.eps_n, c};
}

JumpResult solve_jumps(const ProblemInput& in, const JumpCoefficients& kc, const RiemannData& rd) {
    JumpResult out;
    out.eps_t = kc.k_tt * in.g_t + kc.k_tu * (2.0 * in.u);
    out.eps_n = kc.k_nt * in.g_t + kc.k_nu * (2.0 * in.u);
    out.c1 = in.g_t;
    out.c0 = rd.v1() * in.g_t - out.eps_t;
    return out;
}

std::pair<double, double> pole_condition_residuals(const JumpResult& r, const ProblemInput& in,
                                                   const RiemannData& rd, BoundaryConvention c) {
    const double sum = r.eps_n + r.eps_t;
    const double flow = 2.0 * in.u * kMu1;
    const double upper = r.c0 + r.c1 * kMu1 + rd.x_at_mu1(c) * (sum + flow);
    const double lower = r.c0 - r.c1 * kMu1 + rd.x_hat_minus_mu1() * (sum - flow);
    return {std::abs(upper), std::abs(lower)};
}

double h_asymptotic(double x, double mu, const JumpResult& r, const ProblemInput& in) {
    return r.eps_n + r.eps_t + 2.0 * in.u * mu + (mu * mu - 1.5) * (r.eps_t + in.g_t * (x - mu));
}

}  // namespace smolbgk
