#include "smolbgk/riemann.hpp"

#include <cmath>
#include <stdexcept>
#include <string>

namespace smolbgk {

const char* to_string(BoundaryConvention c) {
    switch (c) {
        case BoundaryConvention::BoundaryPhase: return "boundary-phase";
        case BoundaryConvention::Magnitude: return "magnitude";
    }
    return "unknown";
}

RiemannData::RiemannData(const QuadConfig& quad, const ThetaTableConfig& table)
    : quad_(quad), table_([&] {
          quad.validate();
          ThetaTableConfig t = table;
          t.mu_max = quad.mu_cut;
          return build_theta_table(t);
      }()) {
    for (int n = 1; n <= 3; ++n) v_[n - 1] = v_moment(n);
    x_plus_ = x_hat(kMu1);
    x_minus_ = x_hat(-kMu1);

    const cplx z{0.0, 10.0};
    const cplx ratio = lambda(z, quad_) / (x_function(z) * x_function(-z));
    factor_ = ratio.real();
    factor_imag_ = ratio.imag();
}

double RiemannData::v_moment(int n) const {
    if (n < 1) throw std::domain_error("v_moment: n must be >= 1");
    const double cut = quad_.mu_cut;
    // Tail beyond the cut: d decays like μ⁷e^{-μ²}, so the remainder is of the
    // order of the integrand at the cut divided by 2·cut.
    const double tail = std::abs(table_.deficit(cut)) * std::pow(cut, n - 2) / 2.0;
    if (tail > quad_.abs_tol)
        throw QuadratureError("v_moment: truncation at mu_cut leaves tail " + std::to_string(tail) +
                                  " for n = " + std::to_string(n),
                              0.0, tail);
    const double integral = integrate(
        [&](double t) { return std::pow(t, n - 1) * table_.deficit(t); }, 0.0, cut, quad_);
    return -integral / kPi;
}

cplx RiemannData::v_function(cplx z) const {
    if (z.imag() == 0.0 && z.real() >= 0.0)
        throw std::domain_error("v_function: z = " + std::to_string(z.real()) +
                                " lies on the cut [0, inf); use v_boundary");
    const auto d = [this](double t) { return table_.deficit(t); };
    return integrate_cauchy(d, 0.0, quad_.mu_cut, z, quad_) / kPi;
}

double RiemannData::v_boundary(double mu) const {
    if (!(mu > 0.0)) throw std::domain_error("v_boundary: mu must be > 0");
    const double cut = quad_.mu_cut;
    const auto d = [this](double t) { return table_.deficit(t); };
    if (mu < cut) return integrate_pv(d, 0.0, cut, mu, quad_) / kPi;
    return integrate([&](double t) { return d(t) / (t - mu); }, 0.0, cut, quad_) / kPi;
}

cplx RiemannData::x_function(cplx z) const {
    if (z == cplx{}) throw std::domain_error("x_function: z = 0");
    return std::exp(v_function(z)) / (z * z);
}

double RiemannData::x_hat(double mu) const {
    if (mu == 0.0) throw std::domain_error("x_hat: mu = 0");
    const double v = mu > 0.0 ? v_boundary(mu) : v_function(cplx{mu, 0.0}).real();
    return std::exp(v) / (mu * mu);
}

cplx RiemannData::x_boundary(double mu, bool upper) const {
    const double phase = table_.deficit(mu);
    return x_hat(mu) * std::polar(1.0, upper ? phase : -phase);
}

double RiemannData::x_at_mu1(BoundaryConvention c) const {
    if (c == BoundaryConvention::Magnitude) return x_plus_;
    return x_plus_ * std::cos(table_.deficit(kMu1));
}

double RiemannData::factorization_residual(cplx z, double c) const {
    if (z.imag() == 0.0)
        throw std::domain_error("factorization_residual: z and -z must both be off the cut");
    const cplx l = lambda(z, quad_);
    return std::abs(l - c * x_function(z) * x_function(-z)) / std::abs(l);
}

double RiemannData::boundary_factorization_residual(double mu, double c) const {
    const double modulus = std::abs(lambda_plus(mu));
    return std::abs(modulus - std::abs(c) * x_hat(mu) * x_hat(-mu)) / modulus;
}

double RiemannData::contour_integrand(double mu) const {
    if (std::abs(mu - kMu1) < 1e-4)
        return kSqrtPi * mu * std::exp(-mu * mu) / (std::abs(lambda_plus(mu)) * x_hat(mu));
    return std::sin(table_.deficit(mu)) / (x_hat(mu) * (1.5 - mu * mu));
}

ContourIdentity RiemannData::contour_identity(BoundaryConvention c) const {
    const auto f = [this](double t) { return contour_integrand(t); };
    const double integral =
        integrate(f, 0.0, kMu1, quad_) + integrate(f, kMu1, quad_.mu_cut, quad_);
    ContourIdentity out{};
    out.k1 = -integral / kPi;
    out.rhs = -v1() + 1.0 / (2.0 * kMu1 * x_minus_) - 1.0 / (2.0 * kMu1 * x_at_mu1(c));
    out.residual = std::abs(out.k1 - out.rhs);
    return out;
}

}  // namespace smolbgk
