#pragma once

/// @file
/// Homogeneous Riemann problem X⁺/X⁻ = λ⁺/λ⁻ on the positive half-axis.
///
/// With d(μ) = θ(μ) - 2π the canonical solution is
///
///   V(z) = (1/π) ∫_0^∞ d(μ)/(μ - z) dμ,   X(z) = z^{-2} e^{V(z)},
///
/// analytic in the plane cut along [0, ∞), bounded and non-vanishing near 0,
/// and X(z) ~ z^{-2} at infinity.

#include <array>

#include "smolbgk/numerics.hpp"
#include "smolbgk/specfun.hpp"

namespace smolbgk {

/// Which value stands in for "X(μ₁)" in the pole-elimination conditions at
/// μ₁ = √(3/2), a point on the cut.
enum class BoundaryConvention {
    /// Boundary values X^±(μ₁) = x̂(μ₁) e^{±i(θ(μ₁) - 2π)} = -x̂(μ₁). This is
    /// the value the Cauchy integral actually takes; it is what the kinetic
    /// equation selects.
    BoundaryPhase,
    /// The positive magnitude x̂(μ₁), as used in the printed coefficient
    /// tables (K_TT = 1.3068, ...).
    Magnitude,
};

const char* to_string(BoundaryConvention c);

struct ContourIdentity {
    double k1;        ///< -(1/π) ∫ sinθ/(x̂ (3/2 - μ²)) dμ
    double rhs;       ///< -V₁ + 1/(2μ₁X(-μ₁)) - 1/(2μ₁X(μ₁))
    double residual;  ///< |k1 - rhs|
};

class RiemannData {
public:
    explicit RiemannData(const QuadConfig& quad = {}, const ThetaTableConfig& table = {});

    const QuadConfig& quad() const { return quad_; }
    const ThetaTable& theta_table() const { return table_; }

    /// V₁, V₂, V₃.
    const std::array<double, 3>& v_moments() const { return v_; }
    double v1() const { return v_[0]; }

    /// V_n = -(1/π) ∫_0^∞ μ^{n-1} d(μ) dμ. Throws QuadratureError when the
    /// truncated tail at mu_cut is not below the quadrature tolerance.
    double v_moment(int n) const;

    /// V(z) off the cut; z on [0, ∞) throws std::domain_error.
    cplx v_function(cplx z) const;

    /// Principal value of V on the cut (μ > 0). The one-sided limits are
    /// v_boundary(μ) ± i d(μ).
    double v_boundary(double mu) const;

    cplx x_function(cplx z) const;

    /// μ^{-2} e^{V(μ)}: the principal-value magnitude for μ > 0 and the
    /// (real, positive) value of X for μ < 0.
    double x_hat(double mu) const;

    /// X^+(μ) (upper = true) or X^-(μ) on the cut.
    cplx x_boundary(double mu, bool upper) const;

    /// Cached x̂(μ₁), x̂(-μ₁).
    double x_hat_mu1() const { return x_plus_; }
    double x_hat_minus_mu1() const { return x_minus_; }

    /// Stand-in for X(μ₁) under the given convention (X(-μ₁) is unambiguous).
    double x_at_mu1(BoundaryConvention c) const;

    /// λ(z) / (X(z) X(-z)) evaluated at z = 10i, where both sides are
    /// dominated by their leading Laurent terms.
    double factorization_constant() const { return factor_; }
    /// Imaginary part of the same ratio; zero up to quadrature error.
    double factorization_constant_imag() const { return factor_imag_; }

    /// |λ(z) - c X(z) X(-z)| / |λ(z)|; requires Im z != 0.
    double factorization_residual(cplx z, double c) const;

    /// Relative defect of |λ⁺(μ)| = |c| x̂(μ) x̂(-μ) on the cut.
    double boundary_factorization_residual(double mu, double c) const;

    /// Integrand of the contour integral K₁: sinθ(μ)/(x̂(μ)(3/2 - μ²)).
    /// Within 1e-4 of μ₁ it switches to √π μ e^{-μ²}/(|λ⁺| x̂), the same
    /// function with the removable zero cancelled.
    double contour_integrand(double mu) const;

    ContourIdentity contour_identity(BoundaryConvention c = BoundaryConvention::BoundaryPhase) const;

private:
    QuadConfig quad_;
    ThetaTable table_;
    std::array<double, 3> v_{};
    double x_plus_ = 0.0;
    double x_minus_ = 0.0;
    double factor_ = 0.0;
    double factor_imag_ = 0.0;
};

}  // namespace smolbgk
