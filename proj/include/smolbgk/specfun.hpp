#pragma once

/// @file
/// Dispersion function of the one-dimensional BGK equation with constant
/// collision frequency:
///
///   λ₀(z) = (1/√π) ∫ e^{-τ²} τ/(τ - z) dτ,
///   λ(z)  = -1/2 + (3/2 - z²) λ₀(z),
///
/// its boundary values on the real axis, and the continuous argument θ(μ)
/// of λ⁺(μ), lifted from 0 at μ = 0 to 2π at infinity.

#include <complex>
#include <numbers>
#include <vector>

#include "smolbgk/numerics.hpp"

namespace smolbgk {

using cplx = std::complex<double>;

inline constexpr double kPi = std::numbers::pi;
inline constexpr double kSqrtPi = 1.772453850905516027298167483341145;
/// Positive root of 3/2 - μ², where the imaginary part of λ⁺ changes sign.
inline constexpr double kMu1 = 1.224744871391589049098642037352946;

/// 1 - 2μF(μ) with F the Dawson integral; equals the principal value of λ₀.
double lambda0_real(double mu);

/// λ₀ off the real axis by quadrature of the defining integral; real z falls
/// back to lambda0_real.
cplx lambda0_complex(cplx z, const QuadConfig& cfg = {});

/// Principal value of λ on the real axis.
double lambda_real(double mu);

cplx lambda(cplx z, const QuadConfig& cfg = {});

/// Imaginary part of λ⁺(μ): √π μ e^{-μ²} (3/2 - μ²).
double lambda_jump_half(double mu);

/// Boundary value from the upper half-plane; λ⁻(μ) is its conjugate.
cplx lambda_plus(double mu);

struct DispersionSample {
    double mu;
    double lambda_pv;
    cplx lambda_plus;
    double theta;
};

enum class ThetaInterpolation {
    /// Fritsch-Carlson monotone cubic through the unwrapped table.
    MonotoneCubic,
    /// Exact arg λ⁺(μ), shifted by the multiple of 2π that lands nearest the
    /// monotone-cubic value.
    BranchLift,
};

struct ThetaTableConfig {
    int base_nodes = 2048;
    double mu_max = 8.0;
    /// Unwrapping needs |Δarg| well below π between neighbours.
    double max_step = kPi / 8.0;
    int max_refinements = 24;
    ThetaInterpolation rule = ThetaInterpolation::BranchLift;
};

/// Unwrapped θ(μ) = arg λ⁺(μ) on [0, mu_max]; immutable once built.
class ThetaTable {
public:
    ThetaTable(std::vector<double> nodes, std::vector<double> values, ThetaInterpolation rule);

    const std::vector<double>& nodes() const { return nodes_; }
    const std::vector<double>& values() const { return values_; }
    ThetaInterpolation rule() const { return rule_; }

    double theta(double mu) const;

    /// θ(μ) - 2π without the rounding of forming θ first. For large μ this is
    /// of order -μ⁷e^{-μ²}, far below the resolution of θ itself.
    double deficit(double mu) const;

    /// Monotone cubic interpolant of the table, clamped to 2π past the end.
    double interpolate(double mu) const;

private:
    std::vector<double> nodes_;
    std::vector<double> values_;
    std::vector<double> slopes_;
    ThetaInterpolation rule_;
};

/// Builds the table by phase unwrapping from θ(0) = 0. Grid steps are
/// bisected until the wrapped phase increment stays below max_step; throws
/// std::runtime_error when that needs more than max_refinements levels, or
/// when the result is not monotone or does not reach 2π.
ThetaTable build_theta_table(const ThetaTableConfig& cfg = {});

DispersionSample sample(double mu, const ThetaTable& table);

}  // namespace smolbgk
