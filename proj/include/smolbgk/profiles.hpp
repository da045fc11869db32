#pragma once

/// @file
/// Macroscopic fields in the Knudsen layer. With the kernels
///
///   m_k(x) = (1/√π) ∫_0^∞ e^{-x/η - η²} η^k / (x̂(η)|λ⁺(η)|) dη,
///
/// the moments of h(x, μ) give
///
///   δn/n₀ = ε_n - g_T x + (g_T V₁ - ε_T) m₀ + g_T m₁,
///   U(x)  = U,
///   δT/T₀ = ε_T + g_T x - (g_T V₁ - ε_T) m₀ - g_T m₁.
///
/// The older closed forms put ε_T where ε_n belongs in the density and drop
/// the V₁m₀ term from the temperature; they are kept as *_printed for
/// comparison.

#include <vector>

#include "smolbgk/spectrum.hpp"

namespace smolbgk {

struct ProfilePoint {
    double x = 0.0;
    double delta_n = 0.0;
    double u = 0.0;
    double delta_T = 0.0;
    double m0 = 0.0;
    double m1 = 0.0;
};

/// m_k(x) for k = 0 or 1.
double m_kernel(double x, int k, const SpectralTable& table);

double density_profile(double x, const HalfSpaceSolution& s);
double velocity_profile(double x, const HalfSpaceSolution& s);
double temperature_profile(double x, const HalfSpaceSolution& s);

/// [K_TT(1 - m₀) - x + V₁m₀ + m₁] g_T + K_TU(1 - m₀)(2U).
double density_printed(double x, const HalfSpaceSolution& s, const JumpCoefficients& kc);
/// [x - m₁ + K_TT(1 + m₀)] g_T + K_TU(1 + m₀)(2U).
double temperature_printed(double x, const HalfSpaceSolution& s, const JumpCoefficients& kc);

/// Gaussian velocity moments of h(x, μ) by direct quadrature over μ:
/// ρ = (1/√π)∫e^{-μ²}h, u = (1/√π)∫e^{-μ²}μh, τ = (2/√π)∫e^{-μ²}(μ² - 1/2)h.
struct DirectMoments {
    double delta_n = 0.0;
    double u = 0.0;
    double delta_T = 0.0;
};

DirectMoments direct_moments(double x, const HalfSpaceSolution& s, double tol = 1e-9);

ProfilePoint profile_point(double x, const HalfSpaceSolution& s);

/// `points` values geometrically spaced from x_min to x_max inclusive.
std::vector<double> geometric_grid(double x_min, double x_max, int points);

/// Evaluates profile_point over xs, in order; parallel over SMOLBGK_THREADS.
std::vector<ProfilePoint> profile(const std::vector<double>& xs, const HalfSpaceSolution& s);

}  // namespace smolbgk
