#pragma once

/// @file
/// Temperature and concentration jumps for the half-space problem with far
/// field h_as(x, μ) = ε_n + ε_T + 2Uμ + (μ² - 3/2)[ε_T + g_T(x - μ)].
///
/// The constants of the general solution follow from removing the pole of
/// N(z) at infinity: C₁ = g_T, C₀ = V₁ g_T - ε_T. The poles at z = ±μ₁ then
/// give two linear conditions for (ε_T, ε_n):
///
///   C₀ + C₁μ₁ + X(μ₁)  (ε_n + ε_T + 2Uμ₁) = 0,
///   C₀ - C₁μ₁ + X(-μ₁) (ε_n + ε_T - 2Uμ₁) = 0,
///
/// where the value standing in for X(μ₁) is fixed by a BoundaryConvention.

#include <utility>

#include "smolbgk/riemann.hpp"

namespace smolbgk {

struct ProblemInput {
    double g_t = 0.0;  ///< (d ln T/dx) far from the wall
    double u = 0.0;    ///< mass velocity far from the wall, in units of v_T
};

/// ε_T = K_TT g_T + K_TU (2U),  ε_n = K_nT g_T + K_nU (2U).
struct JumpCoefficients {
    double k_tt = 0.0;
    double k_tu = 0.0;
    double k_nt = 0.0;
    double k_nu = 0.0;
    BoundaryConvention convention = BoundaryConvention::BoundaryPhase;
};

struct JumpResult {
    double eps_t = 0.0;
    double eps_n = 0.0;
    double c0 = 0.0;
    double c1 = 0.0;
};

/// The four closed-form coefficient expressions as printed with the original
/// tables, evaluated with X(μ₁) taken per convention. The product
/// X(μ₁)X(-μ₁) is replaced by its exact value ±2/3 when the computed one
/// agrees to 1e-6. Note K_nT here is not consistent with the pole conditions
/// under either convention; see jump_coefficients.
JumpCoefficients printed_coefficients(const RiemannData& rd, BoundaryConvention c);

/// Coefficients as the columns of the solved pole-condition system, i.e. the
/// responses to (g_T, 2U) = (1, 0) and (0, 1).
JumpCoefficients jump_coefficients(const RiemannData& rd,
                                   BoundaryConvention c = BoundaryConvention::BoundaryPhase);

/// Solves the 2x2 pole-condition system directly.
JumpResult solve_pole_conditions(const ProblemInput& in, const RiemannData& rd,
                                 BoundaryConvention c = BoundaryConvention::BoundaryPhase);

/// Applies precomputed coefficients; C₀ and C₁ from the pole-lowering at
/// infinity.
JumpResult solve_jumps(const ProblemInput& in, const JumpCoefficients& kc, const RiemannData& rd);

/// Absolute defects of the two pole conditions (at +μ₁ and at -μ₁).
std::pair<double, double> pole_condition_residuals(const JumpResult& r, const ProblemInput& in,
                                                   const RiemannData& rd, BoundaryConvention c);

/// Chapman-Enskog asymptote h_as(x, μ).
double h_asymptotic(double x, double mu, const JumpResult& r, const ProblemInput& in);

}  // namespace smolbgk
