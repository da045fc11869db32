#pragma once

/// @file
/// Continuous-spectrum side of the half-space solution
///
///   h(x, μ) = h_as(x, μ) + ∫_0^∞ e^{-x/η} A(η) Φ(η, μ) dη,
///   Φ(η, μ) = (η/√π)(3/2 - μ²) P 1/(η - μ) + e^{η²} λ(η) δ(η - μ),
///
/// with A(η) = [(V₁ + η) g_T - ε_T] e^{-η²} / (x̂(η) |λ⁺(η)|).

#include <array>
#include <vector>

#include "smolbgk/jumps.hpp"
#include "smolbgk/riemann.hpp"

namespace smolbgk {

struct SpectralTableConfig {
    int nodes_per_panel = 16;
    /// Dyadic panels [2^{-k-1}, 2^{-k}] for k < geometric_levels, plus
    /// [0, 2^{-geometric_levels}]. 1/x̂ carries an η ln η term at the origin.
    int geometric_levels = 40;
    /// Uniform panel width on [1, mu_cut].
    double panel_width = 0.25;
};

/// Piecewise Chebyshev interpolant of s(η) = 1/(x̂(η) |λ⁺(η)|) on [0, mu_cut].
/// s is smooth and positive with s(0) = √3/2 and polynomial growth, so the
/// Gaussian factor of the spectral weight is kept out of the table.
class SpectralTable {
public:
    explicit SpectralTable(const RiemannData& rd, const SpectralTableConfig& cfg = {});

    double upper() const { return edges_.back(); }
    const std::vector<double>& edges() const { return edges_; }
    std::size_t node_count() const { return values_.size(); }

    /// 1/(x̂|λ⁺|); past mu_cut it is evaluated directly.
    double scaled_weight(double eta) const;
    /// e^{-η²}/(x̂|λ⁺|).
    double weight(double eta) const;

    /// Direct (untabulated) value of 1/(x̂|λ⁺|) for interpolation checks.
    double exact_scaled_weight(double eta) const;

private:
    const RiemannData* rd_;
    int order_;
    std::vector<double> edges_;
    std::vector<double> values_;      // order_ values per panel
    std::vector<double> unit_nodes_;  // Chebyshev points of the first kind on [-1, 1]
    std::vector<double> bary_;        // barycentric weights
};

/// Φ(η, ·) split into its principal-value density and the δ(η - μ) weight.
struct EigenfunctionParts {
    double eta = 0.0;
    double delta_weight = 0.0;  ///< e^{η²} λ(η)
    /// (η/√π)(3/2 - μ²)/(η - μ); the 1/(η - μ) is understood as a principal value.
    double pv_part(double mu) const;
};

EigenfunctionParts phi_parts(double eta);

/// n_k(η) = ∫ e^{-μ²} μ^k Φ(η, μ) dμ for k = 0, 1, 2; expected (1, 0, 0).
std::array<double, 3> eigenfunction_moments(double eta, const QuadConfig& cfg = {});

struct SpectralCoefficient {
    double eta = 0.0;
    double a_value = 0.0;
    bool regular = false;  ///< within 1e-3 of μ₁, where the sine form is 0/0
};

/// Evaluators for one solved problem. Holds references: rd and table must
/// outlive it.
class HalfSpaceSolution {
public:
    HalfSpaceSolution(const RiemannData& rd, const SpectralTable& table, const JumpResult& jumps,
                      const ProblemInput& input);

    const JumpResult& jumps() const { return jumps_; }
    const ProblemInput& input() const { return input_; }
    const RiemannData& riemann() const { return *rd_; }
    const SpectralTable& table() const { return *table_; }

    /// (V₁ + η) g_T - ε_T.
    double amplitude(double eta) const;

    /// A(η) from the modulus form.
    double a_coefficient(double eta) const;
    /// -[(V₁+η)g_T - ε_T] sinθ(η) / (√π η x̂(η)(η² - 3/2)), evaluated without
    /// the table. Not usable at η = μ₁.
    double a_coefficient_sine_form(double eta) const;
    SpectralCoefficient coefficient(double eta) const;

    /// N(z) = (1/√π) ∫_0^∞ η A(η)/(η - z) dη for z off [0, ∞).
    cplx n_function(cplx z) const;
    /// [h_as(0, z) + (C₀ + C₁z)/X(z)] / (z² - 3/2).
    cplx n_closed_form(cplx z) const;

    /// |h_as(0,μ) + e^{μ²}λ(μ)A(μ) + (3/2 - μ²) N_pv(μ)| for μ > 0.
    double boundary_residual(double mu) const;

    /// h(x, μ) for x ≥ 0. The δ-term only contributes for μ > 0.
    double h_distribution(double x, double mu) const;

    /// (1/√π) ∫_0^∞ e^{-x/η} η A(η)/(η - μ) dη, principal value for μ > 0.
    double continuum_integral(double x, double mu) const;

private:
    const RiemannData* rd_;
    const SpectralTable* table_;
    JumpResult jumps_;
    ProblemInput input_;
    QuadConfig inner_;
};

}  // namespace smolbgk
