#pragma once

/// @file
/// Discrete-ordinates solver of
///
///   μ ∂h/∂x + h = ρ(x) + 2μ u(x) + (μ² - 1/2) T(x),   0 < x < x_max,
///
/// with h(0, μ) = 0 for μ > 0 and h(x_max, μ) = h_as(x_max, μ) for μ < 0.
/// The jumps inside h_as are unknowns, fitted from the far part of the
/// computed ρ and T. Used to check the analytic solution independently.

#include <array>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "smolbgk/jumps.hpp"
#include "smolbgk/profiles.hpp"

namespace smolbgk {

enum class VelocityRule {
    /// Gauss rules for e^{-μ²} on each half-line separately (n_mu/2 nodes
    /// per side). Resolves the jump of h at μ = 0 at the wall.
    HalfRange,
    /// Gauss-Hermite over the whole line.
    GaussHermite,
};

enum class OracleMethod {
    /// Restarted GMRES on the affine fixed-point map; one sweep per product.
    Krylov,
    /// Plain source iteration, jump estimates under-relaxed by `relaxation`.
    SourceIteration,
};

const char* to_string(VelocityRule r);
const char* to_string(OracleMethod m);

struct QuadratureRule {
    std::vector<double> nodes;
    std::vector<double> weights;  ///< for weight e^{-μ²}; they sum to √π
};

/// n-point rule; HalfRange needs even n.
QuadratureRule velocity_rule(VelocityRule kind, int n);

struct OracleConfig {
    int n_mu = 48;
    double x_max = 40.0;
    int n_x = 2000;
    int max_iter = 2000;
    double iter_tol = 1e-9;
    /// Defaults to [0.6, 0.9]·x_max.
    std::optional<std::pair<double, double>> fit_window;
    double fit_tol = 1e-6;
    VelocityRule rule = VelocityRule::HalfRange;
    OracleMethod method = OracleMethod::Krylov;
    double relaxation = 0.5;
    int krylov_restart = 40;
    /// 0 means SMOLBGK_THREADS.
    int threads = 0;

    std::pair<double, double> window() const;
    /// Throws std::invalid_argument.
    void validate() const;
};

/// Discrete distribution: h[i * x.size() + j] = h(x_j, mu_i).
struct OracleState {
    std::vector<double> mu;
    std::vector<double> w;
    std::vector<double> x;
    std::vector<double> h;
};

struct OracleResult {
    double eps_t_est = 0.0;
    double eps_n_est = 0.0;
    int iterations = 0;
    double final_update_norm = 0.0;
    double fit_residual = 0.0;
    /// max - min of u(x) over the whole grid.
    double u_spread = 0.0;
    /// On the x grid; m0 and m1 are not defined here and left 0.
    std::vector<ProfilePoint> profiles;
    OracleState state;
};

class OracleError : public std::runtime_error {
public:
    enum class Kind { NotConverged, FitResidual };
    OracleError(Kind kind, const std::string& what, int iterations, double last_norm)
        : std::runtime_error(what), kind_(kind), iterations_(iterations), last_norm_(last_norm) {}
    Kind kind() const noexcept { return kind_; }
    int iterations() const noexcept { return iterations_; }
    double last_norm() const noexcept { return last_norm_; }

private:
    Kind kind_;
    int iterations_;
    double last_norm_;
};

OracleResult oracle_solve(const OracleConfig& cfg, const ProblemInput& input);

/// Worst-cell relative defect of Σ w ψ(μ)(S - h) for ψ = 1, μ, μ², where S
/// is the collision source built from h with the state's own rule.
std::array<double, 3> conservation_check(const OracleState& state);

}  // namespace smolbgk
