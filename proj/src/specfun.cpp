#include "smolbgk/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace smolbgk {

double lambda0_real(double mu) { return 1.0 - 2.0 * mu * dawson(mu); }

namespace {

QuadConfig tightened(const QuadConfig& cfg) {
    QuadConfig tight = cfg;
    tight.abs_tol = std::min(cfg.abs_tol, 1e-15);
    tight.rel_tol = std::min(cfg.rel_tol, 1e-13);
    return tight;
}

// Beyond this radius λ₀ and λ are assembled from the moment-subtracted form.
constexpr double kFarRadius = 3.0;

// R(z) = (1/√π) ∫ e^{-τ²} τ⁵/(τ - z) dτ. Expanding 1/(τ - z) to fourth order
// with the exact Gaussian moments gives
//   λ₀(z) = -1/(2z²) - 3/(4z⁴) + R(z)/z⁴,
//   λ(z)  = -9/(8z⁴) + (3/2 - z²) R(z)/z⁴,
// free of the cancellation in 1 + z·(...) at large |z|.
cplx far_remainder(cplx z, const QuadConfig& cfg) {
    const double cut = cfg.mu_cut;
    const auto g = [](double t) { return std::exp(-t * t) * t * t * t * t * t / kSqrtPi; };
    return integrate_cauchy(g, -cut, cut, z, tightened(cfg));
}

}  // namespace

cplx lambda0_complex(cplx z, const QuadConfig& cfg) {
    if (z.imag() == 0.0) return lambda0_real(z.real());
    if (std::abs(z) > kFarRadius) {
        const cplx z2 = z * z;
        return -0.5 / z2 - 0.75 / (z2 * z2) + far_remainder(z, cfg) / (z2 * z2);
    }
    const double cut = cfg.mu_cut;
    const cplx cauchy = integrate_cauchy([](double t) { return std::exp(-t * t); }, -cut, cut, z,
                                         tightened(cfg));
    return 1.0 + z * cauchy / kSqrtPi;
}

double lambda_real(double mu) { return -0.5 + (1.5 - mu * mu) * lambda0_real(mu); }

cplx lambda(cplx z, const QuadConfig& cfg) {
    if (z.imag() != 0.0 && std::abs(z) > kFarRadius) {
        const cplx z2 = z * z;
        return (-1.125 + (1.5 - z2) * far_remainder(z, cfg)) / (z2 * z2);
    }
    return -0.5 + (1.5 - z * z) * lambda0_complex(z, cfg);
}

double lambda_jump_half(double mu) { return kSqrtPi * mu * std::exp(-mu * mu) * (1.5 - mu * mu); }

cplx lambda_plus(double mu) { return {lambda_real(mu), lambda_jump_half(mu)}; }

namespace {

double wrapped_arg(double mu) {
    const cplx l = lambda_plus(mu);
    return std::atan2(l.imag(), l.real());
}

double wrap_to_pi(double d) {
    while (d > kPi) d -= 2.0 * kPi;
    while (d <= -kPi) d += 2.0 * kPi;
    return d;
}

}  // namespace

ThetaTable::ThetaTable(std::vector<double> nodes, std::vector<double> values,
                       ThetaInterpolation rule)
    : nodes_(std::move(nodes)), values_(std::move(values)), rule_(rule) {
    const std::size_t n = nodes_.size();
    if (n < 2 || values_.size() != n)
        throw std::invalid_argument("ThetaTable: need at least two matching nodes and values");

    // Fritsch-Carlson slopes.
    std::vector<double> secant(n - 1);
    for (std::size_t i = 0; i + 1 < n; ++i)
        secant[i] = (values_[i + 1] - values_[i]) / (nodes_[i + 1] - nodes_[i]);
    slopes_.assign(n, 0.0);
    slopes_[0] = secant[0];
    slopes_[n - 1] = secant[n - 2];
    for (std::size_t i = 1; i + 1 < n; ++i) {
        if (secant[i - 1] * secant[i] <= 0.0) continue;
        const double h0 = nodes_[i] - nodes_[i - 1];
        const double h1 = nodes_[i + 1] - nodes_[i];
        const double w0 = 2.0 * h1 + h0;
        const double w1 = h1 + 2.0 * h0;
        slopes_[i] = (w0 + w1) / (w0 / secant[i - 1] + w1 / secant[i]);
    }
}

double ThetaTable::interpolate(double mu) const {
    if (mu <= nodes_.front()) return values_.front();
    if (mu >= nodes_.back()) return 2.0 * kPi;
    const auto it = std::upper_bound(nodes_.begin(), nodes_.end(), mu);
    const std::size_t i = static_cast<std::size_t>(it - nodes_.begin()) - 1;
    const double h = nodes_[i + 1] - nodes_[i];
    const double t = (mu - nodes_[i]) / h;
    const double t2 = t * t;
    const double t3 = t2 * t;
    return (2 * t3 - 3 * t2 + 1) * values_[i] + (t3 - 2 * t2 + t) * h * slopes_[i] +
           (-2 * t3 + 3 * t2) * values_[i + 1] + (t3 - t2) * h * slopes_[i + 1];
}

double ThetaTable::deficit(double mu) const {
    if (mu < 0.0) throw std::domain_error("theta: mu must be >= 0");
    const double estimate = interpolate(mu);
    if (rule_ == ThetaInterpolation::MonotoneCubic) return estimate - 2.0 * kPi;
    const double raw = wrapped_arg(mu);
    const double turns = std::round((estimate - raw) / (2.0 * kPi));
    return raw + 2.0 * kPi * (turns - 1.0);
}

double ThetaTable::theta(double mu) const { return deficit(mu) + 2.0 * kPi; }

ThetaTable build_theta_table(const ThetaTableConfig& cfg) {
    if (cfg.base_nodes < 2 || !(cfg.mu_max > kMu1))
        throw std::invalid_argument("build_theta_table: need base_nodes >= 2 and mu_max > mu1");

    std::vector<double> grid;
    grid.reserve(cfg.base_nodes + 64);
    for (int i = 0; i < cfg.base_nodes; ++i)
        grid.push_back(cfg.mu_max * i / (cfg.base_nodes - 1));
    // Geometric clustering on both sides of mu1, where the phase crosses π.
    grid.push_back(kMu1);
    for (int k = 0; k < 24; ++k) {
        const double d = 0.05 * std::ldexp(1.0, -k);
        grid.push_back(kMu1 - d);
        grid.push_back(kMu1 + d);
    }
    std::sort(grid.begin(), grid.end());
    grid.erase(std::unique(grid.begin(), grid.end()), grid.end());

    std::vector<double> nodes{grid.front()};
    std::vector<double> values{0.0};
    double prev_arg = wrapped_arg(grid.front());
    for (std::size_t i = 1; i < grid.size(); ++i) {
        // Bisect the step until each wrapped increment is small enough.
        std::vector<double> pending{grid[i]};
        const double base_step = grid[i] - grid[i - 1];
        double lo = nodes.back();
        while (!pending.empty()) {
            const double hi = pending.back();
            const double arg = wrapped_arg(hi);
            const double step = wrap_to_pi(arg - prev_arg);
            if (std::abs(step) > cfg.max_step) {
                if (std::log2(base_step / (hi - lo)) >= cfg.max_refinements)
                    throw std::runtime_error("build_theta_table: phase step " +
                                             std::to_string(step) + " near mu = " +
                                             std::to_string(hi) + " exceeds refinement limit");
                pending.push_back(0.5 * (lo + hi));
                continue;
            }
            pending.pop_back();
            nodes.push_back(hi);
            values.push_back(values.back() + step);
            prev_arg = arg;
            lo = hi;
        }
    }

    for (std::size_t i = 1; i < values.size(); ++i)
        if (values[i] < values[i - 1])
            throw std::runtime_error("build_theta_table: unwrapped phase is not monotone at mu = " +
                                     std::to_string(nodes[i]));
    if (std::abs(values.back() - 2.0 * kPi) > 1e-6)
        throw std::runtime_error("build_theta_table: phase does not reach 2*pi (index != 1)");
    return ThetaTable(std::move(nodes), std::move(values), cfg.rule);
}

DispersionSample sample(double mu, const ThetaTable& table) {
    return {mu, lambda_real(mu), lambda_plus(mu), table.theta(mu)};
}

}  // namespace smolbgk
