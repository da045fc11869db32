#include "smolbgk/spectrum.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "smolbgk/parallel.hpp"

namespace smolbgk {

namespace {

QuadConfig inner_config(const QuadConfig& base) {
    QuadConfig q = base;
    q.abs_tol = std::min(base.abs_tol, 1e-12);
    q.rel_tol = std::min(base.rel_tol, 1e-12);
    q.max_subdivisions = std::max(base.max_subdivisions, 8000);
    return q;
}

}  // namespace

SpectralTable::SpectralTable(const RiemannData& rd, const SpectralTableConfig& cfg)
    : rd_(&rd), order_(cfg.nodes_per_panel) {
    if (cfg.nodes_per_panel < 2 || cfg.geometric_levels < 1 || !(cfg.panel_width > 0.0))
        throw std::invalid_argument("SpectralTable: bad configuration");
    const double cut = rd.quad().mu_cut;
    if (!(cut > 1.0)) throw std::invalid_argument("SpectralTable: mu_cut must exceed 1");

    edges_.push_back(0.0);
    for (int k = cfg.geometric_levels; k >= 1; --k) edges_.push_back(std::ldexp(1.0, -k));
    const int uniform = static_cast<int>(std::ceil((cut - 1.0) / cfg.panel_width - 1e-12));
    for (int i = 0; i <= uniform; ++i) edges_.push_back(1.0 + (cut - 1.0) * i / uniform);

    for (int j = 0; j < order_; ++j) {
        const double angle = kPi * (2 * j + 1) / (2.0 * order_);
        unit_nodes_.push_back(std::cos(angle));
        bary_.push_back((j % 2 ? -1.0 : 1.0) * std::sin(angle));
    }

    const std::size_t panels = edges_.size() - 1;
    values_.assign(panels * order_, 0.0);
    parallel_for(values_.size(), [&](std::size_t i) {
        const std::size_t p = i / order_;
        const double a = edges_[p], b = edges_[p + 1];
        const double eta = 0.5 * (a + b) + 0.5 * (b - a) * unit_nodes_[i % order_];
        values_[i] = exact_scaled_weight(eta);
    });
}

double SpectralTable::exact_scaled_weight(double eta) const {
    if (!(eta > 0.0)) throw std::domain_error("SpectralTable: eta must be > 0");
    return 1.0 / (rd_->x_hat(eta) * std::abs(lambda_plus(eta)));
}

double SpectralTable::scaled_weight(double eta) const {
    if (eta < 0.0) throw std::domain_error("SpectralTable: eta must be >= 0");
    if (eta > upper()) return exact_scaled_weight(eta);
    const auto it = std::upper_bound(edges_.begin(), edges_.end(), eta);
    const std::size_t p = std::min<std::size_t>(std::max<std::ptrdiff_t>(it - edges_.begin() - 1, 0),
                                                edges_.size() - 2);
    const double a = edges_[p], b = edges_[p + 1];
    const double t = (2.0 * eta - a - b) / (b - a);
    const double* v = values_.data() + p * order_;
    double num = 0.0, den = 0.0;
    for (int j = 0; j < order_; ++j) {
        const double diff = t - unit_nodes_[j];
        if (diff == 0.0) return v[j];
        const double w = bary_[j] / diff;
        num += w * v[j];
        den += w;
    }
    return num / den;
}

double SpectralTable::weight(double eta) const {
    return std::exp(-eta * eta) * scaled_weight(eta);
}

double EigenfunctionParts::pv_part(double mu) const {
    return eta / kSqrtPi * (1.5 - mu * mu) / (eta - mu);
}

EigenfunctionParts phi_parts(double eta) {
    if (!(eta > 0.0)) throw std::domain_error("phi_parts: eta must be > 0");
    EigenfunctionParts p;
    p.eta = eta;
    p.delta_weight = std::exp(eta * eta) * lambda_real(eta);
    return p;
}

std::array<double, 3> eigenfunction_moments(double eta, const QuadConfig& cfg) {
    if (!(eta > 0.0)) throw std::domain_error("eigenfunction_moments: eta must be > 0");
    // The δ-term contributes e^{-η²}η^k · e^{η²}λ(η); the exponentials are
    // cancelled by hand so large η does not overflow.
    const double delta = lambda_real(eta);
    const double cut = cfg.mu_cut;
    std::array<double, 3> n{};
    for (int k = 0; k < 3; ++k) {
        // e^{-μ²}μ^k times the PV density without its 1/(η - μ) factor.
        const auto g = [&](double mu) {
            return std::exp(-mu * mu) * std::pow(mu, k) * eta / kSqrtPi * (1.5 - mu * mu);
        };
        // Φ carries 1/(η - μ) = -1/(μ - η).
        const double pv = eta < cut ? -integrate_pv(g, -cut, cut, eta, cfg)
                                    : integrate([&](double mu) { return g(mu) / (eta - mu); },
                                                -cut, cut, cfg);
        n[k] = pv + delta * std::pow(eta, k);
    }
    return n;
}

HalfSpaceSolution::HalfSpaceSolution(const RiemannData& rd, const SpectralTable& table,
                                     const JumpResult& jumps, const ProblemInput& input)
    : rd_(&rd), table_(&table), jumps_(jumps), input_(input), inner_(inner_config(rd.quad())) {}

double HalfSpaceSolution::amplitude(double eta) const {
    return (rd_->v1() + eta) * input_.g_t - jumps_.eps_t;
}

double HalfSpaceSolution::a_coefficient(double eta) const {
    if (!(eta > 0.0)) throw std::domain_error("a_coefficient: eta must be > 0");
    return amplitude(eta) * table_->weight(eta);
}

double HalfSpaceSolution::a_coefficient_sine_form(double eta) const {
    if (!(eta > 0.0)) throw std::domain_error("a_coefficient_sine_form: eta must be > 0");
    if (eta == kMu1) throw std::domain_error("a_coefficient_sine_form: 0/0 at mu1");
    const double s = std::sin(rd_->theta_table().deficit(eta));
    return -amplitude(eta) * s / (kSqrtPi * eta * rd_->x_hat(eta) * (eta * eta - 1.5));
}

SpectralCoefficient HalfSpaceSolution::coefficient(double eta) const {
    return {eta, a_coefficient(eta), std::abs(eta - kMu1) < 1e-3};
}

cplx HalfSpaceSolution::n_function(cplx z) const {
    if (z.imag() == 0.0 && z.real() >= 0.0)
        throw std::domain_error("n_function: z on the cut [0, inf); use the boundary values");
    const auto g = [this](double eta) { return eta * table_->weight(eta) * amplitude(eta); };
    return integrate_cauchy(g, 0.0, table_->upper(), z, inner_) / kSqrtPi;
}

cplx HalfSpaceSolution::n_closed_form(cplx z) const {
    const cplx q = z * z - 1.5;
    if (std::abs(q) == 0.0) throw std::domain_error("n_closed_form: z = ±mu1");
    const double g = input_.g_t;
    const cplx h_as = jumps_.eps_n + jumps_.eps_t + 2.0 * input_.u * z + q * (jumps_.eps_t - g * z);
    return (h_as + (jumps_.c0 + jumps_.c1 * z) / rd_->x_function(z)) / q;
}

double HalfSpaceSolution::continuum_integral(double x, double mu) const {
    if (x < 0.0) throw std::domain_error("continuum_integral: x must be >= 0");
    const auto g = [&](double eta) {
        const double decay = x == 0.0 ? 1.0 : std::exp(-x / eta);
        return decay * eta * table_->weight(eta) * amplitude(eta);
    };
    const double top = table_->upper();
    double value;
    if (mu > 0.0 && mu < top) {
        value = integrate_pv(g, 0.0, top, mu, inner_);
    } else {
        value = integrate([&](double eta) { return g(eta) / (eta - mu); }, 0.0, top, inner_);
    }
    return value / kSqrtPi;
}

double HalfSpaceSolution::boundary_residual(double mu) const {
    if (!(mu > 0.0)) throw std::domain_error("boundary_residual: mu must be > 0");
    return std::abs(h_distribution(0.0, mu));
}

double HalfSpaceSolution::h_distribution(double x, double mu) const {
    if (x < 0.0) throw std::domain_error("h_distribution: x must be >= 0");
    double h = h_asymptotic(x, mu, jumps_, input_);
    if (input_.g_t == 0.0 && jumps_.eps_t == 0.0) return h;  // A ≡ 0
    if (mu > 0.0) {
        // e^{μ²}λ(μ)A(μ) = amplitude · λ_pv/(x̂|λ⁺|): the Gaussian cancels.
        const double decay = x == 0.0 ? 1.0 : std::exp(-x / mu);
        h += decay * amplitude(mu) * lambda_real(mu) * table_->scaled_weight(mu);
    }
    return h + (1.5 - mu * mu) * continuum_integral(x, mu);
}

}  // namespace smolbgk
