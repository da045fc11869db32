#pragma once

/// @file
/// Quadrature and special-function infrastructure: globally adaptive
/// Gauss-Legendre integration, principal-value integration by singularity
/// subtraction, and the Dawson integral.

#include <algorithm>
#include <array>
#include <cmath>
#include <complex>
#include <limits>
#include <queue>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <vector>

namespace smolbgk {

struct QuadConfig {
    double abs_tol = 1e-10;
    double rel_tol = 1e-10;
    /// Upper truncation point for e^{-mu^2}-weighted semi-infinite integrals.
    double mu_cut = 8.0;
    int max_subdivisions = 4000;

    /// Throws std::invalid_argument when an invariant is violated.
    void validate() const;
};

/// Raised when adaptive integration exhausts its subdivision budget.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double estimate, double error_bound)
        : std::runtime_error(what), estimate_(estimate), error_bound_(error_bound) {}

    double estimate() const noexcept { return estimate_; }
    double error_bound() const noexcept { return error_bound_; }

private:
    double estimate_;
    double error_bound_;
};

namespace detail {

inline constexpr int kPanelOrder = 15;

struct GaussLegendreRule {
    std::array<double, kPanelOrder> nodes{};
    std::array<double, kPanelOrder> weights{};
};

/// Nodes and weights of the 15-point rule on [-1, 1].
const GaussLegendreRule& panel_rule();

template <typename T>
double magnitude(const T& v) {
    using std::abs;
    return abs(v);
}

template <typename T, typename F>
T panel(F& f, double a, double b) {
    const auto& rule = panel_rule();
    const double half = 0.5 * (b - a);
    const double mid = 0.5 * (a + b);
    T sum{};
    for (int i = 0; i < kPanelOrder; ++i) {
        const T v = f(mid + half * rule.nodes[i]);
        if (!std::isfinite(magnitude(v)))
            throw std::domain_error("integrand is not finite at t = " +
                                    std::to_string(mid + half * rule.nodes[i]));
        sum += rule.weights[i] * v;
    }
    return half * sum;
}

template <typename T>
struct Segment {
    double a, b;
    T left, right;  // half-panel estimates; their sum is the panel value
    double error;
    T value() const { return left + right; }
    bool operator<(const Segment& o) const { return error < o.error; }
};

}  // namespace detail

/// Adaptive integral of f over [a, b].
///
/// Each panel is estimated by the 15-point Gauss-Legendre rule on the whole
/// panel and on its two halves; the difference is the panel error. The panel
/// with the largest error is bisected until the summed error satisfies
/// max(abs_tol, rel_tol * |result|). An infinite upper limit is replaced by
/// cfg.mu_cut, so it is only meant for Gaussian-decaying integrands.
template <typename F, typename T = std::invoke_result_t<F&, double>>
T integrate(F&& f, double a, double b, const QuadConfig& cfg = {}) {
    if (std::isinf(b) && b > 0) b = std::max(cfg.mu_cut, a + 1.0);
    if (!(a < b)) {
        if (a == b) return T{};
        throw std::domain_error("integrate: require a < b");
    }

    auto make = [&](double lo, double hi, const T& coarse) {
        const double mid = 0.5 * (lo + hi);
        const T left = detail::panel<T>(f, lo, mid);
        const T right = detail::panel<T>(f, mid, hi);
        return detail::Segment<T>{lo, hi, left, right,
                                  detail::magnitude(T(left + right - coarse))};
    };

    std::priority_queue<detail::Segment<T>> queue;
    queue.push(make(a, b, detail::panel<T>(f, a, b)));
    T total = queue.top().value();
    double error = queue.top().error;

    for (int splits = 0;
         error > std::max(cfg.abs_tol, cfg.rel_tol * detail::magnitude(total)); ++splits) {
        if (splits >= cfg.max_subdivisions)
            throw QuadratureError("integrate: no convergence after " +
                                      std::to_string(splits) + " subdivisions",
                                  detail::magnitude(total), error);
        const auto worst = queue.top();
        queue.pop();
        const double mid = 0.5 * (worst.a + worst.b);
        auto lower = make(worst.a, mid, worst.left);
        auto upper = make(mid, worst.b, worst.right);
        total += lower.value() + upper.value() - worst.value();
        error += lower.error + upper.error - worst.error;
        queue.push(std::move(lower));
        queue.push(std::move(upper));
    }

    // Re-sum so the result does not carry the drift of the running updates.
    T sum{};
    for (; !queue.empty(); queue.pop()) sum += queue.top().value();
    return sum;
}

/// Principal value of ∫_a^b g(t)/(t - s) dt for a < s < b.
///
/// Subtracts g(s)/(t - s), integrates the bounded remainder on [a, s] and
/// [s, b] separately and adds g(s) ln((b - s)/(s - a)).
template <typename G, typename T = std::invoke_result_t<G&, double>>
T integrate_pv(G&& g, double a, double b, double s, const QuadConfig& cfg = {}) {
    if (std::isinf(b) && b > 0) b = std::max(cfg.mu_cut, a + 1.0);
    if (!(a < s && s < b))
        throw std::domain_error("integrate_pv: singular point must lie strictly inside (a, b)");
    const T gs = g(s);
    auto remainder = [&](double t) -> T { return (g(t) - gs) / (t - s); };
    return integrate(remainder, a, s, cfg) + integrate(remainder, s, b, cfg) +
           gs * std::log((b - s) / (s - a));
}

/// Cauchy-type integral ∫_a^b g(t)/(t - z) dt for complex z off [a, b].
///
/// g(s) is subtracted at s = clamp(Re z, a, b) and its contribution added
/// back through the logarithm, so the quadrature stays accurate when z
/// approaches the segment.
template <typename G>
std::complex<double> integrate_cauchy(G&& g, double a, double b, std::complex<double> z,
                                      const QuadConfig& cfg = {}) {
    using cplx = std::complex<double>;
    if (z.imag() == 0.0 && z.real() >= a && z.real() <= b)
        throw std::domain_error("integrate_cauchy: z lies on the integration segment");
    const double s = std::clamp(z.real(), a, b);
    const double gs = g(s);
    auto remainder = [&](double t) -> cplx { return (g(t) - gs) / (cplx(t) - z); };
    return integrate(remainder, a, b, cfg) + gs * (std::log(cplx(b) - z) - std::log(cplx(a) - z));
}

/// Dawson integral F(x) = e^{-x^2} ∫_0^x e^{s^2} ds.
double dawson(double x);

}  // namespace smolbgk
