#include "smolbgk/numerics.hpp"

#include <numbers>

namespace smolbgk {

void QuadConfig::validate() const {
    if (!(abs_tol > 0.0)) throw std::invalid_argument("QuadConfig: abs_tol must be > 0");
    if (!(rel_tol > 0.0)) throw std::invalid_argument("QuadConfig: rel_tol must be > 0");
    if (!(mu_cut >= 6.0)) throw std::invalid_argument("QuadConfig: mu_cut must be >= 6");
    if (max_subdivisions < 1)
        throw std::invalid_argument("QuadConfig: max_subdivisions must be >= 1");
}

namespace detail {

const GaussLegendreRule& panel_rule() {
    static const GaussLegendreRule rule = [] {
        GaussLegendreRule r;
        constexpr int n = kPanelOrder;
        for (int i = 0; i < (n + 1) / 2; ++i) {
            double x = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
            double dp = 0.0;
            for (int it = 0; it < 100; ++it) {
                double p0 = 1.0, p1 = x;
                for (int k = 2; k <= n; ++k) {
                    const double p2 = ((2.0 * k - 1.0) * x * p1 - (k - 1.0) * p0) / k;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n * (x * p1 - p0) / (x * x - 1.0);
                const double dx = p1 / dp;
                x -= dx;
                if (std::abs(dx) < 1e-16) break;
            }
            const double w = 2.0 / ((1.0 - x * x) * dp * dp);
            r.nodes[i] = -x;
            r.nodes[n - 1 - i] = x;
            r.weights[i] = w;
            r.weights[n - 1 - i] = w;
        }
        r.nodes[n / 2] = 0.0;
        return r;
    }();
    return rule;
}

}  // namespace detail

double dawson(double x) {
    const double ax = std::abs(x);
    double result;
    if (ax <= 6.0) {
        // e^{-x^2} sum_n x^{2n+1} / (n! (2n+1)); every term is positive.
        const double x2 = ax * ax;
        double power = ax;  // x^{2n+1} / n!
        double sum = ax;
        for (int n = 1; n < 400; ++n) {
            power *= x2 / n;
            const double term = power / (2.0 * n + 1.0);
            sum += term;
            if (term < 1e-17 * sum) break;
        }
        result = std::exp(-x2) * sum;
    } else {
        // 1/(2x) sum_n (2n-1)!! / (2x^2)^n, truncated before the smallest term.
        const double inv = 1.0 / (2.0 * ax * ax);
        double term = 1.0;
        double sum = 1.0;
        for (int n = 1; n < 200; ++n) {
            const double next = term * (2.0 * n - 1.0) * inv;
            if (next > term) break;
            term = next;
            sum += term;
            if (term < 1e-17) break;
        }
        result = sum / (2.0 * ax);
    }
    return x < 0.0 ? -result : result;
}

}  // namespace smolbgk
