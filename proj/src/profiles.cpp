#include "smolbgk/profiles.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "smolbgk/parallel.hpp"

namespace smolbgk {

namespace {

struct Triple {
    double a = 0.0, b = 0.0, c = 0.0;
    Triple& operator+=(const Triple& o) {
        a += o.a;
        b += o.b;
        c += o.c;
        return *this;
    }
    friend Triple operator+(Triple l, const Triple& r) { return l += r; }
    friend Triple operator-(const Triple& l, const Triple& r) {
        return {l.a - r.a, l.b - r.b, l.c - r.c};
    }
    friend Triple operator*(double s, const Triple& t) { return {s * t.a, s * t.b, s * t.c}; }
    friend double abs(const Triple& t) {
        return std::max({std::abs(t.a), std::abs(t.b), std::abs(t.c)});
    }
};

void check_x(double x, const char* who) {
    if (!(x >= 0.0) || !std::isfinite(x))
        throw std::domain_error(std::string(who) + ": x must be finite and >= 0");
}

}  // namespace

double m_kernel(double x, int k, const SpectralTable& table) {
    check_x(x, "m_kernel");
    if (k != 0 && k != 1) throw std::invalid_argument("m_kernel: k must be 0 or 1");
    QuadConfig q;
    q.abs_tol = 1e-13;
    q.rel_tol = 1e-12;
    q.max_subdivisions = 8000;
    const auto f = [&](double eta) {
        const double decay = x == 0.0 ? 1.0 : std::exp(-x / eta);
        return decay * (k ? eta : 1.0) * table.weight(eta);
    };
    return integrate(f, 0.0, table.upper(), q) / kSqrtPi;
}

double density_profile(double x, const HalfSpaceSolution& s) {
    const auto& j = s.jumps();
    const double g = s.input().g_t;
    if (g == 0.0 && j.eps_t == 0.0) return j.eps_n;
    const double v1 = s.riemann().v1();
    return j.eps_n - g * x + (g * v1 - j.eps_t) * m_kernel(x, 0, s.table()) +
           g * m_kernel(x, 1, s.table());
}

double velocity_profile(double x, const HalfSpaceSolution& s) {
    check_x(x, "velocity_profile");
    return s.input().u;
}

double temperature_profile(double x, const HalfSpaceSolution& s) {
    const auto& j = s.jumps();
    const double g = s.input().g_t;
    if (g == 0.0 && j.eps_t == 0.0) return j.eps_t;
    const double v1 = s.riemann().v1();
    return j.eps_t + g * x - (g * v1 - j.eps_t) * m_kernel(x, 0, s.table()) -
           g * m_kernel(x, 1, s.table());
}

double density_printed(double x, const HalfSpaceSolution& s, const JumpCoefficients& kc) {
    const double m0 = m_kernel(x, 0, s.table()), m1 = m_kernel(x, 1, s.table());
    const double g = s.input().g_t, flow = 2.0 * s.input().u;
    return (kc.k_tt * (1.0 - m0) - x + s.riemann().v1() * m0 + m1) * g +
           kc.k_tu * (1.0 - m0) * flow;
}

double temperature_printed(double x, const HalfSpaceSolution& s, const JumpCoefficients& kc) {
    const double m0 = m_kernel(x, 0, s.table()), m1 = m_kernel(x, 1, s.table());
    const double g = s.input().g_t, flow = 2.0 * s.input().u;
    return (x - m1 + kc.k_tt * (1.0 + m0)) * g + kc.k_tu * (1.0 + m0) * flow;
}

DirectMoments direct_moments(double x, const HalfSpaceSolution& s, double tol) {
    check_x(x, "direct_moments");
    QuadConfig q = s.riemann().quad();
    q.abs_tol = tol;
    q.rel_tol = tol;
    q.max_subdivisions = 8000;
    const auto f = [&](double mu) {
        const double w = std::exp(-mu * mu) * s.h_distribution(x, mu);
        return Triple{w, w * mu, 2.0 * w * (mu * mu - 0.5)};
    };
    // h has a kink at μ = 0 (the wall term switches on), so split there.
    const double cut = q.mu_cut;
    const Triple t = integrate(f, -cut, 0.0, q) + integrate(f, 0.0, cut, q);
    return {t.a / kSqrtPi, t.b / kSqrtPi, t.c / kSqrtPi};
}

ProfilePoint profile_point(double x, const HalfSpaceSolution& s) {
    ProfilePoint p;
    p.x = x;
    p.delta_n = density_profile(x, s);
    p.u = velocity_profile(x, s);
    p.delta_T = temperature_profile(x, s);
    p.m0 = m_kernel(x, 0, s.table());
    p.m1 = m_kernel(x, 1, s.table());
    return p;
}

std::vector<double> geometric_grid(double x_min, double x_max, int points) {
    if (points < 2) throw std::invalid_argument("geometric_grid: need at least 2 points");
    if (!(x_min > 0.0) || !(x_max > x_min))
        throw std::invalid_argument("geometric_grid: require 0 < x_min < x_max");
    std::vector<double> xs(points);
    const double ratio = std::log(x_max / x_min) / (points - 1);
    for (int i = 0; i < points; ++i) xs[i] = x_min * std::exp(ratio * i);
    xs.back() = x_max;
    return xs;
}

std::vector<ProfilePoint> profile(const std::vector<double>& xs, const HalfSpaceSolution& s) {
    std::vector<ProfilePoint> out(xs.size());
    parallel_for(xs.size(), [&](std::size_t i) { out[i] = profile_point(xs[i], s); });
    return out;
}

}  // namespace smolbgk
