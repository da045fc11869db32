#include "smolbgk/oracle.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>

#include "smolbgk/parallel.hpp"

namespace smolbgk {

const char* to_string(VelocityRule r) {
    return r == VelocityRule::HalfRange ? "half-range" : "gauss-hermite";
}

const char* to_string(OracleMethod m) {
    return m == OracleMethod::Krylov ? "krylov" : "source-iteration";
}

namespace {

using Vec = std::vector<double>;

// Golub-Welsch: nodes and weights from the Jacobi matrix of the recurrence.
QuadratureRule golub_welsch(const Vec& alpha, const Vec& beta_sqrt, double mass) {
    const int n = static_cast<int>(alpha.size());
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    for (int k = 0; k < n; ++k) {
        jac(k, k) = alpha[k];
        if (k + 1 < n) jac(k, k + 1) = jac(k + 1, k) = beta_sqrt[k];
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(jac);
    if (eig.info() != Eigen::Success) throw std::runtime_error("golub_welsch: eigensolver failed");
    QuadratureRule r;
    for (int k = 0; k < n; ++k) {
        r.nodes.push_back(eig.eigenvalues()(k));
        const double v = eig.eigenvectors()(0, k);
        r.weights.push_back(mass * v * v);
    }
    return r;
}

// Recurrence for e^{-μ²} on [0, ∞) by discretized Stieltjes: the measure is
// replaced by a composite Gauss-Legendre rule on [0, 12] and the orthonormal
// polynomials are built on its nodes with full reorthogonalization.
QuadratureRule half_range_rule(int n) {
    const auto& base = detail::panel_rule();
    Vec t, w;
    const int panels = 64;
    const double width = 12.0 / panels;
    for (int p = 0; p < panels; ++p) {
        const double mid = (p + 0.5) * width;
        for (int i = 0; i < detail::kPanelOrder; ++i) {
            const double s = mid + 0.5 * width * base.nodes[i];
            t.push_back(s);
            w.push_back(0.5 * width * base.weights[i] * std::exp(-s * s));
        }
    }
    const std::size_t m = t.size();
    const double mass = std::accumulate(w.begin(), w.end(), 0.0);

    std::vector<Vec> q;
    q.emplace_back(m, 1.0 / std::sqrt(mass));
    Vec alpha, beta;
    for (int k = 0; k < n; ++k) {
        double a = 0.0;
        for (std::size_t i = 0; i < m; ++i) a += w[i] * t[i] * q[k][i] * q[k][i];
        alpha.push_back(a);
        if (k + 1 == n) break;
        Vec r(m);
        for (std::size_t i = 0; i < m; ++i) r[i] = t[i] * q[k][i];
        for (int pass = 0; pass < 2; ++pass)
            for (const Vec& prev : q) {
                double c = 0.0;
                for (std::size_t i = 0; i < m; ++i) c += w[i] * r[i] * prev[i];
                for (std::size_t i = 0; i < m; ++i) r[i] -= c * prev[i];
            }
        double norm = 0.0;
        for (std::size_t i = 0; i < m; ++i) norm += w[i] * r[i] * r[i];
        norm = std::sqrt(norm);
        beta.push_back(norm);
        for (double& v : r) v /= norm;
        q.push_back(std::move(r));
    }
    return golub_welsch(alpha, beta, kSqrtPi / 2.0);
}

QuadratureRule hermite_rule(int n) {
    Vec alpha(n, 0.0), beta;
    for (int k = 1; k < n; ++k) beta.push_back(std::sqrt(0.5 * k));
    return golub_welsch(alpha, beta, kSqrtPi);
}

struct Moments {
    double rho, u, t;
};

Moments moments_at(const Vec& mu, const Vec& w, const Vec& h, std::size_t nx, std::size_t j) {
    Moments m{0.0, 0.0, 0.0};
    for (std::size_t i = 0; i < mu.size(); ++i) {
        const double wh = w[i] * h[i * nx + j];
        m.rho += wh;
        m.u += wh * mu[i];
        m.t += 2.0 * wh * (mu[i] * mu[i] - 0.5);
    }
    return {m.rho / kSqrtPi, m.u / kSqrtPi, m.t / kSqrtPi};
}

class Sweeper {
public:
    Sweeper(const OracleConfig& cfg, const ProblemInput& in)
        : cfg_(cfg), in_(in), rule_(velocity_rule(cfg.rule, cfg.n_mu)), nx_(cfg.n_x + 1) {
        const double dx = cfg.x_max / cfg.n_x;
        for (int j = 0; j < static_cast<int>(nx_); ++j) x_.push_back(dx * j);
        x_.back() = cfg.x_max;
        const auto [lo, hi] = cfg.window();
        for (std::size_t j = 0; j < nx_; ++j)
            if (x_[j] >= lo && x_[j] <= hi) window_.push_back(j);
        if (window_.size() < 2) throw std::invalid_argument("oracle: fit window holds < 2 nodes");
        for (double mu : rule_.nodes) {
            const double a = std::abs(mu);
            if (a < 1e-3) {
                decay_.push_back(0.0);
                lag_.push_back(0.0);
            } else {
                const double e = std::exp(-dx / a);
                decay_.push_back(e);
                lag_.push_back(-a / dx * std::expm1(-dx / a));
            }
        }
        threads_ = cfg.threads > 0 ? cfg.threads : worker_threads();
        h_.assign(rule_.nodes.size() * nx_, 0.0);
    }

    std::size_t size() const { return 3 * nx_ + 2; }

    // One transport sweep from the moments and jumps in v; returns F(v).
    Vec apply(const Vec& v) {
        const double* rho = v.data();
        const double* u = rho + nx_;
        const double* t = u + nx_;
        const double eps_t = v[3 * nx_], eps_n = v[3 * nx_ + 1];
        parallel_for(
            rule_.nodes.size(),
            [&](std::size_t i) {
                const double mu = rule_.nodes[i];
                double* h = h_.data() + i * nx_;
                const auto src = [&](std::size_t j) {
                    return rho[j] + 2.0 * mu * u[j] + (mu * mu - 0.5) * t[j];
                };
                const double e = decay_[i], a = lag_[i];
                if (std::abs(mu) < 1e-3) {
                    for (std::size_t j = 0; j < nx_; ++j) h[j] = src(j);
                } else if (mu > 0.0) {
                    h[0] = 0.0;
                    double s_prev = src(0);
                    for (std::size_t j = 1; j < nx_; ++j) {
                        const double s_next = src(j);
                        h[j] = h[j - 1] * e + s_prev * (a - e) + s_next * (1.0 - a);
                        s_prev = s_next;
                    }
                } else {
                    const double xm = cfg_.x_max;
                    h[nx_ - 1] = eps_n + eps_t + 2.0 * in_.u * mu +
                                 (mu * mu - 1.5) * (eps_t + in_.g_t * (xm - mu));
                    double s_prev = src(nx_ - 1);
                    for (std::size_t j = nx_ - 1; j-- > 0;) {
                        const double s_next = src(j);
                        h[j] = h[j + 1] * e + s_prev * (a - e) + s_next * (1.0 - a);
                        s_prev = s_next;
                    }
                }
            },
            threads_);

        Vec out(size());
        for (std::size_t j = 0; j < nx_; ++j) {
            const Moments m = moments_at(rule_.nodes, rule_.weights, h_, nx_, j);
            out[j] = m.rho;
            out[nx_ + j] = m.u;
            out[2 * nx_ + j] = m.t;
        }
        double st = 0.0, sn = 0.0;
        for (std::size_t j : window_) {
            st += out[2 * nx_ + j] - in_.g_t * x_[j];
            sn += out[j] + in_.g_t * x_[j];
        }
        out[3 * nx_] = st / window_.size();
        out[3 * nx_ + 1] = sn / window_.size();
        return out;
    }

    double fit_residual(const Vec& v) const {
        double worst = 0.0;
        for (std::size_t j : window_) {
            worst = std::max(worst, std::abs(v[2 * nx_ + j] - in_.g_t * x_[j] - v[3 * nx_]));
            worst = std::max(worst, std::abs(v[j] + in_.g_t * x_[j] - v[3 * nx_ + 1]));
        }
        return worst;
    }

    OracleState state_view() const { return {rule_.nodes, rule_.weights, x_, h_}; }
    std::size_t points() const { return nx_; }
    const Vec& x() const { return x_; }

private:
    const OracleConfig& cfg_;
    ProblemInput in_;
    QuadratureRule rule_;
    std::size_t nx_;
    Vec x_;
    std::vector<std::size_t> window_;
    Vec decay_, lag_;
    Vec h_;
    int threads_ = 1;
};

double inf_norm(const Vec& v) {
    double n = 0.0;
    for (double e : v) n = std::max(n, std::abs(e));
    return n;
}

double dot(const Vec& a, const Vec& b) {
    double s = 0.0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

struct SolveStats {
    int products = 0;
    double update_norm = 0.0;
};

[[noreturn]] void not_converged(const SolveStats& st) {
    throw OracleError(OracleError::Kind::NotConverged,
                      "oracle: no convergence in " + std::to_string(st.products) +
                          " sweeps (last update norm " + std::to_string(st.update_norm) + ")",
                      st.products, st.update_norm);
}

// Restarted GMRES for v = F(v) with F affine. F(v) - v is the update a plain
// sweep would make, and its sup norm is the convergence measure.
SolveStats solve_krylov(Sweeper& sw, const OracleConfig& cfg, Vec& v) {
    const std::size_t n = sw.size();
    SolveStats st;
    const Vec b = sw.apply(Vec(n, 0.0));
    ++st.products;
    v.assign(n, 0.0);
    Vec r = b;
    const int m = cfg.krylov_restart;
    for (;;) {
        st.update_norm = inf_norm(r);
        if (st.update_norm <= cfg.iter_tol) return st;
        if (st.products >= cfg.max_iter) not_converged(st);

        std::vector<Vec> basis;
        Eigen::MatrixXd hess = Eigen::MatrixXd::Zero(m + 1, m);
        Vec cs(m), sn(m), g(m + 1, 0.0);
        g[0] = std::sqrt(dot(r, r));
        basis.push_back(r);
        for (double& e : basis[0]) e /= g[0];
        int k = 0;
        // Leave room for the residual sweep that closes the cycle.
        for (; k < m && st.products + 1 < cfg.max_iter; ++k) {
            Vec w = sw.apply(basis[k]);
            ++st.products;
            for (std::size_t i = 0; i < n; ++i) w[i] = basis[k][i] - (w[i] - b[i]);
            for (int pass = 0; pass < 2; ++pass)
                for (int i = 0; i <= k; ++i) {
                    const double c = dot(w, basis[i]);
                    hess(i, k) += c;
                    for (std::size_t l = 0; l < n; ++l) w[l] -= c * basis[i][l];
                }
            hess(k + 1, k) = std::sqrt(dot(w, w));
            for (int i = 0; i < k; ++i) {
                const double tmp = cs[i] * hess(i, k) + sn[i] * hess(i + 1, k);
                hess(i + 1, k) = -sn[i] * hess(i, k) + cs[i] * hess(i + 1, k);
                hess(i, k) = tmp;
            }
            const double rad = std::hypot(hess(k, k), hess(k + 1, k));
            cs[k] = hess(k, k) / rad;
            sn[k] = hess(k + 1, k) / rad;
            hess(k, k) = rad;
            hess(k + 1, k) = 0.0;
            g[k + 1] = -sn[k] * g[k];
            g[k] = cs[k] * g[k];
            const bool done = std::abs(g[k + 1]) <= 0.1 * cfg.iter_tol;
            const double next = std::sqrt(std::max(0.0, dot(w, w)));
            if (!done && next > 0.0) {
                for (double& e : w) e /= next;
                basis.push_back(std::move(w));
            }
            if (done || next == 0.0) {
                ++k;
                break;
            }
        }
        if (k == 0) not_converged(st);
        Vec y(k);
        for (int i = k - 1; i >= 0; --i) {
            double s = g[i];
            for (int j = i + 1; j < k; ++j) s -= hess(i, j) * y[j];
            y[i] = s / hess(i, i);
        }
        for (int i = 0; i < k; ++i)
            for (std::size_t l = 0; l < n; ++l) v[l] += y[i] * basis[i][l];
        const Vec fv = sw.apply(v);
        ++st.products;
        for (std::size_t i = 0; i < n; ++i) r[i] = fv[i] - v[i];
    }
}

SolveStats solve_source_iteration(Sweeper& sw, const OracleConfig& cfg, Vec& v) {
    const std::size_t n = sw.size();
    v.assign(n, 0.0);
    SolveStats st;
    for (;;) {
        Vec next = sw.apply(v);
        ++st.products;
        for (std::size_t i = n - 2; i < n; ++i) next[i] = v[i] + cfg.relaxation * (next[i] - v[i]);
        double norm = 0.0;
        for (std::size_t i = 0; i < n; ++i) norm = std::max(norm, std::abs(next[i] - v[i]));
        v = std::move(next);
        st.update_norm = norm;
        if (norm <= cfg.iter_tol) return st;
        if (st.products >= cfg.max_iter) not_converged(st);
    }
}

}  // namespace

QuadratureRule velocity_rule(VelocityRule kind, int n) {
    if (n < 1) throw std::invalid_argument("velocity_rule: n must be >= 1");
    if (kind == VelocityRule::GaussHermite) return hermite_rule(n);
    if (n % 2) throw std::invalid_argument("velocity_rule: half-range rule needs even n");
    const QuadratureRule half = half_range_rule(n / 2);
    QuadratureRule r;
    for (int k = n / 2 - 1; k >= 0; --k) {
        r.nodes.push_back(-half.nodes[k]);
        r.weights.push_back(half.weights[k]);
    }
    r.nodes.insert(r.nodes.end(), half.nodes.begin(), half.nodes.end());
    r.weights.insert(r.weights.end(), half.weights.begin(), half.weights.end());
    return r;
}

std::pair<double, double> OracleConfig::window() const {
    return fit_window.value_or(std::make_pair(0.6 * x_max, 0.9 * x_max));
}

void OracleConfig::validate() const {
    auto fail = [](const std::string& m) { throw std::invalid_argument("OracleConfig: " + m); };
    if (n_mu < 4 || n_mu % 2) fail("n_mu must be even and >= 4");
    if (!(x_max >= 20.0) || !std::isfinite(x_max)) fail("x_max must be >= 20");
    if (n_x < 200) fail("n_x must be >= 200");
    if (max_iter < 1) fail("max_iter must be >= 1");
    if (!(iter_tol > 0.0)) fail("iter_tol must be > 0");
    if (!(fit_tol > 0.0)) fail("fit_tol must be > 0");
    if (!(relaxation > 0.0 && relaxation <= 1.0)) fail("relaxation must lie in (0, 1]");
    if (krylov_restart < 1) fail("krylov_restart must be >= 1");
    if (threads < 0) fail("threads must be >= 0");
    const auto [lo, hi] = window();
    if (!(lo >= 0.5 * x_max && hi <= x_max && lo < hi))
        fail("fit_window must be an interval inside [x_max/2, x_max]");
}

OracleResult oracle_solve(const OracleConfig& cfg, const ProblemInput& input) {
    cfg.validate();
    if (!std::isfinite(input.g_t) || !std::isfinite(input.u))
        throw std::invalid_argument("oracle_solve: non-finite input");
    Sweeper sw(cfg, input);
    Vec v;
    const SolveStats st = cfg.method == OracleMethod::Krylov ? solve_krylov(sw, cfg, v)
                                                             : solve_source_iteration(sw, cfg, v);
    // One more sweep so the stored distribution and the reported moments agree.
    const Vec fv = sw.apply(v);

    OracleResult res;
    const std::size_t nx = sw.points();
    res.eps_t_est = fv[3 * nx];
    res.eps_n_est = fv[3 * nx + 1];
    res.iterations = st.products;
    res.final_update_norm = st.update_norm;
    res.fit_residual = sw.fit_residual(fv);
    res.state = sw.state_view();
    double umin = fv[nx], umax = fv[nx];
    for (std::size_t j = 0; j < nx; ++j) {
        ProfilePoint p;
        p.x = sw.x()[j];
        p.delta_n = fv[j];
        p.u = fv[nx + j];
        p.delta_T = fv[2 * nx + j];
        umin = std::min(umin, p.u);
        umax = std::max(umax, p.u);
        res.profiles.push_back(p);
    }
    res.u_spread = umax - umin;
    if (res.fit_residual > 10.0 * cfg.fit_tol)
        throw OracleError(OracleError::Kind::FitResidual,
                          "oracle: far-field fit residual " + std::to_string(res.fit_residual) +
                              " exceeds 10x fit_tol; x_max is probably too small",
                          st.products, st.update_norm);
    return res;
}

std::array<double, 3> conservation_check(const OracleState& s) {
    const std::size_t nx = s.x.size(), nm = s.mu.size();
    if (s.w.size() != nm || s.h.size() != nm * nx)
        throw std::invalid_argument("conservation_check: inconsistent state");
    std::array<double, 3> worst{};
    for (std::size_t j = 0; j < nx; ++j) {
        const Moments m = moments_at(s.mu, s.w, s.h, nx, j);
        std::array<double, 3> defect{}, scale{};
        for (std::size_t i = 0; i < nm; ++i) {
            const double mu = s.mu[i], h = s.h[i * nx + j];
            const double src = m.rho + 2.0 * mu * m.u + (mu * mu - 0.5) * m.t;
            const double psi[3] = {1.0, mu, mu * mu};
            for (int k = 0; k < 3; ++k) {
                defect[k] += s.w[i] * psi[k] * (src - h);
                scale[k] += s.w[i] * std::abs(psi[k]) * (std::abs(src) + std::abs(h));
            }
        }
        for (int k = 0; k < 3; ++k)
            if (scale[k] > 0.0) worst[k] = std::max(worst[k], std::abs(defect[k]) / scale[k]);
    }
    return worst;
}

}  // namespace smolbgk
