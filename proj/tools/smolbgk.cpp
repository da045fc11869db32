// Command-line front end: coefficients, jump solutions, profiles,
// distribution samples, the verification suite and the oracle comparison.

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "json.hpp"
#include "smolbgk/report.hpp"

using namespace smolbgk;
using nlohmann::json;

namespace {

enum Exit { kOk = 0, kUsage = 1, kNumerics = 2, kIo = 3, kOracle = 4 };

struct UsageError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct Settings {
    QuadConfig quad;
    OracleConfig oracle;
};

template <typename T>
void take(const json& obj, const char* key, T& out) {
    if (obj.contains(key)) out = obj.at(key).get<T>();
}

void reject_unknown(const json& obj, std::initializer_list<const char*> known, const char* where) {
    for (const auto& [k, _] : obj.items()) {
        bool ok = false;
        for (const char* n : known) ok = ok || k == n;
        if (!ok) throw UsageError(std::string("config: unknown key '") + k + "' in " + where);
    }
}

VelocityRule parse_rule(const std::string& s) {
    if (s == "half-range") return VelocityRule::HalfRange;
    if (s == "gauss-hermite") return VelocityRule::GaussHermite;
    throw UsageError("unknown velocity rule '" + s + "'");
}

OracleMethod parse_method(const std::string& s) {
    if (s == "krylov") return OracleMethod::Krylov;
    if (s == "source-iteration") return OracleMethod::SourceIteration;
    throw UsageError("unknown oracle method '" + s + "'");
}

BoundaryConvention parse_convention(const std::string& s) {
    if (s == "boundary-phase") return BoundaryConvention::BoundaryPhase;
    if (s == "magnitude") return BoundaryConvention::Magnitude;
    throw UsageError("unknown convention '" + s + "'");
}

void load_config(const std::string& path, Settings& st) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot read config file '" + path + "'");
    json doc;
    try {
        doc = json::parse(in);
        if (!doc.is_object()) throw UsageError("config: top level must be an object");
        reject_unknown(doc, {"quad", "oracle"}, "top level");
        if (doc.contains("quad")) {
            const json& q = doc.at("quad");
            reject_unknown(q, {"abs_tol", "rel_tol", "mu_cut", "max_subdivisions"}, "quad");
            take(q, "abs_tol", st.quad.abs_tol);
            take(q, "rel_tol", st.quad.rel_tol);
            take(q, "mu_cut", st.quad.mu_cut);
            take(q, "max_subdivisions", st.quad.max_subdivisions);
        }
        if (doc.contains("oracle")) {
            const json& o = doc.at("oracle");
            reject_unknown(o,
                           {"n_mu", "x_max", "n_x", "max_iter", "iter_tol", "fit_window", "fit_tol",
                            "rule", "method", "relaxation", "krylov_restart"},
                           "oracle");
            OracleConfig& c = st.oracle;
            take(o, "n_mu", c.n_mu);
            take(o, "x_max", c.x_max);
            take(o, "n_x", c.n_x);
            take(o, "max_iter", c.max_iter);
            take(o, "iter_tol", c.iter_tol);
            take(o, "fit_tol", c.fit_tol);
            take(o, "relaxation", c.relaxation);
            take(o, "krylov_restart", c.krylov_restart);
            if (o.contains("fit_window")) {
                const auto w = o.at("fit_window").get<std::vector<double>>();
                if (w.size() != 2) throw UsageError("config: fit_window needs two numbers");
                c.fit_window = std::make_pair(w[0], w[1]);
            }
            if (o.contains("rule")) c.rule = parse_rule(o.at("rule").get<std::string>());
            if (o.contains("method")) c.method = parse_method(o.at("method").get<std::string>());
        }
    } catch (const json::exception& e) {
        throw UsageError(std::string("config: ") + e.what());
    }
}

// Writes to the file or, for an empty path, to stdout.
void emit(const std::string& text, const std::string& path) {
    if (path.empty()) {
        std::cout << text;
        return;
    }
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open '" + path + "' for writing");
    out << text;
    if (!out.flush()) throw IoError("write to '" + path + "' failed");
}

std::string csv_row(const std::vector<std::pair<std::string, double>>& fields) {
    std::string head, row;
    for (const auto& [k, v] : fields) {
        head += (head.empty() ? "" : ",") + k;
        row += (row.empty() ? "" : ",") + format_number(v);
    }
    return head + '\n' + row + '\n';
}

std::string render(const std::vector<std::pair<std::string, double>>& fields,
                   const std::string& format, json extra = json::object()) {
    if (format == "csv") return csv_row(fields);
    for (const auto& [k, v] : fields) extra[k] = v == 0.0 ? 0.0 : v;
    return extra.dump(2) + '\n';
}

void require_finite(double v, const char* name) {
    if (!std::isfinite(v)) throw UsageError(std::string(name) + " must be finite");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Temperature and concentration jumps for the linearized BGK half-space problem"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string config_path;
    std::optional<double> quad_tol;
    app.add_option("--config", config_path, "JSON file overriding quadrature and oracle settings");
    app.add_option("--quad-tol", quad_tol, "absolute and relative quadrature tolerance")
        ->check(CLI::PositiveNumber);

    double g_t = 0.0, u = 0.0;
    std::string format = "json", table_format = "csv", convention = "boundary-phase", out_path;
    const auto add_drivers = [&](CLI::App* sub) {
        sub->add_option("--g-t", g_t, "far-field log-temperature gradient");
        sub->add_option("--u", u, "far-field mass velocity (units of v_T)");
    };
    const auto add_format = [&](CLI::App* sub) {
        sub->add_option("--format", format, "output format")
            ->check(CLI::IsMember({"json", "csv"}))
            ->capture_default_str();
    };
    const auto add_convention = [&](CLI::App* sub) {
        sub->add_option("--convention", convention, "value used for X(mu1) in the pole conditions")
            ->check(CLI::IsMember({"boundary-phase", "magnitude"}))
            ->capture_default_str();
    };

    auto* coeffs = app.add_subcommand("coeffs", "V_n, x_hat(+-mu1) and jump coefficients");
    add_format(coeffs);
    add_convention(coeffs);

    auto* jumps = app.add_subcommand("jumps", "solve for eps_T and eps_n");
    add_drivers(jumps);
    add_format(jumps);
    add_convention(jumps);

    double x_min = 0.01, x_max = 20.0;
    int points = 64;
    auto* prof = app.add_subcommand("profile", "density, velocity and temperature profiles");
    add_drivers(prof);
    prof->add_option("--x-min", x_min, "first grid point")->capture_default_str();
    prof->add_option("--x-max", x_max, "last grid point")->capture_default_str();
    prof->add_option("--points", points, "number of geometric grid points")->capture_default_str();
    prof->add_option("--out", out_path, "output file (default stdout)");
    prof->add_option("--format", table_format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

    double x_at = 0.0, mu_min = -3.0, mu_max = 3.0;
    auto* dist = app.add_subcommand("distribution", "samples of h(x, mu) at fixed x");
    add_drivers(dist);
    dist->add_option("--x", x_at, "distance from the wall")->capture_default_str();
    dist->add_option("--mu-min", mu_min)->capture_default_str();
    dist->add_option("--mu-max", mu_max)->capture_default_str();
    dist->add_option("--points", points, "number of mu samples");
    dist->add_option("--out", out_path, "output file (default stdout)");
    dist->add_option("--format", table_format)->check(CLI::IsMember({"json", "csv"}))->capture_default_str();

    std::optional<double> verify_tol;
    bool skip_oracle = false;
    auto* verify = app.add_subcommand("verify", "run the self-verification suite");
    verify->add_option("--tol", verify_tol, "cap every check tolerance at this value")
        ->check(CLI::PositiveNumber);
    verify->add_flag("--skip-oracle", skip_oracle, "leave out the discrete-ordinates comparison");
    verify->add_option("--out", out_path, "output file (default stdout)");

    std::optional<int> n_mu, n_x;
    std::optional<double> oracle_x_max, iter_tol;
    std::optional<int> max_iter;
    std::string rule, method;
    auto* orc = app.add_subcommand("oracle", "compare with the discrete-ordinates solver");
    add_drivers(orc);
    orc->add_option("--n-mu", n_mu, "velocity nodes (even, >= 4)");
    orc->add_option("--n-x", n_x, "spatial cells (>= 200)");
    orc->add_option("--x-max", oracle_x_max, "domain length (>= 20)");
    orc->add_option("--max-iter", max_iter, "sweep budget");
    orc->add_option("--iter-tol", iter_tol, "sup-norm update tolerance");
    orc->add_option("--rule", rule, "velocity rule")
        ->check(CLI::IsMember({"half-range", "gauss-hermite"}));
    orc->add_option("--method", method, "iteration")
        ->check(CLI::IsMember({"krylov", "source-iteration"}));

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return kUsage;
    }

    try {
        Settings st;
        if (!config_path.empty()) load_config(config_path, st);
        if (quad_tol) st.quad.abs_tol = st.quad.rel_tol = *quad_tol;
        st.quad.validate();
        require_finite(g_t, "--g-t");
        require_finite(u, "--u");
        const ProblemInput input{g_t, u};
        const BoundaryConvention conv = parse_convention(convention);

        if (*coeffs) {
            const RiemannData rd(st.quad);
            const JumpCoefficients k = jump_coefficients(rd, conv);
            const JumpCoefficients p = printed_coefficients(rd, conv);
            const auto& v = rd.v_moments();
            emit(render({{"V1", v[0]},
                         {"V2", v[1]},
                         {"V3", v[2]},
                         {"x_hat_mu1", rd.x_hat_mu1()},
                         {"x_hat_minus_mu1", rd.x_hat_minus_mu1()},
                         {"product", rd.x_hat_mu1() * rd.x_hat_minus_mu1()},
                         {"K_TT", k.k_tt},
                         {"K_TU", k.k_tu},
                         {"K_nT", k.k_nt},
                         {"K_nU", k.k_nu},
                         {"K_nT_printed", p.k_nt},
                         {"factorization_constant", rd.factorization_constant()}},
                        format, {{"convention", to_string(conv)}}),
                 "");
        } else if (*jumps) {
            const RiemannData rd(st.quad);
            const JumpResult r = solve_jumps(input, jump_coefficients(rd, conv), rd);
            const auto [rp, rm] = pole_condition_residuals(r, input, rd, conv);
            emit(render({{"g_t", g_t},
                         {"u", u},
                         {"eps_T", r.eps_t},
                         {"eps_n", r.eps_n},
                         {"C0", r.c0},
                         {"C1", r.c1},
                         {"residual_plus", rp},
                         {"residual_minus", rm}},
                        format, {{"convention", to_string(conv)}}),
                 "");
        } else if (*prof) {
            if (points < 2 || !(x_max > 0.0) || !(x_min > 0.0) || !(x_min < x_max))
                throw UsageError("profile: need 0 < x-min < x-max and points >= 2");
            const RiemannData rd(st.quad);
            const SpectralTable table(rd);
            const JumpResult r = solve_jumps(input, jump_coefficients(rd), rd);
            const HalfSpaceSolution hs(rd, table, r, input);
            const auto rows = profile(geometric_grid(x_min, x_max, points), hs);
            emit(table_format == "csv" ? profile_csv(rows) : profile_json(rows), out_path);
        } else if (*dist) {
            if (points < 2 || !(mu_min < mu_max) || !(x_at >= 0.0))
                throw UsageError("distribution: need mu-min < mu-max, points >= 2, x >= 0");
            const RiemannData rd(st.quad);
            const SpectralTable table(rd);
            const JumpResult r = solve_jumps(input, jump_coefficients(rd), rd);
            const HalfSpaceSolution hs(rd, table, r, input);
            const bool csv = table_format == "csv";
            std::string text = csv ? "mu,h,h_as\n" : "";
            json rows = json::array();
            for (int i = 0; i < points; ++i) {
                const double mu = mu_min + (mu_max - mu_min) * i / (points - 1);
                const double h = hs.h_distribution(x_at, mu);
                const double h_as = h_asymptotic(x_at, mu, r, input);
                if (csv)
                    text += format_number(mu) + ',' + format_number(h) + ',' + format_number(h_as) + '\n';
                else
                    rows.push_back({{"mu", mu + 0.0}, {"h", h + 0.0}, {"h_as", h_as + 0.0}});
            }
            emit(csv ? text : rows.dump(2) + '\n', out_path);
        } else if (*verify) {
            VerifyOptions opt;
            opt.quad = st.quad;
            opt.oracle = st.oracle;
            opt.run_oracle = !skip_oracle;
            opt.tol = verify_tol;
            const VerificationReport rep = run_verification(opt);
            emit(report_json(rep), out_path);
            return rep.pass() ? kOk : 1;
        } else if (*orc) {
            OracleConfig oc = st.oracle;
            if (n_mu) oc.n_mu = *n_mu;
            if (n_x) oc.n_x = *n_x;
            if (oracle_x_max) oc.x_max = *oracle_x_max;
            if (max_iter) oc.max_iter = *max_iter;
            if (iter_tol) oc.iter_tol = *iter_tol;
            if (!rule.empty()) oc.rule = parse_rule(rule);
            if (!method.empty()) oc.method = parse_method(method);
            try {
                oc.validate();
            } catch (const std::invalid_argument& e) {
                throw UsageError(e.what());
            }
            const RiemannData rd(st.quad);
            const JumpResult a = solve_jumps(input, jump_coefficients(rd), rd);
            const OracleResult o = oracle_solve(oc, input);
            const auto dev = [](double est, double ref) {
                return ref == 0.0 ? std::abs(est) : std::abs(est - ref) / std::abs(ref);
            };
            const auto cons = conservation_check(o.state);
            json out = {{"g_t", g_t},
                        {"u", u},
                        {"analytic", {{"eps_T", a.eps_t}, {"eps_n", a.eps_n}}},
                        {"oracle", {{"eps_T", o.eps_t_est}, {"eps_n", o.eps_n_est}}},
                        {"deviation_eps_T", dev(o.eps_t_est, a.eps_t)},
                        {"deviation_eps_n", dev(o.eps_n_est, a.eps_n)},
                        {"iterations", o.iterations},
                        {"final_update_norm", o.final_update_norm},
                        {"fit_residual", o.fit_residual},
                        {"u_spread", o.u_spread},
                        {"conservation_defects", cons},
                        {"n_mu", oc.n_mu},
                        {"n_x", oc.n_x},
                        {"x_max", oc.x_max},
                        {"rule", to_string(oc.rule)},
                        {"method", to_string(oc.method)}};
            emit(out.dump(2) + '\n', "");
        }
        return kOk;
    } catch (const UsageError& e) {
        std::cerr << "error: " << e.what() << '\n' << app.help();
        return kUsage;
    } catch (const IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kIo;
    } catch (const OracleError& e) {
        std::cerr << "oracle error: " << e.what() << " (sweeps " << e.iterations()
                  << ", last update norm " << e.last_norm() << ")\n";
        return kOracle;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << '\n';
        return kUsage;
    } catch (const std::exception& e) {
        std::cerr << "numerics error: " << e.what() << '\n';
        return kNumerics;
    }
}
