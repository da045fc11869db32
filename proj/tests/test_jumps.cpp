#include <cmath>

#include "doctest.h"
#include "oracles.hpp"
#include "smolbgk/jumps.hpp"

using namespace smolbgk;

namespace {
const RiemannData& rd() {
    static const RiemannData data;
    return data;
}
constexpr auto kPhase = BoundaryConvention::BoundaryPhase;
constexpr auto kMagnitude = BoundaryConvention::Magnitude;
}  // namespace

TEST_CASE("printed coefficient formulas reproduce the published table") {
    const JumpCoefficients k = printed_coefficients(rd(), kMagnitude);
    CHECK(std::abs(k.k_tt - 1.3068) < 1e-3);
    CHECK(std::abs(k.k_tu + 0.4443) < 1e-3);
    CHECK(std::abs(std::abs(k.k_nt) - 3.3207) < 1e-3);
    CHECK(std::abs(k.k_nu + 0.8958) < 1e-3);
    CHECK(k.convention == kMagnitude);
}

TEST_CASE("pole-condition solve under the magnitude stand-in") {
    const JumpCoefficients k = jump_coefficients(rd(), kMagnitude);
    const JumpCoefficients p = printed_coefficients(rd(), kMagnitude);
    CHECK(std::abs(k.k_tt - p.k_tt) < 1e-10);
    CHECK(std::abs(k.k_tu - p.k_tu) < 1e-10);
    CHECK(std::abs(k.k_nu - p.k_nu) < 1e-10);
    // The printed K_nT is not a solution of its own pole conditions: the
    // algebra gives -V₁ where the formula has +V₁.
    CHECK(std::abs(k.k_nt - (p.k_nt - 2.0 * rd().v1())) < 1e-10);
    CHECK(std::abs(k.k_nt + 1.9733) < 1e-3);
}

TEST_CASE("adopted coefficients agree with the discrete-ordinates prototype") {
    // Frozen from an independent half-range discrete-ordinates solve
    // (48 nodes, x_max = 40, 2000 cells), accurate to a few 1e-4.
    const JumpCoefficients k = jump_coefficients(rd(), kPhase);
    CHECK(std::abs(k.k_tt - 1.5272) < 1e-3);
    CHECK(std::abs(k.k_nt + 0.9179) < 1e-3);
    CHECK(std::abs(k.k_tu + 0.4061) < 1e-3);
    CHECK(std::abs(k.k_nu + 0.7131) < 1e-3);
}

TEST_CASE("solve_jumps: examples") {
    const JumpCoefficients k = jump_coefficients(rd());
    const JumpResult zero = solve_jumps({0.0, 0.0}, k, rd());
    CHECK(zero.eps_t == 0.0);
    CHECK(zero.eps_n == 0.0);

    const JumpResult thermal = solve_jumps({1.0, 0.0}, k, rd());
    CHECK(std::abs(thermal.eps_t - 1.527811) < 1e-5);
    CHECK(thermal.c1 == 1.0);
    CHECK(std::abs(thermal.c0 - (rd().v1() - thermal.eps_t)) < 1e-15);

    // The published end-to-end value is what the magnitude stand-in gives.
    const JumpResult printed = solve_jumps({1.0, 0.0}, jump_coefficients(rd(), kMagnitude), rd());
    CHECK(std::abs(printed.eps_t - 1.3068) < 1e-3);

    const JumpResult flow = solve_jumps({0.0, 0.5}, k, rd());
    CHECK(std::abs(flow.eps_t + 0.406050) < 1e-5);
    CHECK(std::abs(flow.eps_n + 0.713184) < 1e-5);
    const JumpResult printed_flow = solve_jumps({0.0, 0.5}, jump_coefficients(rd(), kMagnitude), rd());
    CHECK(std::abs(printed_flow.eps_t + 0.4443) < 1e-3);
    CHECK(std::abs(printed_flow.eps_n + 0.8958) < 1e-3);
}

TEST_CASE("solve_jumps is linear and equals the raw solve") {
    const JumpCoefficients k = jump_coefficients(rd());
    const ProblemInput a{0.7, -0.2}, b{-1.3, 0.45};
    const double alpha = 2.5, beta = -0.75;
    const JumpResult ra = solve_jumps(a, k, rd()), rb = solve_jumps(b, k, rd());
    const JumpResult rc =
        solve_jumps({alpha * a.g_t + beta * b.g_t, alpha * a.u + beta * b.u}, k, rd());
    CHECK(std::abs(rc.eps_t - (alpha * ra.eps_t + beta * rb.eps_t)) < 1e-14);
    CHECK(std::abs(rc.eps_n - (alpha * ra.eps_n + beta * rb.eps_n)) < 1e-14);
    for (const ProblemInput& in : {a, b, ProblemInput{1.0, 0.0}, ProblemInput{0.0, 1.0}}) {
        const JumpResult raw = solve_pole_conditions(in, rd());
        const JumpResult viak = solve_jumps(in, k, rd());
        CHECK(std::abs(raw.eps_t - viak.eps_t) < 1e-12);
        CHECK(std::abs(raw.eps_n - viak.eps_n) < 1e-12);
    }
}

TEST_CASE("pole-condition residuals") {
    for (auto conv : {kPhase, kMagnitude}) {
        const JumpCoefficients k = jump_coefficients(rd(), conv);
        for (const ProblemInput& in : {ProblemInput{1.0, 0.0}, ProblemInput{0.0, 1.0}}) {
            const auto [p, m] = pole_condition_residuals(solve_jumps(in, k, rd()), in, rd(), conv);
            CHECK(p < 1e-8);
            CHECK(m < 1e-8);
        }
    }
    const JumpResult zero{};
    const auto [zp, zm] = pole_condition_residuals(zero, {0.0, 0.0}, rd(), kPhase);
    CHECK(zp == 0.0);
    CHECK(zm == 0.0);
    // Swapping the convention after solving breaks the upper condition.
    const ProblemInput in{1.0, 0.0};
    const auto [p, m] = pole_condition_residuals(solve_jumps(in, jump_coefficients(rd()), rd()), in,
                                                 rd(), kMagnitude);
    CHECK(p > 0.1);
    CHECK(m < 1e-8);
}

TEST_CASE("exact product substitution") {
    const JumpCoefficients a = printed_coefficients(rd(), kMagnitude);
    const double xp = rd().x_hat_mu1(), xm = rd().x_hat_minus_mu1();
    CHECK(std::abs(a.k_tu - (-2.0 * kMu1 * (2.0 / 3.0) / (xp - xm))) < 1e-15);
    const JumpCoefficients b = printed_coefficients(rd(), kPhase);
    CHECK(std::abs(b.k_tu - (-2.0 * kMu1 * (-2.0 / 3.0) / (-xp - xm))) < 1e-15);
}

TEST_CASE("h_asymptotic and its Gaussian moments") {
    CHECK(h_asymptotic(0.0, 0.0, {}, {0.0, 0.0}) == 0.0);
    const JumpResult r{0.8, -0.3, 0.0, 0.0};
    const ProblemInput in{1.0, 0.3};
    for (double x : {0.0, 2.0, 7.5}) {
        const auto moment = [&](auto weight) {
            return oracle::simpson(
                       [&](double mu) { return std::exp(-mu * mu) * weight(mu) * h_asymptotic(x, mu, r, in); },
                       -9.0, 9.0, 4000) /
                   std::sqrt(oracle::kPi);
        };
        CAPTURE(x);
        CHECK(std::abs(moment([](double) { return 1.0; }) - (r.eps_n - in.g_t * x)) < 1e-12);
        CHECK(std::abs(moment([](double mu) { return mu; }) - in.u) < 1e-12);
        CHECK(std::abs(moment([](double mu) { return 2.0 * (mu * mu - 0.5); }) - (r.eps_t + in.g_t * x)) <
              1e-12);
    }
}
