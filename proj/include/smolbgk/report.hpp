#pragma once

/// @file
/// Self-verification suite and output formatting shared by the CLI and tests.

#include <optional>
#include <string>
#include <vector>

#include "smolbgk/oracle.hpp"
#include "smolbgk/profiles.hpp"

namespace smolbgk {

struct Check {
    std::string name;
    double computed = 0.0;
    std::optional<double> expected;  ///< empty for identities, where computed is the defect
    double residual = 0.0;
    double tolerance = 0.0;
    bool pass = false;
};

struct ConventionNote {
    std::string name;
    std::string chosen;
    std::string note;
};

struct VerificationReport {
    std::vector<Check> checks;
    std::vector<ConventionNote> conventions;
    bool pass() const;
};

struct VerifyOptions {
    QuadConfig quad;
    SpectralTableConfig table;
    OracleConfig oracle;
    bool run_oracle = true;
    /// When set, every check tolerance is capped at this value.
    std::optional<double> tol;
};

VerificationReport run_verification(const VerifyOptions& opt = {});

/// 12 significant digits, '.' as decimal separator regardless of locale.
std::string format_number(double v);

/// Header `x,delta_n,u,delta_T,m0,m1`, LF line endings.
std::string profile_csv(const std::vector<ProfilePoint>& rows);
std::string profile_json(const std::vector<ProfilePoint>& rows);
std::string report_json(const VerificationReport& r);

/// Off-cut points used for the factorization check: 5 radii times 4 angles.
std::vector<cplx> factorization_points();

}  // namespace smolbgk
