#include <sys/wait.h>

#include <array>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"

using nlohmann::json;

namespace {

struct Run {
    int code;
    std::string out;
};

std::string binary() {
    const char* p = std::getenv("SMOLBGK_CLI");
    REQUIRE_MESSAGE(p != nullptr, "SMOLBGK_CLI is not set");
    return p;
}

Run run(const std::string& args) {
    const std::string cmd = binary() + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    REQUIRE(pipe != nullptr);
    std::string out;
    std::array<char, 4096> buf{};
    while (std::size_t n = std::fread(buf.data(), 1, buf.size(), pipe)) out.append(buf.data(), n);
    const int status = pclose(pipe);
    return {WIFEXITED(status) ? WEXITSTATUS(status) : -1, out};
}

std::vector<std::string> lines(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

std::vector<std::string> split(const std::string& s) {
    std::vector<std::string> out;
    std::istringstream in(s);
    for (std::string f; std::getline(in, f, ',');) out.push_back(f);
    return out;
}

// Enough of JSON Schema for the documented schemas: type, required,
// properties, additionalProperties = false, items.
bool matches_type(const json& v, const std::string& t) {
    if (t == "object") return v.is_object();
    if (t == "array") return v.is_array();
    if (t == "string") return v.is_string();
    if (t == "number") return v.is_number();
    if (t == "boolean") return v.is_boolean();
    if (t == "null") return v.is_null();
    return false;
}

void validate(const json& v, const json& schema, const std::string& path) {
    CAPTURE(path);
    if (schema.contains("type")) {
        const json& t = schema["type"];
        bool ok = false;
        if (t.is_string()) ok = matches_type(v, t);
        else
            for (const auto& e : t) ok |= matches_type(v, e);
        REQUIRE(ok);
    }
    if (v.is_object()) {
        for (const auto& r : schema.value("required", json::array())) REQUIRE(v.contains(r.get<std::string>()));
        const json props = schema.value("properties", json::object());
        for (const auto& [k, sub] : v.items()) {
            if (props.contains(k)) validate(sub, props[k], path + "." + k);
            else if (schema.value("additionalProperties", true) == false) FAIL("unexpected key " << k);
        }
    }
    if (v.is_array() && schema.contains("items"))
        for (std::size_t i = 0; i < v.size(); ++i) validate(v[i], schema["items"], path + "[" + std::to_string(i) + "]");
}

json schema(const std::string& name) {
    const char* dir = std::getenv("SMOLBGK_DOCS");
    REQUIRE(dir != nullptr);
    std::ifstream in(std::filesystem::path(dir) / name);
    REQUIRE(in.good());
    return json::parse(in);
}

std::filesystem::path temp_file(const std::string& name) {
    return std::filesystem::temp_directory_path() / ("smolbgk_cli_" + std::to_string(::getpid()) + "_" + name);
}

}  // namespace

TEST_CASE("coeffs") {
    const Run r = run("coeffs --format json");
    REQUIRE(r.code == 0);
    const json j = json::parse(r.out);
    CHECK(j["convention"] == "boundary-phase");
    CHECK(std::abs(j["K_TT"].get<double>() - 1.527811) < 1e-5);
    CHECK(std::abs(j["V1"].get<double>() - 2.6470) < 5e-4);
    CHECK(std::abs(j["product"].get<double>() - 2.0 / 3.0) < 1e-6);

    const json m = json::parse(run("coeffs --format json --convention magnitude").out);
    CHECK(std::abs(m["K_TT"].get<double>() - 1.3068) < 1e-3);
    CHECK(std::abs(m["K_TU"].get<double>() + 0.4443) < 1e-3);
    CHECK(std::abs(std::abs(m["K_nT_printed"].get<double>()) - 3.3207) < 1e-3);

    const Run csv = run("coeffs --format csv");
    REQUIRE(csv.code == 0);
    const auto ls = lines(csv.out);
    REQUIRE(ls.size() == 2);
    CHECK(split(ls[0]).size() == split(ls[1]).size());
    CHECK(ls[0].rfind("V1,V2,V3", 0) == 0);

    const json loose = json::parse(run("--quad-tol 1e-6 coeffs").out);
    for (const char* k : {"V1", "V2", "V3", "K_TT", "K_TU", "K_nT", "K_nU"})
        CHECK(std::abs(loose[k].get<double>() - j[k].get<double>()) < 1e-5);
}

TEST_CASE("jumps") {
    const json a = json::parse(run("jumps --g-t 1 --u 0").out);
    CHECK(std::abs(a["eps_T"].get<double>() - 1.527811) < 1e-5);
    CHECK(a["residual_plus"].get<double>() < 1e-8);
    const json p = json::parse(run("jumps --g-t 1 --u 0 --convention magnitude").out);
    CHECK(std::abs(p["eps_T"].get<double>() - 1.3068) < 1e-3);
    const json z = json::parse(run("jumps --g-t 0 --u 0").out);
    CHECK(z["eps_T"].get<double>() == 0.0);
    CHECK(z["eps_n"].get<double>() == 0.0);
    const json e = json::parse(run("jumps --g-t 0 --u 0.5 --convention magnitude").out);
    CHECK(std::abs(e["eps_T"].get<double>() + 0.4443) < 1e-3);
    const json f = json::parse(run("jumps --g-t 0 --u 0.5").out);
    CHECK(std::abs(f["eps_T"].get<double>() + 0.406050) < 1e-5);

    CHECK(run("jumps --g-t abc").code == 1);
    CHECK(run("jumps --g-t nan").code == 1);
    CHECK(run("jumps --bogus 1").code == 1);
    CHECK(run("nonsense").code == 1);
}

TEST_CASE("profile") {
    const Run r = run("profile --g-t 1 --u 0 --x-max 20 --points 64");
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 65);
    CHECK(ls[0] == "x,delta_n,u,delta_T,m0,m1");
    for (std::size_t i = 1; i < ls.size(); ++i) REQUIRE(split(ls[i])[2] == "0");
    const auto last = split(ls.back());
    const double eps_t = json::parse(run("jumps --g-t 1").out)["eps_T"].get<double>();
    CHECK(std::abs(std::stod(last[3]) - (eps_t + std::stod(last[0]))) < 1e-4);

    const auto zero = lines(run("profile --points 8").out);
    for (std::size_t i = 1; i < zero.size(); ++i) {
        const auto f = split(zero[i]);
        CHECK(f[1] == "0");
        CHECK(f[2] == "0");
        CHECK(f[3] == "0");
    }

    const json j = json::parse(run("profile --g-t 1 --points 5 --format json").out);
    validate(j, schema("profile.schema.json"), "$");
    CHECK(j.size() == 5);

    const auto path = temp_file("profile.csv");
    CHECK(run("profile --g-t 1 --points 4 --out " + path.string()).code == 0);
    std::ifstream in(path);
    std::string header;
    std::getline(in, header);
    CHECK(header == "x,delta_n,u,delta_T,m0,m1");
    std::filesystem::remove(path);

    CHECK(run("profile --out /nonexistent-dir/p.csv").code == 3);
    CHECK(run("profile --points 1").code == 1);
    CHECK(run("profile --x-max -1").code == 1);
}

TEST_CASE("distribution") {
    const Run r = run("distribution --g-t 1 --x 0 --mu-min 0.1 --mu-max 3 --points 6");
    REQUIRE(r.code == 0);
    const auto ls = lines(r.out);
    REQUIRE(ls.size() == 7);
    CHECK(ls[0] == "mu,h,h_as");
    for (std::size_t i = 1; i < ls.size(); ++i) CHECK(std::abs(std::stod(split(ls[i])[1])) < 1e-6);
}

TEST_CASE("verify") {
    const Run r = run("verify --skip-oracle");
    CHECK(r.code == 0);
    const json j = json::parse(r.out);
    validate(j, schema("verify-report.schema.json"), "$");
    CHECK(j["pass"].get<bool>());
    CHECK(j["checks"].size() >= 15);

    const Run tight = run("verify --skip-oracle --tol 1e-15");
    CHECK(tight.code == 1);
    CHECK_FALSE(json::parse(tight.out)["pass"].get<bool>());
}

TEST_CASE("oracle") {
    const json a = json::parse(run("oracle --g-t 1 --u 0").out);
    CHECK(a["deviation_eps_T"].get<double>() <= 0.02);
    CHECK(a["deviation_eps_n"].get<double>() <= 0.02);
    const json z = json::parse(run("oracle --g-t 0 --u 0").out);
    CHECK(z["oracle"]["eps_T"].get<double>() == 0.0);
    CHECK(z["analytic"]["eps_T"].get<double>() == 0.0);
    CHECK(z["deviation_eps_T"].get<double>() == 0.0);

    const json coarse = json::parse(run("oracle --g-t 1 --n-x 250 --n-mu 12").out);
    const json fine = json::parse(run("oracle --g-t 1 --n-x 500 --n-mu 24").out);
    CHECK(fine["deviation_eps_T"].get<double>() < coarse["deviation_eps_T"].get<double>());

    CHECK(run("oracle --g-t 1 --max-iter 3").code == 4);
    CHECK(run("oracle --g-t 1 --n-mu 7").code == 1);
}

TEST_CASE("config file") {
    const auto path = temp_file("config.json");
    {
        std::ofstream(path) << R"({"oracle": {"n_x": 300, "n_mu": 16}, "quad": {"abs_tol": 1e-9}})";
    }
    const json from_config = json::parse(run("--config " + path.string() + " oracle --g-t 1").out);
    CHECK(from_config["n_x"] == 300);
    CHECK(from_config["n_mu"] == 16);
    const json flag_wins = json::parse(run("--config " + path.string() + " oracle --g-t 1 --n-x 400").out);
    CHECK(flag_wins["n_x"] == 400);

    {
        std::ofstream(path) << R"({"oracle": {"nx": 300}})";
    }
    CHECK(run("--config " + path.string() + " coeffs").code == 1);
    {
        std::ofstream(path) << "{not json";
    }
    CHECK(run("--config " + path.string() + " coeffs").code == 1);
    std::filesystem::remove(path);
    CHECK(run("--config /nonexistent-dir/c.json coeffs").code == 3);
}

TEST_CASE("output is deterministic") {
    const std::string a = run("profile --g-t 1 --u 0.2 --points 16").out;
    const std::string b = run("profile --g-t 1 --u 0.2 --points 16").out;
    CHECK(a == b);
    const std::string c = run("profile --g-t 1 --u 0.2 --points 16 | cat; LC_ALL=de_DE.UTF-8 " + binary() +
                              " profile --g-t 1 --u 0.2 --points 16")
                              .out;
    CHECK(c == a + a);
}
