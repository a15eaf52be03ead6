#include <sstream>

#include "cli.hpp"
#include "doctest.h"
#include "json.hpp"

namespace {

struct Run {
    int code;
    std::string out, err;
};

Run rsym_cli(std::vector<std::string> args) {
    std::ostringstream out, err;
    int code = rsym::cli::run(args, out, err);
    return {code, out.str(), err.str()};
}

std::string data(const std::string& name) { return std::string(RSYM_DATA_DIR) + "/" + name; }

}  // namespace

TEST_CASE("cli exit codes") {
    CHECK(rsym_cli({"ricci", data("round_sphere.json")}).code == 0);
    CHECK(rsym_cli({"flow-residual", data("round_sphere.json")}).code == 0);
    CHECK(rsym_cli({"check-symmetry", data("generic2.json"), "--generator", data("theorem_n2.json")}).code == 0);
    CHECK(rsym_cli({"check-symmetry", data("generic2.json"), "--generator", data("t_dt.json")}).code == 1);
    CHECK(rsym_cli({"check-symmetry", data("warped_einstein.json"), "--generator", data("phi_dphi.json")}).code == 1);
    CHECK(rsym_cli({"check-symmetry", data("warped_flat.json"), "--generator", data("phi_dphi.json")}).code == 0);
    CHECK(rsym_cli({"ricci", data("missing.json")}).code == 2);
    CHECK(rsym_cli({"frobnicate"}).code == 2);
    CHECK(rsym_cli({"reduce", "--family", "doubly_warped", "--params", "p=1"}).code == 2);
    CHECK(rsym_cli({"ricci", data("round_sphere.json"), "--format", "yaml"}).code == 2);
}

TEST_CASE("cli witness names the failing residual") {
    Run r = rsym_cli({"check-symmetry", data("warped_einstein.json"), "--generator", data("phi_dphi.json"),
                      "--format", "json"});
    auto j = nlohmann::json::parse(r.out);
    CHECK(j["generators"][0]["symmetry"] == false);
    CHECK(j["generators"][0]["witness"]["entry"] == "residual phi");
}

TEST_CASE("cli restrict conformal2d") {
    Run r = rsym_cli({"restrict", "--ansatz", "conformal2d"});
    REQUIRE(r.code == 0);
    CHECK(r.out.find("D(xi1(x1,x2), x2) + D(xi2(x1,x2), x1)") != std::string::npos);
    CHECK(r.out.find("D(xi1(x1,x2), x1) - D(xi2(x1,x2), x2)") != std::string::npos);
}

TEST_CASE("cli verify-solution json") {
    for (const char* name : {"warped_hyperbolic", "dw_sinsin"}) {
        Run r = rsym_cli({"verify-solution", "--name", name, "--format", "json"});
        CAPTURE(name);
        REQUIRE(r.code == 0);
        auto j = nlohmann::json::parse(r.out);
        CHECK(j["symbolic"] == "zero");
        CHECK(j["numeric_max_abs"].get<double>() < 1e-10);
        CHECK(j["verified"] == true);
        CHECK(j["grid_report"].contains("argmax"));
    }
    CHECK(rsym_cli({"verify-solution", "--name", "nope"}).code == 2);
}

TEST_CASE("cli json output is deterministic") {
    std::vector<std::string> args{"verify-solution", "--name", "dw_sincos", "--format", "json", "--seed", "7"};
    CHECK(rsym_cli(args).out == rsym_cli(args).out);
    std::vector<std::string> ricci{"ricci", data("generic2.json"), "--format", "json"};
    CHECK(rsym_cli(ricci).out == rsym_cli(ricci).out);
}

TEST_CASE("cli latex output has balanced braces") {
    Run r = rsym_cli({"christoffel", data("round_sphere.json"), "--format", "latex"});
    REQUIRE(r.code == 0);
    CHECK(r.out.rfind("\\begin{align*}", 0) == 0);
    int depth = 0;
    bool negative = false;
    for (char c : r.out) {
        if (c == '{') ++depth;
        if (c == '}') --depth;
        if (depth < 0) negative = true;
    }
    CHECK(depth == 0);
    CHECK_FALSE(negative);
}

TEST_CASE("cli bracket") {
    Run r = rsym_cli({"bracket", data("x1.json"), data("x2.json"), "--format", "json"});
    REQUIRE(r.code == 0);
    auto j = nlohmann::json::parse(r.out);
    CHECK(j.dump().find("xi_t") != std::string::npos);
}
