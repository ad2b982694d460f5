#include <doctest.h>

#include <algorithm>
#include <cstdio>
#include <functional>
#include <string>
#include <variant>

#include "cgoscat/faddeev.hpp"
#include "cgoscat/scenario.hpp"

using namespace cgoscat;

namespace {

const char* kMinimal = R"({
  "name": "mini",
  "grid": {"L": 4.0, "N": 16},
  "lambda": 1.0,
  "gamma0": 1.0,
  "potential": {"terms": [{"kind": "gaussian", "amplitude": 0.1, "sigma": 1.0}]}
})";

std::string msg_of(const std::function<void()>& f) {
    try {
        f();
    } catch (const ConfigError& e) {
        return e.what();
    }
    return {};
}

}  // namespace

TEST_CASE("minimal scenario parses and fills documented defaults") {
    const Scenario s = parse_scenario_text(kMinimal);
    CHECK(s.name == "mini");
    CHECK(s.L == 4.0);
    CHECK(s.N == 16);
    CHECK(s.k_max == 4);
    CHECK(s.seed == 0);
    CHECK(s.t_schedule.empty());
    CHECK(!s.shell);
    CHECK(!s.scan);
    CHECK(!s.potential_prime);
    CHECK(s.solver.cgo_tol == 1e-8);
    CHECK(s.solver.restart == 30);
    CHECK(s.lowfreq.n_widths == 8);
    CHECK(s.lowfreq.width_hi == 1.8);
    REQUIRE(s.potential.terms.size() == 1);
    const auto* g = std::get_if<GaussianTerm>(&s.potential.terms[0]);
    REQUIRE(g != nullptr);
    CHECK(g->amplitude == 0.1);
    CHECK(g->sigma == 1.0);
}

TEST_CASE("line comments in scenario files are tolerated") {
    const std::string text = std::string("// experiment config\n") + kMinimal;
    CHECK(parse_scenario_text(text).name == "mini");
}

TEST_CASE("unknown keys are rejected with their full path") {
    const std::string top = msg_of([] {
        parse_scenario_text(R"({"name":"x","grid":{"L":4,"N":16},"lambda":1,"gamma0":1,
            "potential":{"terms":[]},"bogus":3})");
    });
    CHECK(top.find("unknown key") != std::string::npos);
    CHECK(top.find("$.bogus") != std::string::npos);

    const std::string nested = msg_of([] {
        parse_scenario_text(R"({"name":"x","grid":{"L":4,"N":16,"spacing":0.1},"lambda":1,
            "gamma0":1,"potential":{"terms":[]}})");
    });
    CHECK(nested.find("$.grid.spacing") != std::string::npos);

    const std::string term = msg_of([] {
        parse_scenario_text(R"({"name":"x","grid":{"L":4,"N":16},"lambda":1,"gamma0":1,
            "potential":{"terms":[{"kind":"gaussian","amplitude":1,"sigma":1,"width":2}]}})");
    });
    CHECK(term.find("$.potential.terms[0].width") != std::string::npos);
}

TEST_CASE("missing potential names the field in the error") {
    const std::string msg = msg_of([] {
        parse_scenario_text(R"({"name":"x","grid":{"L":4,"N":16},"lambda":1,"gamma0":1})");
    });
    CHECK(msg.find("$.potential") != std::string::npos);
}

TEST_CASE("malformed JSON and semantic validation are both fatal") {
    CHECK_THROWS_AS(parse_scenario_text("{not json"), ConfigError);
    // odd N
    CHECK_THROWS_AS(parse_scenario_text(
                        R"({"name":"x","grid":{"L":4,"N":15},"lambda":1,"gamma0":1,
                            "potential":{"terms":[]}})"),
                    ConfigError);
    // non-positive lambda
    CHECK_THROWS_AS(parse_scenario_text(
                        R"({"name":"x","grid":{"L":4,"N":16},"lambda":0,"gamma0":1,
                            "potential":{"terms":[]}})"),
                    ConfigError);
    // t_schedule entries must be positive
    CHECK_THROWS_AS(parse_scenario_text(
                        R"({"name":"x","grid":{"L":4,"N":16},"lambda":1,"gamma0":1,
                            "potential":{"terms":[]},"t_schedule":[2.0,-1.0]})"),
                    ConfigError);
    // scan momenta need Im z != 0
    CHECK_THROWS_AS(parse_scenario_text(
                        R"({"name":"x","grid":{"L":4,"N":16},"lambda":1,"gamma0":1,
                            "potential":{"terms":[]},
                            "scan":{"z":[[2.0,0.0]],"rho_perp":[[1.0,0.0]]}})"),
                    ConfigError);
}

TEST_CASE("normalized scenario text is a parse fixed point") {
    const char* full = R"({
      "name": "full",
      "grid": {"L": 8.0, "N": 32},
      "lambda": 1.5,
      "gamma0": 2.0,
      "k_max": 3,
      "potential": {"terms": [
        {"kind": "gaussian", "amplitude": 0.1, "sigma": 1.0, "center": [0.5, 0, 0]},
        {"kind": "expbump", "amplitude": 0.05, "gamma0": 2.0, "r0": 1.0}
      ]},
      "potential_prime": {"terms": [{"kind": "gaussian", "amplitude": 0.09, "sigma": 1.0}]},
      "t_schedule": [2, 4, 8],
      "shell": {"abs_zeta": 3.0, "n_points": 12},
      "zeta_samples": [[3, 0, 0], [0, 2.5, 0.1]],
      "scan": {"z": [[0, 2], [1, 2]], "rho_perp": [[1.0, 0.5]], "probes": 3, "threshold": 1e-3},
      "lowfreq": {"n_widths": 6, "reg_weight": 1e-5, "width_lo": 0.6, "width_hi": 1.6},
      "solver": {"cgo_tol": 1e-9, "cgo_max_iter": 500, "restart": 40,
                 "poisson_tol": 1e-9, "poisson_max_iter": 300},
      "seed": 12345,
      "out": "out/full"
    })";
    const Scenario s = parse_scenario_text(full);
    const std::string once = normalized_scenario(s);
    const std::string twice = normalized_scenario(parse_scenario_text(once));
    CHECK(once == twice);
    // the echo of a defaults-only scenario is also stable
    const std::string mini = normalized_scenario(parse_scenario_text(kMinimal));
    CHECK(mini == normalized_scenario(parse_scenario_text(mini)));
}

TEST_CASE("CSV projections: headers, empty inputs, and row filtering") {
    CHECK(shell_scan_csv({}) == "zeta1,zeta2,zeta3,abs_zeta,t,re,im,err\n");
    const Frame frame = identity_frame();
    CHECK(norm_decay_csv({}, frame) == "re_z,im_z,rho_perp_1,rho_perp_2,norm_estimate\n");
    CHECK(exceptional_scan_csv(ExceptionalScan{}, frame) ==
          "re_z,im_z,rho_perp_1,rho_perp_2,indicator,flagged\n");

    ShellScan scan;
    scan.points.push_back(ShellPoint{Vec3{3, 0, 0}, 8.0, Complex{0.015625, -1e-6}, 2e-4, true});
    scan.points.push_back(ShellPoint{Vec3{-3, 0, 0}, 8.0, Complex{}, 0.0, false});
    const std::string csv = shell_scan_csv({scan});
    // the failed point is dropped: header plus exactly one data row
    CHECK(std::count(csv.begin(), csv.end(), '\n') == 2);
    // doubles round-trip through the printed representation
    const std::size_t row = csv.find('\n') + 1;
    double z1 = 0;
    std::sscanf(csv.c_str() + row, "%lf", &z1);
    CHECK(z1 == 3.0);
    CHECK(csv.find("0.015625") != std::string::npos);

    NormDecaySample nd;
    nd.z = Complex{0.0, 5.0};
    nd.rho_perp = Vec3{0, 1.25, -0.5};
    nd.estimate = 0.125;
    const std::string ndc = norm_decay_csv({nd}, frame);
    CHECK(ndc.find("0,5,1.25,-0.5,0.125") != std::string::npos);

    ExceptionalScan ex;
    ex.points.push_back(ScanPoint{Complex{1.0, 2.0}, Vec3{0, 0.5, 0}, 0.25, true});
    const std::string exc = exceptional_scan_csv(ex, frame);
    CHECK(exc.find(",0.25,1\n") != std::string::npos);
}
