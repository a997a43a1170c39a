#include "ecosim/config.hpp"

#include "ecosim/cyclic.hpp"
#include "ecosim/errors.hpp"
#include "ecosim/report.hpp"
#include "test_util.hpp"

#include <doctest.h>

#include <sstream>

using namespace ecosim;
using namespace ecotest;

namespace {

const char* kExample1Config =
    "r = 1\n"
    "c_m = 0.6\n"
    "c_train = 0.504\n"
    "rc = exp_decay(3, 0.5, 0)\n"
    "rs = linear(1, 1)\n"
    "beta = 1\n"
    "p1 = 1\n"
    "T = 20\n"
    "scheme = none:x0\n";

}  // namespace

TEST_SUITE("cli") {

TEST_CASE("parses the canonical config") {
    RunConfig cfg = parse_config(kExample1Config);
    CHECK(cfg.instance.r == 1.0);
    CHECK(cfg.instance.c_m == 0.6);
    CHECK(cfg.instance.c_train == 0.504);
    CHECK(cfg.instance.T == 20);
    CHECK(cfg.instance.rc(0) == doctest::Approx(3.0));
    CHECK(cfg.instance.rs(0.0) == doctest::Approx(1.0));
    CHECK_FALSE(cfg.instance.beta.is_infinite());
    CHECK(cfg.scheme.kind == SchemeSpec::Kind::NoTraining);
}

TEST_CASE("parses comments, options and infinite sensitivity") {
    std::string text = std::string(kExample1Config) +
                       "# a comment\n"
                       "beta = inf\n"
                       "delta = 5\n"
                       "eps = 0.002\n"
                       "p_hat = 0.9\n"
                       "k_max = 8\n"
                       "p1_list = 0.5, 0.6, 0.7\n"
                       "scheme = alternating:2:3\n";
    RunConfig cfg = parse_config(text);
    CHECK(cfg.instance.beta.is_infinite());
    CHECK(cfg.delta == 5);
    CHECK(cfg.eps == doctest::Approx(0.002));
    CHECK(cfg.p_hat == doctest::Approx(0.9));
    CHECK(cfg.k_max == 8);
    CHECK(cfg.p1_list == std::vector<double>{0.5, 0.6, 0.7});
    CHECK(cfg.scheme.kind == SchemeSpec::Kind::Alternating);
    CHECK(cfg.scheme.a1 == 2);
    CHECK(cfg.scheme.a2 == 3);
}

TEST_CASE("distinct parse error codes") {
    try {
        parse_config("bogus_key = 1\n");
        FAIL("expected config error");
    } catch (const ConfigError& e) {
        CHECK(e.code() == ConfigError::Code::UnknownKey);
        CHECK(e.line() == 1);
        CHECK(e.field() == "bogus_key");
    }
    try {
        parse_config("r = banana\n");
        FAIL("expected config error");
    } catch (const ConfigError& e) {
        CHECK(e.code() == ConfigError::Code::TypeMismatch);
    }
    try {
        parse_config("no equals sign\n");
        FAIL("expected config error");
    } catch (const ConfigError& e) {
        CHECK(e.code() == ConfigError::Code::BadSyntax);
    }
    // invariant violation: decay ratio outside (0, 1)
    std::string bad = kExample1Config;
    bad.replace(bad.find("exp_decay(3, 0.5, 0)"), 20, "exp_decay(3, 1.5, 0)");
    try {
        parse_config(bad);
        FAIL("expected config error");
    } catch (const ConfigError& e) {
        CHECK(e.code() == ConfigError::Code::InvalidValue);
    }
}

TEST_CASE("emit and parse round-trip on the canonical form") {
    RunConfig cfg = parse_config(std::string(kExample1Config) + "delta = 5\nk_max = 8\n");
    std::string emitted = emit_config(cfg);
    RunConfig again = parse_config(emitted);
    CHECK(emit_config(again) == emitted);
    CHECK(again.instance.T == cfg.instance.T);
    CHECK(again.delta == cfg.delta);
    CHECK(again.scheme.kind == cfg.scheme.kind);
}

TEST_CASE("scheme spec strings") {
    CHECK(SchemeSpec::parse("10010").kind == SchemeSpec::Kind::Bits);
    CHECK(SchemeSpec::parse("bits:10010").bits == "10010");
    CHECK(SchemeSpec::parse("cyclic:3").k == 3);
    CHECK(SchemeSpec::parse("optimal:brute").kind == SchemeSpec::Kind::OptimalBrute);
    CHECK(SchemeSpec::parse("optimal:arms:0.01").eps == doctest::Approx(0.01));
    CHECK(SchemeSpec::parse("welfare-opt").kind == SchemeSpec::Kind::WelfareOpt);
    CHECK_THROWS_AS(SchemeSpec::parse("sideways:3"), std::invalid_argument);
    CHECK_THROWS_AS(SchemeSpec::parse(""), std::invalid_argument);
}

TEST_CASE("scheme resolution") {
    Instance inst = example1();
    CHECK(resolve_scheme(inst, SchemeSpec::parse("none:x0")) == no_training_scheme(20));
    CHECK(resolve_scheme(inst, SchemeSpec::parse("cyclic:3")) == cyclic_scheme(3, 20));
    SchemeSpec bits = SchemeSpec::parse("10010100101001010010");
    CHECK(resolve_scheme(inst, bits).bit_string() == "10010100101001010010");
    CHECK_THROWS_AS(resolve_scheme(inst, SchemeSpec::parse("101")), std::invalid_argument);
}

TEST_CASE("trajectory csv schema and determinism") {
    Instance inst = example1();
    TrainingScheme scheme = no_training_scheme(20);
    std::ostringstream a, b;
    write_trajectory_csv(a, inst, scheme);
    write_trajectory_csv(b, inst, scheme);
    CHECK(a.str() == b.str());

    std::istringstream lines(a.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "round,p,gamma,u,v,U_cum,V_cum,counterfactual_cum");
    int rows = 0;
    std::string row;
    while (std::getline(lines, row)) ++rows;
    CHECK(rows == 20);
}

TEST_CASE("trajectory csv single round") {
    Instance inst = example1().with_horizon(1);
    std::ostringstream out;
    write_trajectory_csv(out, inst, no_training_scheme(1));
    std::istringstream lines(out.str());
    std::string header, row, extra;
    CHECK(static_cast<bool>(std::getline(lines, header)));
    CHECK(static_cast<bool>(std::getline(lines, row)));
    CHECK_FALSE(static_cast<bool>(std::getline(lines, extra)));
    CHECK(row.substr(0, 4) == "1,1,");
}

TEST_CASE("figure1 orderings on the worked example") {
    Instance inst = example1();
    std::ostringstream out;
    write_figure1_csv(out, inst);
    std::istringstream lines(out.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "round,U_x0,U_xr,U_xw,counterfactual");
    std::string row, last;
    int crossing = 0, round = 0;
    while (std::getline(lines, row)) {
        ++round;
        double u0, ur, uw, cf;
        int t;
        CHECK(std::sscanf(row.c_str(), "%d,%lf,%lf,%lf,%lf", &t, &u0, &ur, &uw, &cf) == 5);
        if (crossing == 0 && u0 < cf) crossing = round;
        last = row;
    }
    double u0, ur, uw, cf;
    int t;
    std::sscanf(last.c_str(), "%d,%lf,%lf,%lf,%lf", &t, &u0, &ur, &uw, &cf);
    CHECK(t == 20);
    CHECK(uw > ur);
    CHECK(ur > cf);
    CHECK(cf > u0);
    CHECK(crossing >= 5);
    CHECK(crossing <= 8);
}

TEST_CASE("figure2 splits the expansive example") {
    Instance inst = example2();
    std::ostringstream out;
    std::vector<double> p1s{0.5, 0.6, 0.7, 0.8, 0.9, 1.0};
    write_figure2_csv(out, inst, p1s);
    std::istringstream lines(out.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "round,p_0.5,p_0.6,p_0.7,p_0.8,p_0.9,p_1");
    double max_sep = 0.0;
    std::string row;
    while (std::getline(lines, row)) {
        double p[6];
        int t;
        CHECK(std::sscanf(row.c_str(), "%d,%lf,%lf,%lf,%lf,%lf,%lf", &t, &p[0], &p[1], &p[2],
                          &p[3], &p[4], &p[5]) == 7);
        max_sep = std::max(max_sep, p[5] - p[0]);
    }
    CHECK(max_sep > 0.9);
}

TEST_CASE("cycle table layout") {
    std::ostringstream out;
    write_cycle_table_csv(out, example1(), 3, 2, 3);
    std::istringstream lines(out.str());
    std::string header;
    std::getline(lines, header);
    CHECK(header == "scheme,sum_lo,sum_hi,limv_lo,limv_hi");
    std::vector<std::string> rows;
    std::string row;
    while (std::getline(lines, row)) rows.push_back(row);
    REQUIRE(rows.size() == 4);
    CHECK(rows[0].substr(0, 4) == "k=1,");
    CHECK(rows[3].substr(0, 8) == "alt=2:3,");
}

TEST_CASE("regulator report layout") {
    std::ostringstream out;
    write_regulator_report(out, example1(), 3, std::nullopt, std::nullopt);
    std::string text = out.str();
    CHECK(text.find("delta = 3") != std::string::npos);
    CHECK(text.find("mode = crude") != std::string::npos);
    CHECK(text.find("sufficient = false") != std::string::npos);
    CHECK(text.find("necessary = true") != std::string::npos);
    CHECK(text.find("offset,q_lo,q_hi,u_lo,u_hi") != std::string::npos);

    std::ostringstream noisy;
    write_regulator_report(noisy, example1(), 3, 0.9, 0.002);
    CHECK(noisy.str().find("mode = noisy(p_hat=0.9, eps=0.002)") != std::string::npos);
    CHECK(noisy.str().find("bound_gap = ") != std::string::npos);
}

}  // TEST_SUITE
