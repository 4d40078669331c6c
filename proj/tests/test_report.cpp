#include "doctest.h"

#include "stabglue/report.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <numbers>
#include <sstream>

using namespace stabglue;
using nlohmann::json;

namespace {

run_config cfg(const std::string& command)
{
    run_config c;
    c.command = command;
    return c;
}

std::vector<std::string> lines(const std::string& text)
{
    std::vector<std::string> out;
    std::istringstream in(text);
    for (std::string l; std::getline(in, l);) out.push_back(l);
    return out;
}

/* every leaf must be a string */
void require_string_leaves(const json& j)
{
    if (j.is_object() || j.is_array()) {
        for (const auto& x : j) require_string_leaves(x);
        return;
    }
    CHECK(j.is_string());
}

}  // namespace

TEST_CASE("config round trip")
{
    run_config c = cfg("tilt");
    c.beta = "1/3-1/5r3";
    c.omega = "2";
    c.eps = rational(1, 32);
    c.eps1 = rational(1, 5);
    c.eps2 = rational(-3, 4);
    c.grid_n = 5;
    c.grid_m = 7;
    c.seed = 99;
    c.samples = 12;
    c.corpus_cap = 3;
    json j = config_to_json(c);
    CHECK(j["eps"] == "1/32");
    CHECK_FALSE(j.contains("workers"));
    run_config back = config_from_json(j);
    CHECK(back == c);
    /* through text */
    CHECK(config_from_json(json::parse(j.dump())) == c);
    /* missing keys keep the base */
    run_config base = cfg("scan");
    CHECK(config_from_json(json::object(), base) == base);
    CHECK_THROWS_AS(config_from_json(json{{"eps", 0.25}}), std::invalid_argument);
    CHECK_THROWS_AS(config_from_json(json{{"steps", "many"}}), std::invalid_argument);
}

TEST_CASE("config validation")
{
    CHECK_NOTHROW(validate_config(cfg("glue")));
    CHECK_THROWS_AS(validate_config(cfg("frobnicate")), std::invalid_argument);
    run_config c = cfg("path");
    c.eps = rational(1, 8);
    CHECK_THROWS_AS(validate_config(c), std::invalid_argument);
    c = cfg("scan");
    c.grid_n = 1;
    CHECK_THROWS_AS(validate_config(c), std::invalid_argument);
    c = cfg("tilt");
    c.sod = "sod2";
    CHECK_THROWS_AS(validate_config(c), std::invalid_argument);
    c = cfg("hn");
    c.z1 = "not a number";
    CHECK_THROWS_AS(validate_config(c), std::invalid_argument);
}

TEST_CASE("usage errors exit with code 2")
{
    run_config c = cfg("tilt");
    c.beta = "2";
    c.omega = "-1";
    auto r = run_command(c);
    CHECK(r.exit_code == k_exit_usage);
    CHECK(r.report["pass"] == false);
    CHECK(r.report["error"].is_string());
    CHECK_FALSE(r.message.empty());
    c = cfg("scan");
    c.eps1 = rational(1, 2);
    CHECK(run_command(c).exit_code == k_exit_usage);
    CHECK(run_command(cfg("nothing")).exit_code == k_exit_usage);
}

TEST_CASE("worker count from the environment")
{
    ::unsetenv("STABGLUE_WORKERS");
    CHECK(workers_from_env() == 1);
    ::setenv("STABGLUE_WORKERS", "3", 1);
    CHECK(workers_from_env() == 3);
    ::setenv("STABGLUE_WORKERS", "zero", 1);
    CHECK_THROWS_AS(workers_from_env(), std::invalid_argument);
    ::setenv("STABGLUE_WORKERS", "0", 1);
    CHECK_THROWS_AS(workers_from_env(), std::invalid_argument);
    ::unsetenv("STABGLUE_WORKERS");
}

TEST_CASE("report schema and determinism")
{
    run_config c = cfg("scan");
    c.grid_n = 6;
    c.grid_m = 5;
    auto a = run_command(c);
    REQUIRE(a.exit_code == k_exit_pass);
    for (const auto* key : {"schema_version", "command", "config", "corpus", "results", "pass", "timings"})
        CHECK(a.report.contains(key));
    CHECK(a.report["schema_version"] == k_schema_version);
    CHECK(a.report["timings"].contains("total_ms"));
    CHECK_FALSE(strip_timings(a.report).contains("timings"));
    auto b = run_command(c);
    CHECK(strip_timings(a.report) == strip_timings(b.report));
    CHECK(a.csv == b.csv);
    /* the worker count only changes the timings */
    run_config p = c;
    p.workers = 3;
    auto w = run_command(p);
    CHECK(strip_timings(a.report) == strip_timings(w.report));
    CHECK(a.csv == w.csv);
    /* table shape */
    auto rows = lines(a.csv);
    REQUIRE(rows.size() == 31);
    CHECK(rows[0] == "beta,omega,in_region,sup_ratio,heart_ok,ball_ok");
    for (size_t k = 1; k < rows.size(); ++k) CHECK(std::count(rows[k].begin(), rows[k].end(), ',') == 5);
    /* exact values are strings */
    for (const auto& pt : a.report["results"]["points"]) {
        require_string_leaves(pt["point"]);
        if (pt.contains("sup_ratio_square")) CHECK(pt["sup_ratio_square"].is_string());
    }
    const auto& inv = a.report["results"]["invariants"];
    CHECK(inv["continuity"]["gating"] == false);
    CHECK(inv["hearts"]["pass"] == true);
    CHECK(inv["sup_ratio"]["pass"] == true);
}

TEST_CASE("corpus fingerprint")
{
    auto c1 = a2_corpus(4, -1, 1), c2 = a2_corpus(4, -1, 1), c3 = a2_corpus(3, -1, 1);
    CHECK(corpus_fingerprint(c1) == corpus_fingerprint(c2));
    CHECK(corpus_fingerprint(c1) != corpus_fingerprint(c3));
    CHECK(corpus_fingerprint(c1).size() == 16);
    auto r = run_command(cfg("glue"));
    CHECK(r.report["corpus"]["fingerprint"] == corpus_fingerprint(c1));
    CHECK(r.report["corpus"]["size"] == c1.size());
}

TEST_CASE("hn command")
{
    auto r = run_command(cfg("hn"));
    REQUIRE(r.exit_code == k_exit_pass);
    const auto& res = r.report["results"];
    CHECK(res["semistable"] == true);
    CHECK(res["mass"] == "sqrt(5)");
    REQUIRE(res["factors"].size() == 1);
    CHECK(res["factors"][0]["z"] == "-1+2i");
    double phase = std::stod(res["factors"][0]["phase"].get<std::string>());
    CHECK(std::abs(phase - std::atan2(2.0, -1.0) / std::numbers::pi) < 1e-12);
    /* the sum with a shifted simple splits into two factors of decreasing phase */
    run_config c = cfg("hn");
    c.z1 = "1+i";
    c.z2 = "-1+i";
    c.object = "I[1,1]@0 + I[2,2]@0";
    auto s = run_command(c);
    REQUIRE(s.exit_code == k_exit_pass);
    const auto& f = s.report["results"]["factors"];
    REQUIRE(f.size() == 2);
    CHECK(std::stod(f[0]["phase"].get<std::string>()) > std::stod(f[1]["phase"].get<std::string>()));
    CHECK(s.report["results"]["semistable"] == false);
}

TEST_CASE("glue and tilt commands pass")
{
    auto g = run_command(cfg("glue"));
    CHECK(g.exit_code == k_exit_pass);
    for (const auto* side : {"sod0", "sod1"}) {
        const auto& r = g.report["results"][side];
        CHECK(r["pass"] == true);
        CHECK(r["violations"] == 0);
        CHECK(r["max_ratio_square"] == "1");
        for (const auto* m : k_condition_names) CHECK(r["conditions"][m]["ok"] == true);
    }
    CHECK(g.report["results"]["sod0"]["heart"] == json({"I[1,1]@-1", "I[1,2]@0", "I[2,2]@0"}));
    CHECK(g.report["results"]["sod1"]["heart"] == json({"I[1,1]@0", "I[1,2]@0", "I[2,2]@1"}));
    run_config t = cfg("tilt");
    t.beta = "-1/2";
    t.omega = "1/2r3";
    auto e = run_command(t);
    CHECK(e.exit_code == k_exit_pass);
    CHECK(e.report["results"]["point"]["omega"] == "0+1/2√3");
}

TEST_CASE("path command")
{
    run_config c = cfg("path");
    c.steps = 16;
    auto r = run_command(c);
    CHECK(r.exit_code == k_exit_pass);
    CHECK(r.report["pass"] == true);
    CHECK(lines(r.csv).size() == 17);
    /* a coarse chain leaves the specialization ball at its first step */
    c.steps = 8;
    auto coarse = run_command(c);
    CHECK(coarse.exit_code == k_exit_fail);
    CHECK(coarse.report["error"].get<std::string>().find("specialization") != std::string::npos);
}
