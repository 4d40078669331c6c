#pragma once

#include "stabglue/family_path.hpp"

#include <json.hpp>

#include <cstdint>
#include <string>

namespace stabglue {

constexpr int k_schema_version = 1;

/* exit codes */
constexpr int k_exit_pass = 0;
constexpr int k_exit_fail = 1;
constexpr int k_exit_usage = 2;

struct run_config {
    std::string command;
    /* charge of the point on D^b(k) */
    std::string charge = "i";
    /* A_2 charges on the simples, for hn */
    std::string z1 = "-1+i";
    std::string z2 = "i";
    std::string object = "I[1,2]@0";
    std::string sod = "both"; /* sod0, sod1 or both */
    std::string beta = "1/2";
    std::string omega = "1/2";
    int corpus_cap = 4;
    rational eps1{1, 3};
    rational eps2{-1, 2};
    int grid_n = 32;
    int grid_m = 32;
    int steps = 64;
    rational eps{1, 16};
    std::uint64_t seed = 7;
    std::size_t samples = 100000;
    int workers = 1;
    std::string out;
    std::string csv;

    friend bool operator==(const run_config&, const run_config&) = default;
};

nlohmann::json config_to_json(const run_config& c);
/* missing keys keep their defaults; throws std::invalid_argument on bad values */
run_config config_from_json(const nlohmann::json& j, run_config base = {});
/* throws std::invalid_argument naming the offending field */
void validate_config(const run_config& c);

/* STABGLUE_WORKERS, default 1; throws std::invalid_argument on a bad value */
int workers_from_env();

/* FNV-1a over the enumerated objects */
std::string corpus_fingerprint(const std::vector<normal_form>& corpus);

nlohmann::json qs3_json(const qs3& x);
nlohmann::json cplx_json(const cplx& z);
nlohmann::json point_json(const plane_point& p);

struct run_result {
    int exit_code = k_exit_pass;
    nlohmann::json report;
    std::string csv; /* empty unless the command produces a table */
    std::string message;
};

/* runs a subcommand without touching the file system */
run_result run_command(const run_config& c);

/* report with the timings subtree removed */
nlohmann::json strip_timings(const nlohmann::json& report);

}  // namespace stabglue
