#include "stabglue/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <map>

using namespace stabglue;

namespace {

struct flag_values {
    std::string config, charge, z1, z2, object, sod, beta, omega, eps1, eps2, grid, eps, out, csv;
    int corpus_cap = 0, steps = 0;
    std::uint64_t seed = 0;
    std::size_t samples = 0;
};

void add_common(CLI::App* sub, flag_values& f)
{
    sub->add_option("--config", f.config, "JSON config file; flags override it");
    sub->add_option("--out", f.out, "JSON report path (stdout when omitted)");
    sub->add_option("--csv", f.csv, "CSV table path");
    sub->add_option("--corpus-cap", f.corpus_cap, "total dimension cap of the object corpus");
}

void add_point_charge(CLI::App* sub, flag_values& f) { sub->add_option("--charge", f.charge, "Z(k) on D^b(k), e.g. i or -1+i"); }

bool given(const CLI::App* sub, const std::string& name)
{
    const CLI::Option* opt = sub->get_option_no_throw(name);
    return opt && opt->count() > 0;
}

run_config build_config(const CLI::App* sub, const flag_values& f)
{
    run_config c;
    if (!f.config.empty()) {
        std::ifstream in(f.config);
        if (!in) throw std::invalid_argument("cannot read config file " + f.config);
        nlohmann::json j;
        try {
            in >> j;
        } catch (const nlohmann::json::exception& ex) {
            throw std::invalid_argument(std::string("config file: ") + ex.what());
        }
        c = config_from_json(j, c);
    }
    c.command = sub->get_name();
    auto set_str = [&](const char* flag, std::string& dst, const std::string& v) {
        if (given(sub, flag)) dst = v;
    };
    set_str("--charge", c.charge, f.charge);
    set_str("--z1", c.z1, f.z1);
    set_str("--z2", c.z2, f.z2);
    set_str("--object", c.object, f.object);
    set_str("--sod", c.sod, f.sod);
    set_str("--beta", c.beta, f.beta);
    set_str("--omega", c.omega, f.omega);
    set_str("--out", c.out, f.out);
    set_str("--csv", c.csv, f.csv);
    if (given(sub, "--eps1")) c.eps1 = parse_rational(f.eps1);
    if (given(sub, "--eps2")) c.eps2 = parse_rational(f.eps2);
    if (given(sub, "--eps")) c.eps = parse_rational(f.eps);
    if (given(sub, "--corpus-cap")) c.corpus_cap = f.corpus_cap;
    if (given(sub, "--steps")) c.steps = f.steps;
    if (given(sub, "--seed")) c.seed = f.seed;
    if (given(sub, "--samples")) c.samples = f.samples;
    if (given(sub, "--grid")) {
        auto x = f.grid.find('x');
        if (x == std::string::npos) throw std::invalid_argument("--grid expects NxM, got " + f.grid);
        try {
            c.grid_n = std::stoi(f.grid.substr(0, x));
            c.grid_m = std::stoi(f.grid.substr(x + 1));
        } catch (const std::logic_error&) {
            throw std::invalid_argument("--grid expects NxM, got " + f.grid);
        }
    }
    c.workers = workers_from_env();
    return c;
}

bool write_file(const std::string& path, const std::string& text)
{
    std::ofstream out(path);
    if (!out) return false;
    out << text;
    return static_cast<bool>(out);
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"stability conditions on a morphism category: gluing, tilting and paths"};
    app.require_subcommand(1);
    flag_values f;

    auto* kernel = app.add_subcommand("verify-kernel", "sample the angle-sum inequality and the ratio bound");
    add_common(kernel, f);
    kernel->add_option("--samples", f.samples, "samples per angle");
    kernel->add_option("--seed", f.seed, "random seed");

    auto* hn = app.add_subcommand("hn", "HN filtration of one object on the A_2 module heart");
    add_common(hn, f);
    hn->add_option("--z1", f.z1, "charge of the first simple");
    hn->add_option("--z2", f.z2, "charge of the second simple");
    hn->add_option("--object", f.object, "object, e.g. \"I[1,2]@0 + I[1,1]@-1\"");

    auto* glue = app.add_subcommand("glue", "glue a point stability condition along both decompositions");
    add_common(glue, f);
    add_point_charge(glue, f);
    glue->add_option("--sod", f.sod, "sod0, sod1 or both");

    auto* tilt = app.add_subcommand("tilt", "tilted stability condition at (beta, omega)");
    add_common(tilt, f);
    add_point_charge(tilt, f);
    tilt->add_option("--sod", f.sod, "sod0, sod1 or both");
    tilt->add_option("--beta", f.beta, "beta, rational or a+br3");
    tilt->add_option("--omega", f.omega, "omega, rational or a+br3");
    tilt->add_option("--eps1", f.eps1, "region parameter eps1");
    tilt->add_option("--eps2", f.eps2, "region parameter eps2");

    auto* scan = app.add_subcommand("scan", "grid scan of the tilted family");
    add_common(scan, f);
    add_point_charge(scan, f);
    scan->add_option("--sod", f.sod, "sod0 or sod1");
    scan->add_option("--eps1", f.eps1, "region parameter eps1");
    scan->add_option("--eps2", f.eps2, "region parameter eps2");
    scan->add_option("--grid", f.grid, "NxM");
    scan->add_option("--eps", f.eps, "ball radius for neighbour continuity");

    auto* path = app.add_subcommand("path", "continuity chain between the two gluings");
    add_common(path, f);
    add_point_charge(path, f);
    path->add_option("--steps", f.steps, "number of path steps");
    path->add_option("--eps", f.eps, "ball radius");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? 0 : k_exit_usage;
    }

    run_config c;
    try {
        c = build_config(app.get_subcommands().front(), f);
    } catch (const std::exception& ex) {
        std::cerr << "error: " << ex.what() << "\n";
        return k_exit_usage;
    }
    run_result r = run_command(c);
    std::string text = r.report.dump(2) + "\n";
    if (c.out.empty()) {
        std::cout << text;
    } else if (!write_file(c.out, text)) {
        std::cerr << "error: cannot write " << c.out << "\n";
        return k_exit_usage;
    }
    if (!c.csv.empty() && !r.csv.empty() && !write_file(c.csv, r.csv)) {
        std::cerr << "error: cannot write " << c.csv << "\n";
        return k_exit_usage;
    }
    if (!r.message.empty()) std::cerr << (r.exit_code == k_exit_usage ? "error: " : "fail: ") << r.message << "\n";
    return r.exit_code;
}
