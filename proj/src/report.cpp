#include "stabglue/report.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <cstdlib>
#include <functional>
#include <iomanip>
#include <set>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace stabglue {

using nlohmann::json;

namespace {

const std::set<std::string> k_commands{"verify-kernel", "hn", "glue", "tilt", "scan", "path"};

rational rational_field(const json& j, const char* key, const rational& fallback)
{
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string()) throw std::invalid_argument(std::string("config: ") + key + " must be a string like \"1/16\"");
    return parse_rational(j[key].get<std::string>());
}

template <class T>
T number_field(const json& j, const char* key, T fallback)
{
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number_integer()) throw std::invalid_argument(std::string("config: ") + key + " must be an integer");
    return j[key].get<T>();
}

std::string string_field(const json& j, const char* key, const std::string& fallback)
{
    if (!j.contains(key)) return fallback;
    if (!j[key].is_string()) throw std::invalid_argument(std::string("config: ") + key + " must be a string");
    return j[key].get<std::string>();
}

void require_range(const char* name, long v, long lo, long hi)
{
    if (v < lo || v > hi)
        throw std::invalid_argument(std::string(name) + " must lie in [" + std::to_string(lo) + ", " + std::to_string(hi) +
                                    "], got " + std::to_string(v));
}

/* indices [0, n) on a pool; results land in caller-owned slots */
void parallel_for(size_t n, int workers, const std::function<void(size_t)>& fn)
{
    if (workers <= 1 || n <= 1) {
        for (size_t i = 0; i < n; ++i) fn(i);
        return;
    }
    std::atomic<size_t> next{0};
    std::vector<std::exception_ptr> errors(n);
    auto body = [&] {
        for (size_t i = next++; i < n; i = next++) {
            try {
                fn(i);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    std::vector<std::thread> pool;
    for (int k = 0; k < std::min<int>(workers, static_cast<int>(n)); ++k) pool.emplace_back(body);
    for (auto& t : pool) t.join();
    for (auto& e : errors)
        if (e) std::rethrow_exception(e);
}

std::string approx_str(double x)
{
    std::ostringstream os;
    os << std::setprecision(12) << x;
    return os.str();
}

std::vector<sod_side> sides_of(const run_config& c)
{
    if (c.sod == "sod0") return {sod_side::sod0};
    if (c.sod == "sod1") return {sod_side::sod1};
    return {sod_side::sod0, sod_side::sod1};
}

std::string side_name(sod_side s) { return s == sod_side::sod0 ? "sod0" : "sod1"; }

gluing_context context_for(sod_side side, const stability_condition& s)
{
    return side == sod_side::sod0 ? d0_context(s) : d1_context(s);
}

plane_point config_point(const run_config& c) { return {qs3::parse(c.beta), qs3::parse(c.omega)}; }

json conditions_json(const conditions_report& r)
{
    json j = json::object();
    for (int k = 0; k < 5; ++k) {
        json e{{"ok", r.ok[k]}};
        if (!r.ok[k]) e["witness"] = r.witness[k];
        j[k_condition_names[k]] = e;
    }
    j["checked"] = r.checked;
    return j;
}

json heart_json(const heart& h)
{
    json j = json::array();
    for (const auto& x : h.indecomposables()) j.push_back(nf_str({x}));
    return j;
}

/* verify-kernel */

json run_kernel(const run_config& c, bool& pass)
{
    const std::vector<rational> thetas{rational(1, 6), rational(1, 2), rational(2, 3), rational(5, 6)};
    std::vector<kernel_sampling_report> reps(thetas.size());
    parallel_for(thetas.size(), c.workers, [&](size_t i) { reps[i] = run_kernel_sampling(thetas[i], c.samples, c.seed); });
    json out = json::array();
    for (size_t i = 0; i < thetas.size(); ++i) {
        const auto& r = reps[i];
        const rational& t = thetas[i];
        qs3 bound_sq = *ratio_sup_bound(t).exact_square;
        qs3 s = *exact_sin_pi(t);
        qs3 inv_sin_sq = (s * s).inverse();
        /* sup of |1 + x e^{i phi}|^{-1} over x >= 0, 0 <= phi <= t pi */
        qs3 true_sup_sq = t <= rational(1, 2) ? qs3(1) : inv_sin_sq;
        qs3 closed_form_sq = std::max(qs3(1), inv_sin_sq);
        bool ok = r.violations == 0 && r.ratio_bound_ok && r.equalities > 0 && r.max_ratio_square <= true_sup_sq &&
                  r.max_ratio_square <= bound_sq;
        pass = pass && ok;
        out.push_back({{"theta_over_pi", rational_str(t)},
                       {"samples", r.samples},
                       {"rejected", r.rejected},
                       {"violations", r.violations},
                       {"equalities", r.equalities},
                       {"max_ratio_square", qs3_json(r.max_ratio_square)},
                       {"argmax", {cplx_json(r.argmax_z1), cplx_json(r.argmax_z2)}},
                       {"ratio_bound_square", qs3_json(bound_sq)},
                       {"true_sup_square", qs3_json(true_sup_sq)},
                       {"max_one_inv_sin_square", qs3_json(closed_form_sq)},
                       {"pass", ok}});
    }
    return out;
}

/* hn */

json run_hn(const run_config& c, bool& pass)
{
    central_charge z({cplx::parse(c.z1), cplx::parse(c.z2)});
    stability_condition s(heart::standard(2), z);
    normal_form e = parse_nf(2, c.object);
    json factors = json::array();
    for (const auto& f : hn_filtration(s, e))
        factors.push_back({{"object", nf_str(f.obj)}, {"phase", f.ph.str()}, {"z", cplx_json(f.z)}});
    pass = true;
    json out{{"object", nf_str(e)}, {"charge", z.str()}, {"factors", factors}, {"semistable", is_semistable(s, e)}};
    out["mass"] = mass(s, e).str();
    return out;
}

/* glue */

json glue_side(const gluing_context& ctx, const std::vector<normal_form>& corpus, bool& pass)
{
    json j;
    auto cond = check_conditions(ctx);
    j["conditions"] = conditions_json(cond);
    if (!cond.all()) {
        pass = false;
        return j;
    }
    glued_model g = glue_stability(ctx);
    const auto& sg = g.sigma();
    j["heart"] = heart_json(sg.hrt());
    j["charge"] = sg.charge().str();
    size_t semistable = 0, positivity = 0, hn = 0, violations = 0;
    std::string witness;
    auto fail = [&](const std::string& w) {
        if (violations++ == 0) witness = w;
    };
    for (const auto& e : corpus) {
        if (sg.hrt().contains(e)) {
            ++positivity;
            cplx z = sg.charge().of(e);
            if (!(z.im.sign() > 0 || (z.im.is_zero() && z.re.sign() < 0))) fail("positivity at " + nf_str(e));
        }
        ++hn;
        k0_class sum(2, 0);
        for (const auto& f : hn_filtration(sg, e)) sum = k0_add(sum, k0_of_nf(2, f.obj));
        if (sum != k0_of_nf(2, e)) fail("HN classes at " + nf_str(e));
        if (!is_semistable(sg, e)) continue;
        ++semistable;
        if (truncation_semistability_check(g, e) != check_status::holds) fail("truncation semistability at " + nf_str(e));
        if (glued_phase_equality_check(g, e) == check_status::fails) fail("phase equality at " + nf_str(e));
        if (tau2_ratio_square(g, e) > qs3(1)) fail("ratio above 1 at " + nf_str(e));
    }
    qs3 ratio(0);
    for (const auto& x : semistable_indecomposables(sg)) ratio = std::max(ratio, tau2_ratio_square(g, {x}));
    j["positivity_checked"] = positivity;
    j["hn_checked"] = hn;
    j["semistable_checked"] = semistable;
    j["max_ratio_square"] = qs3_json(ratio);
    j["violations"] = violations;
    if (violations) j["witness"] = witness;
    j["pass"] = violations == 0;
    pass = pass && violations == 0;
    return j;
}

json run_glue(const run_config& c, const std::vector<normal_form>& corpus, bool& pass)
{
    auto s = point_stability(cplx::parse(c.charge));
    json out;
    pass = true;
    for (sod_side side : sides_of(c)) out[side_name(side)] = glue_side(context_for(side, s), corpus, pass);
    return out;
}

/* tilt */

json tilt_side(const run_config& c, const glued_model& g, const plane_point& p, const std::vector<normal_form>& corpus, bool& pass)
{
    json j;
    tilt_model t;
    try {
        t = build_sigma_tilde(g, p);
    } catch (const std::domain_error& ex) {
        j["built"] = false;
        j["witness"] = ex.what();
        j["pass"] = false;
        pass = false;
        return j;
    }
    j["built"] = true;
    j["heart"] = heart_json(t.hrt());
    j["charge"] = t.sigma().charge().str();
    json classes = json::object();
    for (const auto& [iv, cls] : t.classes()) classes[nf_str({{iv, 0}})] = tilt_class_str(cls);
    j["classes"] = classes;
    auto v = validate_sigma_tilde(t, corpus);
    j["validation"] = {{"ok", v.ok},
                       {"heart_objects", v.heart_objects},
                       {"positivity_checked", v.positivity_checked},
                       {"mono_checked", v.mono_checked},
                       {"bound_checked", v.bound_checked}};
    if (!v.ok) j["validation"]["witness"] = v.failure;
    bool ok = v.ok;
    region_params region(c.eps1, c.eps2);
    auto rr = region_membership(p, region);
    j["in_region"] = rr.in_hplus && rr.in_hminus;
    try {
        auto r = sup_ratio_estimate(t, corpus, region);
        j["sup_ratio"] = {{"exact_square", qs3_json(r.exact_square)},
                          {"corpus_square", qs3_json(r.corpus_square)},
                          {"torsion_side_square", qs3_json(r.torsion_side_square)},
                          {"free_side_square", qs3_json(r.free_side_square)},
                          {"low_phase_square", qs3_json(r.low_phase_square)},
                          {"high_phase_square", qs3_json(r.high_phase_square)}};
    } catch (const std::domain_error& ex) {
        j["sup_ratio"] = {{"refused", ex.what()}};
    }
    if (p.omega.sign() > 0) {
        auto tw = torsion_window_check(t, corpus);
        j["torsion_window"] = {{"ok", tw.ok()}, {"low_phase_checked", tw.low_phase_checked}, {"free_shift_checked", tw.free_shift_checked}};
        if (!tw.ok()) j["torsion_window"]["witness"] = tw.witness;
        ok = ok && tw.ok();
        if (rr.in_hplus && rr.in_hminus) {
            auto sr = sector_sweep(t, region, corpus);
            j["sectors"] = {{"ok", sr.ok()},
                            {"theta_applicable", sr.theta.applicable},
                            {"steep_checked", sr.steep_checked},
                            {"window_checked", sr.window_checked},
                            {"sector_checked", sr.sector_checked}};
            if (!sr.ok()) j["sectors"]["witness"] = sr.witness;
            ok = ok && sr.ok();
        }
    }
    auto sp = serre_support_check(g, p, glued_heart_corpus(g, c.corpus_cap));
    j["support"] = {{"ok", sp.ok()},
                    {"semistable_checked", sp.semistable_checked},
                    {"kernel_dim", sp.kernel_dim},
                    {"kernel_negative_definite", sp.kernel_negative_definite}};
    if (!sp.ok()) j["support"]["witness"] = sp.witness;
    ok = ok && sp.ok();
    j["pass"] = ok;
    pass = pass && ok;
    return j;
}

json run_tilt(const run_config& c, const std::vector<normal_form>& corpus, bool& pass)
{
    auto s = point_stability(cplx::parse(c.charge));
    plane_point p = config_point(c);
    json out{{"point", point_json(p)}};
    pass = true;
    for (sod_side side : sides_of(c)) out[side_name(side)] = tilt_side(c, glue_stability(context_for(side, s)), p, corpus, pass);
    return out;
}

/* scan */

struct scan_cell {
    plane_point p;
    bool in_region = false;
    bool heart_ok = false;
    bool ball_ok = true;
    std::optional<qs3> ratio;
    std::string witness;
    std::optional<tilt_model> model;
};

json run_scan(const run_config& c, std::string& csv, bool& pass)
{
    auto s = point_stability(cplx::parse(c.charge));
    sod_side side = c.sod == "sod1" ? sod_side::sod1 : sod_side::sod0;
    glued_model g = glue_stability(context_for(side, s));
    region_params region(c.eps1, c.eps2);
    const int n = c.grid_n, m = c.grid_m;
    std::vector<scan_cell> cells(static_cast<size_t>(n) * m);
    parallel_for(cells.size(), c.workers, [&](size_t k) {
        int i = static_cast<int>(k) / m, j = static_cast<int>(k) % m;
        scan_cell& cell = cells[k];
        cell.p = {qs3(rational(-3, 2) + rational(3 * i, n - 1)), qs3(rational(3 * (j + 1), 2 * m))};
        auto rr = region_membership(cell.p, region);
        cell.in_region = rr.in_hplus && rr.in_hminus;
        if (!cell.in_region) return;
        try {
            cell.model = build_sigma_tilde(g, cell.p);
            cell.heart_ok = true;
            cell.ratio = sup_ratio_estimate(*cell.model, {}, region).exact_square;
        } catch (const std::domain_error& ex) {
            cell.witness = ex.what();
        }
    });
    parallel_for(cells.size(), c.workers, [&](size_t k) {
        int i = static_cast<int>(k) / m, j = static_cast<int>(k) % m;
        scan_cell& cell = cells[k];
        if (!cell.model) return;
        for (size_t nb : {static_cast<size_t>(i + 1) * m + j, k + 1}) {
            if ((nb == k + 1 && j + 1 >= m) || nb >= cells.size() || !cells[nb].model) continue;
            auto r = continuity_check(*cell.model, *cells[nb].model, c.eps);
            if (!r.ok()) {
                cell.ball_ok = false;
                if (cell.witness.empty()) cell.witness = "to " + cells[nb].p.str() + ": " + r.witness;
            }
        }
    });
    json points = json::array();
    size_t in_region = 0, hearts = 0, balls = 0, ratios = 0;
    std::ostringstream os;
    os << "beta,omega,in_region,sup_ratio,heart_ok,ball_ok\n";
    for (const auto& cell : cells) {
        json e{{"point", point_json(cell.p)}, {"in_region", cell.in_region}};
        os << approx_str(cell.p.beta.to_double()) << "," << approx_str(cell.p.omega.to_double()) << "," << cell.in_region << ",";
        if (cell.in_region) {
            ++in_region;
            hearts += cell.heart_ok;
            balls += cell.heart_ok && cell.ball_ok;
            ratios += cell.ratio.has_value();
            e["heart_ok"] = cell.heart_ok;
            e["ball_ok"] = cell.ball_ok;
            if (cell.ratio) e["sup_ratio_square"] = qs3_json(*cell.ratio);
            if (!cell.witness.empty()) e["witness"] = cell.witness;
            os << (cell.ratio ? approx_str(std::sqrt(cell.ratio->to_double())) : "") << "," << cell.heart_ok << "," << cell.ball_ok;
        } else {
            os << ",,";
        }
        os << "\n";
        points.push_back(e);
    }
    csv = os.str();
    bool hearts_ok = hearts == in_region, balls_ok = balls == in_region, ratios_ok = ratios == in_region;
    /* neighbour balls depend on the grid spacing, so they are reported but do not gate */
    pass = hearts_ok && ratios_ok;
    return {{"sod", side_name(side)},
            {"grid", {n, m}},
            {"beta_range", {"-3/2", "3/2"}},
            {"omega_range", {rational_str(rational(3, 2 * m)), "3/2"}},
            {"points", points},
            {"invariants",
             {{"hearts", {{"pass", hearts_ok}, {"count", hearts}, {"of", in_region}}},
              {"sup_ratio", {{"pass", ratios_ok}, {"count", ratios}, {"of", in_region}}},
              {"continuity", {{"pass", balls_ok}, {"count", balls}, {"of", in_region}, {"gating", false}}}}}};
}

/* path */

json step_json(const path_step& st, bool last)
{
    json j{{"t", rational_str(st.pp.t)},
           {"point", point_json(st.pp.point)},
           {"exact", st.pp.exact},
           {"in_region", st.in_region},
           {"heart_ok", st.heart_ok},
           {"classification_ok", st.classification_ok}};
    if (st.heart_ok) j["sup_ratio_square"] = qs3_json(st.ratio.exact_square);
    if (!last) {
        j["ball_ok"] = st.to_next.ok();
        j["distance"] = st.to_next.ball.metric.value.str();
        if (!st.to_next.ok()) j["witness"] = st.to_next.witness;
    }
    return j;
}

json bridge_json(const specialization_report& r)
{
    json j{{"pass", r.ok()},
           {"hypothesis", r.hypothesis},
           {"ball_inside", r.ball.inside},
           {"heart_window_ok", r.heart_window_ok},
           {"free_sector_ok", r.free_sector_ok},
           {"support_flag", r.support_flag},
           {"distance", r.ball.metric.value.str()},
           {"norm", r.ball.norm.value.str()}};
    if (!r.witness.empty()) j["witness"] = r.witness;
    return j;
}

json run_path_command(const run_config& c, std::string& csv, bool& pass)
{
    auto r = run_path(point_stability(cplx::parse(c.charge)), c.steps, c.eps, c.corpus_cap);
    json out;
    std::ostringstream os;
    os << "beta,omega,in_region,sup_ratio,heart_ok,ball_ok\n";
    for (const auto& [name, chain] : {std::pair{"sod0", &r.d0_steps}, std::pair{"sod1", &r.d1_steps}}) {
        json a = json::array();
        for (size_t k = 0; k < chain->size(); ++k) {
            const auto& st = (*chain)[k];
            bool last = k + 1 == chain->size();
            a.push_back(step_json(st, last));
            if (std::string(name) != "sod0") continue;
            os << approx_str(st.pp.point.beta.to_double()) << "," << approx_str(st.pp.point.omega.to_double()) << ","
               << st.in_region << "," << (st.heart_ok ? approx_str(st.ratio.approx()) : "") << "," << st.heart_ok << ","
               << (last ? true : st.to_next.ok()) << "\n";
        }
        out["chains"][name] = a;
    }
    csv = os.str();
    out["specialization"] = {{"sod0", bridge_json(r.d0_bridge)}, {"sod1", bridge_json(r.d1_bridge)}};
    json rows0 = json::array(), rows1 = json::array();
    for (const auto& z : r.endpoint.d0_row) rows0.push_back(cplx_json(z));
    for (const auto& z : r.endpoint.d1_row) rows1.push_back(cplx_json(z));
    out["endpoint_rotation_check"] = r.endpoint.ok();
    out["endpoint"] = {{"identity", r.endpoint.identity},
                       {"same_slicing", r.endpoint.same_slicing},
                       {"rotation_over_pi", "2/3"},
                       {"sod0_row", rows0},
                       {"sod1_row", rows1}};
    if (!r.endpoint.witness.empty()) out["endpoint"]["witness"] = r.endpoint.witness;
    out["heart_window"] = {{"pass", r.endpoint_window.ok()},
                           {"torsion_checked", r.endpoint_window.torsion_checked},
                           {"free_checked", r.endpoint_window.free_checked},
                           {"heart_checked", r.endpoint_window.heart_checked},
                           {"hom_checked", r.endpoint_window.hom_checked}};
    if (!r.endpoint_window.ok()) out["heart_window"]["witness"] = r.endpoint_window.witness;
    out["invariants"] = {{"region", r.region_ok},
                         {"hearts", r.hearts_ok},
                         {"continuity", r.continuity_ok},
                         {"support", r.support_ok},
                         {"specialization", r.d0_bridge.ok() && r.d1_bridge.ok()},
                         {"endpoint_rotation", r.endpoint.ok()},
                         {"heart_window", r.endpoint_window.ok()}};
    pass = r.ok();
    return out;
}

}  // namespace

nlohmann::json qs3_json(const qs3& x) { return x.str(); }
nlohmann::json cplx_json(const cplx& z) { return z.str(); }
nlohmann::json point_json(const plane_point& p) { return {{"beta", qs3_json(p.beta)}, {"omega", qs3_json(p.omega)}}; }

nlohmann::json config_to_json(const run_config& c)
{
    return {{"command", c.command},
            {"charge", c.charge},
            {"z1", c.z1},
            {"z2", c.z2},
            {"object", c.object},
            {"sod", c.sod},
            {"beta", c.beta},
            {"omega", c.omega},
            {"corpus_cap", c.corpus_cap},
            {"eps1", rational_str(c.eps1)},
            {"eps2", rational_str(c.eps2)},
            {"grid", {c.grid_n, c.grid_m}},
            {"steps", c.steps},
            {"eps", rational_str(c.eps)},
            {"seed", c.seed},
            {"samples", c.samples},
            {"out", c.out},
            {"csv", c.csv}};
}

run_config config_from_json(const nlohmann::json& j, run_config c)
{
    if (!j.is_object()) throw std::invalid_argument("config: expected a JSON object");
    c.command = string_field(j, "command", c.command);
    c.charge = string_field(j, "charge", c.charge);
    c.z1 = string_field(j, "z1", c.z1);
    c.z2 = string_field(j, "z2", c.z2);
    c.object = string_field(j, "object", c.object);
    c.sod = string_field(j, "sod", c.sod);
    c.beta = string_field(j, "beta", c.beta);
    c.omega = string_field(j, "omega", c.omega);
    c.corpus_cap = number_field(j, "corpus_cap", c.corpus_cap);
    c.eps1 = rational_field(j, "eps1", c.eps1);
    c.eps2 = rational_field(j, "eps2", c.eps2);
    if (j.contains("grid")) {
        const auto& g = j["grid"];
        if (!g.is_array() || g.size() != 2 || !g[0].is_number_integer() || !g[1].is_number_integer())
            throw std::invalid_argument("config: grid must be [n, m]");
        c.grid_n = g[0].get<int>();
        c.grid_m = g[1].get<int>();
    }
    c.steps = number_field(j, "steps", c.steps);
    c.eps = rational_field(j, "eps", c.eps);
    c.seed = number_field(j, "seed", c.seed);
    c.samples = number_field(j, "samples", c.samples);
    c.out = string_field(j, "out", c.out);
    c.csv = string_field(j, "csv", c.csv);
    return c;
}

void validate_config(const run_config& c)
{
    if (!k_commands.count(c.command)) throw std::invalid_argument("unknown command '" + c.command + "'");
    require_range("corpus_cap", c.corpus_cap, 1, 6);
    require_range("grid rows", c.grid_n, 2, 256);
    require_range("grid columns", c.grid_m, 1, 256);
    require_range("steps", c.steps, 2, 4096);
    require_range("workers", c.workers, 1, 256);
    if (c.samples < 1 || c.samples > 10000000) throw std::invalid_argument("samples must lie in [1, 10000000]");
    if (c.eps <= 0 || c.eps >= rational(1, 8)) throw std::invalid_argument("eps must lie in (0, 1/8), got " + rational_str(c.eps));
    if (c.sod != "sod0" && c.sod != "sod1" && c.sod != "both") throw std::invalid_argument("sod must be sod0, sod1 or both");
    cplx z = cplx::parse(c.charge);
    if (z.is_zero()) throw std::invalid_argument("charge must be nonzero");
    if (c.command == "hn") {
        cplx::parse(c.z1);
        cplx::parse(c.z2);
        parse_nf(2, c.object);
    }
    if (c.command == "tilt") {
        plane_point p = config_point(c);
        if (p.omega.sign() < 0) throw std::invalid_argument("omega must be positive, got " + c.omega);
        if (p.omega.is_zero() && p.beta != qs3(1)) throw std::invalid_argument("omega = 0 is allowed only at beta = 1");
    }
}

int workers_from_env()
{
    const char* v = std::getenv("STABGLUE_WORKERS");
    if (!v || !*v) return 1;
    char* end = nullptr;
    long n = std::strtol(v, &end, 10);
    if (*end != '\0' || n < 1 || n > 256) throw std::invalid_argument(std::string("STABGLUE_WORKERS must be an integer in [1, 256], got ") + v);
    return static_cast<int>(n);
}

std::string corpus_fingerprint(const std::vector<normal_form>& corpus)
{
    std::uint64_t h = 1469598103934665603ULL;
    for (const auto& e : corpus) {
        for (unsigned char ch : nf_str(e) + ";") {
            h ^= ch;
            h *= 1099511628211ULL;
        }
    }
    std::ostringstream os;
    os << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

nlohmann::json strip_timings(const nlohmann::json& report)
{
    json j = report;
    j.erase("timings");
    return j;
}

run_result run_command(const run_config& c)
{
    run_result out;
    auto start = std::chrono::steady_clock::now();
    json report{{"schema_version", k_schema_version}, {"command", c.command}, {"config", config_to_json(c)}};
    try {
        validate_config(c);
    } catch (const std::exception& ex) {
        out.exit_code = k_exit_usage;
        out.message = ex.what();
        report["error"] = out.message;
        report["pass"] = false;
        out.report = report;
        return out;
    }
    auto corpus = a2_corpus(c.corpus_cap, -1, 1);
    report["corpus"] = {{"cap", c.corpus_cap}, {"shifts", {-1, 1}}, {"size", corpus.size()}, {"fingerprint", corpus_fingerprint(corpus)}};
    bool pass = true;
    try {
        json results;
        if (c.command == "verify-kernel")
            results = run_kernel(c, pass);
        else if (c.command == "hn")
            results = run_hn(c, pass);
        else if (c.command == "glue")
            results = run_glue(c, corpus, pass);
        else if (c.command == "tilt")
            results = run_tilt(c, corpus, pass);
        else if (c.command == "scan")
            results = run_scan(c, out.csv, pass);
        else
            results = run_path_command(c, out.csv, pass);
        report["results"] = results;
        out.exit_code = pass ? k_exit_pass : k_exit_fail;
        if (!pass) out.message = c.command + ": check failed, see report";
    } catch (const std::invalid_argument& ex) {
        out.exit_code = k_exit_usage;
        out.message = ex.what();
        report["error"] = out.message;
        pass = false;
    } catch (const std::exception& ex) {
        out.exit_code = k_exit_fail;
        out.message = ex.what();
        report["error"] = out.message;
        pass = false;
    }
    report["pass"] = pass;
    double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start).count();
    report["timings"] = {{"total_ms", std::llround(ms)}, {"workers", c.workers}};
    out.report = report;
    return out;
}

}  // namespace stabglue
