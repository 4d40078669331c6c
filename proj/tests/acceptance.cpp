#include "hn_oracle.hpp"

#include "stabglue/family_path.hpp"
#include "stabglue/geometry_kernel.hpp"

#include <chrono>
#include <cmath>
#include <functional>
#include <iostream>
#include <numbers>
#include <sstream>

using namespace stabglue;

namespace {

/* pinned tolerances and budgets */
constexpr std::size_t k_kernel_samples = 100000;
constexpr std::uint64_t k_kernel_seed = 7;
constexpr double k_kernel_seconds = 10.0;
constexpr double k_oracle_tolerance = 1e-9;
constexpr int k_hn_dimension_cap = 6;
constexpr double k_hn_seconds = 60.0;
constexpr int k_path_steps = 64;
constexpr double k_path_seconds = 600.0;
const rational k_path_eps(1, 16);
const rational k_eps1(1, 3), k_eps2(-1, 2);

using clock_type = std::chrono::steady_clock;

double seconds_since(clock_type::time_point t0) { return std::chrono::duration<double>(clock_type::now() - t0).count(); }

struct outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& why)
    {
        if (!ok && pass) detail << "first failure: " << why << "; ";
        pass = pass && ok;
    }
};

const std::vector<rational>& thetas()
{
    static const std::vector<rational> t{rational(1, 6), rational(1, 2), rational(2, 3), rational(5, 6)};
    return t;
}

plane_point endpoint() { return {qs3(rational(-1, 2)), qs3(rational(0), rational(1, 2))}; }

std::vector<plane_point> rational_grid()
{
    std::vector<plane_point> out;
    for (const auto& b : {rational(-1, 2), rational(-1, 4), rational(0), rational(1, 4), rational(1, 2)})
        for (const auto& w : {rational(3, 4), rational(1), rational(5, 4), rational(3, 2), rational(2)}) out.push_back({qs3(b), qs3(w)});
    return out;
}

std::vector<glued_model> glued_models()
{
    std::vector<glued_model> out;
    for (const auto* z : {"i", "-1+i"}) {
        auto s = point_stability(cplx::parse(z));
        out.push_back(glue_stability(d0_context(s)));
        out.push_back(glue_stability(d1_context(s)));
    }
    return out;
}

bool admissible_charge(const cplx& z) { return z.im.sign() > 0 || (z.im.is_zero() && z.re.sign() < 0); }

/* sup over r > 0 and phi in [0, theta] of 1 / |1 + r e^{i phi}| by nested golden-section search */
double numeric_ratio_sup(double theta)
{
    auto golden_max = [](const std::function<double(double)>& f, double lo, double hi) {
        const double g = (std::sqrt(5.0) - 1) / 2;
        double a = lo, b = hi;
        for (int k = 0; k < 200; ++k) {
            double c = b - g * (b - a), d = a + g * (b - a);
            if (f(c) < f(d)) a = c;
            else b = d;
        }
        return std::max({f((a + b) / 2), f(lo), f(hi)});
    };
    auto over_r = [&](double phi) {
        return golden_max([phi](double r) { return 1 / std::sqrt(1 + 2 * r * std::cos(phi) + r * r); }, 0.0, 4.0);
    };
    return golden_max(over_r, 0.0, theta);
}

void print(int k, const std::string& name, const outcome& o)
{
    std::cout << "criterion " << k << ": " << (o.pass ? "PASS" : "FAIL") << "  " << name << "  " << o.detail.str() << "\n";
}

outcome kernel_inequality()
{
    outcome o;
    auto t0 = clock_type::now();
    std::size_t total = 0, violations = 0;
    for (const auto& t : thetas()) {
        auto r = run_kernel_sampling(t, k_kernel_samples, k_kernel_seed);
        total += r.samples;
        violations += r.violations;
        o.require(r.samples == k_kernel_samples, "sample count at theta/pi = " + t.get_str());
        o.require(r.violations == 0, "violation at theta/pi = " + t.get_str());
        o.require(r.equalities > 0, "no sampled equality at theta/pi = " + t.get_str());
        /* the equality configuration |z1| = |z2| with the full angle */
        auto u = exact_unit(t);
        o.require(u.has_value(), "exact unit");
        auto eq = check_angle_sum_inequality(*u, cplx(1), t);
        o.require(eq.hypothesis_met && eq.holds && eq.equality, "exact equality at theta/pi = " + t.get_str());
    }
    double secs = seconds_since(t0);
    o.require(secs < k_kernel_seconds, "runtime");
    o.detail << "samples=" << total << " violations=" << violations << " seconds=" << secs << " budget=" << k_kernel_seconds;
    return o;
}

outcome ratio_bound()
{
    outcome o;
    for (const auto& t : thetas()) {
        auto r = run_kernel_sampling(t, k_kernel_samples / 10, k_kernel_seed + 1);
        qs3 bound_square = *ratio_sup_bound(t).exact_square;
        o.require(r.ratio_bound_ok && r.max_ratio_square <= bound_square, "sampled ratio above the bound at theta/pi = " + t.get_str());
        double theta = t.get_d() * std::numbers::pi;
        double numeric = numeric_ratio_sup(theta);
        double closed = theta <= std::numbers::pi / 2 ? 1.0 : 1 / std::sin(theta);
        double reported = std::max(1.0, 1 / std::sin(theta));
        double sampled = std::sqrt(r.max_ratio_square.to_double());
        o.require(std::abs(numeric - closed) < k_oracle_tolerance, "numeric oracle disagrees with the closed form");
        o.require(sampled <= numeric + k_oracle_tolerance, "sampled ratio above the oracle");
        o.require(numeric <= std::sqrt(bound_square.to_double()) + k_oracle_tolerance, "oracle above the bound");
        o.detail << "theta/pi=" << t.get_str() << " sampled=" << sampled << " oracle=" << numeric << " max(1,1/sin)=" << reported
                 << " bound=" << std::sqrt(bound_square.to_double()) << "; ";
    }
    return o;
}

outcome hn_oracle()
{
    outcome o;
    auto t0 = clock_type::now();
    heart h = heart::standard(2);
    central_charge z({cplx::parse("-1+i"), cplx::parse("i")});
    stability_condition s(h, z);
    oracle::brute_hn bf(h, z);
    auto corpus = antype_corpus(2, k_hn_dimension_cap, -1, 1);
    std::size_t agree = 0;
    for (const auto& e : corpus) {
        auto a = hn_filtration(s, e);
        auto b = bf.hn(e);
        bool same = a.size() == b.size();
        for (std::size_t i = 0; same && i < a.size(); ++i)
            same = k0_of_nf(2, a[i].obj) == b[i].cls && a[i].z == b[i].z && a[i].ph.exact() == b[i].phase;
        agree += same;
        o.require(same, "disagreement at " + nf_str(e));
    }
    double secs = seconds_since(t0);
    o.require(!corpus.empty(), "empty corpus");
    o.require(secs < k_hn_seconds, "runtime");
    o.detail << "agree=" << agree << "/" << corpus.size() << " seconds=" << secs << " budget=" << k_hn_seconds;
    return o;
}

outcome gluing()
{
    outcome o;
    auto corpus = default_c_corpus();
    std::size_t semistable = 0;
    for (const auto* zs : {"i", "-1+i", "1/2+3i", "-1"}) {
        auto s = point_stability(cplx::parse(zs));
        for (const auto& ctx : {d0_context(s), d1_context(s)}) {
            o.require(check_conditions(ctx).all(), std::string("gluing conditions at Z = ") + zs);
            glued_model g = glue_stability(ctx);
            const auto& sg = g.sigma();
            o.require(sg.hrt() == compute_glued_heart(ctx), "glued heart");
            for (const auto& e : corpus) {
                if (sg.hrt().contains(e)) o.require(admissible_charge(sg.charge().of(e)), "positivity at " + nf_str(e));
                k0_class sum(2, 0);
                auto hn = hn_filtration(sg, e);
                for (std::size_t i = 0; i < hn.size(); ++i) {
                    sum = k0_add(sum, k0_of_nf(2, hn[i].obj));
                    o.require(is_semistable(sg, hn[i].obj), "HN factor semistable");
                    if (i) o.require(cmp_phase(hn[i - 1].ph, hn[i].ph) > 0, "HN phases decrease");
                }
                o.require(sum == k0_of_nf(2, e), "HN classes at " + nf_str(e));
                if (!is_semistable(sg, e)) continue;
                ++semistable;
                o.require(truncation_semistability_check(g, e) == check_status::holds, "truncation semistability at " + nf_str(e));
                o.require(glued_phase_equality_check(g, e) != check_status::fails, "phase equality at " + nf_str(e));
                o.require(tau2_ratio_square(g, e) <= qs3(1), "ratio at " + nf_str(e));
            }
            for (const auto& x : semistable_indecomposables(sg)) o.require(tau2_ratio_square(g, {x}) <= qs3(1), "ratio on indecomposables");
        }
    }
    o.detail << "corpus=" << corpus.size() << " semistable_checked=" << semistable;
    return o;
}

outcome tilt_family()
{
    outcome o;
    auto corpus = a2_corpus(4, -1, 1);
    auto points = rational_grid();
    region_params region(k_eps1, k_eps2);
    for (const auto& p : points) {
        auto r = region_membership(p, region);
        o.require(r.in_hplus && r.in_hminus, "grid point outside the region: " + p.str());
    }
    points.push_back(endpoint());
    std::size_t built = 0, positivity = 0;
    for (const auto& g : glued_models())
        for (const auto& p : points) {
            tilt_model t;
            try {
                t = build_sigma_tilde(g, p);
            } catch (const std::domain_error& ex) {
                o.require(false, "build at " + p.str() + ": " + ex.what());
                continue;
            }
            ++built;
            auto v = validate_sigma_tilde(t, corpus);
            o.require(v.ok, "validation at " + p.str() + ": " + v.failure);
            for (const auto& e : corpus) {
                if (!t.hrt().contains(e)) continue;
                ++positivity;
                o.require(admissible_charge(t.sigma().charge().of(e)), "positivity at " + p.str() + " on " + nf_str(e));
            }
        }
    o.detail << "points=" << points.size() << " models=" << built << " positivity_checked=" << positivity;
    return o;
}

outcome continuity_chain()
{
    outcome o;
    auto t0 = clock_type::now();
    auto r = run_path(point_stability(cplx::i()), k_path_steps, k_path_eps);
    double secs = seconds_since(t0);
    o.require(r.continuity_ok, "adjacent continuity");
    o.require(r.region_ok && r.hearts_ok, "region and hearts along the path");
    o.require(r.d0_bridge.ok() && r.d1_bridge.ok(), "specialization bridges");
    o.require(r.d0_bridge.hypothesis && r.d1_bridge.hypothesis, "specialization hypothesis");
    o.require(r.endpoint.ok() && r.endpoint.identity, "endpoint rotation identity");
    o.require(r.ok(), "path run");
    o.require(secs < k_path_seconds, "runtime");
    o.detail << "steps=" << k_path_steps << " eps=" << k_path_eps.get_str() << " seconds=" << secs << " budget=" << k_path_seconds;
    return o;
}

outcome support_form()
{
    outcome o;
    auto points = rational_grid();
    points.push_back(endpoint());
    points.push_back({qs3(1), qs3(0)});
    std::size_t semistable = 0;
    for (const auto& g : glued_models()) {
        auto corpus = glued_heart_corpus(g, 4);
        for (const auto& p : points) {
            auto r = serre_support_check(g, p, corpus);
            semistable += r.semistable_checked;
            o.require(r.ok(), "support form at " + p.str() + ": " + r.witness);
        }
    }
    o.require(semistable > 0, "no semistable objects checked");
    o.detail << "points=" << points.size() << " semistable_checked=" << semistable;
    return o;
}

outcome hom_windows()
{
    outcome o;
    auto corpus = a2_corpus(4, -1, 1);
    const std::vector<plane_point> points{{qs3(rational(1, 2)), qs3(rational(1, 2))},
                                          {qs3(0), qs3(1)},
                                          {qs3(rational(-1, 4)), qs3(1)},
                                          {qs3(1), qs3(rational(1, 10))},
                                          endpoint()};
    std::size_t hearts = 0, homs = 0;
    for (const auto* z : {"i", "-1+i"}) {
        auto s = point_stability(cplx::parse(z));
        glued_model g0 = glue_stability(d0_context(s)), g1 = glue_stability(d1_context(s));
        for (const auto& p : points) {
            auto r = heart_window_check(tilt_model(g0, p), tilt_model(g1, p), corpus);
            hearts += r.heart_checked;
            homs += r.hom_checked;
            o.require(r.ok(), "window at " + p.str() + ": " + r.witness);
        }
    }
    o.require(hearts > 0 && homs > 0, "nothing checked");
    o.detail << "points=" << points.size() << " heart_checked=" << hearts << " hom_checked=" << homs;
    return o;
}

}  // namespace

int main()
{
    const std::vector<std::pair<std::string, std::function<outcome()>>> criteria{
        {"kernel angle-sum inequality", kernel_inequality},
        {"ratio bound against the oracle", ratio_bound},
        {"HN engine against brute force", hn_oracle},
        {"gluing validation", gluing},
        {"tilted family", tilt_family},
        {"continuity chain", continuity_chain},
        {"support form", support_form},
        {"Hom vanishings and heart windows", hom_windows},
    };
    int failed = 0;
    for (std::size_t k = 0; k < criteria.size(); ++k) {
        outcome o;
        try {
            o = criteria[k].second();
        } catch (const std::exception& ex) {
            o.pass = false;
            o.detail << "exception: " << ex.what();
        }
        print(static_cast<int>(k + 1), criteria[k].first, o);
        failed += !o.pass;
    }
    std::cout << (failed ? "FAILED " : "ALL PASSED ") << criteria.size() - failed << "/" << criteria.size() << "\n";
    return failed ? 1 : 0;
}
