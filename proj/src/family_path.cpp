#include "stabglue/family_path.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace stabglue {

namespace {

rational approximant(const real_iv& x, double scale, bool nearest)
{
    double v = x.mid() * scale;
    double k = nearest ? std::round(v) : std::floor(v);
    rational q{mpz_class(k), mpz_class(scale)};
    q.canonicalize();
    return q;
}

std::string point_str(const plane_point& p) { return p.str(); }

cplx beta_omega(const plane_point& p) { return cplx(p.beta, p.omega); }

normal_form single(const shifted_interval& x) { return {x}; }

shifted_interval shifted(const shifted_interval& x, int k) { return {x.iv, x.shift + k}; }

/* phase t as shift + offset + arg(-1)/pi */
phase constant_phase(const rational& t)
{
    mpz_class f;
    mpz_fdiv_q(f.get_mpz_t(), t.get_num_mpz_t(), t.get_den_mpz_t());
    phase ph;
    ph.shift = static_cast<int>(f.get_si()) - 1;
    ph.offset = t - rational(f);
    ph.w = cplx(-1);
    return ph;
}

cplx tau2_charge(const glued_model& g, const normal_form& e)
{
    long c = g.tau2_class(k0_of_nf(2, e));
    return cplx(qs3(rational(c))) * g.ctx().sigma2.charge().row[0];
}

qs3 tilt_ratio_square(const tilt_model& t, const normal_form& e)
{
    const plane_point& p = t.point();
    cplx z = t.sigma().charge().of(e);
    if (z.is_zero()) throw std::domain_error("sup_ratio: Z~ vanishes on " + nf_str(e));
    qs3 scale = p.beta * p.beta + p.omega * p.omega;
    return scale * tau2_charge(t.glued(), e).norm2() / z.norm2();
}

bool in_glued_heart(const tilt_model& t, const shifted_interval& x) { return t.glued().sigma().hrt().contains({x}); }

tilt_class class_of(const tilt_model& t, const interval& iv)
{
    auto it = t.classes().find(iv);
    return it == t.classes().end() ? tilt_class::neither : it->second;
}

void record(size_t& violations, std::string& witness, const std::string& what)
{
    if (violations++ == 0) witness = what;
}

std::string window_str(const std::pair<int, int>& w)
{
    return "[" + std::to_string(w.first) + ", " + std::to_string(w.second) + "]";
}

}  // namespace

path_point make_path_point(const rational& t)
{
    if (t < 0 || t > 1) throw std::invalid_argument("path point: t must lie in [0, 1], got " + t.get_str());
    path_point pp;
    pp.t = t;
    rational a = rational(2, 3) * t;
    a.canonicalize();
    auto c = exact_cos_pi(a), s = exact_sin_pi(a);
    if (c && s) {
        pp.exact = true;
        pp.point = {*c, *s};
        pp.alternate = pp.point;
        pp.enclosure = {real_iv(*c), real_iv(*s)};
        return pp;
    }
    pp.enclosure = {real_iv::cos_pi(a), real_iv::sin_pi(a)};
    pp.point = {qs3(approximant(pp.enclosure.beta, 1e13, true)), qs3(approximant(pp.enclosure.omega, 1e13, true))};
    const double two41 = 2199023255552.0;
    pp.alternate = {qs3(approximant(pp.enclosure.beta, two41, false)), qs3(approximant(pp.enclosure.omega, two41, false))};
    return pp;
}

std::vector<path_point> path_points(int n)
{
    if (n < 1) throw std::invalid_argument("path_points: at least one step required");
    std::vector<path_point> out;
    for (int k = 0; k <= n; ++k) {
        rational t(k, n);
        t.canonicalize();
        out.push_back(make_path_point(t));
    }
    return out;
}

region_report path_region(const path_point& p, const region_params& r)
{
    if (p.exact) return region_membership(p.point, r);
    return region_membership(p.enclosure, r);
}

double sup_ratio_report::approx() const { return std::sqrt(exact_square.to_double()); }

sup_ratio_report sup_ratio_estimate(const tilt_model& t, const std::vector<normal_form>& corpus,
                                    const std::optional<region_params>& region)
{
    const plane_point& p = t.point();
    if (region) {
        auto rr = region_membership(p, *region);
        std::string bad;
        if (rr.boundary) bad = "omega > 0";
        else if (rr.hplus1.sign() <= 0) bad = "hplus1 > 0 (value " + rr.hplus1.str() + ")";
        else if (rr.hplus2.sign() <= 0) bad = "hplus2 > 0 (value " + rr.hplus2.str() + ")";
        else if (rr.hminus1.sign() <= 0) bad = "hminus1 > 0 (value " + rr.hminus1.str() + ")";
        else if (rr.hminus2.sign() <= 0) bad = "hminus2 > 0 (value " + rr.hminus2.str() + ")";
        if (!bad.empty()) throw std::domain_error("sup_ratio at " + point_str(p) + ": inadmissible point, fails " + bad);
    }
    sup_ratio_report rep;
    cplx edge(-p.beta, p.omega);
    for (const auto& x : semistable_indecomposables(t.sigma())) {
        qs3 r = tilt_ratio_square(t, single(x));
        ++rep.semistable_checked;
        rep.exact_square = std::max(rep.exact_square, r);
        if (in_glued_heart(t, x))
            rep.torsion_side_square = std::max(rep.torsion_side_square, r);
        else
            rep.free_side_square = std::max(rep.free_side_square, r);
        cplx z = t.sigma().charge().of(single(x));
        if (!p.omega.is_zero() && cmp_arg(z, edge) <= 0)
            rep.low_phase_square = std::max(rep.low_phase_square, r);
        else
            rep.high_phase_square = std::max(rep.high_phase_square, r);
    }
    for (const auto& e : corpus) {
        if (!is_semistable(t.sigma(), e)) continue;
        rep.corpus_square = std::max(rep.corpus_square, tilt_ratio_square(t, e));
    }
    return rep;
}

torsion_window_report torsion_window_check(const tilt_model& t, const std::vector<normal_form>& corpus)
{
    const plane_point& p = t.point();
    if (p.omega.sign() <= 0) throw std::invalid_argument("torsion_window_check: omega must be positive");
    torsion_window_report rep;
    cplx edge(-p.beta, p.omega);
    std::vector<normal_form> objs;
    for (const auto& x : semistable_indecomposables(t.sigma())) objs.push_back(single(x));
    for (const auto& e : corpus)
        if (t.hrt().contains(e) && is_semistable(t.sigma(), e)) objs.push_back(e);
    for (const auto& e : objs) {
        cplx z = t.sigma().charge().of(e);
        bool low = cmp_arg(z, edge) <= 0;
        bool torsion = true, shifted_free = true;
        for (const auto& x : e) {
            bool in_gl = in_glued_heart(t, x);
            torsion = torsion && in_gl && class_of(t, x.iv) == tilt_class::torsion;
            shifted_free = shifted_free && !in_gl && class_of(t, x.iv) == tilt_class::free;
        }
        if (low) {
            ++rep.low_phase_checked;
            if (!torsion) record(rep.violations, rep.witness, nf_str(e) + ": low phase outside the torsion class");
        }
        if (shifted_free) {
            ++rep.free_shift_checked;
            if (low) record(rep.violations, rep.witness, nf_str(e) + ": shifted free object at or below the edge");
        }
    }
    return rep;
}

continuity_report continuity_check(const tilt_model& a, const tilt_model& b, const rational& eps)
{
    if (eps <= 0 || eps >= rational(1, 8)) throw std::invalid_argument("continuity_check: eps must lie in (0, 1/8)");
    continuity_report rep;
    rep.ball = ball_membership(a.sigma(), b.sigma(), eps);
    rep.inside = rep.ball.inside;
    auto ha = a.hrt().indecomposables(), hb = b.hrt().indecomposables();
    for (const auto& x : ha)
        for (const auto& y : hb)
            for (int p = 2; p <= 4; ++p)
                if (hom_dim_nf(single(shifted(x, p)), single(y)) != 0) {
                    if (rep.hom_window_ok) rep.witness = "Hom(" + nf_str(single(shifted(x, p))) + ", " + nf_str(single(y)) + ") != 0";
                    rep.hom_window_ok = false;
                }
    phase lo = constant_phase(-1), hi = constant_phase(2);
    for (const auto& y : hb) {
        if (cmp_phase(phi_minus(a.sigma(), single(y)), lo) <= 0 || cmp_phase(phi_plus(a.sigma(), single(y)), hi) > 0) {
            if (rep.phase_window_ok && rep.witness.empty()) rep.witness = nf_str(single(y)) + " outside P(-1, 2]";
            rep.phase_window_ok = false;
        }
    }
    if (!rep.inside && rep.witness.empty())
        rep.witness = "distance " + rep.ball.metric.value.str() + ", norm " + rep.ball.norm.value.str() + ", sin(pi eps) " +
                      rep.ball.sin_pi_eps.str();
    return rep;
}

specialization_report specialization_check(const glued_model& g, const tilt_model& t, const rational& eps)
{
    if (eps <= 0 || eps >= rational(1, 4)) throw std::invalid_argument("specialization_check: eps must lie in (0, 1/4)");
    const plane_point& p = t.point();
    qs3 db = p.beta - qs3(1);
    qs3 dist2 = db * db + p.omega * p.omega;
    bool close;
    if (auto s = exact_sin_pi(eps))
        close = dist2 < *s * *s;
    else {
        real_iv si = real_iv::sin_pi(eps);
        close = certified_less(real_iv(dist2), si * si);
    }
    if (!close)
        throw std::domain_error("specialization at " + p.str() + ": |beta - 1 + i omega| < sin(pi eps) fails");
    if (p.beta.sign() <= 0) throw std::domain_error("specialization at " + p.str() + ": arg(beta + i omega) < pi/2 fails");
    specialization_report rep;
    rep.hypothesis = true;
    rep.ball = ball_membership(g.sigma(), t.sigma(), eps);
    rep.support_flag = classify_flags(g.sigma()).reasonable;
    phase lo = constant_phase(0), hi = constant_phase(2 - eps);
    cplx edge = beta_omega(p);
    for (const auto& x : t.hrt().indecomposables()) {
        normal_form e = single(x);
        if (cmp_phase(phi_minus(g.sigma(), e), lo) <= 0 || cmp_phase(phi_plus(g.sigma(), e), hi) > 0) {
            if (rep.heart_window_ok) rep.witness = nf_str(e) + " outside Q(0, 2 - eps]";
            rep.heart_window_ok = false;
        }
        if (in_glued_heart(t, x)) continue;
        for (const auto& f : hn_filtration(g.sigma(), nf_shift(e, -1))) {
            if (cmp_arg(f.z, edge) > 0) {
                if (rep.free_sector_ok && rep.witness.empty()) rep.witness = nf_str(e) + " above 1 + theta";
                rep.free_sector_ok = false;
            }
        }
    }
    return rep;
}

stability_condition rotate_action(const stability_condition& s, const rational& theta)
{
    rational six = theta * 6;
    six.canonicalize();
    if (six.get_den() != 1) throw std::domain_error("rotate_action: angle " + theta.get_str() + " pi is not a multiple of pi/6");
    return rotate(s, theta);
}

endpoint_report endpoint_rotation_check(const glued_model& g0, const glued_model& g1, const plane_point& p, const rational& theta)
{
    endpoint_report rep;
    central_charge z0 = z_tilde(g0, p), z1 = z_tilde(g1, p);
    rep.d0_row = z0.row;
    rep.d1_row = z1.row;
    auto u = exact_unit(theta);
    if (!u) throw std::domain_error("endpoint_rotation_check: angle " + theta.get_str() + " pi has no exact unit");
    rep.identity = (*u * z1) == z0;
    if (!rep.identity) {
        rep.witness = "Z~0 = " + z0.str() + ", rotated Z~1 = " + (*u * z1).str();
        return rep;
    }
    tilt_model t0(g0, p), t1(g1, p);
    stability_condition r1 = rotate_action(t1.sigma(), theta);
    estimate d = metric_exact(t0.sigma(), r1);
    rep.same_slicing = d.value.exact ? d.value.exact->is_zero() : d.value.enclosure.hi() < 1e-30;
    if (!rep.same_slicing) rep.witness = "distance " + d.value.str();
    return rep;
}

heart_window_report heart_window_check(const tilt_model& t0, const tilt_model& t1, const std::vector<normal_form>& corpus)
{
    heart_window_report rep;
    auto inside = [](const std::pair<int, int>& w, int lo, int hi) { return w.first >= lo && w.second <= hi; };
    std::vector<normal_form> tor0, free0, tor1, free1;
    for (const auto& [iv, c] : t0.classes()) {
        shifted_interval x{iv, t0.glued().sigma().hrt().shift_of(iv)};
        (c == tilt_class::torsion ? tor0 : free0).push_back(single(x));
    }
    for (const auto& [iv, c] : t1.classes()) {
        shifted_interval x{iv, t1.glued().sigma().hrt().shift_of(iv)};
        (c == tilt_class::torsion ? tor1 : free1).push_back(single(x));
    }
    const heart& h1 = t1.hrt();
    for (const auto& f : tor0) {
        ++rep.torsion_checked;
        auto w = h1.cohomology_window(f);
        if (!inside(w, 0, 1)) record(rep.violations, rep.witness, nf_str(f) + ": torsion object with window " + window_str(w));
    }
    for (const auto& f : free0) {
        ++rep.free_checked;
        auto w = h1.cohomology_window(f);
        if (!inside(w, 1, 2)) record(rep.violations, rep.witness, nf_str(f) + ": free object with window " + window_str(w));
    }
    std::vector<normal_form> heart0;
    for (const auto& x : t0.hrt().indecomposables()) heart0.push_back(single(x));
    for (const auto& e : corpus)
        if (t0.hrt().contains(e)) heart0.push_back(e);
    for (const auto& e : heart0) {
        ++rep.heart_checked;
        auto w = h1.cohomology_window(e);
        if (!inside(w, 0, 1)) record(rep.violations, rep.witness, nf_str(e) + ": heart object with window " + window_str(w));
    }
    for (const auto& f : tor0)
        for (const auto& g : free1)
            for (int p = -4; p <= -1; ++p) {
                ++rep.hom_checked;
                if (hom_dim_nf(f, nf_shift(g, p)) != 0)
                    record(rep.violations, rep.witness, "Hom(" + nf_str(f) + ", " + nf_str(nf_shift(g, p)) + ") != 0");
            }
    for (const auto& f : free0)
        for (const auto& g : tor1)
            for (int p = -4; p <= 0; ++p) {
                ++rep.hom_checked;
                if (hom_dim_nf(g, nf_shift(f, p)) != 0)
                    record(rep.violations, rep.witness, "Hom(" + nf_str(g) + ", " + nf_str(nf_shift(f, p)) + ") != 0");
            }
    return rep;
}

bool classification_stable(const glued_model& g, const path_point& p)
{
    if (p.exact) return true;
    tilt_model a(g, p.point), b(g, p.alternate);
    return a.classes() == b.classes() && a.hrt() == b.hrt();
}

bool path_run_report::ok() const
{
    return continuity_ok && region_ok && hearts_ok && support_ok && d0_bridge.ok() && d1_bridge.ok() && endpoint.ok() &&
           endpoint_window.ok();
}

namespace {

std::vector<path_step> run_chain(const glued_model& g, const std::vector<path_point>& pts, const rational& eps,
                                 const std::vector<normal_form>& corpus, std::vector<tilt_model>& models)
{
    region_params region(rational(1, 3), rational(-1, 2));
    std::vector<path_step> steps;
    for (size_t k = 1; k < pts.size(); ++k) {
        path_step st;
        st.pp = pts[k];
        auto rr = path_region(st.pp, region);
        st.in_region = rr.in_hplus && rr.in_hminus;
        try {
            models.push_back(build_sigma_tilde(g, st.pp.point));
            st.heart_ok = true;
            st.ratio = sup_ratio_estimate(models.back(), corpus);
        } catch (const std::domain_error&) {
            models.push_back(tilt_model(g, st.pp.point, tilt_options{true, 12}));
        }
        st.classification_ok = classification_stable(g, st.pp);
        steps.push_back(st);
    }
    for (size_t k = 0; k + 1 < steps.size(); ++k) steps[k].to_next = continuity_check(models[k], models[k + 1], eps);
    return steps;
}

}  // namespace

path_run_report run_path(const stability_condition& s, int steps, const rational& eps, int corpus_cap)
{
    if (steps < 2) throw std::invalid_argument("run_path: at least two steps required");
    if (eps <= 0 || eps >= rational(1, 8)) throw std::invalid_argument("run_path: eps must lie in (0, 1/8)");
    path_run_report rep;
    rep.steps = steps;
    rep.eps = eps;
    auto pts = path_points(steps);
    glued_model g0 = glue_stability(d0_context(s));
    glued_model g1 = glue_stability(d1_context(s));
    auto corpus = a2_corpus(corpus_cap, -1, 1);
    std::vector<tilt_model> m0, m1;
    rep.d0_steps = run_chain(g0, pts, eps, corpus, m0);
    rep.d1_steps = run_chain(g1, pts, eps, corpus, m1);
    rep.d0_bridge = specialization_check(g0, m0.front(), eps);
    rep.d1_bridge = specialization_check(g1, m1.front(), eps);
    rep.endpoint = endpoint_rotation_check(g0, g1, pts.back().point);
    rep.endpoint_window = heart_window_check(m0.back(), m1.back(), corpus);
    rep.continuity_ok = rep.region_ok = rep.hearts_ok = true;
    for (const auto* chain : {&rep.d0_steps, &rep.d1_steps})
        for (size_t k = 0; k < chain->size(); ++k) {
            const auto& st = (*chain)[k];
            rep.region_ok = rep.region_ok && st.in_region;
            rep.hearts_ok = rep.hearts_ok && st.heart_ok && st.classification_ok;
            if (k + 1 < chain->size()) rep.continuity_ok = rep.continuity_ok && st.to_next.ok();
        }
    rep.support_ok = rep.d0_bridge.support_flag && rep.d1_bridge.support_flag && rep.d0_bridge.ball.inside &&
                     rep.d1_bridge.ball.inside && rep.continuity_ok;
    return rep;
}

}  // namespace stabglue
