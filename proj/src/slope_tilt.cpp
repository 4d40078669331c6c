#include "stabglue/slope_tilt.hpp"

#include <algorithm>
#include <stdexcept>

namespace stabglue {

std::string slope_value::str() const
{
    if (serre) return "serre";
    if (infinite) return "+inf";
    return mu->str();
}

int cmp_slope(const slope_value& a, const slope_value& b)
{
    if (a.serre || b.serre) throw std::invalid_argument("cmp_slope: slope of an object with M = 0");
    if (a.infinite || b.infinite) return (a.infinite ? 1 : 0) - (b.infinite ? 1 : 0);
    return (*a.mu - *b.mu).sign();
}

int slope_sign(const slope_value& a)
{
    if (a.serre) throw std::invalid_argument("slope_sign: slope of an object with M = 0");
    return a.infinite ? 1 : a.mu->sign();
}

slope_value slope_of_value(const cplx& m)
{
    slope_value v;
    v.m = m;
    if (m.is_zero()) {
        v.serre = true;
    } else if (m.im.is_zero()) {
        if (m.re.sign() > 0) throw std::domain_error("slope: M = " + m.str() + " lies on the positive real axis");
        v.infinite = true;
    } else {
        if (m.im.sign() < 0) throw std::domain_error("slope: M = " + m.str() + " lies in the lower half plane");
        v.mu = -m.re / m.im;
    }
    return v;
}

namespace {

k0_class unit(int v)
{
    k0_class c(2, 0);
    c[static_cast<size_t>(v)] = 1;
    return c;
}

cplx z1_of_class(const glued_model& g, const k0_class& c)
{
    return g.ctx().sigma1.charge().row.at(0) * cplx(qs3(rational(g.tau1_class(c))));
}

cplx z2_of_class(const glued_model& g, const k0_class& c)
{
    return g.ctx().sigma2.charge().row.at(0) * cplx(qs3(rational(g.tau2_class(c))));
}

cplx slope_m(const cplx& z1, const cplx& z2, const plane_point& p)
{
    return cplx(-z1.im + p.omega * z2.re - p.beta * z2.im, z1.im + z2.im);
}

void require_glued(const glued_model& g, const normal_form& e, const char* what)
{
    if (!g.sigma().hrt().contains(e)) throw std::invalid_argument(std::string(what) + ": " + nf_str(e) + " is not in the glued heart");
}

long heart_length(const stability_condition& s, const normal_form& e)
{
    long l = 0;
    for (long c : simple_coordinates(s, k0_of_nf(s.n(), e))) l += c;
    return l;
}

void require_discrete(const glued_model& g)
{
    if (!classify_flags(g.ctx().sigma1).discrete || !classify_flags(g.ctx().sigma2).discrete)
        throw std::domain_error("slope filtration: the factor stability conditions are not discrete");
}

}  // namespace

central_charge slope_charge(const glued_model& g, const plane_point& p)
{
    std::vector<cplx> row;
    for (int v = 0; v < 2; ++v) row.push_back(slope_m(z1_of_class(g, unit(v)), z2_of_class(g, unit(v)), p));
    return central_charge(row);
}

slope_value slope_of_class(const glued_model& g, const plane_point& p, const k0_class& c)
{
    return slope_of_value(slope_m(z1_of_class(g, c), z2_of_class(g, c), p));
}

slope_value slope(const glued_model& g, const plane_point& p, const normal_form& e)
{
    require_glued(g, e, "slope");
    return slope_of_class(g, p, k0_of_nf(2, e));
}

mu_hn_result mu_hn(const glued_model& g, const plane_point& p, const normal_form& e)
{
    require_discrete(g);
    require_glued(g, e, "mu_hn");
    const stability_condition& s = g.sigma();
    mu_hn_result out;
    normal_form rest = canonical_nf(e);
    while (!rest.empty()) {
        std::optional<slope_value> best;
        normal_form best_obj;
        long best_len = 0;
        for (const auto& u : subobject_types(s, rest)) {
            slope_value v = slope(g, p, u);
            if (v.serre) continue;
            long len = heart_length(s, u);
            int c = best ? cmp_slope(v, *best) : 1;
            if (c > 0 || (c == 0 && len > best_len)) {
                best = v;
                best_obj = u;
                best_len = len;
            }
        }
        if (!best) {
            out.serre_part = nf_sum(out.serre_part, rest);
            break;
        }
        out.factors.push_back({best_obj, *best});
        if (best_obj == rest) break;
        rest = quotient(s, best_obj, rest);
    }
    return out;
}

std::optional<slope_value> mu_plus(const glued_model& g, const plane_point& p, const normal_form& e)
{
    require_glued(g, e, "mu_plus");
    std::optional<slope_value> best;
    for (const auto& u : subobject_types(g.sigma(), e)) {
        slope_value v = slope(g, p, u);
        if (v.serre) continue;
        if (!best || cmp_slope(v, *best) > 0) best = v;
    }
    return best;
}

std::optional<slope_value> mu_minus(const glued_model& g, const plane_point& p, const normal_form& e)
{
    require_glued(g, e, "mu_minus");
    auto ke = k0_of_nf(2, e);
    std::optional<slope_value> best;
    auto consider = [&](const k0_class& c) {
        slope_value v = slope_of_class(g, p, c);
        if (v.serre) return;
        if (!best || cmp_slope(v, *best) < 0) best = v;
    };
    consider(ke);
    for (const auto& u : subobject_types(g.sigma(), e)) {
        auto ku = k0_of_nf(2, u);
        if (ku == ke) continue;
        consider(k0_add(ke, ku, -1));
    }
    return best;
}

bool mu_semistable(const glued_model& g, const plane_point& p, const normal_form& e)
{
    auto h = mu_hn(g, p, e);
    return h.factors.size() == 1;
}

std::string tilt_class_str(tilt_class c)
{
    switch (c) {
    case tilt_class::torsion: return "torsion";
    case tilt_class::free: return "free";
    default: return "neither";
    }
}

bool truncation_map_is_mono(const glued_model& g, const normal_form& e)
{
    require_glued(g, e, "truncation_map_is_mono");
    auto r = tau1r_triangle(mor_from_a2(e), g.ctx().side);
    if (r.tau1R.is_zero()) return true;
    auto w = g.ctx().sigma1.hrt().cohomology_window(r.tau1R.nf());
    return w.first == 1 && w.second == 1;
}

namespace {

tilt_class classify_indecomposable(const glued_model& g, const plane_point& p, const normal_form& x, bool& mono_checked,
                                   bool& mono_ok)
{
    torsion_split sp = glued_torsion_membership(g, x);
    if (sp.kind == glued_kind::torsion) return tilt_class::torsion;
    auto lo = mu_minus(g, p, sp.free_part);
    if (lo && slope_sign(*lo) > 0) return tilt_class::torsion;
    if (sp.kind == glued_kind::mixed) return tilt_class::neither;
    auto hi = mu_plus(g, p, x);
    if (hi && cmp_slope(*hi, slope_of_value(cplx(-1, 1))) < 0) {
        mono_checked = true;
        mono_ok = truncation_map_is_mono(g, x);
    }
    if (hi && slope_sign(*hi) <= 0) return tilt_class::free;
    return tilt_class::neither;
}

}  // namespace

tilt_report tilt_membership(const glued_model& g, const plane_point& p, const normal_form& e)
{
    require_glued(g, e, "tilt_membership");
    const stability_condition& s = g.sigma();
    tilt_report r;
    bool any_t = false, any_f = false;
    for (const auto& x : canonical_nf(e)) {
        normal_form one{x};
        bool mc = false, mo = true;
        tilt_class c = classify_indecomposable(g, p, one, mc, mo);
        r.mono_checked = r.mono_checked || mc;
        r.mono_ok = r.mono_ok && mo;
        if (c == tilt_class::torsion) {
            r.torsion_part = nf_sum(r.torsion_part, one);
            any_t = true;
        } else if (c == tilt_class::free) {
            r.free_part = nf_sum(r.free_part, one);
            any_f = true;
        } else {
            /* largest subobject in the torsion class with quotient in the free class */
            auto subs = subobject_types(s, one);
            std::sort(subs.begin(), subs.end(),
                      [&](const normal_form& a, const normal_form& b) { return heart_length(s, a) > heart_length(s, b); });
            bool found = false;
            for (const auto& u : subs) {
                if (u == one) continue;
                if (tilt_membership(g, p, u).cls != tilt_class::torsion) continue;
                normal_form q = quotient(s, u, one);
                if (tilt_membership(g, p, q).cls != tilt_class::free) continue;
                r.torsion_part = nf_sum(r.torsion_part, u);
                r.free_part = nf_sum(r.free_part, q);
                found = any_t = any_f = true;
                break;
            }
            if (!found) throw std::runtime_error("tilt_membership: no torsion pair filtration for " + nf_str(one));
        }
    }
    if (any_t && !any_f)
        r.cls = tilt_class::torsion;
    else if (any_f && !any_t)
        r.cls = tilt_class::free;
    else
        r.cls = e.empty() ? tilt_class::torsion : tilt_class::neither;
    return r;
}

central_charge z_tilde(const glued_model& g, const plane_point& p)
{
    cplx f(p.beta, -p.omega);
    std::vector<cplx> row;
    for (int v = 0; v < 2; ++v) row.push_back(z1_of_class(g, unit(v)) + f * z2_of_class(g, unit(v)));
    return central_charge(row);
}

central_charge z_tilde(const gluing_context& ctx, const plane_point& p) { return z_tilde(glued_model(ctx), p); }

heart tilt_heart(const glued_model& g, const plane_point& p)
{
    auto side = [&](const shifted_interval& x) {
        switch (tilt_membership(g, p, {x}).cls) {
        case tilt_class::torsion: return tilt_side::torsion;
        case tilt_class::free: return tilt_side::free;
        default: return tilt_side::neither;
        }
    };
    return g.sigma().hrt().tilted(side, "tilt(" + p.str() + ")");
}

tilt_model::tilt_model(const glued_model& g, const plane_point& p, tilt_options opts) : g_(g), p_(p)
{
    if (p.omega.sign() < 0 || (p.omega.is_zero() && p.beta != qs3(1)))
        throw std::invalid_argument("sigma tilde: omega must be positive, got " + p.str());
    bool rational_factors = classify_flags(g.ctx().sigma1).rational && classify_flags(g.ctx().sigma2).rational;
    if (!rational_factors && !opts.outside_hypotheses)
        throw std::domain_error("sigma tilde: factor stability conditions are not rational");
    outside_ = !rational_factors;
    for (const auto& x : g.sigma().hrt().indecomposables()) classes_[x.iv] = tilt_membership(g, p, {x}).cls;
    heart h;
    try {
        h = tilt_heart(g, p);
        sigma_ = stability_condition(h, z_tilde(g, p), 0, opts.cap);
    } catch (const std::domain_error& ex) {
        throw std::domain_error("sigma tilde at " + p.str() + ": " + ex.what());
    } catch (const std::invalid_argument& ex) {
        throw std::domain_error("sigma tilde at " + p.str() + ": " + ex.what());
    }
}

namespace {

bool in_upper(const cplx& z) { return z.im.sign() > 0 || (z.im.is_zero() && z.re.sign() < 0); }

void fail(tilt_validation& r, const std::string& what)
{
    if (r.ok) r.failure = what;
    r.ok = false;
}

}  // namespace

tilt_validation validate_sigma_tilde(const tilt_model& t, const std::vector<normal_form>& corpus)
{
    tilt_validation r;
    const glued_model& g = t.glued();
    const plane_point& p = t.point();
    const stability_condition& s = t.sigma();
    const central_charge& z = s.charge();
    for (const auto& e : corpus) {
        if (e.empty()) continue;
        if (s.hrt().contains(e)) {
            ++r.heart_objects;
            ++r.positivity_checked;
            if (!in_upper(z.of(e))) fail(r, "positivity fails at " + nf_str(e) + ": Z~ = " + z.of(e).str());
        }
        if (g.sigma().hrt().contains(e)) {
            tilt_report tr = tilt_membership(g, p, e);
            if (tr.mono_checked) {
                ++r.mono_checked;
                if (!tr.mono_ok) fail(r, "truncation map is not a monomorphism for " + nf_str(e));
            }
            cplx ze = z.of(e);
            if (tr.cls == tilt_class::free && ze.im.is_zero() && p.omega.sign() > 0) {
                ++r.bound_checked;
                qs3 b1 = p.beta + qs3(1);
                qs3 bound = (b1 * b1 + p.omega * p.omega) / p.omega * g.z1_part(e).im;
                if (ze.re < bound || ze.re.sign() <= 0)
                    fail(r, "real part bound fails at " + nf_str(e) + ": Re Z~ = " + ze.re.str() + ", bound " + bound.str());
            }
        }
        auto h = hn_filtration(s, e);
        ++r.hn_checked;
        k0_class sum(2, 0);
        for (size_t i = 0; i < h.size(); ++i) {
            sum = k0_add(sum, k0_of_nf(2, h[i].obj));
            if (i > 0 && cmp_phase(h[i - 1].ph, h[i].ph) <= 0) fail(r, "HN phases not decreasing for " + nf_str(e));
        }
        if (sum != k0_of_nf(2, e)) fail(r, "HN factors do not add up for " + nf_str(e));
    }
    return r;
}

tilt_model build_sigma_tilde(const glued_model& g, const plane_point& p, tilt_options opts)
{
    tilt_model t(g, p, opts);
    auto v = validate_sigma_tilde(t, a2_corpus(4, -1, 1));
    if (!v.ok) throw std::domain_error("sigma tilde at " + p.str() + ": " + v.failure);
    return t;
}

qs3_matrix serre_support_form(const glued_model& g)
{
    std::vector<qs3> a, b;
    for (int v = 0; v < 2; ++v) {
        a.push_back(z1_of_class(g, unit(v)).im);
        b.push_back(z2_of_class(g, unit(v)).im);
    }
    qs3_matrix q(2, std::vector<qs3>(2));
    for (size_t i = 0; i < 2; ++i)
        for (size_t j = 0; j < 2; ++j) q[i][j] = (a[i] * b[j] + a[j] * b[i]) / qs3(2);
    return q;
}

qs3 support_value(const glued_model& g, const k0_class& c) { return z1_of_class(g, c).im * z2_of_class(g, c).im; }

namespace {

qs3 quad_form(const qs3_matrix& q, const std::vector<qs3>& x, const std::vector<qs3>& y)
{
    qs3 s;
    for (size_t i = 0; i < q.size(); ++i)
        for (size_t j = 0; j < q.size(); ++j) s += x[i] * q[i][j] * y[j];
    return s;
}

/* negative definite iff every pivot of a symmetric elimination is negative */
bool negative_definite(std::vector<std::vector<qs3>> g)
{
    for (size_t k = 0; k < g.size(); ++k) {
        if (g[k][k].sign() >= 0) return false;
        for (size_t i = k + 1; i < g.size(); ++i) {
            qs3 f = g[i][k] / g[k][k];
            for (size_t j = k; j < g.size(); ++j) g[i][j] -= f * g[k][j];
        }
    }
    return true;
}

}  // namespace

serre_support_report serre_support_check(const glued_model& g, const plane_point& p, const std::vector<normal_form>& corpus)
{
    serre_support_report r;
    for (const auto& e : corpus) {
        if (e.empty() || !g.sigma().hrt().contains(e)) continue;
        if (!mu_semistable(g, p, e)) continue;
        ++r.semistable_checked;
        auto k = k0_of_nf(2, e);
        if (support_value(g, k).sign() < 0) {
            ++r.violations;
            if (r.witness.empty()) r.witness = "q < 0 on " + nf_str(e);
        }
        cplx z1 = g.z1_part(e), z2 = g.z2_part(e);
        if (z1.im.sign() > 0 && z2.im.sign() > 0) {
            ++r.angle_checked;
            cplx a = cplx(1, 1) * slope_m(cplx(), z2, p);
            cplx b = slope_m(z1, cplx(), p);
            if (dot(a, b).sign() <= 0) {
                ++r.violations;
                if (r.witness.empty()) r.witness = "angle bound fails on " + nf_str(e);
            }
        }
    }
    central_charge m = slope_charge(g, p);
    auto ker = charge_kernel(m);
    qmat serre_rows(0, 2);
    for (const auto& x : g.sigma().hrt().indecomposables()) {
        auto k = k0_of_nf(2, {x});
        if (!m(k).is_zero()) continue;
        qmat row(1, 2);
        row(0, 0) = k[0];
        row(0, 1) = k[1];
        serre_rows = serre_rows.vcat(row);
    }
    r.kernel_dim = static_cast<int>(ker.size()) - static_cast<int>(rank(serre_rows));
    if (r.kernel_dim > 0) {
        qs3_matrix q = serre_support_form(g);
        std::vector<std::vector<qs3>> gram(ker.size(), std::vector<qs3>(ker.size()));
        for (size_t i = 0; i < ker.size(); ++i)
            for (size_t j = 0; j < ker.size(); ++j) gram[i][j] = quad_form(q, ker[i], ker[j]);
        r.kernel_negative_definite = negative_definite(gram);
        if (!r.kernel_negative_definite && r.witness.empty()) r.witness = "q is not negative definite on ker M";
    }
    return r;
}

theta_bounds compute_theta_bounds(const plane_point& p, const region_params& r)
{
    theta_bounds t;
    const qs3 &b = p.beta, &w = p.omega;
    qs3 e1(r.eps1), e2(r.eps2);
    cplx conj_f(b, -w);
    t.w1 = cplx(b + qs3(1) - qs3(2) * e1, w);
    t.w2 = cplx(b + qs3(1) - qs3(2) * e2, w) * conj_f;
    t.w3 = cplx(b - e1, w) * conj_f;
    qs3 t2 = b + qs3(1) - qs3(2) * e2;
    qs3 domain = w * w + t2 * t2 + qs3(2) * (qs3(1) - qs3(2) * e2) * (e2 - e1);
    t.applicable = w.sign() > 0 && e1.sign() >= 0 && (qs3(1) - qs3(2) * e2).sign() > 0 && e2 <= e1 && e1 < qs3(1) &&
                   domain.sign() > 0;
    if (w.sign() <= 0) return t;
    t.theta1 = real_iv::arg(t.w1);
    t.theta2 = real_iv::arg(t.w2);
    t.theta3 = real_iv::arg(t.w3);
    t.theta0 = real_iv::max(t.theta1 - t.theta2, t.theta3 - t.theta2);
    return t;
}

namespace {

void violation(sector_report& r, const std::string& what)
{
    ++r.violations;
    if (r.witness.empty()) r.witness = what;
}

}  // namespace

sector_report sector_sweep(const tilt_model& t, const region_params& reg, const std::vector<normal_form>& corpus)
{
    const glued_model& g = t.glued();
    const plane_point& p = t.point();
    sector_report r;
    r.theta = compute_theta_bounds(p, reg);
    if (p.omega.sign() <= 0) return r;
    const central_charge zt = t.sigma().charge();
    qs3 e1(reg.eps1), e2(reg.eps2);
    cplx conj_f(p.beta, -p.omega);
    cplx w_steep = cplx(p.beta - qs3(1), p.omega) * conj_f;
    slope_value one = slope_of_value(cplx(-1, 1));
    for (const auto& e : corpus) {
        if (e.empty() || !g.sigma().hrt().contains(e)) continue;
        torsion_split sp = glued_torsion_membership(g, e);
        cplx ze = zt.of(e);
        if (!sp.free_part.empty()) {
            auto lo = mu_minus(g, p, sp.free_part);
            if (lo && cmp_slope(*lo, one) > 0) {
                ++r.steep_checked;
                if (ze.is_zero() || cmp_arg(ze, w_steep) < 0) violation(r, "steep argument bound fails at " + nf_str(e));
            }
        }
        if (sp.kind != glued_kind::free) continue;
        auto hi = mu_plus(g, p, e);
        if (!hi || cmp_slope(*hi, one) >= 0) continue;
        slope_value mu = slope(g, p, e);
        cplx z1 = g.z1_part(e), z2 = g.z2_part(e);
        bool below_e1 = !hi->infinite && *hi->mu <= e1;
        bool above_e2 = !mu.infinite && *mu.mu >= e2;
        ++r.window_checked;
        if (z2.is_zero()) {
            violation(r, "second truncation vanishes at " + nf_str(e));
            continue;
        }
        if (below_e1) {
            if (!z1.is_zero() && cmp_arg(z1, cplx(p.beta + qs3(1) - qs3(2) * e1, p.omega)) > 0)
                violation(r, "first truncation argument bound fails at " + nf_str(e));
            if (cmp_arg(z2, cplx(p.beta - e1, p.omega)) > 0) violation(r, "second truncation upper bound fails at " + nf_str(e));
        }
        if (above_e2 && cmp_arg(cplx(p.beta + qs3(1) - qs3(2) * e2, p.omega), z2) > 0)
            violation(r, "second truncation lower bound fails at " + nf_str(e));
        if (!(r.theta.applicable && below_e1 && above_e2)) continue;
        ++r.sector_checked;
        const theta_bounds& th = r.theta;
        if (!z1.is_zero() && (!in_upper(z1) || cmp_arg(z1, th.w1) > 0)) violation(r, "first sector bound fails at " + nf_str(e));
        cplx zz = conj_f * z2;
        if (cmp_arg(th.w2, zz) >= 0 || cmp_arg(zz, th.w3) > 0) violation(r, "second sector bound fails at " + nf_str(e));
        if (ze.is_zero() || cmp_arg(th.w2, ze) >= 0 || (cmp_arg(ze, th.w1) > 0 && cmp_arg(ze, th.w3) > 0))
            violation(r, "sector bound fails at " + nf_str(e));
    }
    return r;
}

std::vector<normal_form> glued_heart_corpus(const glued_model& g, int cap, int lo, int hi)
{
    std::vector<normal_form> out;
    for (const auto& e : a2_corpus(cap, lo, hi))
        if (!e.empty() && g.sigma().hrt().contains(e)) out.push_back(e);
    return out;
}

}  // namespace stabglue
