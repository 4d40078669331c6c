#include "doctest.h"

#include "hn_oracle.hpp"
#include "stabglue/slope_tilt.hpp"

using namespace stabglue;

namespace {

normal_form nf(const std::string& s) { return parse_nf(2, s); }
plane_point pt(const std::string& b, const std::string& w) { return {qs3::parse(b), qs3::parse(w)}; }
plane_point endpoint() { return {qs3(rational(-1, 2)), qs3(rational(0), rational(1, 2))}; }

glued_model model0(const std::string& z) { return glue_stability(d0_context(point_stability(cplx::parse(z)))); }
glued_model model1(const std::string& z) { return glue_stability(d1_context(point_stability(cplx::parse(z)))); }

std::vector<plane_point> sample_points()
{
    return {pt("1/2", "1/2"), pt("-1/3", "1"), pt("2", "1/3"), pt("-3/2", "2"), pt("0", "1"), pt("-1", "1/2"), pt("1", "1")};
}

}  // namespace

TEST_CASE("slope examples")
{
    glued_model g = model0("i");
    plane_point p = pt("1/3", "2/5");
    /* s(k) = I[1,2]@0 is i1 of the point */
    slope_value v = slope(g, p, nf("I[1,2]@0"));
    CHECK(*v.mu == qs3(1));
    CHECK(cross(v.m, cplx(-1, 1)).is_zero());
    CHECK(dot(v.m, cplx(-1, 1)).sign() > 0);
    /* I[1,1]@-1 has tau1L = 0 and tau2R = k[-1] with Z2 = i */
    CHECK(*slope(g, p, nf("I[1,1]@-1")).mu == qs3(rational(1, 3)));
    CHECK(*slope(g, p, nf("I[2,2]@0")).mu == qs3(rational(2, 3)));
    /* general second factor charge: mu = (-w Re z2 + b Im z2) / Im z2 */
    glued_model h = model0("-1+i");
    for (const auto& q : sample_points()) {
        cplx z2 = h.z2_part(nf("I[1,1]@-1"));
        CHECK(h.z1_part(nf("I[1,1]@-1")).is_zero());
        CHECK(*slope(h, q, nf("I[1,1]@-1")).mu == (-q.omega * z2.re + q.beta * z2.im) / z2.im);
    }
    /* torsion point: s(k) has M = 0 */
    glued_model t = model0("-1");
    CHECK(slope(t, p, nf("I[1,2]@0")).serre);
    CHECK(slope(t, p, nf("I[2,2]@0")).infinite);
    CHECK_THROWS_AS(slope(g, p, nf("I[1,1]@0")), std::invalid_argument);
    CHECK(cmp_slope(slope(t, p, nf("I[2,2]@0")), v) > 0);
}

TEST_CASE("slope filtration examples")
{
    glued_model g = model0("i");
    auto steep = mu_hn(g, pt("2", "1"), nf("I[2,2]@0"));
    REQUIRE(steep.factors.size() == 2);
    CHECK(steep.factors[0].obj == nf("I[1,1]@-1"));
    CHECK(*steep.factors[0].s.mu == qs3(2));
    CHECK(steep.factors[1].obj == nf("I[1,2]@0"));
    CHECK(*steep.factors[1].s.mu == qs3(1));
    auto flat = mu_hn(g, pt("1/2", "1"), nf("I[2,2]@0"));
    REQUIRE(flat.factors.size() == 1);
    CHECK(*flat.factors[0].s.mu == qs3(rational(3, 4)));
    CHECK(*mu_plus(g, pt("1/2", "1"), nf("I[2,2]@0"))->mu == qs3(rational(3, 4)));
    CHECK(*mu_minus(g, pt("1/2", "1"), nf("I[2,2]@0"))->mu == qs3(rational(3, 4)));
    auto sum = mu_hn(g, pt("1/2", "1"), nf("I[1,2]@0 + I[1,1]@-1"));
    REQUIRE(sum.factors.size() == 2);
    CHECK(sum.factors[0].obj == nf("I[1,2]@0"));
    CHECK(sum.factors[1].obj == nf("I[1,1]@-1"));
    /* kernel of M split off at a torsion point */
    glued_model t = model0("-1");
    auto ser = mu_hn(t, pt("1/2", "1"), nf("I[1,2]@0"));
    CHECK(ser.factors.empty());
    CHECK(ser.serre_part == nf("I[1,2]@0"));
    /* non-discrete factors are refused */
    glued_model irr = glue_stability(d0_context(point_stability(cplx::parse("r3+i"))));
    CHECK_THROWS_AS(mu_hn(irr, pt("1/2", "1"), nf("I[1,2]@0")), std::domain_error);
}

TEST_CASE("slope filtration agrees with brute force")
{
    for (const auto& g : {model0("i"), model0("-1+i"), model1("i"), model1("1/2+3i")}) {
        auto corpus = glued_heart_corpus(g, 3, -1, 1);
        for (const auto& p : sample_points()) {
            central_charge m = slope_charge(g, p);
            oracle::brute_hn brute(g.sigma().hrt(), m);
            stability_condition sm(g.sigma().hrt(), m);
            for (const auto& e : corpus) {
                auto mine = mu_hn(g, p, e);
                auto theirs = brute.hn(e);
                REQUIRE(mine.serre_part.empty());
                REQUIRE(mine.factors.size() == theirs.size());
                for (size_t i = 0; i < theirs.size(); ++i) {
                    CHECK(k0_of_nf(2, mine.factors[i].obj) == theirs[i].cls);
                    if (i > 0) CHECK(cmp_slope(mine.factors[i - 1].s, mine.factors[i].s) > 0);
                }
                auto eng = hn_filtration(sm, e);
                REQUIRE(eng.size() == mine.factors.size());
                for (size_t i = 0; i < eng.size(); ++i) CHECK(eng[i].obj == canonical_nf(mine.factors[i].obj));
                CHECK(cmp_slope(*mu_plus(g, p, e), mine.factors.front().s) == 0);
                CHECK(cmp_slope(*mu_minus(g, p, e), mine.factors.back().s) == 0);
            }
        }
    }
}

TEST_CASE("seesaw on short exact sequences")
{
    glued_model g = model0("-1+i");
    const auto& s = g.sigma();
    for (const auto& p : sample_points())
        for (const auto& e : glued_heart_corpus(g, 3, -1, 1))
            for (const auto& u : subobject_types(s, e)) {
                if (u == canonical_nf(e)) continue;
                normal_form q = quotient(s, u, e);
                slope_value a = slope(g, p, u), b = slope(g, p, e), c = slope(g, p, q);
                int ab = cmp_slope(a, b), bc = cmp_slope(b, c);
                CHECK(ab == bc);
            }
}

TEST_CASE("tilted hearts across beta")
{
    glued_model g = model0("i");
    heart gl0 = g.sigma().hrt();
    heart standard = heart::standard(2);
    heart gl1 = compute_glued_heart(d1_context(point_stability(cplx::i())));
    for (int k = -8; k <= 8; ++k)
        for (const char* w : {"1/2", "2"}) {
            plane_point p{qs3(rational(k, 4)), qs3::parse(w)};
            /* slopes of the three glued heart indecomposables: 1, beta, (1 + beta)/2 */
            rational b(k, 4);
            heart expect = b > 0 ? gl0 : (b > -1 ? standard : gl1);
            CHECK(tilt_heart(g, p) == expect);
            tilt_model t(g, p);
            CHECK(t.classes().at({1, 1}) == (b > 0 ? tilt_class::torsion : tilt_class::free));
            CHECK(t.classes().at({2, 2}) == (b > -1 ? tilt_class::torsion : tilt_class::free));
            CHECK(t.classes().at({1, 2}) == tilt_class::torsion);
        }
    /* torsion factors: every glued object lies in the torsion class */
    glued_model t = model0("-1");
    CHECK(tilt_heart(t, pt("-5", "1/3")) == t.sigma().hrt());
}

TEST_CASE("tilt membership reports")
{
    glued_model g = model0("-1+i");
    for (const auto& p : sample_points()) {
        for (const auto& e : glued_heart_corpus(g, 4, -1, 1)) {
            tilt_report r = tilt_membership(g, p, e);
            CHECK(nf_sum(r.torsion_part, r.free_part) == canonical_nf(e));
            if (r.mono_checked) CHECK(r.mono_ok);
            if (r.cls == tilt_class::free) {
                CHECK(slope_sign(*mu_plus(g, p, e)) <= 0);
                CHECK(glued_torsion_membership(g, e).kind == glued_kind::free);
            }
        }
        /* Hom(T, F) = 0 */
        auto ind = g.sigma().hrt().indecomposables();
        for (const auto& a : ind)
            for (const auto& b : ind)
                if (tilt_membership(g, p, {a}).cls == tilt_class::torsion && tilt_membership(g, p, {b}).cls == tilt_class::free)
                    CHECK(hom_dim_nf({a}, {b}) == 0);
    }
    glued_model h = model0("i");
    auto mixed = tilt_membership(h, pt("-1/2", "1"), nf("I[1,2]@0 + I[1,1]@-1"));
    CHECK(mixed.cls == tilt_class::neither);
    CHECK(mixed.torsion_part == nf("I[1,2]@0"));
    CHECK(mixed.free_part == nf("I[1,1]@-1"));
    CHECK(truncation_map_is_mono(h, nf("I[1,1]@-1")));
    CHECK(truncation_map_is_mono(h, nf("I[2,2]@0")));
}

TEST_CASE("tilted central charge")
{
    for (const char* z : {"i", "-1+i", "1/2+3i"})
        for (const auto& ctx : {d0_context(point_stability(cplx::parse(z))), d1_context(point_stability(cplx::parse(z)))})
            CHECK(z_tilde(ctx, pt("1", "0")) == glued_charge(ctx));
    glued_model g = model0("i");
    plane_point p = pt("1/3", "2/5");
    CHECK(z_tilde(g, p).of(nf("I[2,2]@0")) == cplx(p.omega, qs3(1) + p.beta));
    cplx e = z_tilde(g, endpoint()).of(nf("I[2,2]@0"));
    CHECK(e == cplx::unit_root12(1));
    CHECK(e == cplx(qs3(rational(0), rational(1, 2)), qs3(rational(1, 2))));
}

TEST_CASE("sigma tilde construction")
{
    glued_model g = model0("i");
    tilt_model at_glue = build_sigma_tilde(g, pt("1", "0"));
    CHECK(at_glue.hrt() == g.sigma().hrt());
    CHECK(at_glue.sigma().charge() == g.sigma().charge());
    for (const auto& p : {pt("1/2", "1/2"), endpoint(), pt("-7/5", "1/10")}) {
        tilt_model t = build_sigma_tilde(g, p);
        auto v = validate_sigma_tilde(t, a2_corpus(4, -1, 1));
        CHECK(v.ok);
        CHECK(v.heart_objects > 0);
        CHECK(v.hn_checked > 0);
    }
    CHECK_FALSE(build_sigma_tilde(g, endpoint()).rational_point());
    CHECK_THROWS_AS(tilt_model(g, pt("2", "-1")), std::invalid_argument);
    CHECK_THROWS_AS(tilt_model(g, pt("0", "0")), std::invalid_argument);
    glued_model irr = glue_stability(d0_context(point_stability(cplx::parse("r3+i"))));
    CHECK_THROWS_AS(tilt_model(irr, pt("1/2", "1/2")), std::domain_error);
    tilt_options o;
    o.outside_hypotheses = true;
    CHECK(tilt_model(irr, pt("1/2", "1/2"), o).outside_hypotheses());
}

TEST_CASE("free objects with vanishing imaginary part")
{
    /* at beta = -1 the class of I[2,2]@0 has Z~ real; it sits in the free class */
    glued_model g = model0("i");
    tilt_model t(g, pt("-1", "1/2"));
    CHECK(z_tilde(g, t.point()).of(nf("I[2,2]@0")).im.is_zero());
    auto v = validate_sigma_tilde(t, glued_heart_corpus(g, 3, -1, 1));
    CHECK(v.ok);
    CHECK(v.bound_checked > 0);
}

TEST_CASE("degenerate slope charge keeps the support form negative on its kernel")
{
    /* at beta = 1 and Z(k) = i the slopes of I[1,2]@0 and I[1,1]@-1 coincide, so M has a kernel */
    glued_model g = model0("i");
    auto r = serre_support_check(g, pt("1", "1"), glued_heart_corpus(g, 3, -1, 1));
    CHECK(r.kernel_dim == 1);
    CHECK(r.kernel_negative_definite);
    CHECK(theta_bounds{}.applicable == false);
    CHECK_FALSE(compute_theta_bounds(endpoint(), region_params(rational(1, 3), rational(-1, 2))).applicable);
}

TEST_CASE("support form on slope semistables")
{
    for (const auto& g : {model0("i"), model0("-1+i"), model1("1/2+3i"), model0("-1")}) {
        qs3_matrix q = serre_support_form(g);
        CHECK(q[0][1] == q[1][0]);
        /* i1 of the point has one vanishing factor */
        CHECK(support_value(g, k0_of_nf(2, nf(g.ctx().side == sod_side::sod0 ? "I[1,2]@0" : "I[2,2]@0"))).is_zero());
        for (const auto& p : sample_points()) {
            auto r = serre_support_check(g, p, glued_heart_corpus(g, 4, -1, 1));
            CHECK(r.ok());
            CHECK(r.semistable_checked > 0);
            CHECK(r.kernel_dim <= 1);
        }
    }
}

TEST_CASE("argument sectors on the region")
{
    region_params reg(rational(1, 3), rational(-1, 2));
    for (const auto& g : {model0("i"), model0("-1+i"), model1("i")}) {
        size_t checked = 0;
        for (const auto& p : {pt("1/2", "1/2"), pt("0", "1"), pt("-1/3", "1"), pt("1", "1/10"), endpoint()}) {
            REQUIRE(region_membership(p, reg).in_hplus);
            REQUIRE(region_membership(p, reg).in_hminus);
            tilt_model t(g, p);
            auto r = sector_sweep(t, reg, glued_heart_corpus(g, 4, -1, 1));
            CHECK(r.ok());
            checked += r.window_checked + r.steep_checked;
            if (!r.theta.applicable) continue;
            CHECK(r.theta.theta0.lo() > 0);
            CHECK(r.theta.theta0.hi() < 3.1415926535);
            CHECK(r.theta.theta2.hi() <= 0);
        }
        CHECK(checked > 0);
    }
}
