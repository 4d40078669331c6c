#include "stabglue/geometry_kernel.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace stabglue {

std::string real_value::str() const
{
    if (exact) return exact->str();
    if (exact_square) return "sqrt(" + exact_square->str() + ")";
    return enclosure.str();
}

angle_interval::angle_interval(double l, double h, bool lo_o, bool hi_o) : lo(l), hi(h), lo_open(lo_o), hi_open(hi_o)
{
    if (!(lo <= hi)) throw std::invalid_argument("angle_interval: lo > hi");
    if (hi - lo >= 2 * 3.14159265358979323846) throw std::invalid_argument("angle_interval: width must be below 2pi");
}

bool angle_interval::contains(double x) const
{
    if (x < lo || (lo_open && x == lo)) return false;
    if (x > hi || (hi_open && x == hi)) return false;
    return true;
}

namespace {

bool is_int(const rational& q) { return q.get_den() == 1; }

/* positive multiple of e^{i t pi} when 4t or 6t is an integer */
std::optional<cplx> exact_direction(const rational& t)
{
    if (auto u = exact_unit(t)) return u;
    rational q = 4 * t;
    if (!is_int(q)) return std::nullopt;
    long k = ((q.get_num().get_si() % 8) + 8) % 8;
    static const int dx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
    static const int dy[8] = {0, 1, 1, 1, 0, -1, -1, -1};
    return cplx(qs3(dx[k]), qs3(dy[k]));
}

void require_angle(const rational& t)
{
    if (sgn(t) < 0 || t >= 1) throw std::domain_error("angle must lie in [0, pi)");
}

/* -1/0/1 comparing arg w (w in the closed upper half plane, nonzero) with t pi */
int cmp_arg_with(const cplx& w, const rational& t)
{
    if (auto d = exact_direction(t)) return -cross(w, *d).sign();
    return (real_iv::arg(w) - real_iv::pi() * real_iv(t)).sign();
}

}  // namespace

std::optional<cplx> exact_unit(const rational& t)
{
    rational q = 6 * t;
    if (!is_int(q)) return std::nullopt;
    return cplx::unit_root12(static_cast<int>(q.get_num().get_si() % 12));
}

std::optional<qs3> exact_cos_pi(const rational& t)
{
    if (auto u = exact_unit(t)) return u->re;
    return std::nullopt;
}

std::optional<qs3> exact_sin_pi(const rational& t)
{
    if (auto u = exact_unit(t)) return u->im;
    return std::nullopt;
}

angle_value arg_principal(const cplx& z)
{
    if (z.is_zero()) throw std::domain_error("arg_principal: zero input");
    for (int k = 0; k < 12; ++k) {
        cplx u = cplx::unit_root12(k);
        if (cross(u, z).is_zero() && dot(u, z).sign() > 0) {
            rational t(k <= 6 ? k : k - 12, 6);
            t.canonicalize();
            return {real_iv::pi() * real_iv(t), t};
        }
    }
    for (int k = 1; k < 8; k += 2) {
        static const int dx[8] = {1, 1, 0, -1, -1, -1, 0, 1};
        static const int dy[8] = {0, 1, 1, 1, 0, -1, -1, -1};
        cplx u(qs3(dx[k]), qs3(dy[k]));
        if (cross(u, z).is_zero() && dot(u, z).sign() > 0) {
            rational t(k <= 4 ? k : k - 8, 4);
            t.canonicalize();
            return {real_iv::pi() * real_iv(t), t};
        }
    }
    return {real_iv::arg(z), std::nullopt};
}

real_value angle_sum_lower_bound(const rational& t)
{
    require_angle(t);
    real_value r;
    rational half = t / 2;
    if (auto c = exact_cos_pi(t)) r.exact_square = (qs3(2) + qs3(2) * *c) / qs3(4);
    if (auto c = exact_cos_pi(half)) {
        r.exact = *c;
        r.exact_square = *c * *c;
        r.enclosure = real_iv(*c);
    } else {
        r.enclosure = real_iv::cos_pi(half);
    }
    return r;
}

real_value ratio_sup_bound(const rational& t)
{
    real_value c = angle_sum_lower_bound(t);
    real_value r;
    if (c.exact) r.exact = c.exact->inverse();
    if (c.exact_square) r.exact_square = c.exact_square->inverse();
    r.enclosure = real_iv(1) / c.enclosure;
    return r;
}

qs3 ratio_square(const cplx& z1, const cplx& z2) { return z2.norm2() / (z1 + z2).norm2(); }

namespace {

/* double enclosure of a nonnegative element, padded for cancellation between the two parts */
std::pair<double, double> padded(const qs3& x)
{
    double a = x.rat().get_d(), b = x.irr().get_d();
    double v = a + b * std::sqrt(3.0);
    double e = 1e-13 * (std::abs(a) + 2 * std::abs(b));
    return {std::max(0.0, v - e), v + e};
}

/* true when sqrt(s) > c (sqrt(n1) + sqrt(n2)) is certain in double precision */
bool clearly_strict(const qs3& s, const qs3& n1, const qs3& n2, const real_value& c)
{
    auto [s_lo, s_hi] = padded(s);
    double n1_hi = padded(n1).second, n2_hi = padded(n2).second;
    double rhs = c.enclosure.hi() * (std::sqrt(n1_hi) + std::sqrt(n2_hi));
    return std::sqrt(s_lo) > rhs * (1 + 1e-12);
}

struct angle_data {
    rational t;
    real_value lower;
    std::optional<cplx> edge;
};

angle_data make_angle_data(const rational& t) { return {t, angle_sum_lower_bound(t), exact_direction(t)}; }

angle_sum_report check_with_bound(const cplx& z1, const cplx& z2, const angle_data& ad)
{
    const rational& t = ad.t;
    const real_value& c = ad.lower;
    angle_sum_report rep;
    if (z1.is_zero() || z2.is_zero()) {
        rep.note = "hypothesis not met: zero input";
        return rep;
    }
    if (sgn(t) < 0 || t >= 1) {
        rep.note = "hypothesis not met: theta outside [0, pi)";
        return rep;
    }
    if (cmp_arg(z1, z2) < 0) {
        rep.note = "hypothesis not met: arg z1 < arg z2";
        return rep;
    }
    cplx w = z1 * z2.conj();
    if (w.im.sign() < 0 || (w.im.is_zero() && w.re.sign() < 0) || (ad.edge ? -cross(w, *ad.edge).sign() : cmp_arg_with(w, t)) > 0) {
        rep.note = "hypothesis not met: arg z1 - arg z2 exceeds theta";
        return rep;
    }
    rep.hypothesis_met = true;
    qs3 s = (z1 + z2).norm2();
    qs3 n1 = z1.norm2(), n2 = z2.norm2();
    rep.lhs_square = s;
    rep.lhs = std::sqrt(s.to_double());
    rep.rhs = c.approx() * (std::sqrt(n1.to_double()) + std::sqrt(n2.to_double()));
    if (clearly_strict(s, n1, n2, c)) {
        rep.holds = true;
    } else if (c.exact_square) {
        /* s - c2 (n1+n2) >= 2 c2 sqrt(n1 n2), both sides squared */
        const qs3& c2 = *c.exact_square;
        qs3 a = s - c2 * (n1 + n2);
        qs3 b = qs3(2) * c2;
        if (a.sign() < 0) {
            rep.holds = false;
        } else {
            qs3 lhs = a * a, rhs = b * b * n1 * n2;
            rep.holds = lhs >= rhs;
            rep.equality = lhs == rhs;
        }
    } else {
        real_iv diff = real_iv(s).sqrt() - c.enclosure * (real_iv(n1).sqrt() + real_iv(n2).sqrt());
        rep.holds = diff.sign() >= 0;
    }
    rep.note = rep.holds ? (rep.equality ? "holds with equality" : "holds") : "violated";
    return rep;
}

}  // namespace

angle_sum_report check_angle_sum_inequality(const cplx& z1, const cplx& z2, const rational& t)
{
    if (sgn(t) < 0 || t >= 1) return check_with_bound(z1, z2, angle_data{t, {}, std::nullopt});
    return check_with_bound(z1, z2, make_angle_data(t));
}

region_params::region_params(rational e1, rational e2) : eps1(std::move(e1)), eps2(std::move(e2))
{
    if (!(sgn(eps1) > 0 && eps1 < rational(1, 2))) throw std::invalid_argument("eps1 must lie in (0, 1/2)");
    if (!(sgn(eps2) < 0)) throw std::invalid_argument("eps2 must be negative");
}

std::string plane_point::str() const { return "(" + beta.str() + ", " + omega.str() + ")"; }

region_report region_membership(const plane_point& p, const region_params& r)
{
    region_report rep;
    const qs3& b = p.beta;
    const qs3& w = p.omega;
    qs3 e1(r.eps1), e2(r.eps2);
    qs3 w2 = w * w;
    qs3 b1 = b + qs3(1);
    rep.hplus1 = w2 + b1 * b1 - qs3(2) * e1;
    qs3 t1 = b1 - qs3(2) * e1;
    rep.hplus2 = w2 + t1 * t1 + qs3(2) * (qs3(1) - qs3(2) * e1) * (e1 - qs3(1));
    rep.hminus1 = qs3(2) * b + qs3(1) - qs3(2) * e2;
    qs3 t2 = b1 - qs3(2) * e2;
    rep.hminus2 = w2 + t2 * t2 + qs3(2) * e2 * (qs3(1) - qs3(2) * e2);
    if (w.sign() <= 0) {
        rep.boundary = true;
        return rep;
    }
    rep.in_hplus = rep.hplus1.sign() > 0 && rep.hplus2.sign() > 0;
    rep.in_hminus = rep.hminus1.sign() > 0 && rep.hminus2.sign() > 0;
    return rep;
}

region_report region_membership(const plane_point_iv& p, const region_params& r)
{
    region_report rep;
    if (p.omega.sign() <= 0) {
        rep.boundary = true;
        return rep;
    }
    const real_iv& b = p.beta;
    const real_iv& w = p.omega;
    real_iv e1(r.eps1), e2(r.eps2), one(1), two(2);
    real_iv w2 = w * w;
    real_iv b1 = b + one;
    real_iv t1 = b1 - two * e1;
    real_iv t2 = b1 - two * e2;
    int s1 = (w2 + b1 * b1 - two * e1).sign();
    int s2 = (w2 + t1 * t1 + two * (one - two * e1) * (e1 - one)).sign();
    int s3 = (two * b + one - two * e2).sign();
    int s4 = (w2 + t2 * t2 + two * e2 * (one - two * e2)).sign();
    rep.in_hplus = s1 > 0 && s2 > 0;
    rep.in_hminus = s3 > 0 && s4 > 0;
    return rep;
}

kernel_sampling_report run_kernel_sampling(const rational& t, size_t samples, std::uint64_t seed)
{
    require_angle(t);
    kernel_sampling_report rep;
    rep.t = t;
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<int> coord(-40, 40), den(1, 7), lam(0, 3000), mode(0, 7);
    cplx dir;
    if (auto u = exact_unit(t)) {
        dir = *u;
    } else {
        /* rational direction inside the sector */
        real_iv c = real_iv::cos_pi(t), s = real_iv::sin_pi(t);
        const long scale = 1000000;
        rational cr(static_cast<long>(std::ceil(c.hi() * scale)), scale);
        rational sr(static_cast<long>(std::floor(s.lo() * scale)), scale);
        cr.canonicalize();
        sr.canonicalize();
        dir = cplx(qs3(cr), qs3(sr));
    }
    real_value bound = ratio_sup_bound(t);
    angle_data ad = make_angle_data(t);
    qs3 max_num, max_den;
    double max_lo = 0;
    double bound_lo = bound.enclosure.lo() * bound.enclosure.lo() * (1 - 1e-12);
    bool have_max = false;
    while (rep.samples < samples) {
        int a = coord(rng), b = coord(rng);
        if (a == 0 && b == 0) continue;
        rational d(den(rng));
        long lv = lam(rng), mv = lam(rng);
        int md = mode(rng);
        if (md == 0) lv = 0;
        if (md == 1) mv = 0;
        if (lv == 0 && mv == 0) continue;
        /* the pair z2 = (a+bi)/d, z1 = z2 (l + m dir) with l, m in thousandths, scaled by 1000 d */
        cplx base{qs3(a), qs3(b)};
        cplx z2 = base * cplx(qs3(1000));
        cplx z1 = base * (cplx(qs3(lv)) + cplx(qs3(mv)) * dir);
        angle_sum_report r = check_with_bound(z1, z2, ad);
        if (!r.hypothesis_met) {
            ++rep.rejected;
            continue;
        }
        ++rep.samples;
        if (!r.holds) ++rep.violations;
        if (r.equality) ++rep.equalities;
        /* q = n2 / s, compared by cross multiplication after a padded double screen */
        qs3 n2 = z2.norm2();
        const qs3& sq = r.lhs_square;
        auto [n2_lo, n2_hi] = padded(n2);
        auto [s_lo, s_hi] = padded(sq);
        double q_hi = s_lo > 0 ? n2_hi / s_lo : INFINITY;
        if (!have_max || (!(q_hi < max_lo) && n2 * max_den > max_num * sq)) {
            have_max = true;
            max_num = n2;
            max_den = sq;
            max_lo = s_hi > 0 ? n2_lo / s_hi * (1 - 1e-12) : 0;
            rep.max_ratio_square = n2 / sq;
            cplx scale(qs3(1 / (1000 * d)));
            rep.argmax_z1 = z1 * scale;
            rep.argmax_z2 = z2 * scale;
        }
        bool ok = q_hi < bound_lo;
        if (!ok) {
            qs3 q = n2 / sq;
            ok = bound.exact_square ? q <= *bound.exact_square : (real_iv(q).sqrt() - bound.enclosure).sign() <= 0;
        }
        if (!ok) rep.ratio_bound_ok = false;
    }
    return rep;
}

}  // namespace stabglue
