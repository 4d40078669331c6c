#include "stabglue/interval.hpp"

#include <algorithm>
#include <sstream>
#include <stdexcept>

namespace stabglue {

namespace {

void set_q(mpfr_t r, const rational& q, mpfr_rnd_t rnd) { mpfr_set_q(r, q.get_mpq_t(), rnd); }

}  // namespace

real_iv::real_iv()
{
    mpfr_init2(lo_, k_interval_bits);
    mpfr_init2(hi_, k_interval_bits);
    mpfr_set_zero(lo_, 1);
    mpfr_set_zero(hi_, 1);
}

real_iv::real_iv(long v) : real_iv(rational(v)) {}

real_iv::real_iv(const rational& q)
{
    mpfr_init2(lo_, k_interval_bits);
    mpfr_init2(hi_, k_interval_bits);
    set_q(lo_, q, MPFR_RNDD);
    set_q(hi_, q, MPFR_RNDU);
}

real_iv::real_iv(const qs3& x) : real_iv(x.rat())
{
    if (!x.is_rational()) *this = *this + real_iv(x.irr()) * real_iv(3).sqrt();
}

real_iv::real_iv(const real_iv& o)
{
    mpfr_init2(lo_, k_interval_bits);
    mpfr_init2(hi_, k_interval_bits);
    mpfr_set(lo_, o.lo_, MPFR_RNDD);
    mpfr_set(hi_, o.hi_, MPFR_RNDU);
}

real_iv::real_iv(real_iv&& o) noexcept : real_iv(static_cast<const real_iv&>(o)) {}

real_iv& real_iv::operator=(real_iv o) noexcept
{
    mpfr_swap(lo_, o.lo_);
    mpfr_swap(hi_, o.hi_);
    return *this;
}

real_iv::~real_iv()
{
    mpfr_clear(lo_);
    mpfr_clear(hi_);
}

real_iv real_iv::pi()
{
    real_iv r;
    mpfr_const_pi(r.lo_, MPFR_RNDD);
    mpfr_const_pi(r.hi_, MPFR_RNDU);
    return r;
}

real_iv real_iv::sin_pi(const rational& q)
{
    real_iv x = pi() * real_iv(q);
    real_iv r;
    mpfr_t m, rad;
    mpfr_inits2(k_interval_bits, m, rad, (mpfr_ptr)0);
    mpfr_add(m, x.lo_, x.hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    /* radius covering both endpoints from m */
    mpfr_t d1, d2;
    mpfr_inits2(k_interval_bits, d1, d2, (mpfr_ptr)0);
    mpfr_sub(d1, x.hi_, m, MPFR_RNDU);
    mpfr_sub(d2, m, x.lo_, MPFR_RNDU);
    mpfr_max(rad, d1, d2, MPFR_RNDU);
    mpfr_sin(r.lo_, m, MPFR_RNDD);
    mpfr_sin(r.hi_, m, MPFR_RNDU);
    mpfr_sub(r.lo_, r.lo_, rad, MPFR_RNDD);
    mpfr_add(r.hi_, r.hi_, rad, MPFR_RNDU);
    mpfr_clears(m, rad, d1, d2, (mpfr_ptr)0);
    if (mpfr_cmp_si(r.lo_, -1) < 0) mpfr_set_si(r.lo_, -1, MPFR_RNDD);
    if (mpfr_cmp_si(r.hi_, 1) > 0) mpfr_set_si(r.hi_, 1, MPFR_RNDU);
    return r;
}

real_iv real_iv::cos_pi(const rational& q) { return sin_pi(rational(1, 2) - q); }

real_iv real_iv::arg(const cplx& z)
{
    if (z.is_zero()) throw std::domain_error("argument of zero");
    if (z.im.is_zero()) return z.re.sign() > 0 ? real_iv(0) : pi();
    if (z.re.is_zero()) return z.im.sign() > 0 ? pi() * real_iv(rational(1, 2)) : pi() * real_iv(rational(-1, 2));
    real_iv x(z.re), y(z.im);
    if (y.contains_zero() && z.re.sign() < 0)
        throw std::domain_error("argument enclosure straddles the branch cut");
    real_iv r;
    mpfr_set_inf(r.lo_, 1);
    mpfr_set_inf(r.hi_, -1);
    mpfr_t t;
    mpfr_init2(t, k_interval_bits);
    mpfr_srcptr xs[2] = {x.lo_, x.hi_};
    mpfr_srcptr ys[2] = {y.lo_, y.hi_};
    for (auto xv : xs)
        for (auto yv : ys) {
            mpfr_atan2(t, yv, xv, MPFR_RNDD);
            mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
            mpfr_atan2(t, yv, xv, MPFR_RNDU);
            mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        }
    mpfr_clear(t);
    return r;
}

real_iv real_iv::hull(const real_iv& a, const real_iv& b)
{
    real_iv r;
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

real_iv real_iv::max(const real_iv& a, const real_iv& b)
{
    real_iv r;
    mpfr_max(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_max(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

real_iv real_iv::min(const real_iv& a, const real_iv& b)
{
    real_iv r;
    mpfr_min(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_min(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

real_iv real_iv::sqrt() const
{
    if (mpfr_sgn(lo_) < 0) throw std::domain_error("sqrt of an interval reaching below zero");
    real_iv r;
    mpfr_sqrt(r.lo_, lo_, MPFR_RNDD);
    mpfr_sqrt(r.hi_, hi_, MPFR_RNDU);
    return r;
}

real_iv real_iv::abs() const
{
    if (mpfr_sgn(lo_) >= 0) return *this;
    if (mpfr_sgn(hi_) <= 0) return -*this;
    real_iv r;
    mpfr_set_zero(r.lo_, 1);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    mpfr_max(r.hi_, r.hi_, hi_, MPFR_RNDU);
    return r;
}

real_iv real_iv::operator-() const
{
    real_iv r;
    mpfr_neg(r.lo_, hi_, MPFR_RNDD);
    mpfr_neg(r.hi_, lo_, MPFR_RNDU);
    return r;
}

real_iv operator+(const real_iv& a, const real_iv& b)
{
    real_iv r;
    mpfr_add(r.lo_, a.lo_, b.lo_, MPFR_RNDD);
    mpfr_add(r.hi_, a.hi_, b.hi_, MPFR_RNDU);
    return r;
}

real_iv operator-(const real_iv& a, const real_iv& b) { return a + (-b); }

real_iv operator*(const real_iv& a, const real_iv& b)
{
    real_iv r;
    mpfr_set_inf(r.lo_, 1);
    mpfr_set_inf(r.hi_, -1);
    mpfr_t t;
    mpfr_init2(t, k_interval_bits);
    mpfr_srcptr as[2] = {a.lo_, a.hi_};
    mpfr_srcptr bs[2] = {b.lo_, b.hi_};
    for (auto x : as)
        for (auto y : bs) {
            mpfr_mul(t, x, y, MPFR_RNDD);
            mpfr_min(r.lo_, r.lo_, t, MPFR_RNDD);
            mpfr_mul(t, x, y, MPFR_RNDU);
            mpfr_max(r.hi_, r.hi_, t, MPFR_RNDU);
        }
    mpfr_clear(t);
    return r;
}

real_iv operator/(const real_iv& a, const real_iv& b)
{
    if (b.contains_zero()) throw std::domain_error("interval division by an interval containing zero");
    real_iv inv;
    mpfr_t one;
    mpfr_init2(one, k_interval_bits);
    mpfr_set_ui(one, 1, MPFR_RNDN);
    mpfr_div(inv.lo_, one, b.hi_, MPFR_RNDD);
    mpfr_div(inv.hi_, one, b.lo_, MPFR_RNDU);
    mpfr_clear(one);
    return a * inv;
}

double real_iv::lo() const { return mpfr_get_d(lo_, MPFR_RNDD); }
double real_iv::hi() const { return mpfr_get_d(hi_, MPFR_RNDU); }

double real_iv::mid() const
{
    mpfr_t m;
    mpfr_init2(m, k_interval_bits + 1);
    mpfr_add(m, lo_, hi_, MPFR_RNDN);
    mpfr_div_2ui(m, m, 1, MPFR_RNDN);
    double d = mpfr_get_d(m, MPFR_RNDN);
    mpfr_clear(m);
    return d;
}

double real_iv::width() const
{
    mpfr_t w;
    mpfr_init2(w, k_interval_bits);
    mpfr_sub(w, hi_, lo_, MPFR_RNDU);
    double d = mpfr_get_d(w, MPFR_RNDU);
    mpfr_clear(w);
    return d;
}

bool real_iv::contains_zero() const { return mpfr_sgn(lo_) <= 0 && mpfr_sgn(hi_) >= 0; }

int real_iv::sign() const
{
    if (mpfr_sgn(lo_) > 0) return 1;
    if (mpfr_sgn(hi_) < 0) return -1;
    if (mpfr_zero_p(lo_) && mpfr_zero_p(hi_)) return 0;
    throw std::domain_error("interval comparison undecided: " + str());
}

std::string real_iv::str() const
{
    std::ostringstream os;
    os.precision(20);
    os << "[" << lo() << ", " << hi() << "]";
    return os.str();
}

bool certified_less(const real_iv& a, const real_iv& b) { return (b - a).sign() > 0; }

}  // namespace stabglue
