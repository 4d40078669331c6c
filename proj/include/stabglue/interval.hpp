#pragma once

#include "stabglue/scalar.hpp"

#include <mpfr.h>

#include <string>

namespace stabglue {

constexpr mpfr_prec_t k_interval_bits = 128;

/* closed real interval [lo, hi] with outward rounding */
class real_iv {
public:
    real_iv();
    real_iv(long v);
    real_iv(const rational& q);
    real_iv(const qs3& x);
    real_iv(const real_iv& o);
    real_iv(real_iv&& o) noexcept;
    real_iv& operator=(real_iv o) noexcept;
    ~real_iv();

    static real_iv pi();
    /* sin(pi q), cos(pi q) */
    static real_iv sin_pi(const rational& q);
    static real_iv cos_pi(const rational& q);
    /* principal argument of an exact nonzero complex */
    static real_iv arg(const cplx& z);
    static real_iv hull(const real_iv& a, const real_iv& b);
    static real_iv max(const real_iv& a, const real_iv& b);
    static real_iv min(const real_iv& a, const real_iv& b);

    real_iv sqrt() const;
    real_iv abs() const;
    real_iv operator-() const;
    friend real_iv operator+(const real_iv& a, const real_iv& b);
    friend real_iv operator-(const real_iv& a, const real_iv& b);
    friend real_iv operator*(const real_iv& a, const real_iv& b);
    friend real_iv operator/(const real_iv& a, const real_iv& b);

    double lo() const;
    double hi() const;
    double mid() const;
    double width() const;
    bool contains_zero() const;
    /* -1, 0 or 1; 0 only for the degenerate [0,0]; throws when undecided */
    int sign() const;
    std::string str() const;

private:
    mpfr_t lo_;
    mpfr_t hi_;
};

/* certified comparison a < b; throws std::domain_error when undecided */
bool certified_less(const real_iv& a, const real_iv& b);

}  // namespace stabglue
