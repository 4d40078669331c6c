#pragma once

#include "stabglue/interval.hpp"
#include "stabglue/scalar.hpp"

#include <cstdint>
#include <optional>
#include <string>

namespace stabglue {

/* a real number known by an outward enclosure, exactly when possible */
struct real_value {
    real_iv enclosure;
    std::optional<qs3> exact;
    std::optional<qs3> exact_square;

    double approx() const { return exact ? exact->to_double() : enclosure.mid(); }
    std::string str() const;
};

/* an angle t*pi */
struct angle_value {
    real_iv radians;
    std::optional<rational> pi_multiple;

    double approx() const { return radians.mid(); }
};

struct angle_interval {
    double lo = 0;
    double hi = 0;
    bool lo_open = false;
    bool hi_open = false;

    angle_interval() = default;
    angle_interval(double l, double h, bool lo_o, bool hi_o);
    bool contains(double x) const;
};

/* arg z in (-pi, pi]; exact on multiples of pi/6 */
angle_value arg_principal(const cplx& z);

/* exact cos(t pi), sin(t pi) when 6t is an integer */
std::optional<qs3> exact_cos_pi(const rational& t);
std::optional<qs3> exact_sin_pi(const rational& t);
std::optional<cplx> exact_unit(const rational& t);

/* sqrt(2+2cos(t pi))/2 for t in [0,1); t = 0 is the closure value 1 */
real_value angle_sum_lower_bound(const rational& t);
/* 2/sqrt(2+2cos(t pi)) for t in [0,1) */
real_value ratio_sup_bound(const rational& t);

struct angle_sum_report {
    bool hypothesis_met = false;
    bool holds = false;
    bool equality = false;
    std::string note;
    qs3 lhs_square;     /* |z1+z2|^2 */
    double lhs = 0;     /* |z1+z2| */
    double rhs = 0;     /* bound * (|z1|+|z2|) */
};

angle_sum_report check_angle_sum_inequality(const cplx& z1, const cplx& z2, const rational& t);

/* |z2|^2 / |z1+z2|^2 */
qs3 ratio_square(const cplx& z1, const cplx& z2);

struct region_params {
    rational eps1;
    rational eps2;

    region_params() = default;
    region_params(rational e1, rational e2);
};

struct plane_point {
    qs3 beta;
    qs3 omega;

    std::string str() const;
};

/* point known only by enclosures */
struct plane_point_iv {
    real_iv beta;
    real_iv omega;
};

struct region_report {
    bool in_hplus = false;
    bool in_hminus = false;
    bool boundary = false;
    qs3 hplus1, hplus2, hminus1, hminus2;
};

region_report region_membership(const plane_point& p, const region_params& r);
/* interval version; throws std::domain_error when an inequality is undecided */
region_report region_membership(const plane_point_iv& p, const region_params& r);

struct kernel_sampling_report {
    rational t;
    size_t samples = 0;
    size_t rejected = 0;
    size_t violations = 0;
    size_t equalities = 0;
    qs3 max_ratio_square;
    cplx argmax_z1, argmax_z2;
    bool ratio_bound_ok = true;
};

/* seeded admissible pairs for the angle-sum inequality and the ratio bound */
kernel_sampling_report run_kernel_sampling(const rational& t, size_t samples, std::uint64_t seed);

}  // namespace stabglue
