#include "doctest.h"

#include "stabglue/interval.hpp"
#include "stabglue/linalg.hpp"
#include "stabglue/scalar.hpp"

#include <random>

using namespace stabglue;

TEST_CASE("rational literals")
{
    CHECK(parse_rational("3/6") == rational(1, 2));
    CHECK(parse_rational("-0.25") == rational(-1, 4));
    CHECK(parse_rational("7") == 7);
    CHECK_THROWS_AS(parse_rational("1/0"), std::invalid_argument);
    CHECK_THROWS_AS(parse_rational("abc"), std::invalid_argument);
}

TEST_CASE("qs3 arithmetic is exact")
{
    qs3 r3 = qs3::sqrt3();
    CHECK(r3 * r3 == qs3(3));
    qs3 a(rational(1, 3), rational(-2, 5)), b(rational(7, 2), rational(1, 9));
    CHECK((a + b) - b == a);
    CHECK((a * b) / b == a);
    CHECK(a * a.inverse() == qs3(1));
    CHECK(qs3(rational(-1, 2), rational(1, 2)).sign() == 1);
    CHECK(qs3(rational(2), rational(-1)).sign() == 1);
    CHECK(qs3(rational(1), rational(-1)).sign() == -1);
    CHECK_THROWS_AS(qs3(0).inverse(), std::domain_error);
}

TEST_CASE("qs3 and cplx literals round trip")
{
    std::mt19937_64 rng(3);
    std::uniform_int_distribution<int> d(-9, 9), p(1, 9);
    for (int k = 0; k < 200; ++k) {
        qs3 re(rational(d(rng), p(rng)), rational(d(rng), p(rng)));
        qs3 im(rational(d(rng), p(rng)), rational(d(rng), p(rng)));
        CHECK(qs3::parse(re.str()) == re);
        cplx z(re, im);
        CHECK(cplx::parse(z.str()) == z);
    }
    CHECK(cplx::parse("-1+i") == cplx(qs3(-1), qs3(1)));
    CHECK(qs3::parse("1/2+1/3r3") == qs3(rational(1, 2), rational(1, 3)));
}

TEST_CASE("twelfth roots of unity")
{
    cplx w = cplx::unit_root12(1);
    cplx acc(1);
    for (int k = 1; k <= 12; ++k) {
        acc = acc * w;
        CHECK(acc == cplx::unit_root12(k % 12));
    }
    CHECK(acc == cplx(1));
    CHECK(cplx::unit_root12(4) == cplx(qs3(rational(-1, 2)), qs3(rational(0), rational(1, 2))));
}

TEST_CASE("cmp_arg orders principal arguments")
{
    cplx one(1), i = cplx::i(), m1(-1), mi(qs3(0), qs3(-1));
    CHECK(cmp_arg(one, i) < 0);
    CHECK(cmp_arg(m1, i) > 0);
    CHECK(cmp_arg(mi, one) < 0);
    CHECK(cmp_arg(mi, m1) < 0);
    CHECK(cmp_arg(cplx(2), one) == 0);
    CHECK_THROWS_AS(cmp_arg(cplx(0), one), std::domain_error);
}

TEST_CASE("interval enclosures")
{
    real_iv pi = real_iv::pi();
    CHECK(pi.lo() <= 3.141592653589793);
    CHECK(pi.hi() >= 3.141592653589793);
    CHECK(pi.width() < 1e-30);
    real_iv s = real_iv::sin_pi(rational(1, 6));
    CHECK(s.lo() <= 0.5);
    CHECK(s.hi() >= 0.5);
    real_iv a = real_iv::arg(cplx(qs3(-1), qs3(1)));
    CHECK(std::abs(a.mid() - 3 * 3.141592653589793 / 4) < 1e-15);
    CHECK_THROWS_AS((real_iv(1) - real_iv(1) + real_iv::sin_pi(1)).sign(), std::domain_error);
    CHECK_THROWS_AS(real_iv(1) / (real_iv::pi() - real_iv::pi()), std::domain_error);
    CHECK(real_iv(qs3::sqrt3()).sqrt().lo() <= std::sqrt(std::sqrt(3.0)));
}

TEST_CASE("exact linear algebra")
{
    qmat m = qmat::from_rows({{1, 2, 3}, {2, 4, 6}, {1, 0, 1}}, 3);
    CHECK(rank(m) == 2);
    auto ns = nullspace(m);
    REQUIRE(ns.size() == 1);
    CHECK(is_zero(m.apply(ns[0])));
    auto x = solve(m, {2, 4, 0});
    REQUIRE(x);
    CHECK(m.apply(*x) == qvec{2, 4, 0});
    CHECK_FALSE(solve(m, {1, 0, 0}));
    echelon e = rref(m);
    qvec v{1, 2, 3};
    CHECK(is_zero(reduce_mod(e, v)));
}
