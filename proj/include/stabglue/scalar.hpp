#pragma once

#include <gmpxx.h>

#include <string>

namespace stabglue {

using rational = mpq_class;

rational parse_rational(const std::string& s);
std::string rational_str(const rational& q);

/* a + b*sqrt(3), a and b rational */
struct cplx;

class qs3 {
public:
    qs3() = default;
    qs3(long v) : a_(v) {}
    qs3(const rational& a) : a_(a) { a_.canonicalize(); }
    qs3(const rational& a, const rational& b) : a_(a), b_(b)
    {
        a_.canonicalize();
        b_.canonicalize();
    }

    static qs3 sqrt3() { return qs3(rational(0), rational(1)); }

    const rational& rat() const { return a_; }
    const rational& irr() const { return b_; }
    bool is_rational() const { return sgn(b_) == 0; }
    bool is_zero() const { return sgn(a_) == 0 && sgn(b_) == 0; }

    int sign() const;
    qs3 conj() const { return qs3(a_, -b_); }
    rational field_norm() const { return a_ * a_ - 3 * b_ * b_; }
    qs3 inverse() const;
    double to_double() const;

    std::string str() const;
    static qs3 parse(const std::string& s);

    qs3& operator+=(const qs3& o);
    qs3& operator-=(const qs3& o);
    qs3& operator*=(const qs3& o);
    qs3& operator/=(const qs3& o);

    friend qs3 operator+(qs3 x, const qs3& y) { return x += y; }
    friend qs3 operator-(qs3 x, const qs3& y) { return x -= y; }
    friend qs3 operator*(qs3 x, const qs3& y) { return x *= y; }
    friend qs3 operator/(qs3 x, const qs3& y) { return x /= y; }
    qs3 operator-() const { return qs3(-a_, -b_); }

    friend bool operator==(const qs3& x, const qs3& y) { return x.a_ == y.a_ && x.b_ == y.b_; }
    friend bool operator!=(const qs3& x, const qs3& y) { return !(x == y); }
    friend bool operator<(const qs3& x, const qs3& y) { return (x - y).sign() < 0; }
    friend bool operator>(const qs3& x, const qs3& y) { return (x - y).sign() > 0; }
    friend bool operator<=(const qs3& x, const qs3& y) { return (x - y).sign() <= 0; }
    friend bool operator>=(const qs3& x, const qs3& y) { return (x - y).sign() >= 0; }

private:
    friend struct cplx;
    rational a_{0};
    rational b_{0};
};

/* exact complex number with qs3 parts */
struct cplx {
    qs3 re;
    qs3 im;

    cplx() = default;
    cplx(qs3 r) : re(std::move(r)) {}
    cplx(qs3 r, qs3 i) : re(std::move(r)), im(std::move(i)) {}
    cplx(long r) : re(r) {}

    static cplx i() { return cplx(qs3(0), qs3(1)); }
    /* e^{i pi k/6} */
    static cplx unit_root12(int k);

    bool is_zero() const { return re.is_zero() && im.is_zero(); }
    bool is_rational() const { return re.is_rational() && im.is_rational(); }
    qs3 norm2() const;
    cplx conj() const { return cplx(re, -im); }

    std::string str() const;
    static cplx parse(const std::string& s);

    cplx& operator+=(const cplx& o) { re += o.re; im += o.im; return *this; }
    cplx& operator-=(const cplx& o) { re -= o.re; im -= o.im; return *this; }
    cplx& operator*=(const cplx& o);
    cplx& operator/=(const cplx& o);
    friend cplx operator+(cplx x, const cplx& y) { return x += y; }
    friend cplx operator-(cplx x, const cplx& y) { return x -= y; }
    friend cplx operator*(cplx x, const cplx& y) { return x *= y; }
    friend cplx operator/(cplx x, const cplx& y) { return x /= y; }
    cplx operator-() const { return cplx(-re, -im); }
    friend bool operator==(const cplx& x, const cplx& y) { return x.re == y.re && x.im == y.im; }
    friend bool operator!=(const cplx& x, const cplx& y) { return !(x == y); }
};

/* im(conj(a) * b); positive iff b lies counterclockwise of a */
qs3 cross(const cplx& a, const cplx& b);
qs3 dot(const cplx& a, const cplx& b);

/* total order of principal arguments in (-pi, pi]; zero input throws */
int cmp_arg(const cplx& a, const cplx& b);

}  // namespace stabglue
