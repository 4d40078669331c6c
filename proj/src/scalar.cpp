#include "stabglue/scalar.hpp"

#include <cmath>
#include <stdexcept>

namespace stabglue {

namespace {

std::string trim(const std::string& s)
{
    size_t b = s.find_first_not_of(" \t");
    if (b == std::string::npos) return "";
    size_t e = s.find_last_not_of(" \t");
    return s.substr(b, e - b + 1);
}

const char* k_sqrt3 = "\xe2\x88\x9a" "3";

}  // namespace

rational parse_rational(const std::string& raw)
{
    std::string s = trim(raw);
    if (s.empty()) throw std::invalid_argument("empty rational literal");
    if (s[0] == '+') s = s.substr(1);
    size_t dot = s.find('.');
    if (dot != std::string::npos) {
        std::string ip = s.substr(0, dot), fp = s.substr(dot + 1);
        bool neg = !ip.empty() && ip[0] == '-';
        if (neg) ip = ip.substr(1);
        if (ip.empty()) ip = "0";
        for (char c : ip + fp)
            if (c < '0' || c > '9') throw std::invalid_argument("bad rational literal: " + raw);
        mpz_class num(ip + fp, 10);
        mpz_class den;
        mpz_ui_pow_ui(den.get_mpz_t(), 10, fp.size());
        rational q(num, den);
        q.canonicalize();
        return neg ? rational(-q) : q;
    }
    rational q;
    for (char c : s)
        if (!(c == '-' || c == '/' || (c >= '0' && c <= '9')))
            throw std::invalid_argument("bad rational literal: " + raw);
    if (q.set_str(s, 10) != 0) throw std::invalid_argument("bad rational literal: " + raw);
    if (sgn(q.get_den()) == 0) throw std::invalid_argument("zero denominator: " + raw);
    q.canonicalize();
    return q;
}

std::string rational_str(const rational& q) { return q.get_str(); }

int qs3::sign() const
{
    int sa = sgn(a_), sb = sgn(b_);
    if (sb == 0) return sa;
    if (sa == 0) return sb;
    if (sa == sb) return sa;
    /* opposite signs: compare a^2 with 3 b^2 */
    rational lhs = a_ * a_, rhs = 3 * b_ * b_;
    return lhs > rhs ? sa : sb;
}

qs3 qs3::inverse() const
{
    if (is_zero()) throw std::domain_error("qs3: division by zero");
    rational n = field_norm();
    return qs3(a_ / n, -b_ / n);
}

double qs3::to_double() const { return a_.get_d() + b_.get_d() * std::sqrt(3.0); }

std::string qs3::str() const
{
    if (is_rational()) return a_.get_str();
    std::string r = a_.get_str();
    if (sgn(b_) > 0) r += "+";
    return r + b_.get_str() + k_sqrt3;
}

qs3 qs3::parse(const std::string& raw)
{
    std::string s = trim(raw);
    size_t p = s.find(k_sqrt3);
    std::string tag = k_sqrt3;
    if (p == std::string::npos) {
        p = s.find("r3");
        tag = "r3";
    }
    if (p == std::string::npos) return qs3(parse_rational(s));
    if (p + tag.size() != s.size()) throw std::invalid_argument("bad qs3 literal: " + raw);
    std::string head = s.substr(0, p);
    /* split head at the last sign that is not leading */
    size_t split = std::string::npos;
    for (size_t i = head.size(); i-- > 1;)
        if (head[i] == '+' || head[i] == '-') {
            split = i;
            break;
        }
    auto coef = [&](std::string c) -> rational {
        c = trim(c);
        if (c.empty() || c == "+") return rational(1);
        if (c == "-") return rational(-1);
        if (c.back() == '*') c.pop_back();
        return parse_rational(c);
    };
    if (split == std::string::npos) return qs3(rational(0), coef(head));
    return qs3(parse_rational(head.substr(0, split)), coef(head.substr(split)));
}

qs3& qs3::operator+=(const qs3& o)
{
    a_ += o.a_;
    b_ += o.b_;
    return *this;
}

qs3& qs3::operator-=(const qs3& o)
{
    a_ -= o.a_;
    b_ -= o.b_;
    return *this;
}

qs3& qs3::operator*=(const qs3& o)
{
    if (sgn(o.b_) == 0) {
        a_ *= o.a_;
        if (sgn(b_) != 0) b_ *= o.a_;
        return *this;
    }
    if (sgn(b_) == 0) {
        b_ = a_ * o.b_;
        a_ *= o.a_;
        return *this;
    }
    static thread_local rational x, y, z;
    mpq_mul(x.get_mpq_t(), a_.get_mpq_t(), o.a_.get_mpq_t());
    mpq_mul(y.get_mpq_t(), b_.get_mpq_t(), o.b_.get_mpq_t());
    mpq_add(x.get_mpq_t(), x.get_mpq_t(), y.get_mpq_t());
    mpq_add(x.get_mpq_t(), x.get_mpq_t(), y.get_mpq_t());
    mpq_add(x.get_mpq_t(), x.get_mpq_t(), y.get_mpq_t());
    mpq_mul(y.get_mpq_t(), a_.get_mpq_t(), o.b_.get_mpq_t());
    mpq_mul(z.get_mpq_t(), b_.get_mpq_t(), o.a_.get_mpq_t());
    mpq_add(b_.get_mpq_t(), y.get_mpq_t(), z.get_mpq_t());
    mpq_swap(a_.get_mpq_t(), x.get_mpq_t());
    return *this;
}

qs3& qs3::operator/=(const qs3& o) { return *this *= o.inverse(); }

cplx cplx::unit_root12(int k)
{
    k = ((k % 12) + 12) % 12;
    const qs3 h(rational(1, 2));
    const qs3 r3h(rational(0), rational(1, 2));
    switch (k) {
    case 0: return cplx(1, 0);
    case 1: return cplx(r3h, h);
    case 2: return cplx(h, r3h);
    case 3: return cplx(0, 1);
    case 4: return cplx(-h, r3h);
    case 5: return cplx(-r3h, h);
    case 6: return cplx(-1, 0);
    case 7: return cplx(-r3h, -h);
    case 8: return cplx(-h, -r3h);
    case 9: return cplx(0, -1);
    case 10: return cplx(h, -r3h);
    default: return cplx(r3h, -h);
    }
}

std::string cplx::str() const
{
    if (im.is_zero()) return re.str();
    std::string r = re.is_zero() ? "" : re.str();
    std::string m = im.str();
    if (!im.is_rational()) m = "(" + m + ")";
    if (!r.empty() && m[0] != '-') r += "+";
    return r + m + "i";
}

cplx cplx::parse(const std::string& raw)
{
    std::string s = trim(raw);
    if (s.empty()) throw std::invalid_argument("empty complex literal");
    if (s.back() != 'i') return cplx(qs3::parse(s));
    std::string body = s.substr(0, s.size() - 1);
    if (!body.empty() && body.back() == '*') body.pop_back();
    /* forms: "<re>+(<im>)", "(<im>)", "<re>+<im>", "<im>" */
    if (!body.empty() && body.back() == ')') {
        size_t open = body.rfind('(');
        if (open == std::string::npos) throw std::invalid_argument("bad complex literal: " + raw);
        qs3 imv = qs3::parse(body.substr(open + 1, body.size() - open - 2));
        std::string head = trim(body.substr(0, open));
        if (head.empty()) return cplx(qs3(0), imv);
        if (head == "-") return cplx(qs3(0), -imv);
        char sg = head.back();
        if (sg != '+' && sg != '-') throw std::invalid_argument("bad complex literal: " + raw);
        head.pop_back();
        if (trim(head).empty()) return cplx(qs3(0), sg == '-' ? -imv : imv);
        return cplx(qs3::parse(head), sg == '-' ? -imv : imv);
    }
    size_t split = std::string::npos;
    for (size_t i = body.size(); i-- > 1;)
        if ((body[i] == '+' || body[i] == '-') && body[i - 1] != '/' && body[i - 1] != 'e')
            {
                split = i;
                break;
            }
    auto imag = [&](std::string c) -> qs3 {
        c = trim(c);
        if (c.empty() || c == "+") return qs3(1);
        if (c == "-") return qs3(-1);
        return qs3::parse(c);
    };
    if (split == std::string::npos) return cplx(qs3(0), imag(body));
    return cplx(qs3::parse(body.substr(0, split)), imag(body.substr(split)));
}

cplx& cplx::operator*=(const cplx& o)
{
    static thread_local qs3 r, m, u;
    r = re;
    r *= o.re;
    u = im;
    u *= o.im;
    r -= u;
    m = re;
    m *= o.im;
    u = im;
    u *= o.re;
    m += u;
    std::swap(re, r);
    std::swap(im, m);
    return *this;
}

qs3 cplx::norm2() const
{
    /* (a1 + b1 r3)^2 + (a2 + b2 r3)^2 */
    static thread_local rational x, y;
    qs3 n;
    mpq_ptr na = n.a_.get_mpq_t(), nb = n.b_.get_mpq_t();
    mpq_srcptr a1 = re.a_.get_mpq_t(), b1 = re.b_.get_mpq_t(), a2 = im.a_.get_mpq_t(), b2 = im.b_.get_mpq_t();
    mpq_mul(na, a1, a1);
    mpq_mul(x.get_mpq_t(), a2, a2);
    mpq_add(na, na, x.get_mpq_t());
    mpq_mul(x.get_mpq_t(), b1, b1);
    mpq_mul(y.get_mpq_t(), b2, b2);
    mpq_add(x.get_mpq_t(), x.get_mpq_t(), y.get_mpq_t());
    mpq_add(na, na, x.get_mpq_t());
    mpq_add(na, na, x.get_mpq_t());
    mpq_add(na, na, x.get_mpq_t());
    mpq_mul(nb, a1, b1);
    mpq_mul(x.get_mpq_t(), a2, b2);
    mpq_add(nb, nb, x.get_mpq_t());
    mpq_add(nb, nb, nb);
    return n;
}

cplx& cplx::operator/=(const cplx& o)
{
    qs3 n = o.norm2();
    if (n.is_zero()) throw std::domain_error("cplx: division by zero");
    *this *= o.conj();
    re /= n;
    im /= n;
    return *this;
}

qs3 cross(const cplx& a, const cplx& b) { return a.re * b.im - a.im * b.re; }
qs3 dot(const cplx& a, const cplx& b) { return a.re * b.re + a.im * b.im; }

namespace {

/* rank of the half-plane sector of a principal argument */
int arg_rank(const cplx& z)
{
    int si = z.im.sign();
    if (si < 0) return 0;
    if (si > 0) return 2;
    int sr = z.re.sign();
    if (sr > 0) return 1;
    if (sr < 0) return 3;
    throw std::domain_error("argument of zero");
}

}  // namespace

int cmp_arg(const cplx& a, const cplx& b)
{
    int ra = arg_rank(a), rb = arg_rank(b);
    if (ra != rb) return ra < rb ? -1 : 1;
    if (ra == 1 || ra == 3) return 0;
    return cross(b, a).sign();
}

}  // namespace stabglue
