#include "stabglue/morphism.hpp"

#include <array>
#include <functional>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <stdexcept>

namespace stabglue {

namespace {

dobject minimal(const dobject& z) { return dobject::from_nf(z.n(), z.nf()); }

bool cx_equal(const proj_complex& a, const proj_complex& b)
{
    if (a.n != b.n || a.terms != b.terms) return false;
    for (const auto& [d, l] : a.terms)
        if (!(a.diff(d) == b.diff(d))) return false;
    return true;
}

bool is_minimal(const dobject& z) { return cx_equal(z.cx(), resolution(z.n(), z.nf())); }

/* a homotopy equivalence a -> b between complexes with the same normal form */
chain_map quasi_iso(const proj_complex& a, const proj_complex& b)
{
    hom_complex h(a, b);
    auto basis = h.cohomology_basis(0);
    std::mt19937_64 rng(1);
    std::uniform_int_distribution<int> d(-3, 3);
    for (int trial = 0; trial < 64; ++trial) {
        qvec v(h.dim(0));
        for (const auto& bv : basis) {
            int c = trial == 0 ? 1 : d(rng);
            for (size_t i = 0; i < v.size(); ++i) v[i] += c * bv[i];
        }
        chain_map u = h.from_coords(0, v);
        if (compute_normal_form(cone_complex(a, b, u)).empty()) return u;
    }
    throw std::runtime_error("quasi_iso: no homotopy equivalence found");
}

chain_map block_diag(const proj_complex& x1, const proj_complex& y1, const chain_map& f1,
                     const proj_complex& x2, const proj_complex& y2, const chain_map& f2)
{
    chain_map f;
    std::set<int> degs;
    for (const auto& [d, l] : x1.terms) degs.insert(d);
    for (const auto& [d, l] : x2.terms) degs.insert(d);
    for (int d : degs) {
        size_t r1 = y1.term(d).size(), c1 = x1.term(d).size();
        size_t r2 = y2.term(d).size(), c2 = x2.term(d).size();
        if (r1 + r2 == 0) continue;
        qmat m(r1 + r2, c1 + c2);
        if (auto it = f1.comps.find(d); it != f1.comps.end())
            for (size_t i = 0; i < r1; ++i)
                for (size_t j = 0; j < c1; ++j) m(i, j) = it->second(i, j);
        if (auto it = f2.comps.find(d); it != f2.comps.end())
            for (size_t i = 0; i < r2; ++i)
                for (size_t j = 0; j < c2; ++j) m(r1 + i, c1 + j) = it->second(i, j);
        f.comps[d] = m;
    }
    return f;
}

qmat compose_matrix(const hom_complex& src, const hom_complex& dst, int q,
                    const std::function<chain_map(const chain_map&)>& op)
{
    qmat m(dst.dim(q), src.dim(q));
    for (size_t j = 0; j < src.dim(q); ++j) {
        qvec e(src.dim(q));
        e[j] = 1;
        qvec col = dst.to_coords(op(src.from_coords(q, e)));
        for (size_t i = 0; i < col.size(); ++i) m(i, j) = col[i];
    }
    return m;
}

/* total Hom complex T^q = Hom^q(X,X') + Hom^q(Y,Y') + Hom^{q-1}(X,Y') */
struct mor_hom_complex {
    hom_complex hx, hy, hxy;
    const mor_object& a;
    const mor_object& b;

    mor_hom_complex(const mor_object& a_, const mor_object& b_)
        : hx(a_.x.cx(), b_.x.cx()), hy(a_.y.cx(), b_.y.cx()), hxy(a_.x.cx(), b_.y.cx()), a(a_), b(b_)
    {
        if (a.n() != b.n()) throw std::invalid_argument("morphism Hom: quiver mismatch");
    }

    size_t dim(int q) const { return hx.dim(q) + hy.dim(q) + hxy.dim(q - 1); }

    qmat differential(int q) const
    {
        size_t sx = hx.dim(q), sy = hy.dim(q), sh = hxy.dim(q - 1);
        size_t tx = hx.dim(q + 1), ty = hy.dim(q + 1), th = hxy.dim(q);
        qmat m(tx + ty + th, sx + sy + sh);
        auto put = [&](const qmat& blk, size_t r0, size_t c0, const rational& s) {
            for (size_t i = 0; i < blk.rows(); ++i)
                for (size_t j = 0; j < blk.cols(); ++j)
                    if (sgn(blk(i, j)) != 0) m(r0 + i, c0 + j) = s * blk(i, j);
        };
        if (sx && tx) put(hx.differential(q), 0, 0, 1);
        if (sy && ty) put(hy.differential(q), tx, sx, 1);
        if (th) {
            if (sx) put(compose_matrix(hx, hxy, q, [&](const chain_map& u) { return compose(b.f, u); }), tx + ty, 0, 1);
            if (sy) put(compose_matrix(hy, hxy, q, [&](const chain_map& u) { return compose(u, a.f); }), tx + ty, sx, -1);
            if (sh) put(hxy.differential(q - 1), tx + ty, sx + sy, -1);
        }
        return m;
    }
};

size_t safe_rank(const qmat& m) { return m.rows() == 0 || m.cols() == 0 ? 0 : rank(m); }

}  // namespace

void mor_object::validate() const
{
    if (x.n() != y.n()) throw std::invalid_argument("mor_object: endpoints live over different quivers");
    if (f.degree != 0) throw std::invalid_argument("mor_object: map must have degree 0");
    if (!is_chain_map(x.cx(), y.cx(), f)) throw std::invalid_argument("mor_object: f is not a chain map");
}

mor_object make_mor(const dobject& x, const dobject& y, const chain_map& f)
{
    mor_object m{x, y, f};
    m.validate();
    return m;
}

std::string side_str(sod_side s) { return s == sod_side::sod0 ? "SOD0" : "SOD1"; }

sod_side parse_side(const std::string& s)
{
    if (s == "SOD0" || s == "sod0" || s == "0") return sod_side::sod0;
    if (s == "SOD1" || s == "sod1" || s == "1") return sod_side::sod1;
    throw std::invalid_argument("unknown SOD side: " + s);
}

dobject d0(const mor_object& m) { return m.y; }
dobject d1(const mor_object& m) { return m.x; }

mor_object s_functor(const dobject& z)
{
    dobject zm = minimal(z);
    return {zm, zm, identity_map(zm.cx())};
}

mor_object j_bang(const dobject& y) { return {minimal(y), dobject(y.n()), chain_map{}}; }

mor_object j_star(const dobject& z) { return {dobject(z.n()), minimal(z), chain_map{}}; }

dobject cof(const mor_object& m) { return cone(m.x, m.y, m.f); }

dobject fib(const mor_object& m) { return shift(cof(m), -1); }

mor_object mor_shift(const mor_object& m, int k)
{
    dobject x = dobject::from_complex(cx_shift(m.x.cx(), k));
    dobject y = dobject::from_complex(cx_shift(m.y.cx(), k));
    return {x, y, map_shift(m.f, k)};
}

mor_object mor_sum(const mor_object& a, const mor_object& b)
{
    if (a.n() != b.n()) throw std::invalid_argument("mor_sum: quiver mismatch");
    proj_complex x = cx_sum(a.x.cx(), b.x.cx());
    proj_complex y = cx_sum(a.y.cx(), b.y.cx());
    chain_map f = block_diag(a.x.cx(), a.y.cx(), a.f, b.x.cx(), b.y.cx(), b.f);
    x.n = y.n = a.n();
    return make_mor(dobject::from_complex(x), dobject::from_complex(y), f);
}

bool mor_same(const mor_object& a, const mor_object& b)
{
    if (!cx_equal(a.x.cx(), b.x.cx()) || !cx_equal(a.y.cx(), b.y.cx())) return false;
    return homotopic(a.x.cx(), a.y.cx(), a.f, b.f);
}

mor_object minimize(const mor_object& m)
{
    if (is_minimal(m.x) && is_minimal(m.y)) return m;
    dobject x = minimal(m.x), y = minimal(m.y);
    chain_map u = quasi_iso(x.cx(), m.x.cx());
    chain_map v = quasi_iso(m.y.cx(), y.cx());
    return make_mor(x, y, compose(v, compose(m.f, u)));
}

k0_class mor_k0(const mor_object& m)
{
    k0_class k = k0_class_of(m.x);
    k0_class ky = k0_class_of(m.y);
    k.insert(k.end(), ky.begin(), ky.end());
    return k;
}

dobject tau1L(const mor_object& m, sod_side side) { return side == sod_side::sod0 ? minimal(m.y) : cof(m); }

dobject tau2R(const mor_object& m, sod_side side) { return side == sod_side::sod0 ? fib(m) : minimal(m.x); }

mor_object include1(const dobject& e, sod_side side)
{
    return side == sod_side::sod0 ? s_functor(e) : j_star(e);
}

mor_object include2(const dobject& e, sod_side side)
{
    return side == sod_side::sod0 ? j_bang(e) : s_functor(e);
}

sod_triangle_result sod_triangle(const mor_object& m, sod_side side)
{
    dobject t1 = tau1L(m, side), t2 = tau2R(m, side);
    return {include2(t2, side), m, include1(t1, side), t2, t1};
}

dobject gluing_functor_image(const dobject& e2, sod_side) { return shift(e2, 1); }

tau1r_triangle_result tau1r_triangle(const mor_object& m, sod_side side)
{
    dobject t2 = tau2R(m, side);
    dobject phi_shift = shift(gluing_functor_image(t2, side), -1);
    dobject t1r = side == sod_side::sod0 ? minimal(m.x) : minimal(m.y);
    return {phi_shift, t1r, tau1L(m, side)};
}

int mor_hom_dim(const mor_object& a, const mor_object& b, int p)
{
    mor_hom_complex t(a, b);
    size_t dimc = t.dim(p);
    if (dimc == 0) return 0;
    size_t r_out = t.dim(p + 1) ? safe_rank(t.differential(p)) : 0;
    size_t r_in = t.dim(p - 1) ? safe_rank(t.differential(p - 1)) : 0;
    return static_cast<int>(dimc - r_out - r_in);
}

int mor_hom_d_kernel_dim(const mor_object& a, const mor_object& b)
{
    mor_hom_complex t(a, b);
    size_t n0 = t.dim(0);
    if (n0 == 0) return 0;
    std::vector<qvec> z = t.dim(1) ? nullspace(t.differential(0)) : std::vector<qvec>();
    if (!t.dim(1))
        for (size_t i = 0; i < n0; ++i) {
            qvec e(n0);
            e[i] = 1;
            z.push_back(e);
        }
    size_t rb = t.dim(-1) ? safe_rank(t.differential(-1)) : 0;
    size_t sx = t.hx.dim(0), sy = t.hy.dim(0);
    /* projection of cycles to Hom^0(X,X') + Hom^0(Y,Y') */
    qmat pz(sx + sy, z.size());
    for (size_t j = 0; j < z.size(); ++j)
        for (size_t i = 0; i < sx + sy; ++i) pz(i, j) = z[j][i];
    /* boundaries of the two factor complexes */
    size_t bx = t.hx.dim(-1), by = t.hy.dim(-1);
    qmat bd(sx + sy, bx + by);
    if (bx && sx) {
        qmat dx = t.hx.differential(-1);
        for (size_t i = 0; i < sx; ++i)
            for (size_t j = 0; j < bx; ++j) bd(i, j) = dx(i, j);
    }
    if (by && sy) {
        qmat dy = t.hy.differential(-1);
        for (size_t i = 0; i < sy; ++i)
            for (size_t j = 0; j < by; ++j) bd(sx + i, bx + j) = dy(i, j);
    }
    size_t rbd = safe_rank(bd);
    size_t rjoint = safe_rank(pz.hcat(bd));
    size_t pre = z.size() - (rjoint - rbd);
    return static_cast<int>(pre - rb);
}

std::string mor_str(const mor_object& raw)
{
    mor_object m = minimize(raw);
    std::string fs;
    if (m.x.is_zero() || m.y.is_zero()) {
        fs = "0";
    } else {
        qvec c = basis_coords(m.x, m.y, m.f);
        int nonzero = 0, ones = 0;
        size_t at = 0;
        for (size_t i = 0; i < c.size(); ++i)
            if (sgn(c[i]) != 0) {
                ++nonzero;
                if (c[i] == 1) ++ones, at = i;
            }
        if (nonzero == 0) {
            fs = "0";
        } else if (m.x == m.y && homotopic(m.x.cx(), m.y.cx(), m.f, identity_map(m.x.cx()))) {
            fs = "id";
        } else if (nonzero == 1 && ones == 1) {
            fs = "basis#" + std::to_string(at);
        } else {
            fs = "(";
            for (size_t i = 0; i < c.size(); ++i) fs += (i ? "," : "") + rational_str(c[i]);
            fs += ")";
        }
    }
    return "mor(" + m.x.str() + "; " + m.y.str() + "; f=" + fs + ")";
}

mor_object parse_mor(int n, const std::string& text)
{
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '\t') s += c;
    if (s.rfind("mor(", 0) != 0 || s.back() != ')') throw std::invalid_argument("bad morphism literal: " + text);
    s = s.substr(4, s.size() - 5);
    size_t p1 = s.find(';'), p2 = s.find(';', p1 == std::string::npos ? 0 : p1 + 1);
    if (p1 == std::string::npos || p2 == std::string::npos) throw std::invalid_argument("bad morphism literal: " + text);
    dobject x = dobject::parse(n, s.substr(0, p1));
    dobject y = dobject::parse(n, s.substr(p1 + 1, p2 - p1 - 1));
    std::string fs = s.substr(p2 + 1);
    if (fs.rfind("f=", 0) != 0) throw std::invalid_argument("morphism literal needs f=...: " + text);
    fs = fs.substr(2);
    chain_map f = zero_map(x.cx(), y.cx());
    if (fs == "0") return make_mor(x, y, f);
    if (fs == "id") {
        if (!(x == y)) throw std::invalid_argument("f=id needs equal endpoints: " + text);
        return make_mor(x, y, identity_map(x.cx()));
    }
    auto basis = hom_basis(x, y);
    if (fs.rfind("basis#", 0) == 0) {
        size_t k = std::stoul(fs.substr(6));
        if (k >= basis.size()) throw std::invalid_argument("basis index out of range: " + text);
        return make_mor(x, y, basis[k]);
    }
    if (fs.front() == '(' && fs.back() == ')') {
        std::vector<rational> c;
        std::stringstream ss(fs.substr(1, fs.size() - 2));
        std::string tok;
        while (std::getline(ss, tok, ',')) c.push_back(parse_rational(tok));
        if (c.size() != basis.size()) throw std::invalid_argument("coefficient count must equal dim Hom: " + text);
        for (size_t i = 0; i < c.size(); ++i) f = map_add(f, basis[i], c[i]);
        return make_mor(x, y, f);
    }
    throw std::invalid_argument("bad map in morphism literal: " + text);
}

normal_form mor_to_a2(const mor_object& m)
{
    if (m.n() != 1) throw std::invalid_argument("mor_to_a2 needs C = D^b(k)");
    std::map<int, int> hx, hy;
    for (const auto& e : m.x.nf()) hx[-e.shift]++;
    for (const auto& e : m.y.nf()) hy[-e.shift]++;
    std::set<int> degs;
    for (const auto& [d, c] : hx) degs.insert(d);
    for (const auto& [d, c] : hy) degs.insert(d);
    normal_form nf;
    for (int d : degs) {
        int r = cohomology_rank(m.x.cx(), m.y.cx(), m.f, d);
        for (int k = 0; k < r; ++k) nf.push_back({{1, 2}, -d});
        for (int k = 0; k < hx[d] - r; ++k) nf.push_back({{1, 1}, -d});
        for (int k = 0; k < hy[d] - r; ++k) nf.push_back({{2, 2}, -d});
    }
    return canonical_nf(nf);
}

mor_object mor_from_a2(const normal_form& nf)
{
    std::map<int, std::array<int, 3>> cnt; /* degree -> #[1,2], #[1,1], #[2,2] */
    for (const auto& e : nf) {
        int d = -e.shift;
        if (e.iv.a == 1 && e.iv.b == 2)
            cnt[d][0]++;
        else if (e.iv.a == 1 && e.iv.b == 1)
            cnt[d][1]++;
        else if (e.iv.a == 2 && e.iv.b == 2)
            cnt[d][2]++;
        else
            throw std::invalid_argument("mor_from_a2: interval outside A_2");
    }
    normal_form xn, yn;
    for (const auto& [d, c] : cnt) {
        for (int k = 0; k < c[0] + c[1]; ++k) xn.push_back({{1, 1}, -d});
        for (int k = 0; k < c[0] + c[2]; ++k) yn.push_back({{1, 1}, -d});
    }
    dobject x = dobject::from_nf(1, xn), y = dobject::from_nf(1, yn);
    chain_map f = zero_map(x.cx(), y.cx());
    for (const auto& [d, c] : cnt)
        for (int i = 0; i < c[0]; ++i) f.comps[d](i, i) = 1;
    return make_mor(x, y, f);
}

std::vector<mor_object> mor_corpus(int n, int cap, int shift_lo, int shift_hi)
{
    std::vector<dobject> ends{dobject(n)};
    for (const auto& nf : antype_corpus(n, cap, shift_lo, shift_hi)) ends.push_back(dobject::from_nf(n, nf));
    std::vector<mor_object> out;
    for (const auto& x : ends)
        for (const auto& y : ends) {
            std::vector<mor_object> local;
            auto add = [&](const chain_map& f) {
                mor_object m{x, y, f};
                for (const auto& o : local)
                    if (mor_same(o, m)) return;
                local.push_back(m);
            };
            add(zero_map(x.cx(), y.cx()));
            if (!x.is_zero() && !y.is_zero()) {
                for (const auto& b : hom_basis(x, y)) add(b);
                if (x == y) add(identity_map(x.cx()));
            }
            out.insert(out.end(), local.begin(), local.end());
        }
    return out;
}

}  // namespace stabglue
