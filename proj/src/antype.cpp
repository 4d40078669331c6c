#include "stabglue/antype.hpp"

#include <algorithm>
#include <cstdio>
#include <set>
#include <tuple>
#include <sstream>
#include <stdexcept>

namespace stabglue {

quiver_layout::quiver_layout(int n_) : n(n_)
{
    if (n < 1 || n > k_max_vertices) throw std::invalid_argument("quiver size must lie in [1, 8]");
}

/* representations */

void rep::validate() const
{
    if (n < 1 || n > k_max_vertices) throw std::invalid_argument("rep: bad vertex count");
    if (static_cast<int>(dims.size()) != n) throw std::invalid_argument("rep: dims length must equal n");
    if (static_cast<int>(maps.size()) != n - 1) throw std::invalid_argument("rep: need one map per arrow");
    for (int i = 0; i + 1 < n; ++i) {
        if (dims[i] < 0) throw std::invalid_argument("rep: negative dimension");
        if (static_cast<int>(maps[i].rows()) != dims[i + 1] || static_cast<int>(maps[i].cols()) != dims[i])
            throw std::invalid_argument("rep: map shape mismatch at arrow " + std::to_string(i + 1));
    }
}

namespace {

/* rank of the composite from vertex a to vertex b (1-based), identity when a == b */
long composite_rank(const rep& r, int a, int b)
{
    if (a < 1 || b > r.n) return 0;
    if (a == b) return r.dims[a - 1];
    qmat m = r.maps[a - 1];
    for (int v = a + 1; v < b; ++v) m = r.maps[v - 1] * m;
    return static_cast<long>(rank(m));
}

}  // namespace

std::vector<interval> decompose(const rep& r)
{
    r.validate();
    std::vector<interval> out;
    for (int a = 1; a <= r.n; ++a)
        for (int b = a; b <= r.n; ++b) {
            long m = composite_rank(r, a, b) - composite_rank(r, a, b + 1) - composite_rank(r, a - 1, b) +
                     composite_rank(r, a - 1, b + 1);
            for (long k = 0; k < m; ++k) out.push_back({a, b});
        }
    return out;
}

rep interval_rep(int n, const interval& iv)
{
    return reassemble(n, {iv});
}

rep reassemble(int n, const std::vector<interval>& ivs)
{
    rep r;
    r.n = n;
    r.dims.assign(n, 0);
    for (const auto& iv : ivs) {
        if (iv.a < 1 || iv.b > n || iv.a > iv.b) throw std::invalid_argument("reassemble: bad interval");
        for (int v = iv.a; v <= iv.b; ++v) r.dims[v - 1]++;
    }
    for (int i = 0; i + 1 < n; ++i) r.maps.emplace_back(r.dims[i + 1], r.dims[i]);
    std::vector<int> pos(n, 0);
    for (const auto& iv : ivs) {
        for (int v = iv.a; v < iv.b; ++v) r.maps[v - 1](pos[v], pos[v - 1]) = 1;
        for (int v = iv.a; v <= iv.b; ++v) pos[v - 1]++;
    }
    return r;
}

/* complexes */

const std::vector<int>& proj_complex::term(int d) const
{
    static const std::vector<int> empty;
    auto it = terms.find(d);
    return it == terms.end() ? empty : it->second;
}

qmat proj_complex::diff(int d) const
{
    auto it = diffs.find(d);
    if (it != diffs.end()) return it->second;
    return qmat(term(d + 1).size(), term(d).size());
}

void proj_complex::prune()
{
    for (auto it = terms.begin(); it != terms.end();)
        it = it->second.empty() ? terms.erase(it) : std::next(it);
    for (auto it = diffs.begin(); it != diffs.end();) {
        bool keep = terms.count(it->first) && terms.count(it->first + 1) && !it->second.is_zero();
        it = keep ? std::next(it) : diffs.erase(it);
    }
}

void proj_complex::validate() const
{
    for (const auto& [d, labels] : terms)
        for (int l : labels)
            if (l < 1 || l > n) throw std::invalid_argument("complex: projective label out of range");
    for (const auto& [d, m] : diffs) {
        const auto& src = term(d);
        const auto& dst = term(d + 1);
        if (m.rows() != dst.size() || m.cols() != src.size())
            throw std::invalid_argument("complex: differential shape mismatch in degree " + std::to_string(d));
        for (size_t r = 0; r < m.rows(); ++r)
            for (size_t c = 0; c < m.cols(); ++c)
                if (sgn(m(r, c)) != 0 && dst[r] > src[c])
                    throw std::invalid_argument("complex: entry not allowed by Hom(P_i, P_j)");
    }
    for (const auto& [d, m] : diffs) {
        auto it = diffs.find(d + 1);
        if (it != diffs.end() && !(it->second * m).is_zero())
            throw std::invalid_argument("complex: differential does not square to zero at degree " +
                                        std::to_string(d));
    }
}

int proj_complex::size() const
{
    int s = 0;
    for (const auto& [d, l] : terms) s += static_cast<int>(l.size());
    return s;
}

/* normal forms */

normal_form canonical_nf(normal_form nf)
{
    std::sort(nf.begin(), nf.end());
    return nf;
}

normal_form nf_shift(const normal_form& nf, int k)
{
    normal_form r = nf;
    for (auto& x : r) x.shift += k;
    return r;
}

normal_form nf_sum(const normal_form& x, const normal_form& y)
{
    normal_form r = x;
    r.insert(r.end(), y.begin(), y.end());
    return canonical_nf(r);
}

std::string nf_str(const normal_form& nf)
{
    if (nf.empty()) return "0";
    std::ostringstream os;
    for (size_t i = 0; i < nf.size(); ++i) {
        if (i) os << " + ";
        os << "I[" << nf[i].iv.a << "," << nf[i].iv.b << "]@" << nf[i].shift;
    }
    return os.str();
}

normal_form parse_nf(int n, const std::string& text)
{
    normal_form nf;
    std::string s;
    for (char c : text)
        if (c != ' ' && c != '\t') s += c;
    if (s == "0" || s.empty()) return nf;
    size_t pos = 0;
    while (pos < s.size()) {
        size_t next = s.find('+', pos);
        std::string tok = s.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
        pos = next == std::string::npos ? s.size() : next + 1;
        int mult = 1;
        size_t star = tok.find('*');
        if (star != std::string::npos) {
            mult = std::stoi(tok.substr(0, star));
            tok = tok.substr(star + 1);
        }
        int a = 0, b = 0, sh = 0;
        char tail = 0;
        int got = std::sscanf(tok.c_str(), "I[%d,%d]@%d%c", &a, &b, &sh, &tail);
        if (got == 2 && tok.back() == ']') {
            sh = 0;
        } else if (got != 3) {
            throw std::invalid_argument("bad object literal term: " + tok);
        }
        if (a < 1 || b > n || a > b) throw std::invalid_argument("interval out of range in literal: " + tok);
        if (mult < 0) throw std::invalid_argument("negative multiplicity in literal: " + tok);
        for (int k = 0; k < mult; ++k) nf.push_back({{a, b}, sh});
    }
    return canonical_nf(nf);
}

k0_class k0_of_nf(int n, const normal_form& nf)
{
    k0_class k(n, 0);
    for (const auto& x : nf) {
        long s = (x.shift % 2 == 0) ? 1 : -1;
        for (int v = x.iv.a; v <= x.iv.b; ++v) k[v - 1] += s;
    }
    return k;
}

k0_class k0_of_complex(const proj_complex& cx)
{
    k0_class k(cx.n, 0);
    for (const auto& [d, labels] : cx.terms) {
        long s = (d % 2 == 0) ? 1 : -1;
        for (int l : labels)
            for (int v = l; v <= cx.n; ++v) k[v - 1] += s;
    }
    return k;
}

k0_class k0_class_of(const dobject& x) { return k0_of_nf(x.n(), x.nf()); }

k0_class k0_add(const k0_class& x, const k0_class& y, long sy)
{
    if (x.size() != y.size()) throw std::invalid_argument("k0_add: rank mismatch");
    k0_class r = x;
    for (size_t i = 0; i < r.size(); ++i) r[i] += sy * y[i];
    return r;
}

namespace {

/* indices of summands of a term with label <= v */
std::vector<size_t> below(const std::vector<int>& labels, int v)
{
    std::vector<size_t> idx;
    for (size_t i = 0; i < labels.size(); ++i)
        if (labels[i] <= v) idx.push_back(i);
    return idx;
}

qmat columns_as_matrix(const std::vector<qvec>& cols, size_t rows)
{
    qmat m(rows, cols.size());
    for (size_t j = 0; j < cols.size(); ++j)
        for (size_t i = 0; i < rows; ++i) m(i, j) = cols[j][i];
    return m;
}

/* cycles at vertex a of degree d, as columns in full coordinates */
qmat cycles_at(const proj_complex& cx, int d, int a)
{
    const auto& labels = cx.term(d);
    std::vector<size_t> idx = below(labels, a);
    qmat dd = cx.diff(d).select_cols(idx);
    std::vector<qvec> ker = nullspace(dd);
    std::vector<qvec> full;
    for (const auto& v : ker) {
        qvec w(labels.size());
        for (size_t j = 0; j < idx.size(); ++j) w[idx[j]] = v[j];
        full.push_back(std::move(w));
    }
    return columns_as_matrix(full, labels.size());
}

qmat boundaries_at(const proj_complex& cx, int d, int b)
{
    std::vector<size_t> idx = below(cx.term(d - 1), b);
    return cx.diff(d - 1).select_cols(idx);
}

}  // namespace

normal_form compute_normal_form(const proj_complex& cx)
{
    const int n = cx.n;
    normal_form nf;
    for (const auto& [d, labels] : cx.terms) {
        if (labels.empty()) continue;
        std::vector<qmat> z(n + 1), bd(n + 2);
        std::vector<long> rb(n + 2, 0);
        for (int v = 1; v <= n; ++v) {
            z[v] = cycles_at(cx, d, v);
            bd[v] = boundaries_at(cx, d, v);
            rb[v] = static_cast<long>(rank(bd[v]));
        }
        auto r = [&](int a, int b) -> long {
            if (a < 1 || b > n || a > b) return 0;
            return static_cast<long>(rank(z[a].hcat(bd[b]))) - rb[b];
        };
        for (int a = 1; a <= n; ++a)
            for (int b = a; b <= n; ++b) {
                long m = r(a, b) - r(a, b + 1) - r(a - 1, b) + r(a - 1, b + 1);
                if (m < 0) throw std::runtime_error("normal form: negative multiplicity");
                for (long k = 0; k < m; ++k) nf.push_back({{a, b}, -d});
            }
    }
    return canonical_nf(nf);
}

proj_complex resolution(int n, const normal_form& nf)
{
    proj_complex cx;
    cx.n = n;
    /* collect (degree, label) pairs with the differential links */
    struct link {
        int deg;
        size_t src;
        size_t dst;
    };
    std::vector<link> links;
    for (const auto& x : nf) {
        if (x.iv.a < 1 || x.iv.b > n || x.iv.a > x.iv.b) throw std::invalid_argument("resolution: bad interval");
        int d0 = -x.shift;
        auto& top = cx.terms[d0];
        top.push_back(x.iv.a);
        size_t ti = top.size() - 1;
        if (x.iv.b < n) {
            auto& low = cx.terms[d0 - 1];
            low.push_back(x.iv.b + 1);
            links.push_back({d0 - 1, low.size() - 1, ti});
        }
    }
    for (const auto& l : links) {
        auto it = cx.diffs.find(l.deg);
        if (it == cx.diffs.end())
            it = cx.diffs.emplace(l.deg, qmat(cx.term(l.deg + 1).size(), cx.term(l.deg).size())).first;
        it->second(l.dst, l.src) = 1;
    }
    /* shapes may have grown after a matrix was created */
    for (auto& [d, m] : cx.diffs) {
        size_t rows = cx.term(d + 1).size(), cols = cx.term(d).size();
        if (m.rows() != rows || m.cols() != cols) {
            qmat g(rows, cols);
            for (size_t i = 0; i < m.rows(); ++i)
                for (size_t j = 0; j < m.cols(); ++j) g(i, j) = m(i, j);
            m = g;
        }
    }
    return cx;
}

proj_complex cx_shift(const proj_complex& x, int k)
{
    proj_complex r;
    r.n = x.n;
    for (const auto& [d, l] : x.terms) r.terms[d - k] = l;
    rational s = (k % 2 == 0) ? 1 : -1;
    for (const auto& [d, m] : x.diffs) r.diffs[d - k] = s * m;
    return r;
}

proj_complex cx_sum(const proj_complex& x, const proj_complex& y)
{
    if (x.n != y.n) throw std::invalid_argument("direct sum: quiver mismatch");
    proj_complex r;
    r.n = x.n;
    std::set<int> degs;
    for (const auto& [d, l] : x.terms) degs.insert(d);
    for (const auto& [d, l] : y.terms) degs.insert(d);
    for (int d : degs) {
        auto& t = r.terms[d];
        t = x.term(d);
        t.insert(t.end(), y.term(d).begin(), y.term(d).end());
    }
    for (int d : degs) {
        if (!degs.count(d + 1)) continue;
        qmat a = x.diff(d), b = y.diff(d);
        qmat m(a.rows() + b.rows(), a.cols() + b.cols());
        for (size_t i = 0; i < a.rows(); ++i)
            for (size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
        for (size_t i = 0; i < b.rows(); ++i)
            for (size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, a.cols() + j) = b(i, j);
        if (!m.is_zero()) r.diffs[d] = m;
    }
    return r;
}

/* dobject */

dobject::dobject(int n)
{
    quiver_layout q(n);
    cx_.n = n;
}

dobject dobject::from_complex(proj_complex cx)
{
    quiver_layout q(cx.n);
    cx.prune();
    cx.validate();
    dobject o;
    o.nf_ = compute_normal_form(cx);
    o.cx_ = std::move(cx);
    return o;
}

dobject dobject::from_nf(int n, normal_form nf)
{
    quiver_layout q(n);
    dobject o;
    o.nf_ = canonical_nf(std::move(nf));
    o.cx_ = resolution(n, o.nf_);
    return o;
}

dobject dobject::indecomposable(int n, const interval& iv, int shift) { return from_nf(n, {{iv, shift}}); }

dobject dobject::from_rep(const rep& r)
{
    normal_form nf;
    for (const auto& iv : decompose(r)) nf.push_back({iv, 0});
    return from_nf(r.n, nf);
}

dobject dobject::parse(int n, const std::string& text) { return from_nf(n, parse_nf(n, text)); }

int dobject::total_dim() const
{
    int s = 0;
    for (const auto& x : nf_) s += x.iv.dim();
    return s;
}

std::string dobject::str() const { return nf_str(nf_); }

dobject shift(const dobject& x, int k) { return dobject::from_nf(x.n(), nf_shift(x.nf(), k)); }

dobject direct_sum(const dobject& x, const dobject& y) { return dobject::from_nf(x.n(), nf_sum(x.nf(), y.nf())); }

/* Hom complexes */

hom_complex::hom_complex(const proj_complex& x, const proj_complex& y) : x_(x), y_(y)
{
    if (x.n != y.n) throw std::invalid_argument("hom_complex: quiver mismatch");
}

const std::vector<hom_complex::coord>& hom_complex::coords(int p) const
{
    auto it = coords_.find(p);
    if (it != coords_.end()) return it->second;
    std::vector<coord> cs;
    std::map<std::tuple<int, int, int>, int> idx;
    for (const auto& [d, xl] : x_.terms) {
        const auto& yl = y_.term(d + p);
        for (size_t r = 0; r < yl.size(); ++r)
            for (size_t c = 0; c < xl.size(); ++c)
                if (yl[r] <= xl[c]) {
                    idx[{d, static_cast<int>(r), static_cast<int>(c)}] = static_cast<int>(cs.size());
                    cs.push_back({d, static_cast<int>(r), static_cast<int>(c)});
                }
    }
    index_[p] = std::move(idx);
    return coords_[p] = std::move(cs);
}

int hom_complex::index_of(int p, int d, int r, int c) const
{
    coords(p);
    const auto& m = index_.at(p);
    auto it = m.find({d, r, c});
    return it == m.end() ? -1 : it->second;
}

size_t hom_complex::dim(int p) const { return coords(p).size(); }

qmat hom_complex::differential(int p) const
{
    const auto& src = coords(p);
    const auto& dst = coords(p + 1);
    qmat m(dst.size(), src.size());
    rational sign = (p % 2 == 0) ? 1 : -1;
    for (size_t j = 0; j < src.size(); ++j) {
        const coord& k = src[j];
        /* delta_Y h : X^d -> Y^{d+p+1} */
        qmat dy = y_.diff(k.d + p);
        for (size_t r2 = 0; r2 < dy.rows(); ++r2) {
            if (sgn(dy(r2, k.r)) == 0) continue;
            int i = index_of(p + 1, k.d, static_cast<int>(r2), k.c);
            if (i < 0) throw std::logic_error("hom_complex: pattern violation");
            m(i, j) += dy(r2, k.r);
        }
        /* -(-1)^p h delta_X : X^{d-1} -> Y^{d+p} */
        qmat dx = x_.diff(k.d - 1);
        for (size_t c2 = 0; c2 < dx.cols(); ++c2) {
            if (sgn(dx(k.c, c2)) == 0) continue;
            int i = index_of(p + 1, k.d - 1, k.r, static_cast<int>(c2));
            if (i < 0) throw std::logic_error("hom_complex: pattern violation");
            m(i, j) -= sign * dx(k.c, c2);
        }
    }
    return m;
}

qvec hom_complex::to_coords(const chain_map& f) const
{
    const auto& cs = coords(f.degree);
    qvec v(cs.size());
    for (const auto& [d, m] : f.comps) {
        for (size_t r = 0; r < m.rows(); ++r)
            for (size_t c = 0; c < m.cols(); ++c) {
                if (sgn(m(r, c)) == 0) continue;
                int i = index_of(f.degree, d, static_cast<int>(r), static_cast<int>(c));
                if (i < 0) throw std::invalid_argument("map entry not allowed by Hom(P_i, P_j)");
                v[i] = m(r, c);
            }
    }
    return v;
}

chain_map hom_complex::from_coords(int p, const qvec& v) const
{
    const auto& cs = coords(p);
    chain_map f;
    f.degree = p;
    for (const auto& [d, xl] : x_.terms) {
        const auto& yl = y_.term(d + p);
        if (!yl.empty()) f.comps[d] = qmat(yl.size(), xl.size());
    }
    for (size_t i = 0; i < cs.size(); ++i)
        if (sgn(v[i]) != 0) f.comps[cs[i].d](cs[i].r, cs[i].c) = v[i];
    return f;
}

int hom_complex::cohomology_dim(int p) const
{
    long dimc = static_cast<long>(dim(p));
    long rk_out = dimc == 0 ? 0 : static_cast<long>(rank(differential(p)));
    long rk_in = dim(p - 1) == 0 || dimc == 0 ? 0 : static_cast<long>(rank(differential(p - 1)));
    return static_cast<int>(dimc - rk_out - rk_in);
}

qvec hom_complex::reduce(int p, const qvec& v) const
{
    if (dim(p - 1) == 0) return v;
    echelon e = rref(differential(p - 1).transpose());
    return reduce_mod(e, v);
}

std::vector<qvec> hom_complex::cohomology_basis(int p) const
{
    size_t dimc = dim(p);
    if (dimc == 0) return {};
    std::vector<qvec> ker = nullspace(differential(p));
    if (ker.empty()) return {};
    std::vector<qvec> red;
    if (dim(p - 1) > 0) {
        echelon e = rref(differential(p - 1).transpose());
        for (const auto& v : ker) red.push_back(reduce_mod(e, v));
    } else {
        red = ker;
    }
    echelon b = rref(qmat::from_rows(red, dimc));
    std::vector<qvec> out;
    for (size_t i = 0; i < b.r.rows(); ++i) out.push_back(b.r.row(i));
    return out;
}

int hom_dim(const dobject& x, const dobject& y, int p)
{
    return hom_complex(x.cx(), y.cx()).cohomology_dim(p);
}

int hom_dim_intervals(const interval& x, const interval& y, int k)
{
    const int a = x.a, b = x.b, c = y.a, d = y.b;
    if (k == 0) return (c <= a && a <= d && d <= b) ? 1 : 0;
    if (k == 1) return (a < c && c <= b + 1 && b + 1 <= d) ? 1 : 0;
    return 0;
}

int hom_dim_nf(const normal_form& x, const normal_form& y)
{
    int s = 0;
    for (const auto& u : x)
        for (const auto& v : y) s += hom_dim_intervals(u.iv, v.iv, v.shift - u.shift);
    return s;
}

std::vector<chain_map> hom_basis(const dobject& x, const dobject& y)
{
    hom_complex h(x.cx(), y.cx());
    std::vector<chain_map> out;
    for (const auto& v : h.cohomology_basis(0)) out.push_back(h.from_coords(0, v));
    return out;
}

bool is_chain_map(const proj_complex& x, const proj_complex& y, const chain_map& f)
{
    hom_complex h(x, y);
    qvec v;
    try {
        v = h.to_coords(f);
    } catch (const std::invalid_argument&) {
        return false;
    }
    if (h.dim(f.degree + 1) == 0) return true;
    return is_zero(h.differential(f.degree).apply(v));
}

bool is_null_homotopic(const proj_complex& x, const proj_complex& y, const chain_map& f)
{
    hom_complex h(x, y);
    return is_zero(h.reduce(f.degree, h.to_coords(f)));
}

bool homotopic(const proj_complex& x, const proj_complex& y, const chain_map& f, const chain_map& g)
{
    return is_null_homotopic(x, y, map_add(f, g, -1));
}

chain_map identity_map(const proj_complex& x)
{
    chain_map f;
    for (const auto& [d, l] : x.terms) f.comps[d] = qmat::identity(l.size());
    return f;
}

chain_map zero_map(const proj_complex& x, const proj_complex& y, int p)
{
    chain_map f;
    f.degree = p;
    for (const auto& [d, l] : x.terms) {
        const auto& yl = y.term(d + p);
        if (!yl.empty()) f.comps[d] = qmat(yl.size(), l.size());
    }
    return f;
}

chain_map compose(const chain_map& g, const chain_map& f)
{
    chain_map h;
    h.degree = f.degree + g.degree;
    for (const auto& [d, fm] : f.comps) {
        auto it = g.comps.find(d + f.degree);
        if (it == g.comps.end()) continue;
        h.comps[d] = it->second * fm;
    }
    return h;
}

chain_map map_add(const chain_map& f, const chain_map& g, const rational& s)
{
    if (f.degree != g.degree) throw std::invalid_argument("map_add: degree mismatch");
    chain_map h = f;
    for (const auto& [d, gm] : g.comps) {
        auto it = h.comps.find(d);
        if (it == h.comps.end())
            h.comps[d] = s * gm;
        else
            it->second = it->second + s * gm;
    }
    return h;
}

chain_map map_shift(const chain_map& f, int k)
{
    chain_map h;
    h.degree = f.degree;
    for (const auto& [d, m] : f.comps) h.comps[d - k] = m;
    return h;
}

qvec basis_coords(const dobject& x, const dobject& y, const chain_map& f)
{
    hom_complex h(x.cx(), y.cx());
    std::vector<qvec> basis = h.cohomology_basis(0);
    qvec v = h.reduce(0, h.to_coords(f));
    if (basis.empty()) {
        if (!is_zero(v)) throw std::invalid_argument("basis_coords: map is not in the span");
        return {};
    }
    qmat m(v.size(), basis.size());
    for (size_t j = 0; j < basis.size(); ++j)
        for (size_t i = 0; i < v.size(); ++i) m(i, j) = basis[j][i];
    auto sol = solve(m, v);
    if (!sol) throw std::invalid_argument("basis_coords: map is not a cycle");
    return *sol;
}

proj_complex cone_complex(const proj_complex& x, const proj_complex& y, const chain_map& f)
{
    if (f.degree != 0) throw std::invalid_argument("cone: map must have degree 0");
    if (!is_chain_map(x, y, f)) throw std::invalid_argument("cone: input is not a chain map");
    proj_complex c;
    c.n = x.n;
    std::set<int> degs;
    for (const auto& [d, l] : x.terms) degs.insert(d - 1);
    for (const auto& [d, l] : y.terms) degs.insert(d);
    for (int d : degs) {
        auto& t = c.terms[d];
        t = x.term(d + 1);
        t.insert(t.end(), y.term(d).begin(), y.term(d).end());
    }
    for (int d : degs) {
        if (!degs.count(d + 1)) continue;
        size_t xs = x.term(d + 1).size(), ys = y.term(d).size();
        size_t xt = x.term(d + 2).size(), yt = y.term(d + 1).size();
        qmat m(xt + yt, xs + ys);
        qmat dx = x.diff(d + 1), dy = y.diff(d);
        for (size_t i = 0; i < xt; ++i)
            for (size_t j = 0; j < xs; ++j) m(i, j) = -dx(i, j);
        auto it = f.comps.find(d + 1);
        if (it != f.comps.end())
            for (size_t i = 0; i < yt; ++i)
                for (size_t j = 0; j < xs; ++j) m(xt + i, j) = it->second(i, j);
        for (size_t i = 0; i < yt; ++i)
            for (size_t j = 0; j < ys; ++j) m(xt + i, xs + j) = dy(i, j);
        if (!m.is_zero()) c.diffs[d] = m;
    }
    return c;
}

dobject cone(const dobject& x, const dobject& y, const chain_map& f)
{
    return dobject::from_complex(cone_complex(x.cx(), y.cx(), f));
}

int cohomology_rank(const proj_complex& x, const proj_complex& y, const chain_map& f, int d)
{
    int total = 0;
    auto it = f.comps.find(d);
    for (int v = 1; v <= x.n; ++v) {
        qmat z = cycles_at(x, d, v);
        if (z.cols() == 0 || it == f.comps.end()) continue;
        qmat img = it->second * z;
        qmat b = boundaries_at(y, d, v);
        total += static_cast<int>(rank(img.hcat(b))) - static_cast<int>(rank(b));
    }
    return total;
}

std::vector<interval> all_intervals(int n)
{
    std::vector<interval> out;
    for (int a = 1; a <= n; ++a)
        for (int b = a; b <= n; ++b) out.push_back({a, b});
    return out;
}

std::vector<normal_form> antype_corpus(int n, int cap, int shift_lo, int shift_hi)
{
    quiver_layout q(n);
    std::vector<shifted_interval> types;
    for (int s = shift_lo; s <= shift_hi; ++s)
        for (const auto& iv : all_intervals(n)) types.push_back({iv, s});
    std::vector<normal_form> out;
    normal_form cur;
    auto rec = [&](auto&& self, size_t start, int left) -> void {
        if (!cur.empty()) out.push_back(cur);
        for (size_t i = start; i < types.size(); ++i) {
            if (types[i].iv.dim() > left) continue;
            cur.push_back(types[i]);
            self(self, i, left - types[i].iv.dim());
            cur.pop_back();
        }
    };
    rec(rec, 0, cap);
    return out;
}

}  // namespace stabglue
