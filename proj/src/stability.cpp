#include "stabglue/stability.hpp"

#include <algorithm>
#include <mutex>
#include <random>
#include <sstream>
#include <stdexcept>

namespace stabglue {

/* central charge */

cplx central_charge::operator()(const k0_class& c) const
{
    if (c.size() != row.size()) throw std::invalid_argument("central_charge: class has the wrong rank");
    cplx z;
    for (size_t i = 0; i < c.size(); ++i)
        if (c[i] != 0) z += cplx(qs3(rational(c[i]))) * row[i];
    return z;
}

cplx central_charge::of(const normal_form& nf) const { return (*this)(k0_of_nf(rank(), nf)); }

bool central_charge::is_rational() const
{
    return std::all_of(row.begin(), row.end(), [](const cplx& z) { return z.is_rational(); });
}

std::string central_charge::str() const
{
    std::string s = "[";
    for (size_t i = 0; i < row.size(); ++i) s += (i ? ", " : "") + row[i].str();
    return s + "]";
}

central_charge operator+(const central_charge& a, const central_charge& b)
{
    if (a.row.size() != b.row.size()) throw std::invalid_argument("central_charge: rank mismatch");
    central_charge r = a;
    for (size_t i = 0; i < r.row.size(); ++i) r.row[i] += b.row[i];
    return r;
}

central_charge operator-(const central_charge& a, const central_charge& b) { return a + cplx(-1) * b; }

central_charge operator*(const cplx& s, const central_charge& a)
{
    central_charge r = a;
    for (auto& z : r.row) z = s * z;
    return r;
}

/* heart */

heart heart::standard(int n, int k)
{
    std::map<interval, int> t;
    for (const auto& iv : all_intervals(n)) t[iv] = k;
    return from_table(n, std::move(t), k == 0 ? "A" : "A[" + std::to_string(k) + "]");
}

heart heart::from_table(int n, std::map<interval, int> table, std::string name)
{
    quiver_layout q(n);
    for (const auto& iv : all_intervals(n))
        if (!table.count(iv)) throw std::invalid_argument("heart: interval missing from the table");
    if (table.size() != all_intervals(n).size()) throw std::invalid_argument("heart: table has foreign intervals");
    heart h;
    h.n_ = n;
    h.name_ = std::move(name);
    h.table_ = std::move(table);
    h.validate();
    return h;
}

int heart::shift_of(const interval& iv) const
{
    auto it = table_.find(iv);
    if (it == table_.end()) throw std::invalid_argument("heart: unknown interval");
    return it->second;
}

std::vector<shifted_interval> heart::indecomposables() const
{
    std::vector<shifted_interval> out;
    for (const auto& [iv, s] : table_) out.push_back({iv, s});
    return out;
}

bool heart::contains(const normal_form& nf) const
{
    return std::all_of(nf.begin(), nf.end(), [&](const shifted_interval& x) { return shift_of(x.iv) == x.shift; });
}

std::pair<int, int> heart::cohomology_window(const normal_form& nf) const
{
    if (nf.empty()) throw std::invalid_argument("cohomology_window: zero object");
    int lo = 0, hi = 0;
    bool first = true;
    for (const auto& x : nf) {
        int d = shift_of(x.iv) - x.shift;
        lo = first ? d : std::min(lo, d);
        hi = first ? d : std::max(hi, d);
        first = false;
    }
    return {lo, hi};
}

heart heart::shifted(int k) const
{
    heart h = *this;
    for (auto& [iv, s] : h.table_) s += k;
    h.name_ = name_ + "[" + std::to_string(k) + "]";
    h.history_.push_back("shift " + std::to_string(k));
    return h;
}

heart heart::tilted(const std::function<tilt_side(const shifted_interval&)>& side, const std::string& label) const
{
    std::vector<shifted_interval> tors, fr;
    for (const auto& x : indecomposables()) {
        tilt_side c = side(x);
        if (c == tilt_side::neither)
            throw std::domain_error("tilt: " + nf_str({x}) + " is in neither class; the tilted heart is not shift-complete");
        (c == tilt_side::torsion ? tors : fr).push_back(x);
    }
    for (const auto& t : tors)
        for (const auto& f : fr)
            if (hom_dim_intervals(t.iv, f.iv, f.shift - t.shift) != 0)
                throw std::invalid_argument("tilt: Hom(" + nf_str({t}) + ", " + nf_str({f}) + ") is nonzero");
    heart h = *this;
    for (const auto& f : fr) h.table_[f.iv] += 1;
    h.name_ = label;
    h.history_.push_back("tilt " + label);
    h.validate();
    return h;
}

void heart::validate() const
{
    for (const auto& [a, sa] : table_)
        for (const auto& [b, sb] : table_)
            for (int k = 0; k <= 1; ++k)
                if (k < sb - sa && hom_dim_intervals(a, b, k) != 0)
                    throw std::invalid_argument("heart: negative Hom between " + nf_str({{a, sa}}) + " and " +
                                                nf_str({{b, sb}}));
}

/* phases */

std::optional<rational> phase::exact() const
{
    angle_value a = arg_principal(w);
    if (!a.pi_multiple) return std::nullopt;
    return rational(shift) + offset + *a.pi_multiple;
}

real_iv phase::enclosure() const
{
    if (auto e = exact()) return real_iv(*e);
    return real_iv(rational(shift)) + real_iv(offset) + real_iv::arg(w) / real_iv::pi();
}

double phase::approx() const
{
    if (auto e = exact()) return e->get_d();
    return enclosure().mid();
}

std::string phase::str() const
{
    if (auto e = exact()) return rational_str(*e);
    std::ostringstream os;
    os.precision(17);
    os << approx();
    return os.str();
}

int cmp_phase(const phase& a, const phase& b)
{
    if (a.offset == b.offset) {
        if (a.shift != b.shift) return a.shift < b.shift ? -1 : 1;
        int c = cross(a.w, b.w).sign();
        return -c;
    }
    if (cross(a.w, b.w).is_zero()) {
        rational d = rational(a.shift - b.shift) + a.offset - b.offset;
        return sgn(d);
    }
    auto ea = a.exact(), eb = b.exact();
    if (ea && eb) return *ea < *eb ? -1 : (*ea == *eb ? 0 : 1);
    return (a.enclosure() - b.enclosure()).sign();
}

/* engine data */

struct stability_data {
    int n = 0;
    std::vector<shifted_interval> ind;
    std::map<interval, size_t> index;
    std::vector<dobject> objs;
    std::vector<cplx> zind;
    std::vector<size_t> simples;
    std::vector<std::vector<long>> coords;
    qmat simple_basis;
    std::vector<std::vector<int>> hom1;
    /* comp[s][x][y]: S_s -> X -> Y composite of basis maps is nonzero */
    std::vector<std::vector<std::vector<char>>> comp;

    mutable std::mutex mu;
    mutable std::map<size_t, hn_filtration_t> hn_cache;
};

namespace {

using multiset = std::vector<int>;

bool in_half_plane(const cplx& z) { return z.im.sign() > 0 || (z.im.sign() == 0 && z.re.sign() < 0); }

normal_form nf_of(const stability_data& d, const multiset& m)
{
    normal_form nf;
    for (size_t i = 0; i < m.size(); ++i)
        for (int c = 0; c < m[i]; ++c) nf.push_back(d.ind[i]);
    return canonical_nf(nf);
}

multiset ms_of(const stability_data& d, const normal_form& nf)
{
    multiset m(d.ind.size(), 0);
    for (const auto& x : nf) {
        size_t i = d.index.at(x.iv);
        if (d.ind[i].shift != x.shift) throw std::invalid_argument("object " + nf_str(nf) + " is not in the heart");
        ++m[i];
    }
    return m;
}

bool nonzero_map_cone_in_heart(const heart& h, const dobject& x, const dobject& y)
{
    auto basis = hom_basis(x, y);
    if (basis.size() != 1) return false;
    return h.contains(cone(x, y, basis[0]).nf());
}

/* Kuhn augmenting path */
bool augment(size_t c, const std::vector<std::vector<size_t>>& adj, std::vector<int>& match_row, std::vector<char>& seen)
{
    for (size_t r : adj[c]) {
        if (seen[r]) continue;
        seen[r] = 1;
        if (match_row[r] < 0 || augment(static_cast<size_t>(match_row[r]), adj, match_row, seen)) {
            match_row[r] = static_cast<int>(c);
            return true;
        }
    }
    return false;
}

bool hall_embeds(const stability_data& d, const multiset& u, const multiset& e)
{
    for (size_t si = 0; si < d.simples.size(); ++si) {
        size_t s = d.simples[si];
        std::vector<size_t> cols, rows;
        for (size_t j = 0; j < u.size(); ++j)
            if (d.hom1[s][j])
                for (int c = 0; c < u[j]; ++c) cols.push_back(j);
        if (cols.empty()) continue;
        for (size_t i = 0; i < e.size(); ++i)
            if (d.hom1[s][i])
                for (int c = 0; c < e[i]; ++c) rows.push_back(i);
        if (rows.size() < cols.size()) return false;
        std::vector<std::vector<size_t>> adj(cols.size());
        for (size_t c = 0; c < cols.size(); ++c)
            for (size_t r = 0; r < rows.size(); ++r)
                if (d.comp[si][cols[c]][rows[r]]) adj[c].push_back(r);
        std::vector<int> match_row(rows.size(), -1);
        for (size_t c = 0; c < cols.size(); ++c) {
            std::vector<char> seen(rows.size(), 0);
            if (!augment(c, adj, match_row, seen)) return false;
        }
    }
    return true;
}

std::vector<long> ms_coords(const stability_data& d, const multiset& m)
{
    std::vector<long> c(d.simples.size(), 0);
    for (size_t i = 0; i < m.size(); ++i)
        for (size_t k = 0; k < c.size(); ++k) c[k] += m[i] * d.coords[i][k];
    return c;
}

cplx ms_charge(const stability_data& d, const multiset& m)
{
    cplx z;
    for (size_t i = 0; i < m.size(); ++i)
        if (m[i]) z += cplx(qs3(rational(m[i]))) * d.zind[i];
    return z;
}

long ms_length(const stability_data& d, const multiset& m)
{
    long l = 0;
    for (long c : ms_coords(d, m)) l += c;
    return l;
}

normal_form quotient_nf(const heart& h, int n, const normal_form& u, const normal_form& e)
{
    dobject uo = dobject::from_nf(n, u), eo = dobject::from_nf(n, e);
    auto basis = hom_basis(uo, eo);
    k0_class want = k0_add(k0_of_nf(n, e), k0_of_nf(n, u), -1);
    std::mt19937_64 rng(0x51ab1e);
    std::uniform_int_distribution<int> coef(-7, 7);
    for (int attempt = 0; attempt < 64 && !basis.empty(); ++attempt) {
        chain_map f = zero_map(uo.cx(), eo.cx());
        for (const auto& b : basis) f = map_add(f, b, rational(coef(rng)));
        dobject c = cone(uo, eo, f);
        if (h.contains(c.nf()) && k0_of_nf(n, c.nf()) == want) return c.nf();
    }
    throw std::runtime_error("quotient: no monomorphism " + nf_str(u) + " -> " + nf_str(e) + " found");
}

/* ordered by decreasing phase, equal phases summed */
hn_filtration_t merge_factors(hn_filtration_t all)
{
    std::stable_sort(all.begin(), all.end(),
                     [](const hn_factor& a, const hn_factor& b) { return cmp_phase(a.ph, b.ph) > 0; });
    hn_filtration_t out;
    for (auto& f : all) {
        if (!out.empty() && cmp_phase(out.back().ph, f.ph) == 0) {
            out.back().obj = nf_sum(out.back().obj, f.obj);
            out.back().z += f.z;
            out.back().ph.w += f.ph.w;
        } else {
            out.push_back(std::move(f));
        }
    }
    return out;
}

void enumerate_subs(const stability_data& d, const std::vector<long>& bound, size_t i, multiset& m,
                    std::vector<long>& used, const std::function<void(const multiset&)>& visit)
{
    if (i == d.ind.size()) {
        visit(m);
        return;
    }
    enumerate_subs(d, bound, i + 1, m, used, visit);
    const auto& c = d.coords[i];
    int added = 0;
    while (true) {
        bool fits = true;
        for (size_t k = 0; k < c.size(); ++k)
            if (used[k] + c[k] > bound[k]) fits = false;
        if (!fits) break;
        for (size_t k = 0; k < c.size(); ++k) used[k] += c[k];
        ++m[i];
        ++added;
        enumerate_subs(d, bound, i + 1, m, used, visit);
    }
    for (size_t k = 0; k < c.size(); ++k) used[k] -= added * c[k];
    m[i] -= added;
}

hn_filtration_t hn_of_heart_indecomposable(const stability_condition& s, size_t idx);

hn_filtration_t hn_in_heart(const stability_condition& s, const multiset& m)
{
    hn_filtration_t all;
    for (size_t i = 0; i < m.size(); ++i)
        for (int c = 0; c < m[i]; ++c) {
            auto h = hn_of_heart_indecomposable(s, i);
            all.insert(all.end(), h.begin(), h.end());
        }
    return merge_factors(std::move(all));
}

hn_filtration_t hn_of_heart_indecomposable(const stability_condition& s, size_t idx)
{
    const auto& d = s.data();
    {
        std::lock_guard<std::mutex> lock(d.mu);
        auto it = d.hn_cache.find(idx);
        if (it != d.hn_cache.end()) return it->second;
    }
    const auto& target = d.coords[idx];
    long len = 0;
    for (long c : target) len += c;
    if (len > s.subobject_cap())
        throw std::runtime_error("hn: " + nf_str({d.ind[idx]}) + " has length " + std::to_string(len) +
                                 " above the subobject cap " + std::to_string(s.subobject_cap()));
    multiset whole(d.ind.size(), 0);
    whole[idx] = 1;
    std::optional<multiset> best;
    cplx best_z;
    long best_len = 0;
    multiset m(d.ind.size(), 0);
    std::vector<long> used(target.size(), 0);
    enumerate_subs(d, target, 0, m, used, [&](const multiset& u) {
        long l = ms_length(d, u);
        if (l == 0 || l == len) return;
        if (!hall_embeds(d, u, whole)) return;
        cplx z = ms_charge(d, u);
        if (best) {
            int c = cross(best_z, z).sign();
            if (c < 0 || (c == 0 && l <= best_len)) return;
        }
        best = u;
        best_z = z;
        best_len = l;
    });
    const cplx& zf = d.zind[idx];
    hn_filtration_t out;
    if (!best || cross(zf, best_z).sign() <= 0) {
        out.push_back({{d.ind[idx]}, phase{0, s.offset(), zf}, zf});
    } else {
        normal_form u = nf_of(d, *best);
        normal_form q = quotient_nf(s.hrt(), d.n, u, {d.ind[idx]});
        out.push_back({u, phase{0, s.offset(), best_z}, best_z});
        auto rest = hn_in_heart(s, ms_of(d, q));
        out.insert(out.end(), rest.begin(), rest.end());
    }
    std::lock_guard<std::mutex> lock(d.mu);
    d.hn_cache[idx] = out;
    return out;
}

std::optional<qs3> exact_sqrt(const qs3& x)
{
    if (!x.is_rational() || x.sign() < 0) return std::nullopt;
    mpz_class num = x.rat().get_num(), den = x.rat().get_den();
    if (!mpz_perfect_square_p(num.get_mpz_t()) || !mpz_perfect_square_p(den.get_mpz_t())) return std::nullopt;
    mpz_class rn, rd;
    mpz_sqrt(rn.get_mpz_t(), num.get_mpz_t());
    mpz_sqrt(rd.get_mpz_t(), den.get_mpz_t());
    return qs3(rational(rn, rd));
}

real_value sqrt_value(const qs3& sq)
{
    real_value v{real_iv(sq).sqrt(), exact_sqrt(sq), sq};
    if (v.exact) v.enclosure = real_iv(*v.exact);
    return v;
}

}  // namespace

/* stability condition */

stability_condition::stability_condition(heart h, central_charge z, rational offset, int cap)
    : h_(std::move(h)), z_(std::move(z)), offset_(std::move(offset)), cap_(cap)
{
    const int n = h_.n();
    if (n < 1) throw std::invalid_argument("stability_condition: empty heart");
    if (z_.rank() != n) throw std::invalid_argument("stability_condition: charge rank differs from the lattice rank");
    offset_.canonicalize();
    auto d = std::make_shared<stability_data>();
    d->n = n;
    d->ind = h_.indecomposables();
    const size_t N = d->ind.size();
    for (size_t i = 0; i < N; ++i) {
        d->index[d->ind[i].iv] = i;
        d->objs.push_back(dobject::from_nf(n, {d->ind[i]}));
        d->zind.push_back(z_.of({d->ind[i]}));
        if (!in_half_plane(d->zind[i]))
            throw std::invalid_argument("stability_condition: Z(" + nf_str({d->ind[i]}) + ") = " + d->zind[i].str() +
                                        " is outside the upper half plane");
    }
    d->hom1.assign(N, std::vector<int>(N, 0));
    for (size_t x = 0; x < N; ++x)
        for (size_t y = 0; y < N; ++y)
            d->hom1[x][y] = hom_dim_intervals(d->ind[x].iv, d->ind[y].iv, d->ind[y].shift - d->ind[x].shift);
    for (size_t x = 0; x < N; ++x) {
        bool simple = true;
        for (size_t y = 0; y < N && simple; ++y)
            if (y != x && d->hom1[y][x] && nonzero_map_cone_in_heart(h_, d->objs[y], d->objs[x])) simple = false;
        if (simple) d->simples.push_back(x);
    }
    if (static_cast<int>(d->simples.size()) != n)
        throw std::invalid_argument("stability_condition: heart has " + std::to_string(d->simples.size()) +
                                    " simples, expected " + std::to_string(n));
    d->simple_basis = qmat(n, n);
    for (int c = 0; c < n; ++c) {
        auto k = k0_of_nf(n, {d->ind[d->simples[c]]});
        for (int r = 0; r < n; ++r) d->simple_basis(r, c) = k[r];
    }
    if (rank(d->simple_basis) != static_cast<size_t>(n))
        throw std::invalid_argument("stability_condition: simple classes are not a basis");
    for (size_t x = 0; x < N; ++x) {
        auto k = k0_of_nf(n, {d->ind[x]});
        qvec b(k.begin(), k.end());
        auto sol = solve(d->simple_basis, b);
        std::vector<long> c;
        for (const auto& q : *sol) {
            if (q.get_den() != 1 || q < 0)
                throw std::invalid_argument("stability_condition: heart object with non-natural simple coordinates");
            c.push_back(q.get_num().get_si());
        }
        d->coords.push_back(c);
    }
    d->comp.assign(n, std::vector<std::vector<char>>(N, std::vector<char>(N, 0)));
    for (int si = 0; si < n; ++si) {
        size_t s = d->simples[si];
        for (size_t x = 0; x < N; ++x) {
            if (!d->hom1[s][x]) continue;
            chain_map a = hom_basis(d->objs[s], d->objs[x])[0];
            for (size_t y = 0; y < N; ++y) {
                if (!d->hom1[x][y] || !d->hom1[s][y]) continue;
                chain_map b = hom_basis(d->objs[x], d->objs[y])[0];
                d->comp[si][x][y] = is_null_homotopic(d->objs[s].cx(), d->objs[y].cx(), compose(b, a)) ? 0 : 1;
            }
        }
    }
    data_ = std::move(d);
}

std::optional<central_charge> stability_condition::effective_charge() const
{
    if (offset_ == 0) return z_;
    auto u = exact_unit(offset_);
    if (!u) return std::nullopt;
    return *u * z_;
}

stability_condition shift_stability(const stability_condition& s, int k)
{
    central_charge z = (k % 2 == 0) ? s.charge() : cplx(-1) * s.charge();
    return stability_condition(s.hrt().shifted(k), z, s.offset(), s.subobject_cap());
}

stability_condition rotate(const stability_condition& s, const rational& eps)
{
    return stability_condition(s.hrt(), s.charge(), s.offset() + eps, s.subobject_cap());
}

std::vector<shifted_interval> heart_simples(const stability_condition& s)
{
    std::vector<shifted_interval> out;
    for (size_t i : s.data().simples) out.push_back(s.data().ind[i]);
    return out;
}

std::vector<long> simple_coordinates(const stability_condition& s, const k0_class& c)
{
    qvec b(c.begin(), c.end());
    auto sol = solve(s.data().simple_basis, b);
    if (!sol) throw std::invalid_argument("simple_coordinates: class of the wrong rank");
    std::vector<long> out;
    for (const auto& q : *sol) out.push_back(q.get_num().get_si());
    return out;
}

bool embeds(const stability_condition& s, const normal_form& u, const normal_form& e)
{
    const auto& d = s.data();
    return hall_embeds(d, ms_of(d, u), ms_of(d, e));
}

normal_form quotient(const stability_condition& s, const normal_form& u, const normal_form& e)
{
    if (!embeds(s, u, e)) throw std::invalid_argument("quotient: " + nf_str(u) + " does not embed in " + nf_str(e));
    if (u.empty()) return canonical_nf(e);
    return quotient_nf(s.hrt(), s.n(), canonical_nf(u), canonical_nf(e));
}

std::vector<normal_form> subobject_types(const stability_condition& s, const normal_form& e)
{
    const auto& d = s.data();
    multiset whole = ms_of(d, e);
    auto bound = ms_coords(d, whole);
    long len = 0;
    for (long c : bound) len += c;
    if (len > s.subobject_cap())
        throw std::runtime_error("subobjects: " + nf_str(e) + " has length " + std::to_string(len) +
                                 " above the subobject cap " + std::to_string(s.subobject_cap()));
    std::vector<normal_form> out;
    multiset m(d.ind.size(), 0);
    std::vector<long> used(bound.size(), 0);
    enumerate_subs(d, bound, 0, m, used, [&](const multiset& u) {
        if (ms_length(d, u) == 0) return;
        if (hall_embeds(d, u, whole)) out.push_back(nf_of(d, u));
    });
    return out;
}

bool is_sigma_torsion(const stability_condition& s, const normal_form& e)
{
    return s.hrt().contains(e) && s.charge().of(e).im.is_zero();
}

bool is_sigma_free(const stability_condition& s, const normal_form& e)
{
    if (!s.hrt().contains(e)) return false;
    if (e.empty()) return true;
    for (const auto& f : hn_filtration(s, e))
        if (f.z.im.sign() <= 0) return false;
    return true;
}

hn_filtration_t hn_filtration(const stability_condition& s, const normal_form& e)
{
    if (e.empty()) throw std::invalid_argument("hn_filtration: zero object");
    const auto& d = s.data();
    hn_filtration_t all;
    for (const auto& x : e) {
        size_t idx = d.index.at(x.iv);
        int m = x.shift - d.ind[idx].shift;
        for (auto f : hn_of_heart_indecomposable(s, idx)) {
            f.obj = nf_shift(f.obj, m);
            f.ph.shift += m;
            all.push_back(std::move(f));
        }
    }
    return merge_factors(std::move(all));
}

bool is_semistable(const stability_condition& s, const normal_form& e) { return hn_filtration(s, e).size() == 1; }

phase phase_of(const stability_condition& s, const normal_form& e)
{
    auto h = hn_filtration(s, e);
    if (h.size() != 1)
        throw std::domain_error("phase: " + nf_str(e) + " is not semistable, destabilized by " + nf_str(h.front().obj));
    return h.front().ph;
}

phase phi_plus(const stability_condition& s, const normal_form& e) { return hn_filtration(s, e).front().ph; }
phase phi_minus(const stability_condition& s, const normal_form& e) { return hn_filtration(s, e).back().ph; }

real_value mass(const stability_condition& s, const normal_form& e)
{
    auto h = hn_filtration(s, e);
    real_iv total(0L);
    std::optional<qs3> exact = qs3(0);
    for (const auto& f : h) {
        real_value v = sqrt_value(f.z.norm2());
        total = total + v.enclosure;
        if (exact && v.exact)
            *exact += *v.exact;
        else
            exact.reset();
    }
    real_value out{total, exact, std::nullopt};
    if (h.size() == 1) out.exact_square = h.front().z.norm2();
    if (exact) out.enclosure = real_iv(*exact);
    return out;
}

std::vector<shifted_interval> semistable_indecomposables(const stability_condition& s)
{
    std::vector<shifted_interval> out;
    for (const auto& x : s.data().ind)
        if (is_semistable(s, {x})) out.push_back(x);
    return out;
}

/* metric and norm */

namespace {

real_value exact_value(const rational& g) { return {real_iv(g), qs3(g), qs3(g * g)}; }

real_value phase_gap(const phase& a, const phase& b)
{
    if (cross(a.w, b.w).is_zero()) return exact_value(abs(rational(a.shift - b.shift) + a.offset - b.offset));
    auto ea = a.exact(), eb = b.exact();
    if (ea && eb) return exact_value(abs(*ea - *eb));
    return {(a.enclosure() - b.enclosure()).abs(), std::nullopt, std::nullopt};
}

/* a < b certified, false when undecided */
bool surely_less(const real_iv& a, const real_iv& b)
{
    try {
        return certified_less(a, b);
    } catch (const std::domain_error&) {
        return false;
    }
}

void absorb_max(real_value& acc, const real_value& v, bool first)
{
    if (first) {
        acc = v;
        return;
    }
    if (acc.exact && v.exact) {
        if (*v.exact > *acc.exact) acc = v;
        return;
    }
    if (surely_less(v.enclosure, acc.enclosure) || (acc.exact && v.exact && *v.exact == *acc.exact)) return;
    if (surely_less(acc.enclosure, v.enclosure)) {
        acc = v;
        return;
    }
    acc.enclosure = real_iv::max(acc.enclosure, v.enclosure);
    acc.exact.reset();
    acc.exact_square.reset();
}

estimate metric_over(const stability_condition& a, const stability_condition& b, const std::vector<normal_form>& objs)
{
    if (a.n() != b.n()) throw std::invalid_argument("metric: different lattices");
    estimate out;
    out.value = {real_iv(0L), qs3(0), qs3(0)};
    bool first = true;
    for (const auto& e : objs) {
        auto ha = hn_filtration(a, e), hb = hn_filtration(b, e);
        absorb_max(out.value, phase_gap(ha.front().ph, hb.front().ph), first);
        absorb_max(out.value, phase_gap(ha.back().ph, hb.back().ph), false);
        first = false;
        ++out.checked;
    }
    return out;
}

struct civ {
    real_iv re, im;
};

civ to_civ(const cplx& z) { return {real_iv(z.re), real_iv(z.im)}; }

civ rotate_civ(const civ& z, const rational& t)
{
    real_iv c = real_iv::cos_pi(t), s = real_iv::sin_pi(t);
    return {c * z.re - s * z.im, s * z.re + c * z.im};
}

}  // namespace

estimate metric_exact(const stability_condition& a, const stability_condition& b)
{
    std::vector<normal_form> objs;
    for (const auto& x : a.data().ind) objs.push_back({x});
    estimate e = metric_over(a, b, objs);
    e.exact_sup = true;
    return e;
}

estimate metric_estimate(const stability_condition& a, const stability_condition& b, const std::vector<normal_form>& corpus)
{
    return metric_over(a, b, corpus);
}

namespace {

estimate norm_over(const central_charge& u, const stability_condition& s, const std::vector<normal_form>& objs)
{
    estimate out;
    std::optional<qs3> best;
    for (const auto& e : objs) {
        cplx z = s.charge().of(e);
        qs3 r = u.of(e).norm2() / z.norm2();
        if (!best || r > *best) best = r;
        ++out.checked;
    }
    out.value = sqrt_value(best ? *best : qs3(0));
    return out;
}

std::vector<normal_form> semistable_objects(const stability_condition& s)
{
    std::vector<normal_form> objs;
    for (const auto& x : semistable_indecomposables(s)) objs.push_back({x});
    return objs;
}

std::vector<normal_form> semistable_filter(const stability_condition& s, const std::vector<normal_form>& corpus)
{
    std::vector<normal_form> objs;
    for (const auto& e : corpus)
        if (is_semistable(s, e)) objs.push_back(e);
    return objs;
}

}  // namespace

estimate norm_exact(const central_charge& u, const stability_condition& s)
{
    estimate e = norm_over(u, s, semistable_objects(s));
    e.exact_sup = true;
    return e;
}

estimate norm_estimate(const central_charge& u, const stability_condition& s, const std::vector<normal_form>& corpus)
{
    return norm_over(u, s, semistable_filter(s, corpus));
}

ball_report ball_membership(const stability_condition& a, const stability_condition& b, const rational& eps)
{
    if (eps <= 0 || eps >= rational(1, 4)) throw std::invalid_argument("ball_membership: eps must lie in (0, 1/4)");
    ball_report r;
    r.metric = metric_exact(a, b);
    auto s = exact_sin_pi(eps);
    r.sin_pi_eps = s ? real_value{real_iv(*s), *s, *s * *s} : real_value{real_iv::sin_pi(eps), std::nullopt, std::nullopt};
    bool metric_ok = r.metric.value.exact ? *r.metric.value.exact < qs3(eps)
                                          : certified_less(r.metric.value.enclosure, real_iv(eps));
    auto za = a.effective_charge(), zb = b.effective_charge();
    bool norm_ok;
    if (za && zb) {
        r.norm = norm_exact(*zb - *za, a);
        norm_ok = s ? *r.norm.value.exact_square < *s * *s
                    : certified_less(r.norm.value.enclosure, r.sin_pi_eps.enclosure);
    } else {
        /* rotations outside the exact field: intervals throughout */
        real_iv best(0L);
        for (const auto& e : semistable_objects(a)) {
            civ wa = rotate_civ(to_civ(a.charge().of(e)), a.offset());
            civ wb = rotate_civ(to_civ(b.charge().of(e)), b.offset());
            real_iv dre = wb.re - wa.re, dim = wb.im - wa.im;
            real_iv ratio = (dre * dre + dim * dim) / real_iv(a.charge().of(e).norm2());
            best = real_iv::max(best, ratio);
            ++r.norm.checked;
        }
        r.norm.exact_sup = true;
        r.norm.value = {best.sqrt(), std::nullopt, std::nullopt};
        norm_ok = certified_less(r.norm.value.enclosure, r.sin_pi_eps.enclosure);
    }
    r.inside = metric_ok && norm_ok;
    return r;
}

/* support property */

namespace {

/* row echelon kernel over Q(sqrt 3) */
std::vector<std::vector<qs3>> kernel_qs3(std::vector<std::vector<qs3>> m, size_t cols)
{
    std::vector<size_t> pivots;
    size_t r = 0;
    for (size_t c = 0; c < cols && r < m.size(); ++c) {
        size_t p = r;
        while (p < m.size() && m[p][c].is_zero()) ++p;
        if (p == m.size()) continue;
        std::swap(m[p], m[r]);
        qs3 inv = m[r][c].inverse();
        for (auto& x : m[r]) x *= inv;
        for (size_t i = 0; i < m.size(); ++i) {
            if (i == r || m[i][c].is_zero()) continue;
            qs3 f = m[i][c];
            for (size_t j = 0; j < cols; ++j) m[i][j] -= f * m[r][j];
        }
        pivots.push_back(c);
        ++r;
    }
    std::vector<std::vector<qs3>> basis;
    for (size_t c = 0; c < cols; ++c) {
        if (std::find(pivots.begin(), pivots.end(), c) != pivots.end()) continue;
        std::vector<qs3> v(cols, qs3(0));
        v[c] = 1;
        for (size_t i = 0; i < pivots.size(); ++i) v[pivots[i]] = -m[i][c];
        basis.push_back(v);
    }
    return basis;
}

qs3 det_qs3(std::vector<std::vector<qs3>> m)
{
    const size_t n = m.size();
    qs3 det = 1;
    for (size_t c = 0; c < n; ++c) {
        size_t p = c;
        while (p < n && m[p][c].is_zero()) ++p;
        if (p == n) return qs3(0);
        if (p != c) {
            std::swap(m[p], m[c]);
            det = -det;
        }
        det *= m[c][c];
        qs3 inv = m[c][c].inverse();
        for (size_t i = c + 1; i < n; ++i) {
            if (m[i][c].is_zero()) continue;
            qs3 f = m[i][c] * inv;
            for (size_t j = c; j < n; ++j) m[i][j] -= f * m[c][j];
        }
    }
    return det;
}

qs3 quad(const qs3_matrix& q, const std::vector<qs3>& v, const std::vector<qs3>& w)
{
    qs3 s = 0;
    for (size_t i = 0; i < v.size(); ++i)
        for (size_t j = 0; j < w.size(); ++j) s += v[i] * q[i][j] * w[j];
    return s;
}

}  // namespace

std::vector<std::vector<qs3>> charge_kernel(const central_charge& z)
{
    std::vector<qs3> re, im;
    for (const auto& c : z.row) {
        re.push_back(c.re);
        im.push_back(c.im);
    }
    return kernel_qs3({re, im}, z.row.size());
}

support_report support_check(const stability_condition& s, const qs3_matrix& q, const std::vector<normal_form>& corpus)
{
    const size_t n = static_cast<size_t>(s.n());
    if (q.size() != n) throw std::invalid_argument("support_check: form of the wrong size");
    for (size_t i = 0; i < n; ++i) {
        if (q[i].size() != n) throw std::invalid_argument("support_check: form is not square");
        for (size_t j = 0; j < n; ++j)
            if (q[i][j] != q[j][i]) throw std::invalid_argument("support_check: form is not symmetric");
    }
    support_report r;
    auto objs = semistable_objects(s);
    auto extra = semistable_filter(s, corpus);
    objs.insert(objs.end(), extra.begin(), extra.end());
    for (const auto& e : objs) {
        auto k = k0_of_nf(s.n(), e);
        std::vector<qs3> v(k.begin(), k.end());
        ++r.checked;
        if (quad(q, v, v).sign() < 0) {
            ++r.violations;
            r.semistable_ok = false;
            if (r.note.empty()) r.note = "q < 0 on " + nf_str(e);
        }
    }
    auto ker = charge_kernel(s.charge());
    r.kernel_dim = static_cast<int>(ker.size());
    for (size_t k = 1; k <= ker.size(); ++k) {
        std::vector<std::vector<qs3>> g(k, std::vector<qs3>(k));
        for (size_t i = 0; i < k; ++i)
            for (size_t j = 0; j < k; ++j) g[i][j] = quad(q, ker[i], ker[j]);
        int want = (k % 2 == 1) ? -1 : 1;
        if (det_qs3(g).sign() != want) {
            r.kernel_negative_definite = false;
            if (r.note.empty()) r.note = "q is not negative definite on ker Z";
            break;
        }
    }
    if (r.note.empty() && ker.empty()) r.note = "ker Z = 0";
    return r;
}

flags_report classify_flags(const stability_condition& s)
{
    flags_report f;
    auto z = s.effective_charge();
    f.rational = z && z->is_rational();
    f.discrete = f.rational;
    std::optional<qs3> best;
    for (const auto& e : semistable_objects(s)) {
        qs3 v = s.charge().of(e).norm2();
        if (!best || v < *best) best = v;
    }
    f.min_abs_z = sqrt_value(*best);
    f.reasonable = best->sign() > 0;
    return f;
}

}  // namespace stabglue
