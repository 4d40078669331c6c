#pragma once

#include "stabglue/linalg.hpp"

#include <map>
#include <tuple>
#include <string>
#include <vector>

namespace stabglue {

constexpr int k_max_vertices = 8;

struct quiver_layout {
    int n = 1;

    quiver_layout() = default;
    explicit quiver_layout(int n_);
};

/* interval module M[a,b], 1 <= a <= b <= n */
struct interval {
    int a = 1;
    int b = 1;

    int dim() const { return b - a + 1; }
    auto operator<=>(const interval&) const = default;
};

/* M[a,b][shift]; cohomology sits in degree -shift */
struct shifted_interval {
    interval iv;
    int shift = 0;

    auto operator<=>(const shifted_interval& o) const
    {
        if (auto c = shift <=> o.shift; c != 0) return c;
        return iv <=> o.iv;
    }
    bool operator==(const shifted_interval&) const = default;
};

/* sorted multiset of shifted intervals */
using normal_form = std::vector<shifted_interval>;

using k0_class = std::vector<long>;

/* representation of A_n, maps[i] : dims[i] -> dims[i+1] (0-based vertices) */
struct rep {
    int n = 1;
    std::vector<int> dims;
    std::vector<qmat> maps;

    void validate() const;
};

std::vector<interval> decompose(const rep& r);
rep interval_rep(int n, const interval& iv);
rep reassemble(int n, const std::vector<interval>& ivs);

/* bounded complex of projectives P_i = M[i,n]; Hom(P_i, P_j) = k iff j <= i */
struct proj_complex {
    int n = 1;
    std::map<int, std::vector<int>> terms; /* degree -> projective labels */
    std::map<int, qmat> diffs;             /* degree d: terms[d] -> terms[d+1] */

    const std::vector<int>& term(int d) const;
    qmat diff(int d) const; /* zero matrix of the right shape when absent */
    void prune();
    void validate() const;
    int size() const;
};

/* degree-p map between complexes: comps[d] : X^d -> Y^{d+p} */
struct chain_map {
    int degree = 0;
    std::map<int, qmat> comps;
};

class dobject {
public:
    dobject() = default;
    explicit dobject(int n);

    static dobject from_complex(proj_complex cx);
    static dobject from_nf(int n, normal_form nf);
    static dobject indecomposable(int n, const interval& iv, int shift);
    static dobject from_rep(const rep& r);
    static dobject parse(int n, const std::string& text);

    int n() const { return cx_.n; }
    const proj_complex& cx() const { return cx_; }
    const normal_form& nf() const { return nf_; }
    bool is_zero() const { return nf_.empty(); }
    int total_dim() const;
    std::string str() const;

    friend bool operator==(const dobject& x, const dobject& y) { return x.n() == y.n() && x.nf_ == y.nf_; }

private:
    proj_complex cx_;
    normal_form nf_;
};

std::string nf_str(const normal_form& nf);
normal_form parse_nf(int n, const std::string& text);
normal_form canonical_nf(normal_form nf);
normal_form nf_shift(const normal_form& nf, int k);
normal_form nf_sum(const normal_form& x, const normal_form& y);
k0_class k0_of_nf(int n, const normal_form& nf);
k0_class k0_of_complex(const proj_complex& cx);
k0_class k0_class_of(const dobject& x);
k0_class k0_add(const k0_class& x, const k0_class& y, long sy = 1);

normal_form compute_normal_form(const proj_complex& cx);
proj_complex resolution(int n, const normal_form& nf);

proj_complex cx_shift(const proj_complex& x, int k);
proj_complex cx_sum(const proj_complex& x, const proj_complex& y);
dobject shift(const dobject& x, int k);
dobject direct_sum(const dobject& x, const dobject& y);

/* Hom^p complex between complexes of projectives */
class hom_complex {
public:
    hom_complex(const proj_complex& x, const proj_complex& y);

    size_t dim(int p) const;
    qmat differential(int p) const; /* C^p -> C^{p+1} */
    qvec to_coords(const chain_map& f) const;
    chain_map from_coords(int p, const qvec& v) const;
    int cohomology_dim(int p) const;
    /* canonical basis of H^p: reduced modulo boundaries, then row reduced */
    std::vector<qvec> cohomology_basis(int p) const;
    /* canonical representative of the class of v in H^p */
    qvec reduce(int p, const qvec& v) const;

private:
    struct coord {
        int d;
        int r;
        int c;
    };
    const std::vector<coord>& coords(int p) const;
    int index_of(int p, int d, int r, int c) const;

    proj_complex x_;
    proj_complex y_;
    mutable std::map<int, std::vector<coord>> coords_;
    mutable std::map<int, std::map<std::tuple<int, int, int>, int>> index_;
};

int hom_dim(const dobject& x, const dobject& y, int p = 0);
/* closed interval formulas, used on normal forms */
int hom_dim_intervals(const interval& x, const interval& y, int k);
int hom_dim_nf(const normal_form& x, const normal_form& y);

std::vector<chain_map> hom_basis(const dobject& x, const dobject& y);
bool is_chain_map(const proj_complex& x, const proj_complex& y, const chain_map& f);
bool homotopic(const proj_complex& x, const proj_complex& y, const chain_map& f, const chain_map& g);
bool is_null_homotopic(const proj_complex& x, const proj_complex& y, const chain_map& f);
chain_map identity_map(const proj_complex& x);
chain_map zero_map(const proj_complex& x, const proj_complex& y, int p = 0);
chain_map compose(const chain_map& g, const chain_map& f);
chain_map map_add(const chain_map& f, const chain_map& g, const rational& s = 1);
chain_map map_shift(const chain_map& f, int k);
/* coordinates of f in the canonical basis of Hom(x, y) */
qvec basis_coords(const dobject& x, const dobject& y, const chain_map& f);

proj_complex cone_complex(const proj_complex& x, const proj_complex& y, const chain_map& f);
dobject cone(const dobject& x, const dobject& y, const chain_map& f);
/* rank of H^d(f) */
int cohomology_rank(const proj_complex& x, const proj_complex& y, const chain_map& f, int d);

/* every nonzero multiset of shifted intervals with total dim <= cap and shifts in [lo, hi] */
std::vector<normal_form> antype_corpus(int n, int cap, int shift_lo = -2, int shift_hi = 2);
std::vector<interval> all_intervals(int n);

}  // namespace stabglue
