#pragma once

#include "stabglue/antype.hpp"

#include <string>
#include <vector>

namespace stabglue {

/* object [f : x -> y] of the morphism category over D^b(A_n) */
struct mor_object {
    dobject x;
    dobject y;
    chain_map f;

    int n() const { return x.n(); }
    bool is_zero() const { return x.is_zero() && y.is_zero(); }
    void validate() const;
};

mor_object make_mor(const dobject& x, const dobject& y, const chain_map& f);

enum class sod_side { sod0, sod1 };

std::string side_str(sod_side s);
sod_side parse_side(const std::string& s);

dobject d0(const mor_object& m);
dobject d1(const mor_object& m);
mor_object s_functor(const dobject& z);
mor_object j_bang(const dobject& y);
mor_object j_star(const dobject& z);

/* fib f = cone(f)[-1], cof f = cone(f) */
dobject fib(const mor_object& m);
dobject cof(const mor_object& m);

mor_object mor_shift(const mor_object& m, int k);
mor_object mor_sum(const mor_object& a, const mor_object& b);
/* same complexes and homotopic maps */
bool mor_same(const mor_object& a, const mor_object& b);
/* transport f to the minimal complexes of x and y */
mor_object minimize(const mor_object& m);

/* [x] followed by [y] */
k0_class mor_k0(const mor_object& m);

struct sod_triangle_result {
    mor_object i2t2;
    mor_object m;
    mor_object i1t1;
    dobject tau2R; /* as an object of C */
    dobject tau1L; /* as an object of C */
};

sod_triangle_result sod_triangle(const mor_object& m, sod_side side);
dobject tau1L(const mor_object& m, sod_side side);
dobject tau2R(const mor_object& m, sod_side side);
/* inclusions i1, i2 of C through the identifications of both factors */
mor_object include1(const dobject& e, sod_side side);
mor_object include2(const dobject& e, sod_side side);

/* Phi = [1] */
dobject gluing_functor_image(const dobject& e2, sod_side side);

struct tau1r_triangle_result {
    dobject phi_t2_shift; /* Phi(tau2R)[-1] */
    dobject tau1R;
    dobject tau1L;
};

tau1r_triangle_result tau1r_triangle(const mor_object& m, sod_side side);

/* dim H^p of the Hom complex in the morphism category */
int mor_hom_dim(const mor_object& a, const mor_object& b, int p = 0);
/* dimension of the kernel of Hom(a, b) -> Hom(x, x') + Hom(y, y') */
int mor_hom_d_kernel_dim(const mor_object& a, const mor_object& b);

/* literal "mor(x; y; f=...)" with f one of 0, id, basis#k, (c0,c1,...) */
std::string mor_str(const mor_object& m);
mor_object parse_mor(int n, const std::string& text);

/* for C = D^b(k) the morphism category is D^b(A_2): vertex 1 carries x, vertex 2 carries y */
normal_form mor_to_a2(const mor_object& m);
mor_object mor_from_a2(const normal_form& nf);

/* endpoints from the object corpus plus 0, maps from each Hom basis plus 0 and id */
std::vector<mor_object> mor_corpus(int n, int cap, int shift_lo = -1, int shift_hi = 1);

}  // namespace stabglue
