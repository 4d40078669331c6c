#pragma once

#include "stabglue/morphism.hpp"
#include "stabglue/stability.hpp"

#include <array>
#include <string>
#include <vector>

namespace stabglue {

/* stability condition on D^b(k) with heart k-mod and Z(k) = z */
stability_condition point_stability(const cplx& z);

/* factor stability conditions of a semiorthogonal decomposition of Mor(D^b(k)) */
struct gluing_context {
    sod_side side = sod_side::sod0;
    stability_condition sigma1;
    stability_condition sigma2;
};

gluing_context make_context(sod_side side, const stability_condition& s1, const stability_condition& s2);
/* (SOD0, s, s[-1]) and (SOD1, s[1], s) */
gluing_context d0_context(const stability_condition& s);
gluing_context d1_context(const stability_condition& s);

/* Phi(z) = tau1R(i2(z)[1]), computed from the triangles */
dobject gluing_functor_functorial(const dobject& z, sod_side side);

/* names of the five gluing conditions, in order */
inline const std::array<const char*, 5> k_condition_names{"adjoints", "shift_functor", "heart_exact", "free_part", "charge_match"};

struct conditions_report {
    std::array<bool, 5> ok{true, true, true, true, true};
    std::array<std::string, 5> witness;
    size_t checked = 0;
    bool all() const { return ok[0] && ok[1] && ok[2] && ok[3] && ok[4]; }
};

/* adjoints exist, Phi = [1], Phi(A2) in A1, Phi(F2) in F1, Z2 = Z1 Phi */
conditions_report check_conditions(const gluing_context& ctx, const std::vector<normal_form>& c_corpus,
                                   const std::vector<mor_object>& corpus);
conditions_report check_conditions(const gluing_context& ctx);

bool glued_heart_membership(const gluing_context& ctx, const mor_object& e);
bool glued_heart_membership(const gluing_context& ctx, const normal_form& e);
/* the glued heart as a heart of D^b(A_2) */
heart compute_glued_heart(const gluing_context& ctx);
/* Z1(tau1L E) + Z2(tau2R E) on K0(A_2) */
central_charge glued_charge(const gluing_context& ctx);

struct truncation {
    normal_form t1; /* tau1L, an object of C */
    normal_form t2; /* tau2R, an object of C */
};

/* context, glued heart and glued stability condition with precomputed truncations */
class glued_model {
public:
    glued_model() = default;
    explicit glued_model(gluing_context ctx);

    const gluing_context& ctx() const { return ctx_; }
    const conditions_report& conditions() const { return report_; }
    const stability_condition& sigma() const { return sigma_; }
    truncation truncate(const normal_form& e) const;
    cplx z1_part(const normal_form& e) const;
    cplx z2_part(const normal_form& e) const;
    /* linear maps K0(A_2) -> K0(C) */
    long tau1_class(const k0_class& c) const;
    long tau2_class(const k0_class& c) const;

private:
    gluing_context ctx_;
    conditions_report report_;
    stability_condition sigma_;
    std::vector<truncation> basis_trunc_; /* per A_2 interval [1,1], [1,2], [2,2] at shift 0 */
    std::array<long, 2> t1_row_{0, 0};
    std::array<long, 2> t2_row_{0, 0};
};

/* validated glued stability condition; throws std::domain_error with a diagnostic */
glued_model glue_stability(const gluing_context& ctx);

enum class glued_kind { torsion, free, mixed };
std::string kind_str(glued_kind k);

struct torsion_split {
    glued_kind kind = glued_kind::torsion;
    normal_form torsion_part;
    normal_form free_part;
};

torsion_split glued_torsion_membership(const glued_model& g, const normal_form& e);

enum class check_status { holds, fails, vacuous, not_semistable };
std::string status_str(check_status s);

/* arg Z1(tau1L E) = arg Z1(Phi tau2R E) for glued-semistable E */
check_status glued_phase_equality_check(const glued_model& g, const normal_form& e);
/* tau1L E and tau2R E semistable (zero counts) for glued-semistable E */
check_status truncation_semistability_check(const glued_model& g, const normal_form& e);
/* |Z2(tau2R E)|^2 / |Z(E)|^2 */
qs3 tau2_ratio_square(const glued_model& g, const normal_form& e);
/* Hom(i1 E1, i2 E2[p]) and Hom(E1, Phi(E2)[p-1]) */
std::pair<int, int> semiorthogonal_hom_pair(const gluing_context& ctx, const dobject& e1, const dobject& e2, int p);

std::vector<normal_form> default_c_corpus();
/* D^b(A_2) objects of total dimension <= cap with shifts in [lo, hi] */
std::vector<normal_form> a2_corpus(int cap, int lo = -2, int hi = 2);

}  // namespace stabglue
