#pragma once

#include "stabglue/slope_tilt.hpp"

#include <optional>
#include <string>
#include <vector>

namespace stabglue {

/* p(t) = (cos(2 pi t/3), sin(2 pi t/3)) */
struct path_point {
    rational t;
    bool exact = false;      /* coordinates in Q(sqrt 3) */
    plane_point point;       /* exact value, or a rational approximant within 1e-12 */
    plane_point alternate;   /* second approximant, equal to point when exact */
    plane_point_iv enclosure;
};

path_point make_path_point(const rational& t);
/* t = k/n for k = 0..n */
std::vector<path_point> path_points(int n);
/* region membership of the true point, certified by intervals */
region_report path_region(const path_point& p, const region_params& r);

/* sup over semistable E of |Z~(tau2R E)| / |Z~(E)|, squared */
struct sup_ratio_report {
    qs3 exact_square;         /* over every semistable indecomposable up to shift */
    qs3 corpus_square;        /* over semistable corpus objects */
    qs3 torsion_side_square;  /* heart representative in the torsion class */
    qs3 free_side_square;     /* heart representative a shifted free object */
    qs3 low_phase_square;     /* phase at most arg(-beta + i omega)/pi */
    qs3 high_phase_square;
    size_t semistable_checked = 0;
    double approx() const;
};

/* throws std::domain_error naming the failed inequality when a region is given and the point is outside */
sup_ratio_report sup_ratio_estimate(const tilt_model& t, const std::vector<normal_form>& corpus,
                                    const std::optional<region_params>& region = std::nullopt);

struct torsion_window_report {
    size_t low_phase_checked = 0;
    size_t free_shift_checked = 0;
    size_t violations = 0;
    std::string witness;
    bool ok() const { return violations == 0; }
};

/* semistables with phase in (0, arg(-beta + i omega)/pi] are torsion class objects; shifted free objects lie strictly above */
torsion_window_report torsion_window_check(const tilt_model& t, const std::vector<normal_form>& corpus);

struct continuity_report {
    bool inside = false;        /* deformation ball membership */
    ball_report ball;
    bool hom_window_ok = true;  /* Hom(E[p], E') = 0 for p >= 2 between the two hearts */
    bool phase_window_ok = true;/* second heart inside P(-1, 2] of the first */
    std::string witness;
    bool ok() const { return inside && hom_window_ok && phase_window_ok; }
};

/* eps in (0, 1/8) */
continuity_report continuity_check(const tilt_model& a, const tilt_model& b, const rational& eps);

struct specialization_report {
    bool hypothesis = false;       /* |beta - 1 + i omega| < sin(pi eps) and beta > 0 */
    ball_report ball;              /* glued stability vs the tilted one */
    bool heart_window_ok = true;   /* tilted heart inside Q(0, 2 - eps] of the glued one */
    bool free_sector_ok = true;    /* shifted free objects inside Q(1, 1 + theta] */
    bool support_flag = false;     /* glued stability is reasonable, hence supported */
    std::string witness;
    bool ok() const { return hypothesis && ball.inside && heart_window_ok && free_sector_ok; }
};

/* throws std::domain_error when the hypothesis fails */
specialization_report specialization_check(const glued_model& g, const tilt_model& t, const rational& eps);

/* e^{i pi theta} Z with phases raised by theta; theta a multiple of 1/6 in (0, 1) */
stability_condition rotate_action(const stability_condition& s, const rational& theta);

struct endpoint_report {
    bool identity = false;     /* Z~ on SOD0 = e^{2 pi i/3} Z~ on SOD1 on every basis vector */
    bool same_slicing = false; /* distance zero after rotating the SOD1 side by 2/3 */
    std::vector<cplx> d0_row, d1_row;
    std::string witness;
    bool ok() const { return identity && same_slicing; }
};

/* both models glued from the same stability condition on D^b(k); rotation e^{i pi theta} */
endpoint_report endpoint_rotation_check(const glued_model& g0, const glued_model& g1, const plane_point& p,
                                        const rational& theta = rational(2, 3));

struct heart_window_report {
    size_t torsion_checked = 0;
    size_t free_checked = 0;
    size_t heart_checked = 0;
    size_t hom_checked = 0;
    size_t violations = 0;
    std::string witness;
    bool ok() const { return violations == 0; }
};

/* SOD0 tilted heart inside the [-1, 0] window of the SOD1 tilted heart, with the torsion and free refinements
   and the Hom vanishings between the two torsion pairs */
heart_window_report heart_window_check(const tilt_model& t0, const tilt_model& t1, const std::vector<normal_form>& corpus);

/* tilt classification at both approximants of a path point agrees */
bool classification_stable(const glued_model& g, const path_point& p);

struct path_step {
    path_point pp;
    bool in_region = false;
    bool heart_ok = false;
    bool classification_ok = true;
    sup_ratio_report ratio;
    continuity_report to_next; /* filled except for the last point */
};

struct path_run_report {
    int steps = 0;
    rational eps;
    std::vector<path_step> d0_steps; /* t = 1/N .. 1 */
    std::vector<path_step> d1_steps;
    specialization_report d0_bridge;
    specialization_report d1_bridge;
    endpoint_report endpoint;
    heart_window_report endpoint_window;
    bool continuity_ok = false;
    bool region_ok = false;
    bool hearts_ok = false;
    bool support_ok = false; /* flag carried along the chain */
    bool ok() const;
};

/* the chain from the SOD0 gluing of s to the SOD1 gluing of s */
path_run_report run_path(const stability_condition& s, int steps, const rational& eps, int corpus_cap = 3);

}  // namespace stabglue
