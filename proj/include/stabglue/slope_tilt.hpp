#pragma once

#include "stabglue/sod_gluing.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace stabglue {

/* value of the slope charge M at a point (beta, omega) */
struct slope_value {
    cplx m;
    std::optional<qs3> mu; /* -Re m / Im m when Im m > 0 */
    bool infinite = false; /* Im m = 0 and Re m < 0 */
    bool serre = false;    /* m = 0 */

    std::string str() const;
};

/* -1, 0, 1 with +infinity above every finite slope; serre values throw */
int cmp_slope(const slope_value& a, const slope_value& b);
/* sign of mu, +infinity positive */
int slope_sign(const slope_value& a);

slope_value slope_of_value(const cplx& m);
/* M = -Im z1 + w Re z2 - b Im z2 + i (Im z1 + Im z2) as a linear map on K0 */
central_charge slope_charge(const glued_model& g, const plane_point& p);
slope_value slope_of_class(const glued_model& g, const plane_point& p, const k0_class& c);
/* throws std::invalid_argument off the glued heart */
slope_value slope(const glued_model& g, const plane_point& p, const normal_form& e);

struct mu_factor {
    normal_form obj;
    slope_value s;
};

struct mu_hn_result {
    std::vector<mu_factor> factors; /* strictly decreasing slopes */
    normal_form serre_part;        /* pieces with M = 0 */
};

/* slope HN filtration modulo the kernel of M; throws std::domain_error unless both factors are discrete */
mu_hn_result mu_hn(const glued_model& g, const plane_point& p, const normal_form& e);
/* extreme slopes of subobjects and of quotients, ignoring pieces with M = 0; empty when e has M = 0 throughout */
std::optional<slope_value> mu_plus(const glued_model& g, const plane_point& p, const normal_form& e);
std::optional<slope_value> mu_minus(const glued_model& g, const plane_point& p, const normal_form& e);
bool mu_semistable(const glued_model& g, const plane_point& p, const normal_form& e);

enum class tilt_class { torsion, free, neither };
std::string tilt_class_str(tilt_class c);

struct tilt_report {
    tilt_class cls = tilt_class::neither;
    normal_form torsion_part; /* largest subobject in the torsion class */
    normal_form free_part;
    bool mono_checked = false;
    bool mono_ok = true;
};

/* map tau1L E -> Phi(tau2R E) is a monomorphism in the first heart */
bool truncation_map_is_mono(const glued_model& g, const normal_form& e);

tilt_report tilt_membership(const glued_model& g, const plane_point& p, const normal_form& e);

/* Z1(tau1L E) + (beta - i omega) Z2(tau2R E) */
central_charge z_tilde(const glued_model& g, const plane_point& p);
central_charge z_tilde(const gluing_context& ctx, const plane_point& p);

/* the tilted heart as a heart of D^b(A_2) */
heart tilt_heart(const glued_model& g, const plane_point& p);

struct tilt_options {
    bool outside_hypotheses = false; /* run with non-rational factor charges */
    int cap = 12;
};

struct tilt_validation {
    bool ok = true;
    size_t heart_objects = 0;
    size_t positivity_checked = 0;
    size_t hn_checked = 0;
    size_t mono_checked = 0;
    size_t bound_checked = 0; /* free objects with Im Z~ = 0 */
    std::string failure;     /* object and failed clause */
};

/* (tilted heart, Z~) at a point; omega > 0, or (beta, omega) = (1, 0) */
class tilt_model {
public:
    tilt_model() = default;
    tilt_model(const glued_model& g, const plane_point& p, tilt_options opts = {});

    const glued_model& glued() const { return g_; }
    const plane_point& point() const { return p_; }
    const stability_condition& sigma() const { return sigma_; }
    const heart& hrt() const { return sigma_.hrt(); }
    bool outside_hypotheses() const { return outside_; }
    bool rational_point() const { return p_.beta.is_rational() && p_.omega.is_rational(); }
    /* classification of glued heart indecomposables */
    const std::map<interval, tilt_class>& classes() const { return classes_; }

private:
    glued_model g_;
    plane_point p_;
    stability_condition sigma_;
    bool outside_ = false;
    std::map<interval, tilt_class> classes_;
};

tilt_validation validate_sigma_tilde(const tilt_model& t, const std::vector<normal_form>& corpus);
/* builds and validates on the default corpus; throws std::domain_error with a diagnostic */
tilt_model build_sigma_tilde(const glued_model& g, const plane_point& p, tilt_options opts = {});

/* q(v) = Im Z1(tau1L v) Im Z2(tau2R v) as a symmetric matrix in the dimension vector basis */
qs3_matrix serre_support_form(const glued_model& g);
qs3 support_value(const glued_model& g, const k0_class& c);

struct serre_support_report {
    size_t semistable_checked = 0;
    size_t violations = 0;
    size_t angle_checked = 0; /* both truncation charges nonzero */
    int kernel_dim = 0;       /* ker M modulo classes with M = 0 */
    bool kernel_negative_definite = true;
    std::string witness;
    bool ok() const { return violations == 0 && kernel_negative_definite; }
};

serre_support_report serre_support_check(const glued_model& g, const plane_point& p, const std::vector<normal_form>& corpus);

/* arguments bounding Z~ on the slope windows of the free part */
struct theta_bounds {
    bool applicable = false; /* the eps1, eps2 and domain hypotheses */
    real_iv theta0, theta1, theta2, theta3;
    cplx w1, w2, w3; /* theta_k = arg w_k */
};

theta_bounds compute_theta_bounds(const plane_point& p, const region_params& r);

struct sector_report {
    theta_bounds theta;
    size_t steep_checked = 0;  /* free part with mu- > 1 */
    size_t window_checked = 0; /* free with mu+ <= eps1 < 1 */
    size_t sector_checked = 0; /* free with eps2 <= mu <= mu+ <= eps1 */
    size_t violations = 0;
    std::string witness;
    bool ok() const { return violations == 0; }
};

/* argument bounds for semistable glued heart objects at a point of the region */
sector_report sector_sweep(const tilt_model& t, const region_params& r, const std::vector<normal_form>& corpus);

/* glued heart objects of a corpus */
std::vector<normal_form> glued_heart_corpus(const glued_model& g, int cap, int lo = -1, int hi = 1);

}  // namespace stabglue
