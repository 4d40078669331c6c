#pragma once

#include "stabglue/antype.hpp"
#include "stabglue/geometry_kernel.hpp"
#include "stabglue/interval.hpp"

#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

namespace stabglue {

/* additive map K0 -> C, one entry per simple of the module heart */
struct central_charge {
    std::vector<cplx> row;

    central_charge() = default;
    explicit central_charge(std::vector<cplx> r) : row(std::move(r)) {}

    int rank() const { return static_cast<int>(row.size()); }
    cplx operator()(const k0_class& c) const;
    cplx of(const normal_form& nf) const;
    bool is_rational() const;
    std::string str() const;

    friend central_charge operator+(const central_charge& a, const central_charge& b);
    friend central_charge operator-(const central_charge& a, const central_charge& b);
    friend central_charge operator*(const cplx& s, const central_charge& a);
    friend bool operator==(const central_charge& a, const central_charge& b) { return a.row == b.row; }
};

/* torsion pair label of a heart indecomposable */
enum class tilt_side { torsion, free, neither };

/* heart of a bounded t-structure on D^b(A_n) in which every indecomposable
   lies in some shift; stored as interval -> shift of its heart representative */
class heart {
public:
    heart() = default;
    /* module heart shifted by k */
    static heart standard(int n, int k = 0);
    static heart from_table(int n, std::map<interval, int> table, std::string name);

    int n() const { return n_; }
    const std::string& name() const { return name_; }
    const std::vector<std::string>& history() const { return history_; }
    const std::map<interval, int>& table() const { return table_; }
    int shift_of(const interval& iv) const;

    /* heart indecomposables M[iv][s(iv)] in interval order */
    std::vector<shifted_interval> indecomposables() const;
    bool contains(const normal_form& nf) const;
    /* degrees of the nonzero heart cohomology of a nonzero object */
    std::pair<int, int> cohomology_window(const normal_form& nf) const;
    /* heart[k] */
    heart shifted(int k) const;
    /* tilt <F[1], T>; throws std::domain_error when some indecomposable is in neither class */
    heart tilted(const std::function<tilt_side(const shifted_interval&)>& side, const std::string& label) const;

    /* negative Ext vanishing between heart indecomposables */
    void validate() const;

    friend bool operator==(const heart& a, const heart& b) { return a.n_ == b.n_ && a.table_ == b.table_; }

private:
    int n_ = 0;
    std::string name_;
    std::vector<std::string> history_;
    std::map<interval, int> table_;
};

/* phase k + r + arg(w)/pi with arg(w) in (0, pi] */
struct phase {
    int shift = 0;
    rational offset;
    cplx w;

    std::optional<rational> exact() const;
    real_iv enclosure() const;
    double approx() const;
    std::string str() const;
};

/* -1, 0, 1; exact when offsets agree or both phases are exact, else certified by intervals */
int cmp_phase(const phase& a, const phase& b);

struct hn_factor {
    normal_form obj;
    phase ph;
    cplx z; /* charge of the heart representative */
};

using hn_filtration_t = std::vector<hn_factor>;

struct stability_data;

/* heart plus charge; the slicing is rotated by offset (phases shift by offset) */
class stability_condition {
public:
    stability_condition() = default;
    stability_condition(heart h, central_charge z, rational offset = 0, int cap = 12);

    const heart& hrt() const { return h_; }
    const central_charge& charge() const { return z_; }
    const rational& offset() const { return offset_; }
    int n() const { return h_.n(); }
    int subobject_cap() const { return cap_; }
    /* e^{i pi offset} Z when the offset is a multiple of 1/6 */
    std::optional<central_charge> effective_charge() const;

    const stability_data& data() const { return *data_; }

private:
    heart h_;
    central_charge z_;
    rational offset_;
    int cap_ = 12;
    std::shared_ptr<stability_data> data_;
};

/* sigma[k]: heart shifted by k and charge (-1)^k Z */
stability_condition shift_stability(const stability_condition& s, int k);
/* phases increase by eps */
stability_condition rotate(const stability_condition& s, const rational& eps);

/* simples of the heart, as heart indecomposables */
std::vector<shifted_interval> heart_simples(const stability_condition& s);
/* coordinates of a class in the basis of simple classes */
std::vector<long> simple_coordinates(const stability_condition& s, const k0_class& c);
/* U embeds in E, both in the heart */
bool embeds(const stability_condition& s, const normal_form& u, const normal_form& e);
/* E / U along a monomorphism */
normal_form quotient(const stability_condition& s, const normal_form& u, const normal_form& e);

/* isomorphism types of nonzero subobjects of a heart object, e itself included */
std::vector<normal_form> subobject_types(const stability_condition& s, const normal_form& e);

/* heart objects with Im Z = 0, and heart objects with every HN phase below the heart top */
bool is_sigma_torsion(const stability_condition& s, const normal_form& e);
bool is_sigma_free(const stability_condition& s, const normal_form& e);

hn_filtration_t hn_filtration(const stability_condition& s, const normal_form& e);
bool is_semistable(const stability_condition& s, const normal_form& e);
/* throws std::domain_error naming the destabilizer when e is not semistable */
phase phase_of(const stability_condition& s, const normal_form& e);
phase phi_plus(const stability_condition& s, const normal_form& e);
phase phi_minus(const stability_condition& s, const normal_form& e);
real_value mass(const stability_condition& s, const normal_form& e);
/* semistable heart indecomposables, i.e. all semistable indecomposables up to shift */
std::vector<shifted_interval> semistable_indecomposables(const stability_condition& s);

struct estimate {
    real_value value;
    bool exact_sup = false; /* taken over every indecomposable up to shift */
    size_t checked = 0;
};

estimate metric_exact(const stability_condition& a, const stability_condition& b);
estimate metric_estimate(const stability_condition& a, const stability_condition& b, const std::vector<normal_form>& corpus);
/* sup |U(E)|/|Z(E)| over semistable E */
estimate norm_exact(const central_charge& u, const stability_condition& s);
estimate norm_estimate(const central_charge& u, const stability_condition& s, const std::vector<normal_form>& corpus);

struct ball_report {
    bool inside = false;
    estimate metric;
    estimate norm;
    real_value sin_pi_eps;
};

/* d(a, b) < eps and |W - Z|_a < sin(pi eps), with eps in (0, 1/4) */
ball_report ball_membership(const stability_condition& a, const stability_condition& b, const rational& eps);

using qs3_matrix = std::vector<std::vector<qs3>>;

struct support_report {
    bool semistable_ok = true;
    size_t checked = 0;
    size_t violations = 0;
    int kernel_dim = 0;
    bool kernel_negative_definite = true;
    std::string note;
    bool ok() const { return semistable_ok && kernel_negative_definite; }
};

/* q >= 0 on semistable classes and q < 0 on ker Z minus 0 */
support_report support_check(const stability_condition& s, const qs3_matrix& q, const std::vector<normal_form>& corpus);

struct flags_report {
    bool rational = false;
    bool discrete = false;
    bool reasonable = false;
    real_value min_abs_z;
};

flags_report classify_flags(const stability_condition& s);

/* kernel of the real map K0 (x) R -> C given by z, over Q(sqrt 3) */
std::vector<std::vector<qs3>> charge_kernel(const central_charge& z);

}  // namespace stabglue
