#include "stabglue/sod_gluing.hpp"

#include <algorithm>
#include <stdexcept>

namespace stabglue {

stability_condition point_stability(const cplx& z) { return stability_condition(heart::standard(1), central_charge({z})); }

gluing_context make_context(sod_side side, const stability_condition& s1, const stability_condition& s2)
{
    if (s1.n() != 1 || s2.n() != 1) throw std::invalid_argument("gluing: factor stability conditions must live on D^b(k)");
    if (s1.offset() != 0 || s2.offset() != 0) throw std::invalid_argument("gluing: rotated factors are not supported");
    return {side, s1, s2};
}

gluing_context d0_context(const stability_condition& s) { return make_context(sod_side::sod0, s, shift_stability(s, -1)); }

gluing_context d1_context(const stability_condition& s) { return make_context(sod_side::sod1, shift_stability(s, 1), s); }

dobject gluing_functor_functorial(const dobject& z, sod_side side)
{
    return tau1r_triangle(mor_shift(include2(z, side), 1), side).tau1R;
}

namespace {

std::string which(const std::string& what, const std::string& obj) { return what + " fails at " + obj; }

}  // namespace

conditions_report check_conditions(const gluing_context& ctx, const std::vector<normal_form>& c_corpus,
                                   const std::vector<mor_object>& corpus)
{
    if (c_corpus.empty() || corpus.empty()) throw std::invalid_argument("check_conditions: empty corpus");
    conditions_report r;
    auto fail = [&](int i, const std::string& w) {
        if (r.ok[i]) r.witness[i] = w;
        r.ok[i] = false;
    };
    const sod_side side = ctx.side;
    for (size_t i = 0; i < corpus.size(); ++i) {
        const mor_object& m = corpus[i];
        dobject t1 = tau1L(m, side), t2 = tau2R(m, side), r1 = tau1r_triangle(m, side).tau1R;
        for (size_t j = i % 3; j < c_corpus.size(); j += 3) {
            dobject e = dobject::from_nf(1, c_corpus[j]);
            if (mor_hom_dim(include2(e, side), m) != hom_dim(e, t2)) fail(0, which("i2 -| tau2R", mor_str(m)));
            if (mor_hom_dim(m, include1(e, side)) != hom_dim(t1, e)) fail(0, which("tau1L -| i1", mor_str(m)));
            if (mor_hom_dim(include1(e, side), m) != hom_dim(e, r1)) fail(0, which("i1 -| tau1R", mor_str(m)));
            ++r.checked;
        }
    }
    const heart& a1 = ctx.sigma1.hrt();
    const heart& a2 = ctx.sigma2.hrt();
    for (const auto& nf : c_corpus) {
        dobject z = dobject::from_nf(1, nf);
        dobject phi = gluing_functor_functorial(z, side);
        if (!(phi == shift(z, 1))) fail(1, which("Phi = [1]", nf_str(nf)));
        if (a2.contains(nf) && !a1.contains(phi.nf())) fail(2, which("Phi(A2) in A1", nf_str(nf)));
        if (is_sigma_free(ctx.sigma2, nf) && !is_sigma_free(ctx.sigma1, phi.nf()))
            fail(3, which("Phi(F2) in F1", nf_str(nf)));
        if (ctx.sigma2.charge().of(nf) != ctx.sigma1.charge().of(phi.nf())) fail(4, which("Z2 = Z1 Phi", nf_str(nf)));
        ++r.checked;
    }
    return r;
}

conditions_report check_conditions(const gluing_context& ctx)
{
    return check_conditions(ctx, default_c_corpus(), mor_corpus(1, 2, -1, 1));
}

namespace {

truncation truncate_object(const gluing_context& ctx, const normal_form& e)
{
    mor_object m = mor_from_a2(e);
    return {tau1L(m, ctx.side).nf(), tau2R(m, ctx.side).nf()};
}

bool in_glued(const gluing_context& ctx, const truncation& t)
{
    return ctx.sigma1.hrt().contains(t.t1) && ctx.sigma2.hrt().contains(t.t2);
}

}  // namespace

bool glued_heart_membership(const gluing_context& ctx, const mor_object& e)
{
    return ctx.sigma1.hrt().contains(tau1L(e, ctx.side).nf()) && ctx.sigma2.hrt().contains(tau2R(e, ctx.side).nf());
}

bool glued_heart_membership(const gluing_context& ctx, const normal_form& e) { return in_glued(ctx, truncate_object(ctx, e)); }

heart compute_glued_heart(const gluing_context& ctx)
{
    std::map<interval, int> table;
    for (const auto& iv : all_intervals(2)) {
        truncation t = truncate_object(ctx, {{iv, 0}});
        std::vector<int> hits;
        for (int s = -8; s <= 8; ++s)
            if (in_glued(ctx, {nf_shift(t.t1, s), nf_shift(t.t2, s)})) hits.push_back(s);
        if (hits.size() != 1)
            throw std::domain_error("glued heart: " + nf_str({{iv, 0}}) + " lies in " + std::to_string(hits.size()) +
                                    " shifts of the glued heart");
        table[iv] = hits[0];
    }
    return heart::from_table(2, table, "gl(" + side_str(ctx.side) + ")");
}

central_charge glued_charge(const gluing_context& ctx)
{
    std::vector<cplx> row;
    for (int v = 1; v <= 2; ++v) {
        truncation t = truncate_object(ctx, {{{v, v}, 0}});
        row.push_back(ctx.sigma1.charge().of(t.t1) + ctx.sigma2.charge().of(t.t2));
    }
    return central_charge(row);
}

glued_model::glued_model(gluing_context ctx) : ctx_(std::move(ctx))
{
    report_ = check_conditions(ctx_);
    if (!report_.all()) {
        std::string w;
        for (int i = 0; i < 5; ++i)
            if (!report_.ok[i]) w += " M" + std::to_string(i + 1) + ": " + report_.witness[i] + ";";
        throw std::domain_error("glue_stability: gluing conditions fail:" + w);
    }
    for (const auto* s : {&ctx_.sigma1, &ctx_.sigma2})
        if (!classify_flags(*s).reasonable) throw std::domain_error("glue_stability: factor is not reasonable");
    heart h = compute_glued_heart(ctx_);
    try {
        sigma_ = stability_condition(h, glued_charge(ctx_));
    } catch (const std::invalid_argument& e) {
        throw std::domain_error(std::string("glue_stability: ") + e.what());
    }
    for (const auto& iv : all_intervals(2)) basis_trunc_.push_back(truncate_object(ctx_, {{iv, 0}}));
    for (int v = 1; v <= 2; ++v) {
        truncation t = truncate_object(ctx_, {{{v, v}, 0}});
        t1_row_[v - 1] = k0_of_nf(1, t.t1)[0];
        t2_row_[v - 1] = k0_of_nf(1, t.t2)[0];
    }
}

truncation glued_model::truncate(const normal_form& e) const
{
    static const std::vector<interval> ivs = all_intervals(2);
    truncation out;
    for (const auto& x : e) {
        size_t i = static_cast<size_t>(std::find(ivs.begin(), ivs.end(), x.iv) - ivs.begin());
        if (i == ivs.size()) throw std::invalid_argument("truncate: not an object of D^b(A_2)");
        out.t1 = nf_sum(out.t1, nf_shift(basis_trunc_[i].t1, x.shift));
        out.t2 = nf_sum(out.t2, nf_shift(basis_trunc_[i].t2, x.shift));
    }
    return out;
}

cplx glued_model::z1_part(const normal_form& e) const { return ctx_.sigma1.charge().of(truncate(e).t1); }
cplx glued_model::z2_part(const normal_form& e) const { return ctx_.sigma2.charge().of(truncate(e).t2); }

long glued_model::tau1_class(const k0_class& c) const { return t1_row_[0] * c.at(0) + t1_row_[1] * c.at(1); }
long glued_model::tau2_class(const k0_class& c) const { return t2_row_[0] * c.at(0) + t2_row_[1] * c.at(1); }

glued_model glue_stability(const gluing_context& ctx) { return glued_model(ctx); }

std::string kind_str(glued_kind k)
{
    switch (k) {
    case glued_kind::torsion: return "torsion";
    case glued_kind::free: return "free";
    default: return "mixed";
    }
}

namespace {

bool part_torsion(const glued_model& g, const normal_form& e)
{
    truncation t = g.truncate(e);
    return is_sigma_torsion(g.ctx().sigma1, t.t1) && is_sigma_torsion(g.ctx().sigma2, t.t2);
}

bool part_free(const glued_model& g, const normal_form& e)
{
    truncation t = g.truncate(e);
    return is_sigma_free(g.ctx().sigma1, t.t1) && is_sigma_free(g.ctx().sigma2, t.t2);
}

long length_of(const stability_condition& s, const normal_form& e)
{
    long l = 0;
    for (long c : simple_coordinates(s, k0_of_nf(s.n(), e))) l += c;
    return l;
}

}  // namespace

torsion_split glued_torsion_membership(const glued_model& g, const normal_form& e)
{
    const stability_condition& s = g.sigma();
    if (!s.hrt().contains(e)) throw std::invalid_argument("glued torsion: " + nf_str(e) + " is not in the glued heart");
    torsion_split out;
    for (const auto& x : e) {
        normal_form one{x};
        if (part_torsion(g, one)) {
            out.torsion_part = nf_sum(out.torsion_part, one);
        } else if (part_free(g, one)) {
            out.free_part = nf_sum(out.free_part, one);
        } else {
            normal_form best;
            long best_len = 0;
            for (const auto& u : subobject_types(s, one)) {
                if (!part_torsion(g, u)) continue;
                long l = length_of(s, u);
                if (l > best_len) {
                    best = u;
                    best_len = l;
                }
            }
            normal_form q = quotient(s, best, one);
            if (!part_free(g, q)) throw std::runtime_error("glued torsion: no torsion/free filtration for " + nf_str(one));
            out.torsion_part = nf_sum(out.torsion_part, best);
            out.free_part = nf_sum(out.free_part, q);
        }
    }
    bool has_t = !out.torsion_part.empty(), has_f = !out.free_part.empty();
    out.kind = (has_t && has_f) ? glued_kind::mixed : (has_f ? glued_kind::free : glued_kind::torsion);
    return out;
}

std::string status_str(check_status s)
{
    switch (s) {
    case check_status::holds: return "holds";
    case check_status::fails: return "fails";
    case check_status::vacuous: return "vacuous";
    default: return "not semistable";
    }
}

check_status glued_phase_equality_check(const glued_model& g, const normal_form& e)
{
    if (!is_semistable(g.sigma(), e)) return check_status::not_semistable;
    truncation t = g.truncate(e);
    if (t.t1.empty() || t.t2.empty()) return check_status::vacuous;
    const central_charge& z1 = g.ctx().sigma1.charge();
    cplx a = z1.of(t.t1);
    cplx b = z1.of(gluing_functor_image(dobject::from_nf(1, t.t2), g.ctx().side).nf());
    return (cross(a, b).is_zero() && dot(a, b).sign() > 0) ? check_status::holds : check_status::fails;
}

check_status truncation_semistability_check(const glued_model& g, const normal_form& e)
{
    if (!is_semistable(g.sigma(), e)) return check_status::not_semistable;
    truncation t = g.truncate(e);
    bool ok1 = t.t1.empty() || is_semistable(g.ctx().sigma1, t.t1);
    bool ok2 = t.t2.empty() || is_semistable(g.ctx().sigma2, t.t2);
    return (ok1 && ok2) ? check_status::holds : check_status::fails;
}

qs3 tau2_ratio_square(const glued_model& g, const normal_form& e)
{
    return g.z2_part(e).norm2() / g.sigma().charge().of(e).norm2();
}

std::pair<int, int> semiorthogonal_hom_pair(const gluing_context& ctx, const dobject& e1, const dobject& e2, int p)
{
    int lhs = mor_hom_dim(include1(e1, ctx.side), include2(e2, ctx.side), p);
    int rhs = hom_dim(e1, shift(gluing_functor_image(e2, ctx.side), p - 1));
    return {lhs, rhs};
}

std::vector<normal_form> default_c_corpus() { return antype_corpus(1, 3, -2, 2); }

std::vector<normal_form> a2_corpus(int cap, int lo, int hi) { return antype_corpus(2, cap, lo, hi); }

}  // namespace stabglue
