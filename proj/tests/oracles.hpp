#pragma once

#include "stabglue/antype.hpp"

#include <algorithm>
#include <cmath>
#include <random>

namespace oracle {

using namespace stabglue;

/* dim Hom of quiver representations from the commuting-square linear system */
inline int rep_hom_dim(const rep& x, const rep& y)
{
    const int n = x.n;
    std::vector<size_t> off(n + 1, 0);
    for (int v = 0; v < n; ++v) off[v + 1] = off[v] + static_cast<size_t>(x.dims[v]) * y.dims[v];
    size_t unknowns = off[n];
    if (unknowns == 0) return 0;
    std::vector<qvec> eqs;
    /* phi_{v+1} f_v - g_v phi_v = 0, phi_v is dims_y[v] x dims_x[v] */
    for (int v = 0; v + 1 < n; ++v) {
        for (int r = 0; r < y.dims[v + 1]; ++r)
            for (int c = 0; c < x.dims[v]; ++c) {
                qvec e(unknowns);
                for (int k = 0; k < x.dims[v + 1]; ++k)
                    e[off[v + 1] + r * x.dims[v + 1] + k] += x.maps[v](k, c);
                for (int k = 0; k < y.dims[v]; ++k) e[off[v] + k * x.dims[v] + c] -= y.maps[v](r, k);
                eqs.push_back(e);
            }
    }
    if (eqs.empty()) return static_cast<int>(unknowns);
    return static_cast<int>(unknowns - rank(qmat::from_rows(eqs, unknowns)));
}

/* sup of |z2|/|z1+z2| over 0 <= arg z1 - arg z2 <= theta, by direct 1-D minimization */
inline double ratio_sup_by_search(double theta)
{
    /* with z2 = 1 and z1 = x e^{i phi}: |z1+z2|^2 = x^2 + 2 x cos(phi) + 1 */
    double best = 1.0;
    auto f = [](double x, double phi) { return x * x + 2 * x * std::cos(phi) + 1; };
    for (int k = 0; k <= 2000; ++k) {
        double phi = theta * k / 2000.0;
        double lo = 0, hi = 4;
        for (int it = 0; it < 200; ++it) {
            double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
            if (f(m1, phi) < f(m2, phi))
                hi = m2;
            else
                lo = m1;
        }
        double m = f(0.5 * (lo + hi), phi);
        best = std::max(best, 1 / std::sqrt(m));
    }
    /* the endpoint phi = theta dominates; refine there */
    double lo = 0, hi = 4;
    for (int it = 0; it < 300; ++it) {
        double m1 = lo + (hi - lo) / 3, m2 = hi - (hi - lo) / 3;
        if (f(m1, theta) < f(m2, theta))
            hi = m2;
        else
            lo = m1;
    }
    return std::max(best, 1 / std::sqrt(f(0.5 * (lo + hi), theta)));
}

inline rep random_rep(int n, std::mt19937_64& rng, int max_dim)
{
    std::uniform_int_distribution<int> dd(0, max_dim), ent(-2, 2);
    rep r;
    r.n = n;
    for (int v = 0; v < n; ++v) r.dims.push_back(dd(rng));
    for (int v = 0; v + 1 < n; ++v) {
        qmat m(r.dims[v + 1], r.dims[v]);
        for (size_t i = 0; i < m.rows(); ++i)
            for (size_t j = 0; j < m.cols(); ++j) m(i, j) = ent(rng);
        r.maps.push_back(m);
    }
    return r;
}

}  // namespace oracle
