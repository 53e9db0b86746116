#pragma once

// Discrete maximal operators on the periodic grid: Hardy-Littlewood over
// dyadic boxes, the one-directional interval version, and Peetre's
// shift-penalized supremum. All windows wrap around the torus.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <span>
#include <vector>

#include "mixsmooth/error.hpp"
#include "mixsmooth/grid.hpp"

namespace mixsmooth {

namespace detail {

inline std::vector<double> moduli(const GridFunction& f) {
    std::vector<double> v(f.size());
    for (std::size_t i = 0; i < v.size(); ++i) v[i] = std::abs(f[i]);
    return v;
}

inline GridFunction real_function(const Grid& g, const std::vector<double>& v) {
    cvec out(v.size());
    for (std::size_t i = 0; i < v.size(); ++i) out[i] = v[i];
    return {g, std::move(out)};
}

/// Index of x + shift (periodic) along one axis.
inline std::size_t shifted(const Grid& g, std::size_t flat, int axis, long shift) {
    const auto n = static_cast<long>(g.points(axis));
    const auto stride = g.stride(axis);
    const long idx = static_cast<long>((flat / stride) % static_cast<std::size_t>(n));
    long k = (idx + shift) % n;
    if (k < 0) k += n;
    return flat + static_cast<std::size_t>(k - idx) * stride;
}

} // namespace detail

/// Largest average of |f| over boxes of 2^m cells per axis (clamped to the
/// axis length) that contain the point, over all placements and all m. With
/// equal steps on every axis these are the dyadic-side cubes; m = 0 returns |f|.
inline GridFunction hl_max(const GridFunction& f) {
    const Grid& g = f.grid();
    const int d = g.dim();
    std::size_t nmax = 0;
    for (int i = 0; i < d; ++i) nmax = std::max(nmax, g.points(i));

    std::vector<double> box = detail::moduli(f); // box sums indexed by their first corner
    std::vector<double> best = box;
    std::vector<double> tmp(box.size());
    std::vector<std::size_t> width(static_cast<std::size_t>(d), 1);

    for (std::size_t w = 1; w < nmax;) {
        // Double the box on each axis that is not yet full: sums of positives only.
        for (int i = 0; i < d; ++i) {
            auto& wi = width[static_cast<std::size_t>(i)];
            if (wi >= g.points(i)) continue;
            for (std::size_t k = 0; k < box.size(); ++k)
                tmp[k] = box[k] + box[detail::shifted(g, k, i, static_cast<long>(wi))];
            box.swap(tmp);
            wi *= 2;
        }
        w *= 2;

        // Max over all boxes containing x: starts in [x - w_i + 1, x] per axis.
        std::vector<double> reach = box;
        for (int i = 0; i < d; ++i) {
            const std::size_t wi = width[static_cast<std::size_t>(i)];
            for (std::size_t span = 1; span < wi; span *= 2) {
                const std::size_t step = std::min(span, wi - span);
                for (std::size_t k = 0; k < reach.size(); ++k)
                    tmp[k] = std::max(reach[k], reach[detail::shifted(g, k, i, -static_cast<long>(step))]);
                reach.swap(tmp);
            }
        }
        double cells = 1.0;
        for (auto wi : width) cells *= static_cast<double>(wi);
        for (std::size_t k = 0; k < best.size(); ++k) best[k] = std::max(best[k], reach[k] / cells);
    }
    return detail::real_function(g, best);
}

/// Centered interval maximal function along one axis (0-based): sup over radii
/// r = 0 .. (n-1)/2 cells of the mean of |f| over the 2r+1 cells around x.
inline GridFunction dir_max(const GridFunction& f, int axis) {
    const Grid& g = f.grid();
    if (axis < 0 || axis >= g.dim()) throw InvalidParams("direction must be an axis of the grid");
    const std::vector<double> a = detail::moduli(f);
    std::vector<double> out(a.size());
    const long rmax = (static_cast<long>(g.points(axis)) - 1) / 2;
    for (std::size_t k = 0; k < a.size(); ++k) {
        double sum = a[k];
        double m = sum;
        for (long r = 1; r <= rmax; ++r) {
            sum += a[detail::shifted(g, k, axis, -r)] + a[detail::shifted(g, k, axis, r)];
            m = std::max(m, sum / static_cast<double>(2 * r + 1));
        }
        out[k] = m;
    }
    return detail::real_function(g, out);
}

/// sup_z |g(x - z)| / prod_i (1 + |scale_i z_i|^a) over lattice shifts z in the
/// symmetric fundamental domain. The weight factorizes, so the sup is taken
/// one axis at a time.
inline GridFunction peetre_max(const GridFunction& f, double a, std::span<const double> scales) {
    const Grid& g = f.grid();
    if (!(a > 0.0) || !std::isfinite(a)) throw InvalidParams("Peetre exponent a must be positive");
    if (static_cast<int>(scales.size()) != g.dim()) throw InvalidParams("need one Peetre scale per axis");
    for (double s : scales)
        if (!(s > 0.0) || !std::isfinite(s)) throw InvalidParams("Peetre scales must be positive");

    std::vector<double> cur = detail::moduli(f);
    std::vector<double> next(cur.size());
    for (int i = 0; i < g.dim(); ++i) {
        const std::size_t n = g.points(i);
        std::vector<double> weight(n);
        for (std::size_t k = 0; k < n; ++k)
            weight[k] = 1.0 / (1.0 + std::pow(std::abs(scales[static_cast<std::size_t>(i)] * g.coordinate(i, k)), a));
        for (std::size_t x = 0; x < cur.size(); ++x) {
            double m = 0.0;
            for (std::size_t k = 0; k < n; ++k)
                m = std::max(m, cur[detail::shifted(g, x, i, -g.signed_index(i, k))] * weight[k]);
            next[x] = m;
        }
        cur.swap(next);
    }
    return detail::real_function(g, cur);
}

/// || (sum_k |M f_k|^q)^{1/q} | L_p || / || (sum_k |f_k|^q)^{1/q} | L_p || with M = hl_max.
inline double vector_maximal_ratio(std::span<const GridFunction> fk, double p, double q) {
    if (fk.empty()) throw InvalidParams("need at least one function");
    const Grid& g = fk.front().grid();
    std::vector<double> num(g.size(), 0.0), den(g.size(), 0.0);
    auto acc = [q](std::vector<double>& s, std::span<const cplx> v) {
        for (std::size_t i = 0; i < s.size(); ++i)
            s[i] = std::isinf(q) ? std::max(s[i], std::abs(v[i])) : s[i] + std::pow(std::abs(v[i]), q);
    };
    for (const auto& f : fk) {
        if (!(f.grid() == g)) throw InvalidParams("sequence members live on different grids");
        acc(den, f.samples());
        acc(num, hl_max(f).samples());
    }
    if (!std::isinf(q))
        for (std::size_t i = 0; i < num.size(); ++i) {
            num[i] = std::pow(num[i], 1.0 / q);
            den[i] = std::pow(den[i], 1.0 / q);
        }
    return lp_norm(num, g, p) / lp_norm(den, g, p);
}

} // namespace mixsmooth
