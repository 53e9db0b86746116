#pragma once

// Extremal test families ex1..ex6 with their oracle norm formulas.
//
// Every family is built on the frequency side so that its lattice spectrum
// lies exactly in the prescribed region. Modulations sit at 7/8 * 2^j; the
// base bumps are the cutoff's transition profile rescaled:
//   eta   on (1/32, 7/32)                       (ex1 modulated axis, ex4, ex5)
//   theta on 2^{l-1} * (1.6, 1.9)               (ex1 remaining axes)
//   g     on 3/4 <= |w| <= 1, even              (ex2, ex3)
//   rho   = |beta|^2, beta radial on |w| < 1/2  (ex6)

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "mixsmooth/dyadic.hpp"
#include "mixsmooth/error.hpp"
#include "mixsmooth/grid.hpp"
#include "mixsmooth/quasinorm.hpp"
#include "mixsmooth/spectral.hpp"

namespace mixsmooth {

enum class FamilyId { ex1 = 1, ex2, ex3, ex4, ex5, ex6 };

inline const char* to_string(FamilyId id) {
    static constexpr const char* names[] = {"ex1", "ex2", "ex3", "ex4", "ex5", "ex6"};
    return names[static_cast<int>(id) - 1];
}

inline FamilyId parse_family(const std::string& s) {
    for (int i = 1; i <= 6; ++i)
        if (s == to_string(static_cast<FamilyId>(i))) return static_cast<FamilyId>(i);
    throw InvalidParams("unknown family '" + s + "' (expected ex1..ex6)");
}

inline bool uses_coefficients(FamilyId id) { return id == FamilyId::ex1 || id == FamilyId::ex4 || id == FamilyId::ex5; }

/// One member of a family: scale is l (ex1..ex5) or j (ex6). Empty
/// coefficients mean a_j = 1 for families that take them.
struct FamilySpec {
    FamilyId id = FamilyId::ex6;
    int scale = 1;
    int d = 2;
    std::vector<double> a;

    std::vector<double> coefficients() const {
        if (!uses_coefficients(id)) return {};
        if (a.empty()) return std::vector<double>(static_cast<std::size_t>(std::max(scale, 0)), 1.0);
        return a;
    }

    void validate() const {
        if (d < 1 || d > Grid::max_dim) throw InvalidParams("family dimension must be between 1 and 3");
        const int lo = (id == FamilyId::ex1 || id == FamilyId::ex4 || id == FamilyId::ex5) ? 1 : 0;
        if (scale < lo) throw InvalidParams(std::string(to_string(id)) + " requires scale >= " + std::to_string(lo));
        if (scale > 30) throw NyquistError("scale " + std::to_string(scale) + " exceeds any supported grid");
        if (uses_coefficients(id) && !a.empty() && static_cast<int>(a.size()) != scale)
            throw InvalidParams("coefficient count must equal the scale l");
        for (double v : a)
            if (!std::isfinite(v)) throw InvalidParams("coefficients must be finite");
    }
};

namespace coeffs {

inline std::vector<double> ones(int l) { return std::vector<double>(static_cast<std::size_t>(l), 1.0); }

/// a_j = 1 for j = l, else 0.
inline std::vector<double> delta(int l) {
    std::vector<double> a(static_cast<std::size_t>(l), 0.0);
    if (l > 0) a.back() = 1.0;
    return a;
}

/// a_j = 2^{-j t}.
inline std::vector<double> decay(int l, double t) {
    std::vector<double> a;
    for (int j = 1; j <= l; ++j) a.push_back(std::exp2(-j * t));
    return a;
}

} // namespace coeffs

namespace detail {

inline double modulation(int j) { return 0.875 * std::ldexp(1.0, j); }
inline double eta_hat(double w) { return smooth_bump(w, 1.0 / 32, 7.0 / 32); }
inline double g_hat(double w) { return smooth_bump(std::abs(w), 0.75, 1.0); }
inline double theta_hat(int l, double w) { return smooth_bump(std::ldexp(w, -l + 1), 1.6, 1.9); }

inline double modulated_sum(std::span<const double> a, double w) {
    double v = 0.0;
    for (std::size_t j = 0; j < a.size(); ++j)
        if (a[j] != 0.0) v += a[j] * eta_hat(w - modulation(static_cast<int>(j) + 1));
    return v;
}

inline bool in_closed(double x, double lo, double hi) {
    constexpr double eps = 1e-12;
    return x >= lo - eps && x <= hi + eps;
}

/// Preferred lattice spacing per axis for each family.
inline double preferred_step(FamilyId id, int axis, int d) {
    const bool d3 = d >= 3;
    switch (id) {
    case FamilyId::ex1:
        if (axis == d - 1) return d3 ? 1.0 / 8 : 1.0 / 16;
        return d3 ? 1.0 / 2 : 1.0 / 4;
    case FamilyId::ex2:
    case FamilyId::ex3: return d3 ? 1.0 / 16 : 1.0 / 32;
    case FamilyId::ex4:
    case FamilyId::ex5: return d3 ? 1.0 / 8 : 1.0 / 16;
    case FamilyId::ex6: return d3 ? 1.0 / 64 : 1.0 / 256;
    }
    return 1.0;
}

} // namespace detail

/// Largest |omega| in the family's spectral support along an axis.
inline double support_extent(const FamilySpec& s, int axis) {
    const int l = s.scale;
    switch (s.id) {
    case FamilyId::ex1: return axis == s.d - 1 ? detail::modulation(l) + 7.0 / 32 : 1.9 * std::ldexp(1.0, l - 1);
    case FamilyId::ex2: return axis == 0 ? std::ldexp(1.0, l) : 1.0;
    case FamilyId::ex3: return std::ldexp(1.0, l);
    case FamilyId::ex4: return axis == 0 ? detail::modulation(l) + 7.0 / 32 : 7.0 / 32;
    case FamilyId::ex5: return detail::modulation(l) + 7.0 / 32;
    case FamilyId::ex6: return std::ldexp(1.0, -l);
    }
    return 0.0;
}

inline constexpr std::size_t default_point_budget = std::size_t{1} << 24;

/// Smallest power-of-two grid at the family's preferred spacing that holds
/// the spectrum; at least 512 points per axis for d <= 2 and 128 for d = 3.
inline Grid default_grid(const FamilySpec& s, std::size_t budget = default_point_budget) {
    s.validate();
    std::vector<std::size_t> n;
    std::vector<double> delta;
    std::size_t total = 1;
    for (int i = 0; i < s.d; ++i) {
        const double dl = detail::preferred_step(s.id, i, s.d);
        const double need = support_extent(s, i);
        std::size_t m = s.d >= 3 ? 128 : 512;
        while (0.5 * static_cast<double>(m) * dl < need) {
            m *= 2;
            if (m > budget) throw NyquistError("family scale too large for the grid budget");
        }
        n.push_back(m);
        delta.push_back(dl);
        total *= m;
        if (total > budget)
            throw NyquistError("grid of " + std::to_string(total) + "+ points exceeds the budget of " + std::to_string(budget));
    }
    return Grid::with_frequency_step(std::move(n), delta);
}

inline void check_nyquist(const FamilySpec& s, const Grid& g) {
    if (g.dim() != s.d) throw InvalidParams("grid dimension does not match family dimension");
    for (int i = 0; i < s.d; ++i) {
        const double need = support_extent(s, i);
        if (need > g.nyquist(i) * (1.0 + 1e-12))
            throw NyquistError(std::string(to_string(s.id)) + " at scale " + std::to_string(s.scale) + " needs |omega| up to " +
                               std::to_string(need) + " on axis " + std::to_string(i + 1) + " but the grid Nyquist frequency is " +
                               std::to_string(g.nyquist(i)));
    }
}

/// True iff omega lies in the frequency set the family is supported in.
inline bool in_prescribed_region(const FamilySpec& s, std::span<const double> w) {
    const int l = s.scale;
    const int d = static_cast<int>(w.size());
    const double top = std::ldexp(1.0, l);
    auto near_mod = [&](double x, int j) { return detail::in_closed(x - detail::modulation(j), 0.0, 0.25); };
    auto any_mod = [&](double x) {
        for (int j = 1; j <= l; ++j)
            if (near_mod(x, j)) return true;
        return false;
    };
    switch (s.id) {
    case FamilyId::ex1:
        for (int i = 0; i < d - 1; ++i)
            if (!detail::in_closed(w[static_cast<std::size_t>(i)], 0.75 * top, top)) return false;
        return any_mod(w.back());
    case FamilyId::ex2:
        if (!detail::in_closed(std::abs(w[0]), 0.75 * top, top)) return false;
        for (int i = 1; i < d; ++i)
            if (!detail::in_closed(std::abs(w[static_cast<std::size_t>(i)]), 0.75, 1.0)) return false;
        return true;
    case FamilyId::ex3:
        for (double x : w)
            if (!detail::in_closed(std::abs(x), 0.75 * top, top)) return false;
        return true;
    case FamilyId::ex4:
        for (int i = 1; i < d; ++i)
            if (!detail::in_closed(w[static_cast<std::size_t>(i)], 0.0, 0.25)) return false;
        return any_mod(w[0]);
    case FamilyId::ex5:
        for (int j = 1; j <= l; ++j) {
            bool all = true;
            for (double x : w) all = all && near_mod(x, j);
            if (all) return true;
        }
        return false;
    case FamilyId::ex6: {
        double r2 = 0.0;
        for (double x : w) r2 += x * x;
        return std::sqrt(r2) <= std::ldexp(1.0, -l) * (1.0 + 1e-12);
    }
    }
    return false;
}

/// Separable form of the spectrum (ex1..ex5).
inline std::vector<SeparableTerm> spectrum_terms(const FamilySpec& s, const Grid& g) {
    const int d = s.d;
    const int l = s.scale;
    const auto a = s.coefficients();
    auto table = [&](int axis, auto fn) { return axis_table(g, axis, fn); };
    std::vector<SeparableTerm> terms;
    switch (s.id) {
    case FamilyId::ex1: {
        SeparableTerm t;
        for (int i = 0; i < d - 1; ++i) t.factors.push_back(table(i, [l](double w) { return detail::theta_hat(l, w); }));
        t.factors.push_back(table(d - 1, [&a](double w) { return detail::modulated_sum(a, w); }));
        terms.push_back(std::move(t));
        break;
    }
    case FamilyId::ex2: {
        SeparableTerm t;
        t.factors.push_back(table(0, [l](double w) { return detail::g_hat(std::ldexp(w, -l)); }));
        for (int i = 1; i < d; ++i) t.factors.push_back(table(i, detail::g_hat));
        terms.push_back(std::move(t));
        break;
    }
    case FamilyId::ex3: {
        SeparableTerm t;
        for (int i = 0; i < d; ++i) t.factors.push_back(table(i, [l](double w) { return detail::g_hat(std::ldexp(w, -l)); }));
        terms.push_back(std::move(t));
        break;
    }
    case FamilyId::ex4: {
        SeparableTerm t;
        t.factors.push_back(table(0, [&a](double w) { return detail::modulated_sum(a, w); }));
        for (int i = 1; i < d; ++i) t.factors.push_back(table(i, detail::eta_hat));
        terms.push_back(std::move(t));
        break;
    }
    case FamilyId::ex5:
        for (int j = 1; j <= l; ++j) {
            const double aj = a[static_cast<std::size_t>(j - 1)];
            if (aj == 0.0) continue;
            SeparableTerm t;
            t.coef = aj;
            const double sj = detail::modulation(j);
            for (int i = 0; i < d; ++i) t.factors.push_back(table(i, [sj](double w) { return detail::eta_hat(w - sj); }));
            terms.push_back(std::move(t));
        }
        break;
    case FamilyId::ex6: throw InvalidParams("ex6 has no separable spectrum");
    }
    return terms;
}

namespace detail {

/// h_j = |beta_j|^2 with beta_j(x) = beta(2^{-j} x); spectrum cut to |w| <= 2^{-j}
/// so that round-off never leaks outside the ball.
inline cvec dilated_rho_spectrum(const Grid& g, int j) {
    const double amp = std::ldexp(1.0, j * g.dim());
    cvec b(g.size());
    for_each_frequency(g, [&](std::size_t k, std::span<const double> w) {
        double r2 = 0.0;
        for (double x : w) r2 += x * x;
        b[k] = amp * smooth_bump(std::ldexp(std::sqrt(r2), j), -0.5, 0.5);
    });
    const GridFunction beta = synthesize(g, std::move(b));
    cvec sq(g.size());
    for (std::size_t i = 0; i < sq.size(); ++i) sq[i] = std::norm(beta[i]);
    cvec spec = analyze(GridFunction(g, std::move(sq)));
    const double radius = std::ldexp(1.0, -j);
    for_each_frequency(g, [&](std::size_t k, std::span<const double> w) {
        double r2 = 0.0;
        for (double x : w) r2 += x * x;
        if (std::sqrt(r2) > radius) spec[k] = cplx{};
    });
    return spec;
}

} // namespace detail

/// Lattice values of the family member's Fourier transform.
inline cvec spectrum(const FamilySpec& s, const Grid& g) {
    s.validate();
    check_nyquist(s, g);
    cvec spec;
    if (s.id == FamilyId::ex6) {
        spec = detail::dilated_rho_spectrum(g, s.scale);
    } else {
        const auto terms = spectrum_terms(s, g);
        spec = fill_separable(g, terms);
    }
    const bool any = std::any_of(spec.begin(), spec.end(), [](const cplx& z) { return z != cplx{}; });
    const auto a = s.coefficients();
    const bool zero_coeffs = uses_coefficients(s.id) && std::all_of(a.begin(), a.end(), [](double v) { return v == 0.0; });
    if (!any && !zero_coeffs) throw InvalidParams("grid too coarse: the family's frequency bumps miss every lattice point");
    return spec;
}

inline GridFunction generate(const FamilySpec& s, const Grid& g) { return synthesize(g, spectrum(s, g)); }
inline GridFunction generate(const FamilySpec& s) { return generate(s, default_grid(s)); }

/// Every lattice coefficient above rel_tol * peak lies in the prescribed region.
inline bool spectrum_contained(const FamilySpec& s, const Grid& g, const cvec& spec, double rel_tol = 0.0) {
    double peak = 0.0;
    for (const auto& z : spec) peak = std::max(peak, std::abs(z));
    bool ok = true;
    for_each_frequency(g, [&](std::size_t k, std::span<const double> w) {
        if (ok && std::abs(spec[k]) > rel_tol * peak && !in_prescribed_region(s, w)) ok = false;
    });
    return ok;
}

/// L_p norm of the family's base function: f_0 for ex2/ex3, rho for ex6, the
/// unmodulated eta-tensor g for ex1/ex4/ex5.
///
/// The dilation families are evaluated on the grid g' with the same sample
/// counts and the dilated axes rescaled by 2^l (ex2/ex3) or 2^-j (ex6). The
/// member's samples on g are then exactly the base samples on g' times the
/// dilation factor, so the scaling identities hold on the lattice, not only
/// in the continuum limit.
inline double base_norm(const FamilySpec& s, const Grid& g, double p) {
    if (s.id == FamilyId::ex6 || s.id == FamilyId::ex2 || s.id == FamilyId::ex3) {
        std::vector<double> period = g.periods();
        for (int i = 0; i < g.dim(); ++i) {
            const bool dilated = s.id != FamilyId::ex2 || i == 0;
            if (dilated) period[static_cast<std::size_t>(i)] = std::ldexp(period[static_cast<std::size_t>(i)], s.id == FamilyId::ex6 ? -s.scale : s.scale);
        }
        FamilySpec b = s;
        b.scale = 0;
        return lp_norm(generate(b, Grid(g.shape(), std::move(period))), p);
    }
    SeparableTerm t;
    for (int i = 0; i < g.dim(); ++i) t.factors.push_back(axis_table(g, i, detail::eta_hat));
    return lp_norm(synthesize(g, fill_separable(g, std::span<const SeparableTerm>(&t, 1))), p);
}

enum class OracleKind { exact, asymptotic, none };

inline const char* to_string(OracleKind k) {
    switch (k) {
    case OracleKind::exact: return "exact";
    case OracleKind::asymptotic: return "asymptotic";
    case OracleKind::none: return "none";
    }
    return "none";
}

/// exact: value is the norm. asymptotic: norm ~ C * value with C unknown but
/// fixed along the family. none: no formula for these parameters.
struct Oracle {
    OracleKind kind = OracleKind::none;
    double value = std::numeric_limits<double>::quiet_NaN();
    std::string formula;
};

namespace detail {

inline double weighted_lq(std::span<const double> a, double weight_exp, double q) {
    LqSum sum(q);
    for (std::size_t j = 0; j < a.size(); ++j) sum.add(std::exp2(weight_exp * static_cast<double>(j + 1)) * std::abs(a[j]));
    return sum.value();
}

} // namespace detail

/// Oracle norm of a family member. F and B share every formula here.
inline Oracle oracle(const FamilySpec& s, const Grid& g, const SpaceParams& sp) {
    s.validate();
    sp.validate();
    const double l = s.scale;
    const double d = s.d;
    const double t = sp.t;
    const double p = sp.p;
    const double ip = std::isinf(p) ? 0.0 : 1.0 / p;
    const bool mixed = sp.scale == Scale::mixed;
    const auto a = s.coefficients();
    Oracle o;
    switch (s.id) {
    case FamilyId::ex1:
        o.kind = OracleKind::asymptotic;
        if (mixed) {
            o.value = std::exp2(l * (d - 1) * (1 - ip + t)) * detail::weighted_lq(a, t, sp.q);
            o.formula = "C * 2^{l(d-1)(1-1/p+t)} * ||2^{jt} a_j | l_q||";
        } else if (p > 1 && !std::isinf(p)) {
            o.value = std::exp2(l * (d - 1) * (1 - ip) + t * l) * detail::weighted_lq(a, 0.0, 2.0);
            o.formula = "C * 2^{l(d-1)(1-1/p) + lt} * ||a | l_2||";
        } else {
            o.kind = OracleKind::none;
            o.formula = "no isotropic formula for p <= 1 or p = inf";
        }
        return o;
    case FamilyId::ex2:
        o.kind = OracleKind::exact;
        o.value = base_norm(s, g, p) * std::exp2(l * (t + 1 - ip));
        o.formula = "||f_0|L_p|| * 2^{l(t+1-1/p)}";
        return o;
    case FamilyId::ex3:
        o.kind = OracleKind::exact;
        if (mixed) {
            o.value = base_norm(s, g, p) * std::exp2(d * l * (t + 1 - ip));
            o.formula = "||f_0|L_p|| * 2^{dl(t+1-1/p)}";
        } else {
            o.value = base_norm(s, g, p) * std::exp2(d * l * (t / d + 1 - ip));
            o.formula = "||f_0|L_p|| * 2^{dl(t/d+1-1/p)}";
        }
        return o;
    case FamilyId::ex4:
        o.kind = OracleKind::exact;
        o.value = base_norm(s, g, p) * detail::weighted_lq(a, t, sp.q);
        o.formula = "||g|L_p|| * ||2^{jt} a_j | l_q||";
        return o;
    case FamilyId::ex5:
        o.kind = OracleKind::exact;
        o.value = base_norm(s, g, p) * detail::weighted_lq(a, mixed ? d * t : t, sp.q);
        o.formula = mixed ? "||g|L_p|| * ||2^{djt} a_j | l_q||" : "||g|L_p|| * ||2^{jt} a_j | l_q||";
        return o;
    case FamilyId::ex6:
        o.kind = OracleKind::exact;
        o.value = std::exp2(l * d * ip) * base_norm(s, g, p);
        o.formula = "2^{jd/p} * ||rho|L_p||";
        return o;
    }
    return o;
}

/// Variable against which log2 norm ratios are fitted: log2 l for ex1 (its
/// ratios grow like powers of l), the scale itself otherwise.
inline double scale_variable(FamilyId id, int scale) {
    return id == FamilyId::ex1 ? std::log2(static_cast<double>(scale)) : static_cast<double>(scale);
}

} // namespace mixsmooth
