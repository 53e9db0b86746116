#pragma once

// Isotropic and dominating-mixed Besov / Lizorkin-Triebel quasi-norms of grid
// functions, computed from dyadic band pieces of the discrete spectrum.
//
// Bands stream one at a time: memory stays at the spectrum, one band, and one
// real accumulator per grid point. A grid function is treated as exactly
// band-limited; levels stop at the Nyquist level of each axis.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <functional>
#include <limits>
#include <numbers>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "mixsmooth/dyadic.hpp"
#include "mixsmooth/error.hpp"
#include "mixsmooth/grid.hpp"
#include "mixsmooth/spectral.hpp"

namespace mixsmooth {

enum class Scale { isotropic, mixed };
enum class Family { F, B };

inline constexpr double infinity = std::numeric_limits<double>::infinity();

struct SpaceParams {
    Scale scale = Scale::isotropic;
    Family family = Family::F;
    double t = 0.0;
    double p = 2.0;
    double q = 2.0;
    int d = 2;

    void validate() const {
        if (!std::isfinite(t)) throw InvalidParams("smoothness t must be finite");
        if (std::isnan(p) || !(p > 0.0)) throw InvalidParams("integrability p must be > 0");
        if (std::isnan(q) || !(q > 0.0)) throw InvalidParams("fine index q must be > 0");
        if (family == Family::F && std::isinf(p)) throw InvalidParams("F-family requires p < inf");
        if (d < 1) throw InvalidParams("dimension d must be >= 1");
    }

    /// e.g. "S^{1}_{2,inf}F" or "F^{0.5}_{1,2}".
    std::string label() const {
        auto num = [](double v) {
            if (std::isinf(v)) return std::string("inf");
            std::ostringstream os;
            os << v;
            return os.str();
        };
        std::string s = scale == Scale::mixed ? "S^{" : (family == Family::F ? "F^{" : "B^{");
        s += num(t) + "}_{" + num(p) + "," + num(q) + "}";
        if (scale == Scale::mixed) s += family == Family::F ? "F" : "B";
        return s;
    }

    bool operator==(const SpaceParams&) const = default;
};

inline const char* to_string(Scale s) { return s == Scale::mixed ? "mixed" : "iso"; }
inline const char* to_string(Family f) { return f == Family::F ? "F" : "B"; }

/// Which isotropic decomposition generates the F/B norms. The cube system is
/// the default; the radial one (phi_0(|x|_2)) gives an equivalent quasi-norm.
enum class IsotropicSystem { cube, radial };

struct NormOptions {
    IsotropicSystem isotropic_system = IsotropicSystem::cube;
};

namespace detail {

inline void check_space(const GridFunction& f, const SpaceParams& s, Scale scale, Family family) {
    s.validate();
    if (s.scale != scale || s.family != family)
        throw InvalidParams("space parameters " + s.label() + " do not match the requested norm");
    if (s.d != f.grid().dim()) throw InvalidParams("space dimension does not match grid dimension");
}

/// Per-axis tables of phi_k on the lattice, built lazily.
class AxisTables {
public:
    explicit AxisTables(const Grid& g) : grid_(g), cache_(static_cast<std::size_t>(g.dim())) {}

    const std::vector<double>& phi(int axis, int k) {
        auto& c = cache_[static_cast<std::size_t>(axis)];
        if (static_cast<int>(c.size()) <= k) c.resize(static_cast<std::size_t>(k) + 1);
        auto& v = c[static_cast<std::size_t>(k)];
        if (v.empty()) v = axis_table(grid_, axis, [k](double w) { return DyadicSystem1D{}(k, w); });
        return v;
    }

    std::vector<double> fattened(int axis, int k) {
        std::vector<double> v(grid_.points(axis), 0.0);
        for (int j = std::max(k - 1, 0); j <= k + 1; ++j) {
            const auto& t = phi(axis, j);
            for (std::size_t i = 0; i < v.size(); ++i) v[i] += t[i];
        }
        return v;
    }

private:
    const Grid& grid_;
    std::vector<std::vector<std::vector<double>>> cache_;
};

inline std::vector<SeparableTerm> cube_band(const Grid& g, int j) {
    auto scaled = [&](int level) {
        SeparableTerm t;
        for (int i = 0; i < g.dim(); ++i)
            t.factors.push_back(axis_table(g, i, [level](double w) { return SmoothCutoff1D{}(std::ldexp(w, -level)); }));
        return t;
    };
    std::vector<SeparableTerm> terms{scaled(j)};
    if (j > 0) {
        auto inner = scaled(j - 1);
        inner.coef = -1.0;
        terms.push_back(std::move(inner));
    }
    return terms;
}

inline rvec radial_band(const Grid& g, int j) {
    rvec m(g.size());
    for_each_frequency(g, [&](std::size_t k, std::span<const double> w) {
        double r2 = 0.0;
        for (double x : w) r2 += x * x;
        m[k] = DyadicSystem1D{}(j, std::sqrt(r2));
    });
    return m;
}

/// Lexicographic walk over the box 0 <= k_i <= caps[i].
template <class Fn>
void for_each_multi_index(std::span<const int> caps, Fn&& fn) {
    std::vector<int> k(caps.size(), 0);
    while (true) {
        fn(std::span<const int>(k));
        int i = static_cast<int>(caps.size()) - 1;
        for (; i >= 0; --i) {
            if (++k[static_cast<std::size_t>(i)] <= caps[static_cast<std::size_t>(i)]) break;
            k[static_cast<std::size_t>(i)] = 0;
        }
        if (i < 0) break;
    }
}

/// Pointwise l_q accumulator over weighted band moduli.
class LqAccumulator {
public:
    LqAccumulator(std::size_t n, double q) : acc_(n, 0.0), q_(q) {}

    void add(const cvec& band, double weight) {
        if (std::isinf(q_)) {
            for (std::size_t i = 0; i < acc_.size(); ++i) acc_[i] = std::max(acc_[i], weight * std::abs(band[i]));
        } else if (q_ == 2.0) {
            const double w2 = weight * weight;
            for (std::size_t i = 0; i < acc_.size(); ++i) acc_[i] += w2 * std::norm(band[i]);
        } else if (q_ == 1.0) {
            for (std::size_t i = 0; i < acc_.size(); ++i) acc_[i] += weight * std::abs(band[i]);
        } else {
            for (std::size_t i = 0; i < acc_.size(); ++i) acc_[i] += std::pow(weight * std::abs(band[i]), q_);
        }
    }

    /// Pointwise (sum)^{1/q}; consumes the accumulator.
    std::vector<double> finish() && {
        if (!std::isinf(q_) && q_ != 1.0) {
            const double e = 1.0 / q_;
            for (auto& a : acc_) a = q_ == 2.0 ? std::sqrt(a) : std::pow(a, e);
        }
        return std::move(acc_);
    }

private:
    std::vector<double> acc_;
    double q_;
};

/// Scalar l_q accumulator.
class LqSum {
public:
    explicit LqSum(double q) : q_(q) {}
    void add(double v) {
        if (std::isinf(q_)) acc_ = std::max(acc_, v);
        else acc_ += std::pow(v, q_);
    }
    double value() const { return std::isinf(q_) ? acc_ : std::pow(acc_, 1.0 / q_); }

private:
    double q_;
    double acc_ = 0.0;
};

} // namespace detail

/// Levels covering the lattice: isotropic uses the largest axis Nyquist frequency.
inline int isotropic_level_cap(const Grid& g) {
    double w = 0.0;
    for (int i = 0; i < g.dim(); ++i) w = std::max(w, g.nyquist(i));
    return nyquist_level(w);
}

inline std::vector<int> mixed_level_caps(const Grid& g) {
    std::vector<int> caps;
    for (int i = 0; i < g.dim(); ++i) caps.push_back(nyquist_level(g.nyquist(i)));
    return caps;
}

/// Calls fn(level, band) for every non-empty isotropic band psi_j, j = 0..J_max.
template <class Fn>
void for_each_isotropic_band(const BandSplitter& split, IsotropicSystem sys, Fn&& fn) {
    const Grid& g = split.grid();
    const int J = isotropic_level_cap(g);
    cvec band;
    for (int j = 0; j <= J; ++j) {
        // psi_j and the radial phi_j both live on 2^{j-1} < |w| < 3 * 2^{j-1} (j >= 1).
        const double lo = j == 0 ? -1.0 : std::ldexp(1.0, j - 1);
        const double hi = 1.5 * std::ldexp(1.0, j);
        const bool reach = sys == IsotropicSystem::cube ? split.may_intersect_cube_shell(lo, hi) : split.may_intersect_ball_shell(lo, hi);
        if (!reach) continue;
        bool nonempty = false;
        if (sys == IsotropicSystem::cube) {
            const auto terms = detail::cube_band(g, j);
            nonempty = split.band(std::span<const SeparableTerm>(terms), band);
        } else {
            const auto m = detail::radial_band(g, j);
            nonempty = split.band(std::span<const double>(m), band);
        }
        if (nonempty) fn(j, static_cast<const cvec&>(band));
    }
}

/// Calls fn(k, band) for every non-empty tensor band phi_k, lexicographic in k.
template <class Fn>
void for_each_mixed_band(const BandSplitter& split, Fn&& fn) {
    const Grid& g = split.grid();
    const auto caps = mixed_level_caps(g);
    detail::AxisTables tables(g);
    cvec band;
    detail::for_each_multi_index(caps, [&](std::span<const int> k) {
        SeparableTerm term;
        for (int i = 0; i < g.dim(); ++i) term.factors.push_back(tables.phi(i, k[static_cast<std::size_t>(i)]));
        if (split.band(std::span<const SeparableTerm>(&term, 1), band)) fn(k, static_cast<const cvec&>(band));
    });
}

inline int level_sum(std::span<const int> k) {
    int s = 0;
    for (int v : k) s += v;
    return s;
}

inline double norm_isotropic_F(const GridFunction& f, const SpaceParams& s, NormOptions opt = {}) {
    detail::check_space(f, s, Scale::isotropic, Family::F);
    const BandSplitter split(f);
    detail::LqAccumulator acc(f.size(), s.q);
    for_each_isotropic_band(split, opt.isotropic_system,
                            [&](int j, const cvec& band) { acc.add(band, std::exp2(s.t * j)); });
    const auto g = std::move(acc).finish();
    return lp_norm(g, f.grid(), s.p);
}

inline double norm_mixed_F(const GridFunction& f, const SpaceParams& s) {
    detail::check_space(f, s, Scale::mixed, Family::F);
    const BandSplitter split(f);
    detail::LqAccumulator acc(f.size(), s.q);
    for_each_mixed_band(split, [&](std::span<const int> k, const cvec& band) { acc.add(band, std::exp2(s.t * level_sum(k))); });
    const auto g = std::move(acc).finish();
    return lp_norm(g, f.grid(), s.p);
}

inline double norm_isotropic_B(const GridFunction& f, const SpaceParams& s, NormOptions opt = {}) {
    detail::check_space(f, s, Scale::isotropic, Family::B);
    const BandSplitter split(f);
    detail::LqSum sum(s.q);
    for_each_isotropic_band(split, opt.isotropic_system, [&](int j, const cvec& band) {
        sum.add(std::exp2(s.t * j) * lp_norm(GridFunction(f.grid(), band), s.p));
    });
    return sum.value();
}

inline double norm_mixed_B(const GridFunction& f, const SpaceParams& s) {
    detail::check_space(f, s, Scale::mixed, Family::B);
    const BandSplitter split(f);
    detail::LqSum sum(s.q);
    for_each_mixed_band(split, [&](std::span<const int> k, const cvec& band) {
        sum.add(std::exp2(s.t * level_sum(k)) * lp_norm(GridFunction(f.grid(), band), s.p));
    });
    return sum.value();
}

/// Dispatches on scale and family.
inline double norm(const GridFunction& f, const SpaceParams& s, NormOptions opt = {}) {
    if (s.scale == Scale::isotropic)
        return s.family == Family::F ? norm_isotropic_F(f, s, opt) : norm_isotropic_B(f, s, opt);
    return s.family == Family::F ? norm_mixed_F(f, s) : norm_mixed_B(f, s);
}

struct NikolskijPiece {
    std::vector<int> k;
    GridFunction f;
};

struct NikolskijDecomposition {
    std::vector<NikolskijPiece> pieces;
    double upper_norm = 0.0;
};

/// Representation f = sum_k F^-1[phi_k F f_k] with f_k = F^-1[phi~_k F f],
/// phi~_k the tensor of phi_{k_i - 1} + phi_{k_i} + phi_{k_i + 1}. Pieces whose
/// tensor band phi_k F f is empty are dropped: they do not enter the sum.
/// upper_norm is || 2^{t|k|_1} f_k | L_p(l_q) ||.
inline NikolskijDecomposition nikolskij_decompose(const GridFunction& f, const SpaceParams& s) {
    detail::check_space(f, s, Scale::mixed, Family::F);
    const Grid& g = f.grid();
    const BandSplitter split(f);
    detail::AxisTables tables(g);
    NikolskijDecomposition out;
    detail::LqAccumulator acc(f.size(), s.q);
    const auto caps = mixed_level_caps(g);
    cvec band;
    detail::for_each_multi_index(caps, [&](std::span<const int> k) {
        SeparableTerm term;
        for (int i = 0; i < g.dim(); ++i) term.factors.push_back(tables.phi(i, k[static_cast<std::size_t>(i)]));
        if (!split.band(std::span<const SeparableTerm>(&term, 1), band)) return;
        SeparableTerm fat;
        for (int i = 0; i < g.dim(); ++i) fat.factors.push_back(tables.fattened(i, k[static_cast<std::size_t>(i)]));
        cvec piece;
        if (!split.band(std::span<const SeparableTerm>(&fat, 1), piece)) return;
        acc.add(piece, std::exp2(s.t * level_sum(k)));
        out.pieces.push_back({std::vector<int>(k.begin(), k.end()), GridFunction(g, std::move(piece))});
    });
    const auto v = std::move(acc).finish();
    out.upper_norm = lp_norm(v, g, s.p);
    return out;
}

/// sum_k F^-1[phi_k F f_k], each piece transformed on its own.
inline GridFunction nikolskij_reconstruct(const NikolskijDecomposition& dec, const Grid& g) {
    cvec sum(g.size(), cplx{});
    detail::AxisTables tables(g);
    cvec band;
    for (const auto& piece : dec.pieces) {
        if (!(piece.f.grid() == g)) throw InvalidParams("piece grid mismatch");
        SeparableTerm term;
        for (int i = 0; i < g.dim(); ++i) term.factors.push_back(tables.phi(i, piece.k[static_cast<std::size_t>(i)]));
        const BandSplitter split(piece.f);
        if (!split.band(std::span<const SeparableTerm>(&term, 1), band)) continue;
        for (std::size_t i = 0; i < sum.size(); ++i) sum[i] += band[i];
    }
    return {g, std::move(sum)};
}

} // namespace mixsmooth
