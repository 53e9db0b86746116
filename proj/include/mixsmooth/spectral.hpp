#pragma once

// Lattice spectra built from separable pieces, and band extraction.

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <limits>
#include <numbers>
#include <span>
#include <utility>
#include <vector>

#include "mixsmooth/error.hpp"
#include "mixsmooth/fft.hpp"
#include "mixsmooth/grid.hpp"

namespace mixsmooth {

/// coef * prod_i factors[i](omega_i), each factor tabulated on the axis lattice.
struct SeparableTerm {
    cplx coef{1.0, 0.0};
    std::vector<std::vector<double>> factors;
};

namespace detail {

/// Visits every row along the last axis: fn(row_offset, outer_indices).
template <class Fn>
void for_each_row(const Grid& grid, Fn&& fn) {
    const int d = grid.dim();
    const std::size_t row = grid.points(d - 1);
    const std::size_t rows = grid.size() / row;
    std::vector<std::size_t> idx(static_cast<std::size_t>(std::max(d - 1, 0)), 0);
    for (std::size_t r = 0; r < rows; ++r) {
        fn(r * row, std::span<const std::size_t>(idx));
        for (int i = d - 2; i >= 0; --i) {
            auto& k = idx[static_cast<std::size_t>(i)];
            if (++k < grid.points(i)) break;
            k = 0;
        }
    }
}

inline void check_term(const Grid& grid, const SeparableTerm& t) {
    if (static_cast<int>(t.factors.size()) != grid.dim()) throw InvalidParams("separable term dimension mismatch");
    for (int i = 0; i < grid.dim(); ++i)
        if (t.factors[static_cast<std::size_t>(i)].size() != grid.points(i))
            throw InvalidParams("separable factor length mismatch");
}

} // namespace detail

/// Dense lattice array of sum_t coef_t * prod_i factor_{t,i}.
inline cvec fill_separable(const Grid& grid, std::span<const SeparableTerm> terms) {
    cvec out(grid.size(), cplx{});
    const int d = grid.dim();
    const std::size_t row = grid.points(d - 1);
    for (const auto& t : terms) {
        detail::check_term(grid, t);
        const auto& last = t.factors.back();
        detail::for_each_row(grid, [&](std::size_t off, std::span<const std::size_t> outer) {
            cplx c = t.coef;
            for (int i = 0; i < d - 1; ++i) c *= t.factors[static_cast<std::size_t>(i)][outer[static_cast<std::size_t>(i)]];
            if (c == cplx{}) return;
            for (std::size_t k = 0; k < row; ++k) out[off + k] += c * last[k];
        });
    }
    return out;
}

/// Real multiplier array sum_t Re(coef_t) * prod_i factor_{t,i}.
inline rvec fill_separable_real(const Grid& grid, std::span<const SeparableTerm> terms) {
    rvec out(grid.size(), 0.0);
    const int d = grid.dim();
    const std::size_t row = grid.points(d - 1);
    for (const auto& t : terms) {
        detail::check_term(grid, t);
        const auto& last = t.factors.back();
        detail::for_each_row(grid, [&](std::size_t off, std::span<const std::size_t> outer) {
            double c = t.coef.real();
            for (int i = 0; i < d - 1; ++i) c *= t.factors[static_cast<std::size_t>(i)][outer[static_cast<std::size_t>(i)]];
            if (c == 0.0) return;
            for (std::size_t k = 0; k < row; ++k) out[off + k] += c * last[k];
        });
    }
    return out;
}

/// Tabulates fn on the frequency lattice of one axis.
template <class Fn>
std::vector<double> axis_table(const Grid& grid, int axis, Fn&& fn) {
    std::vector<double> v(grid.points(axis));
    for (std::size_t k = 0; k < v.size(); ++k) v[k] = fn(grid.frequency(axis, k));
    return v;
}

/// Samples of the function whose continuous Fourier transform (unitary,
/// (2 pi)^{-d/2} convention) takes the given lattice values: a Riemann sum of
/// the inverse transform, evaluated exactly by one inverse FFT.
inline GridFunction synthesize(const Grid& grid, cvec spectrum) {
    if (spectrum.size() != grid.size()) throw InvalidParams("spectrum size does not match grid");
    double scale = std::pow(2.0 * std::numbers::pi, -0.5 * grid.dim());
    for (int i = 0; i < grid.dim(); ++i) scale *= grid.frequency_step(i);
    fft_inplace(spectrum, grid.fft_shape(), FftDirection::backward);
    for (auto& z : spectrum) z *= scale;
    return {grid, std::move(spectrum)};
}

/// Inverse of synthesize: lattice values of the continuous transform.
inline cvec analyze(const GridFunction& f) {
    const Grid& grid = f.grid();
    cvec data = f.copy_samples();
    fft_inplace(data, grid.fft_shape(), FftDirection::forward);
    double scale = std::pow(2.0 * std::numbers::pi, 0.5 * grid.dim()) / static_cast<double>(grid.size());
    for (int i = 0; i < grid.dim(); ++i) scale /= grid.frequency_step(i);
    for (auto& z : data) z *= scale;
    return data;
}

/// Holds the spectrum of one function and cuts frequency bands out of it.
///
/// A band whose largest spectral coefficient is below empty_tolerance times the
/// spectral peak is reported empty and never transformed back.
class BandSplitter {
public:
    static constexpr double empty_tolerance = 1e-13;

    explicit BandSplitter(const GridFunction& f) : grid_(f.grid()), spec_(f.copy_samples()) {
        fft_inplace(spec_, grid_.fft_shape(), FftDirection::forward);
        double peak2 = 0.0;
        for (const auto& z : spec_) peak2 = std::max(peak2, std::norm(z));
        peak_ = std::sqrt(peak2);
        threshold2_ = empty_tolerance * empty_tolerance * peak2;

        const int d = grid_.dim();
        active_.resize(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) active_[static_cast<std::size_t>(i)].assign(grid_.points(i), false);
        std::vector<std::vector<double>> w(static_cast<std::size_t>(d));
        for (int i = 0; i < d; ++i) w[static_cast<std::size_t>(i)] = grid_.frequencies(i);
        const std::size_t row = grid_.points(d - 1);
        const auto& wl = w.back();
        detail::for_each_row(grid_, [&](std::size_t off, std::span<const std::size_t> outer) {
            double sup_outer = 0.0, sq_outer = 0.0;
            for (int i = 0; i < d - 1; ++i) {
                const double x = w[static_cast<std::size_t>(i)][outer[static_cast<std::size_t>(i)]];
                sup_outer = std::max(sup_outer, std::abs(x));
                sq_outer += x * x;
            }
            bool any = false;
            for (std::size_t k = 0; k < row; ++k) {
                if (std::norm(spec_[off + k]) <= threshold2_) continue;
                active_.back()[k] = true;
                any = true;
                const double sup = std::max(sup_outer, std::abs(wl[k]));
                const double rad = std::sqrt(sq_outer + wl[k] * wl[k]);
                sup_lo_ = std::min(sup_lo_, sup);
                sup_hi_ = std::max(sup_hi_, sup);
                rad_lo_ = std::min(rad_lo_, rad);
                rad_hi_ = std::max(rad_hi_, rad);
            }
            if (any)
                for (int i = 0; i < d - 1; ++i) active_[static_cast<std::size_t>(i)][outer[static_cast<std::size_t>(i)]] = true;
        });
    }

    const Grid& grid() const noexcept { return grid_; }
    bool is_zero() const noexcept { return peak_ == 0.0; }

    /// False when a single separable multiplier vanishes on every axis slice
    /// that carries spectral content; cheap test before building a band.
    bool may_intersect(const SeparableTerm& term) const {
        for (std::size_t i = 0; i < term.factors.size(); ++i) {
            bool hit = false;
            const auto& f = term.factors[i];
            for (std::size_t k = 0; k < f.size() && !hit; ++k) hit = active_[i][k] && f[k] != 0.0;
            if (!hit) return false;
        }
        return true;
    }

    /// False when no spectral content has lo < |w|_inf < hi.
    bool may_intersect_cube_shell(double lo, double hi) const { return !is_zero() && sup_hi_ > lo && sup_lo_ < hi; }
    /// Same with the Euclidean norm.
    bool may_intersect_ball_shell(double lo, double hi) const { return !is_zero() && rad_hi_ > lo && rad_lo_ < hi; }

    /// out = inverse transform of (multiplier * spectrum). Returns false and
    /// leaves out untouched when the band is empty.
    bool band(std::span<const SeparableTerm> multiplier, cvec& out) const {
        if (is_zero()) return false;
        if (multiplier.size() == 1 && !may_intersect(multiplier[0])) return false;
        for (const auto& t : multiplier) detail::check_term(grid_, t);
        const int d = grid_.dim();
        const std::size_t row = grid_.points(d - 1);
        out.resize(spec_.size());
        double top = 0.0;
        std::vector<double> c(multiplier.size());
        detail::for_each_row(grid_, [&](std::size_t off, std::span<const std::size_t> outer) {
            bool live = false;
            for (std::size_t t = 0; t < multiplier.size(); ++t) {
                double v = multiplier[t].coef.real();
                for (int i = 0; i < d - 1; ++i)
                    v *= multiplier[t].factors[static_cast<std::size_t>(i)][outer[static_cast<std::size_t>(i)]];
                c[t] = v;
                live = live || v != 0.0;
            }
            if (!live) {
                std::fill(out.begin() + static_cast<std::ptrdiff_t>(off), out.begin() + static_cast<std::ptrdiff_t>(off + row), cplx{});
                return;
            }
            for (std::size_t k = 0; k < row; ++k) {
                double m = 0.0;
                for (std::size_t t = 0; t < multiplier.size(); ++t) m += c[t] * multiplier[t].factors.back()[k];
                out[off + k] = spec_[off + k] * m;
                top = std::max(top, std::norm(out[off + k]));
            }
        });
        return finish(out, top);
    }

    bool band(std::span<const double> multiplier, cvec& out) const {
        if (multiplier.size() != spec_.size()) throw InvalidParams("multiplier size does not match grid");
        if (is_zero()) return false;
        out.resize(spec_.size());
        double top = 0.0;
        for (std::size_t k = 0; k < spec_.size(); ++k) {
            out[k] = spec_[k] * multiplier[k];
            top = std::max(top, std::norm(out[k]));
        }
        return finish(out, top);
    }

private:
    bool finish(cvec& out, double top2) const {
        if (top2 <= threshold2_) return false;
        const double inv_n = 1.0 / static_cast<double>(spec_.size());
        for (auto& z : out) z *= inv_n;
        fft_inplace(out, grid_.fft_shape(), FftDirection::backward);
        return true;
    }

    Grid grid_;
    cvec spec_;
    double peak_ = 0.0;
    double threshold2_ = 0.0;
    double sup_lo_ = std::numeric_limits<double>::infinity(), sup_hi_ = 0.0;
    double rad_lo_ = std::numeric_limits<double>::infinity(), rad_hi_ = 0.0;
    std::vector<std::vector<bool>> active_;
};

} // namespace mixsmooth
