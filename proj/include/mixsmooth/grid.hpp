#pragma once

// Periodic grid-sampled functions on a d-dimensional torus.
//
// Axis i carries n_i samples (a power of two) over period L_i. Samples sit at
// x = k h_i, h_i = L_i / n_i, stored row-major with the last axis fastest.
// The frequency lattice per axis is 2 pi m / L_i, m = -n_i/2 .. n_i/2 - 1,
// stored in FFT order (non-negative m first).

#include <algorithm>
#include <cmath>
#include <complex>
#include <cstddef>
#include <numbers>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "mixsmooth/error.hpp"
#include "mixsmooth/fft.hpp"

namespace mixsmooth {

class Grid {
public:
    static constexpr int max_dim = 3;

    Grid(std::vector<std::size_t> n, std::vector<double> period) : n_(std::move(n)), period_(std::move(period)) {
        if (n_.empty() || static_cast<int>(n_.size()) > max_dim)
            throw InvalidParams("grid dimension must be between 1 and " + std::to_string(max_dim));
        if (n_.size() != period_.size()) throw InvalidParams("grid needs one period per axis");
        for (std::size_t i = 0; i < n_.size(); ++i) {
            if (n_[i] < 2 || (n_[i] & (n_[i] - 1)) != 0)
                throw InvalidParams("samples per axis must be a power of two >= 2");
            if (!(period_[i] > 0.0) || !std::isfinite(period_[i]))
                throw InvalidParams("grid period must be positive and finite");
        }
    }

    static Grid uniform(int d, std::size_t n, double period) {
        if (d < 1) throw InvalidParams("grid dimension must be >= 1");
        return Grid(std::vector<std::size_t>(static_cast<std::size_t>(d), n),
                    std::vector<double>(static_cast<std::size_t>(d), period));
    }

    /// Grid whose frequency lattice has spacing delta_i on axis i (period 2 pi / delta_i).
    static Grid with_frequency_step(std::vector<std::size_t> n, const std::vector<double>& delta) {
        std::vector<double> period;
        period.reserve(delta.size());
        for (double dl : delta) {
            if (!(dl > 0.0)) throw InvalidParams("frequency step must be positive");
            period.push_back(2.0 * std::numbers::pi / dl);
        }
        return Grid(std::move(n), std::move(period));
    }

    int dim() const noexcept { return static_cast<int>(n_.size()); }
    std::size_t points(int axis) const { return n_.at(static_cast<std::size_t>(axis)); }
    const std::vector<std::size_t>& shape() const noexcept { return n_; }
    const std::vector<double>& periods() const noexcept { return period_; }
    double period(int axis) const { return period_.at(static_cast<std::size_t>(axis)); }

    std::size_t size() const noexcept {
        std::size_t s = 1;
        for (auto n : n_) s *= n;
        return s;
    }

    double step(int axis) const { return period(axis) / static_cast<double>(points(axis)); }
    double frequency_step(int axis) const { return 2.0 * std::numbers::pi / period(axis); }
    /// Largest |omega| on the lattice along an axis (attained at m = -n/2).
    double nyquist(int axis) const { return std::numbers::pi * static_cast<double>(points(axis)) / period(axis); }

    double cell_volume() const {
        double v = 1.0;
        for (int i = 0; i < dim(); ++i) v *= step(i);
        return v;
    }
    double volume() const {
        double v = 1.0;
        for (double L : period_) v *= L;
        return v;
    }

    /// Signed lattice index in -n/2 .. n/2-1 for storage index k.
    long signed_index(int axis, std::size_t k) const {
        const auto n = points(axis);
        return k < n / 2 ? static_cast<long>(k) : static_cast<long>(k) - static_cast<long>(n);
    }

    double frequency(int axis, std::size_t k) const { return frequency_step(axis) * static_cast<double>(signed_index(axis, k)); }
    /// Position in the symmetric fundamental domain [-L/2, L/2).
    double coordinate(int axis, std::size_t k) const { return step(axis) * static_cast<double>(signed_index(axis, k)); }

    std::vector<double> frequencies(int axis) const {
        std::vector<double> w(points(axis));
        for (std::size_t k = 0; k < w.size(); ++k) w[k] = frequency(axis, k);
        return w;
    }
    std::vector<double> coordinates(int axis) const {
        std::vector<double> x(points(axis));
        for (std::size_t k = 0; k < x.size(); ++k) x[k] = coordinate(axis, k);
        return x;
    }

    std::size_t stride(int axis) const {
        std::size_t s = 1;
        for (int i = dim() - 1; i > axis; --i) s *= points(i);
        return s;
    }

    std::vector<int> fft_shape() const {
        std::vector<int> s;
        for (auto n : n_) s.push_back(static_cast<int>(n));
        return s;
    }

    /// Storage index -> per-axis indices.
    void unravel(std::size_t flat, std::span<std::size_t> idx) const {
        for (int i = dim() - 1; i >= 0; --i) {
            const auto n = points(i);
            idx[static_cast<std::size_t>(i)] = flat % n;
            flat /= n;
        }
    }

    bool operator==(const Grid&) const = default;

private:
    std::vector<std::size_t> n_;
    std::vector<double> period_;
};

/// Complex samples on a grid. Immutable once built.
class GridFunction {
public:
    GridFunction(Grid grid, cvec samples) : grid_(std::move(grid)), samples_(std::move(samples)) {
        if (samples_.size() != grid_.size()) throw InvalidParams("sample count does not match grid size");
        for (const auto& z : samples_)
            if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
                throw InvalidParams("grid function samples must be finite");
    }

    static GridFunction zeros(const Grid& grid) { return {grid, cvec(grid.size(), cplx{})}; }

    const Grid& grid() const noexcept { return grid_; }
    std::span<const cplx> samples() const noexcept { return samples_; }
    std::size_t size() const noexcept { return samples_.size(); }
    const cplx& operator[](std::size_t i) const { return samples_[i]; }

    /// Copy of the samples, e.g. as FFT scratch.
    cvec copy_samples() const { return samples_; }

private:
    Grid grid_;
    cvec samples_;
};

inline void require_same_grid(const GridFunction& a, const GridFunction& b) {
    if (!(a.grid() == b.grid())) throw InvalidParams("grid functions live on different grids");
}

inline GridFunction operator+(const GridFunction& a, const GridFunction& b) {
    require_same_grid(a, b);
    cvec out(a.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = a[i] + b[i];
    return {a.grid(), std::move(out)};
}

inline GridFunction operator*(cplx c, const GridFunction& f) {
    cvec out(f.size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = c * f[i];
    return {f.grid(), std::move(out)};
}

/// Unitary discrete Fourier transform; output indexed by the frequency lattice.
inline GridFunction dft(const GridFunction& f) {
    cvec data = f.copy_samples();
    fft_inplace(data, f.grid().fft_shape(), FftDirection::forward);
    const double s = 1.0 / std::sqrt(static_cast<double>(data.size()));
    for (auto& z : data) z *= s;
    return {f.grid(), std::move(data)};
}

inline GridFunction idft(const GridFunction& fhat) {
    cvec data = fhat.copy_samples();
    fft_inplace(data, fhat.grid().fft_shape(), FftDirection::backward);
    const double s = 1.0 / std::sqrt(static_cast<double>(data.size()));
    for (auto& z : data) z *= s;
    return {fhat.grid(), std::move(data)};
}

/// Calls fn(flat_index, omega) for every lattice frequency.
template <class Fn>
void for_each_frequency(const Grid& grid, Fn&& fn) {
    const int d = grid.dim();
    std::vector<std::vector<double>> w(static_cast<std::size_t>(d));
    for (int i = 0; i < d; ++i) w[static_cast<std::size_t>(i)] = grid.frequencies(i);
    std::vector<std::size_t> idx(static_cast<std::size_t>(d), 0);
    std::vector<double> omega(static_cast<std::size_t>(d));
    const std::size_t total = grid.size();
    for (std::size_t flat = 0; flat < total; ++flat) {
        for (int i = 0; i < d; ++i) omega[static_cast<std::size_t>(i)] = w[static_cast<std::size_t>(i)][idx[static_cast<std::size_t>(i)]];
        fn(flat, std::span<const double>(omega));
        for (int i = d - 1; i >= 0; --i) {
            if (++idx[static_cast<std::size_t>(i)] < grid.points(i)) break;
            idx[static_cast<std::size_t>(i)] = 0;
        }
    }
}

/// idft(m(omega) * dft(f)) for a real multiplier evaluated on the lattice.
template <class Multiplier>
GridFunction apply_multiplier(const GridFunction& f, Multiplier&& m) {
    const Grid& g = f.grid();
    cvec data = f.copy_samples();
    fft_inplace(data, g.fft_shape(), FftDirection::forward);
    const double inv_n = 1.0 / static_cast<double>(data.size());
    for_each_frequency(g, [&](std::size_t k, std::span<const double> omega) {
        data[k] *= static_cast<double>(m(omega)) * inv_n;
    });
    fft_inplace(data, g.fft_shape(), FftDirection::backward);
    return {g, std::move(data)};
}

namespace detail {

inline void check_exponent(double p) {
    if (std::isnan(p) || !(p > 0.0)) throw InvalidParams("integrability exponent p must be > 0");
}

/// (cell * sum |v|^p)^(1/p), scaled by the peak to stay finite for large p.
template <class Range, class Abs>
double lp_sum(const Range& values, double p, double cell, Abs&& absval) {
    check_exponent(p);
    double peak = 0.0;
    for (const auto& v : values) peak = std::max(peak, absval(v));
    if (std::isinf(p) || peak == 0.0) return peak;
    double acc = 0.0;
    if (p == 2.0) {
        for (const auto& v : values) {
            const double r = absval(v) / peak;
            acc += r * r;
        }
    } else if (p == 1.0) {
        for (const auto& v : values) acc += absval(v) / peak;
    } else {
        for (const auto& v : values) acc += std::pow(absval(v) / peak, p);
    }
    return peak * std::pow(cell * acc, 1.0 / p);
}

} // namespace detail

/// Riemann-sum L_p quasi-norm; p = infinity gives the sample maximum.
inline double lp_norm(const GridFunction& f, double p) {
    return detail::lp_sum(f.samples(), p, f.grid().cell_volume(), [](const cplx& z) { return std::abs(z); });
}

/// Same quadrature for nonnegative real samples on a grid.
inline double lp_norm(std::span<const double> values, const Grid& grid, double p) {
    if (values.size() != grid.size()) throw InvalidParams("sample count does not match grid size");
    return detail::lp_sum(values, p, grid.cell_volume(), [](double v) { return std::abs(v); });
}

} // namespace mixsmooth
