#pragma once

// Smooth dyadic decompositions of unity on the frequency side.
//
// All systems derive from one even cutoff phi_0 with phi_0 = 1 on [-1, 1] and
// phi_0 = 0 outside (-3/2, 3/2). Everything is evaluated pointwise; nothing is
// tabulated, so telescoping identities hold to round-off at any frequency.

#include <cmath>
#include <cstddef>
#include <span>

#include "mixsmooth/error.hpp"

namespace mixsmooth {

/// C-infinity step: 0 for s <= 0, 1 for s >= 1, strictly increasing in between.
/// Built from b(s) = exp(-1/s) as b(s) / (b(s) + b(1 - s)).
inline double smooth_step(double s) noexcept {
    if (s <= 0.0) return 0.0;
    if (s >= 1.0) return 1.0;
    const double a = std::exp(-1.0 / s);
    const double b = std::exp(-1.0 / (1.0 - s));
    return a / (a + b);
}

/// Bump on the open interval (lo, hi): peak 1 at the midpoint, zero outside,
/// same transition profile as the cutoff.
inline double smooth_bump(double x, double lo, double hi) noexcept {
    const double c = 0.5 * (lo + hi);
    const double r = 0.5 * (hi - lo);
    const double u = std::abs(x - c) / r;
    if (u >= 1.0) return 0.0;
    return smooth_step(1.0 - u);
}

class SmoothCutoff1D {
public:
    static constexpr double plateau_radius = 1.0;
    static constexpr double support_radius = 1.5;

    double operator()(double xi) const noexcept {
        const double a = std::abs(xi);
        if (a <= plateau_radius) return 1.0;
        if (a >= support_radius) return 0.0;
        return smooth_step((support_radius - a) / (support_radius - plateau_radius));
    }
};

inline SmoothCutoff1D make_cutoff_1d() noexcept { return {}; }

/// phi_j(xi) = phi_0(2^-j xi) - phi_0(2^-j+1 xi) for j >= 1.
struct DyadicSystem1D {
    SmoothCutoff1D generator{};

    double operator()(int j, double xi) const {
        if (j < 0) return 0.0;
        if (j == 0) return generator(xi);
        return generator(std::ldexp(xi, -j)) - generator(std::ldexp(xi, -j + 1));
    }

    /// phi_{j-1} + phi_j + phi_{j+1}; equals 1 on supp phi_j.
    double fattened(int j, double xi) const {
        if (j < 0) throw InvalidParams("fattened level must be >= 0");
        return (*this)(j - 1, xi) + (*this)(j, xi) + (*this)(j + 1, xi);
    }
};

/// Cube system psi_j built from psi_0(x) = prod_i phi_0(x_i).
struct IsotropicCubeSystem {
    SmoothCutoff1D generator{};

    double base(std::span<const double> x, int scale = 0) const {
        double v = 1.0;
        for (double xi : x) {
            v *= generator(std::ldexp(xi, -scale));
            if (v == 0.0) break;
        }
        return v;
    }

    double operator()(int j, std::span<const double> x) const {
        if (j < 0) return 0.0;
        if (j == 0) return base(x);
        return base(x, j) - base(x, j - 1);
    }
};

/// Tensor system phi_k(x) = prod_i phi_{k_i}(x_i).
struct MixedSystem {
    DyadicSystem1D factor{};

    double operator()(std::span<const int> k, std::span<const double> x) const {
        if (k.size() != x.size()) throw InvalidParams("multi-index and frequency dimensions differ");
        double v = 1.0;
        for (std::size_t i = 0; i < k.size(); ++i) {
            v *= factor(k[i], x[i]);
            if (v == 0.0) break;
        }
        return v;
    }
};

inline double phi(int j, double xi) {
    if (j < 0) throw InvalidParams("dyadic level must be >= 0");
    return DyadicSystem1D{}(j, xi);
}

inline double psi(int j, std::span<const double> x) {
    if (j < 0) throw InvalidParams("dyadic level must be >= 0");
    return IsotropicCubeSystem{}(j, x);
}

inline double psi0(std::span<const double> x, int scale = 0) { return IsotropicCubeSystem{}.base(x, scale); }

inline double phi_tensor(std::span<const int> k, std::span<const double> x) {
    for (int ki : k)
        if (ki < 0) throw InvalidParams("multi-index entries must be >= 0");
    return MixedSystem{}(k, x);
}

inline double phi_fattened(int j, double xi) { return DyadicSystem1D{}.fattened(j, xi); }

/// Smallest J >= 0 with 2^J >= omega_max; every band above J vanishes on
/// frequencies bounded by omega_max.
inline int nyquist_level(double omega_max) noexcept {
    int J = 0;
    while (std::ldexp(1.0, J) < omega_max) ++J;
    return J;
}

} // namespace mixsmooth
