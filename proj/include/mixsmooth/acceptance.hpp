#pragma once

// The ten acceptance criteria as runnable checks. Each returns a result with
// the measured worst case next to the tolerance it was held to.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "mixsmooth/dyadic.hpp"
#include "mixsmooth/embedding.hpp"
#include "mixsmooth/grid.hpp"
#include "mixsmooth/maximal.hpp"
#include "mixsmooth/quasinorm.hpp"
#include "mixsmooth/scan.hpp"
#include "mixsmooth/testfun.hpp"

namespace mixsmooth::acceptance {

struct Result {
    int id = 0;
    std::string name;
    bool passed = false;
    std::string measured;
    std::string tolerance;
    double seconds = 0.0;
};

enum class Suite { fast, full };

namespace detail {

inline std::string sci(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

inline std::string fixed(double v, int digits = 4) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

inline double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

using Clock = std::chrono::steady_clock;

inline double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

/// Runtime limit folded into the verdict and the tolerance text.
inline void limit_runtime(Result& r, double seconds_limit) {
    r.tolerance += "; runtime < " + fixed(seconds_limit, 0) + " s";
    if (r.seconds >= seconds_limit) {
        r.passed = false;
        r.measured += " (runtime " + fixed(r.seconds, 1) + " s)";
    }
}

inline std::vector<GridFunction> random_samples(const Grid& g, std::size_t count, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::vector<GridFunction> out;
    for (std::size_t c = 0; c < count; ++c) {
        cvec v(g.size());
        for (auto& z : v) z = {normal(rng), normal(rng)};
        out.emplace_back(g, std::move(v));
    }
    return out;
}

} // namespace detail

/// Telescoping of the 1D system for J <= 20 and of the tensor system for d = 2, 3.
inline Result partition_of_unity() {
    using namespace detail;
    const auto t0 = Clock::now();
    Result r{1, "partition of unity", false, "", "max error <= 1e-12", 0.0};
    std::mt19937_64 rng(20240601);
    std::uniform_real_distribution<double> mag(-3.0, 22.0);
    std::uniform_int_distribution<int> sign(0, 1);
    const DyadicSystem1D sys;
    const SmoothCutoff1D phi0;
    double err = 0.0;
    for (int i = 0; i < 10000; ++i) {
        const double xi = (sign(rng) ? 1.0 : -1.0) * std::exp2(mag(rng));
        double sum = 0.0;
        for (int J = 0; J <= 20; ++J) {
            sum += sys(J, xi);
            err = std::max(err, std::abs(sum - phi0(std::ldexp(xi, -J))));
        }
    }
    double terr = 0.0;
    for (int d : {2, 3}) {
        const int Jmax = d == 2 ? 12 : 8;
        const MixedSystem mixed;
        const IsotropicCubeSystem cube;
        for (int i = 0; i < 1000; ++i) {
            std::vector<double> x(static_cast<std::size_t>(d));
            for (auto& v : x) v = (sign(rng) ? 1.0 : -1.0) * std::exp2(std::uniform_real_distribution<double>(-3.0, Jmax + 1.0)(rng));
            // box sum grown shell by shell: |k|_inf = J adds the new multi-indices
            double sum = 0.0;
            for (int J = 0; J <= Jmax; ++J) {
                const std::vector<int> caps(static_cast<std::size_t>(d), J);
                mixsmooth::detail::for_each_multi_index(caps, [&](std::span<const int> kk) {
                    if (*std::max_element(kk.begin(), kk.end()) == J) sum += mixed(kk, x);
                });
                terr = std::max(terr, std::abs(sum - cube.base(x, J)));
            }
        }
    }
    r.seconds = since(t0);
    r.measured = "1D " + sci(err) + ", tensor " + sci(terr);
    r.passed = err <= 1e-12 && terr <= 1e-12;
    limit_runtime(r, 1.0);
    return r;
}

/// Dilation family: norms scale by 2^{d/p} per level and ignore t and q.
inline Result example6_scaling() {
    using namespace detail;
    const auto t0 = Clock::now();
    Result r{2, "dilation family 2^{jd/p} scaling", false, "", "ratio and t,q-invariance within 1%", 0.0};
    const int d = 2;
    FamilySpec s{FamilyId::ex6, 1, d, {}};
    const Grid g = Grid::with_frequency_step({512, 512}, {1.0 / 256, 1.0 / 256});
    std::vector<GridFunction> h;
    for (int j = 1; j <= 5; ++j) {
        s.scale = j;
        h.push_back(generate(s, g));
    }
    double ratio_err = 0.0, spread = 0.0;
    for (Scale sc : {Scale::isotropic, Scale::mixed})
        for (double p : {1.0, 2.0, 4.0}) {
            std::vector<std::vector<double>> vals(h.size()); // [j][(t,q)]
            for (std::size_t j = 0; j < h.size(); ++j)
                for (double t : {-1.0, 0.0, 1.0})
                    for (double q : {1.0, 2.0, infinity}) vals[j].push_back(norm(h[j], SpaceParams{sc, Family::F, t, p, q, d}));
            for (std::size_t j = 0; j < h.size(); ++j) {
                const auto [lo, hi] = std::minmax_element(vals[j].begin(), vals[j].end());
                spread = std::max(spread, *hi / *lo - 1.0);
                if (j + 1 < h.size())
                    for (std::size_t c = 0; c < vals[j].size(); ++c)
                        ratio_err = std::max(ratio_err, rel(vals[j + 1][c] / vals[j][c], std::exp2(d / p)));
            }
        }
    r.seconds = since(t0);
    r.measured = "ratio err " + sci(ratio_err) + ", t/q spread " + sci(spread);
    r.passed = ratio_err <= 0.01 && spread <= 0.01;
    limit_runtime(r, 60.0);
    return r;
}

/// Diagonal modulations with a_j = delta_{jl}: mixed/iso = 2^{(d-1)tl}.
inline Result example5_ratio() {
    using namespace detail;
    const auto t0 = Clock::now();
    Result r{3, "diagonal modulation ratio 2^{(d-1)tl}", false, "", "per point 2%, slope 0.05", 0.0};
    const int d = 2;
    double point_err = 0.0, slope_err = 0.0;
    for (double t : {-1.0, 1.0}) {
        ScanConfig c;
        c.family = FamilyId::ex5;
        c.d = d;
        c.coeffs = {CoeffRule::delta, 0.0};
        c.src = {Scale::isotropic, Family::F, t, 2.0, 2.0, d};
        c.dst = {Scale::mixed, Family::F, t, 2.0, 2.0, d};
        c.lmin = 2;
        c.lmax = 6;
        const ScanReport rep = ratio_scan(c);
        for (const auto& row : rep.rows) point_err = std::max(point_err, rel(row.ratio, std::exp2((d - 1) * t * row.scale)));
        slope_err = std::max(slope_err, std::abs(rep.fit.slope - (d - 1) * t));
    }
    r.seconds = since(t0);
    r.measured = "point err " + sci(point_err) + ", slope err " + sci(slope_err);
    r.passed = point_err <= 0.02 && slope_err <= 0.05;
    limit_runtime(r, 60.0);
    return r;
}

/// First-axis modulations: isotropic and mixed norms agree and match the formula.
inline Result example4_equality() {
    using namespace detail;
    const auto t0 = Clock::now();
    Result r{4, "first-axis modulation iso = mixed", false, "", "iso/mixed 1e-6, formula 2%", 0.0};
    const int d = 2, l = 4;
    struct P {
        double t, p, q;
    };
    const P params[] = {{1.0, 2.0, 2.0}, {-1.0, 1.0, 1.0}, {0.5, 3.0, infinity}, {2.0, 1.5, 0.5}};
    double diff = 0.0, formula = 0.0;
    for (std::uint64_t seed = 1; seed <= 5; ++seed) {
        std::mt19937_64 rng(seed);
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        std::vector<double> a(l);
        for (auto& v : a) v = u(rng);
        const FamilySpec s{FamilyId::ex4, l, d, a};
        const Grid g = default_grid(s);
        const GridFunction f = generate(s, g);
        for (const auto& pr : params) {
            const SpaceParams si{Scale::isotropic, Family::F, pr.t, pr.p, pr.q, d};
            const SpaceParams sm{Scale::mixed, Family::F, pr.t, pr.p, pr.q, d};
            const double ni = norm(f, si), nm = norm(f, sm);
            const double o = oracle(s, g, si).value;
            diff = std::max(diff, rel(ni, nm));
            formula = std::max({formula, rel(ni, o), rel(nm, o)});
        }
    }
    r.seconds = since(t0);
    r.measured = "iso/mixed " + sci(diff) + ", formula " + sci(formula);
    r.passed = diff <= 1e-6 && formula <= 0.02;
    return r;
}

/// Last-axis modulations with a_j = 1, p = 2: l^{1/q} growth of the mixed
/// norm against l^{1/2} of the isotropic one.
inline Result example1_sharpness() {
    using namespace detail;
    const auto t0 = Clock::now();
    Result r{5, "last-axis modulation sharpness (q > 2 fails)", false, "", "mixed 5%, iso 8%, q=4 slope > 3 sigma, q=2 |slope| < 0.05", 0.0};
    const int d = 2, lmin = 3, lmax = 7;
    const Grid g = default_grid(FamilySpec{FamilyId::ex1, lmax, d, {}});
    double mixed_err = 0.0, iso_err = 0.0;
    double slope4 = 0.0, sigma4 = 0.0, slope2 = 0.0;
    std::vector<GridFunction> fs;
    for (int l = lmin; l <= lmax; ++l) fs.push_back(generate(FamilySpec{FamilyId::ex1, l, d, {}}, g));
    for (double q : {2.0, 4.0}) {
        std::vector<double> xs, ys;
        double c_mixed = 0.0, c_iso = 0.0;
        for (int l = lmin; l <= lmax; ++l) {
            const auto& f = fs[static_cast<std::size_t>(l - lmin)];
            const double nm = norm(f, SpaceParams{Scale::mixed, Family::F, 0.0, 2.0, q, d});
            const double ni = norm(f, SpaceParams{Scale::isotropic, Family::F, 0.0, 2.0, q, d});
            const double shape_m = std::exp2(l / 2.0) * std::pow(l, 1.0 / q);
            const double shape_i = std::exp2(l / 2.0) * std::sqrt(static_cast<double>(l));
            if (l == lmin) {
                c_mixed = nm / shape_m;
                c_iso = ni / shape_i;
            }
            mixed_err = std::max(mixed_err, rel(nm, c_mixed * shape_m));
            iso_err = std::max(iso_err, rel(ni, c_iso * shape_i));
            xs.push_back(std::log2(static_cast<double>(l)));
            ys.push_back(std::log2(ni / nm));
        }
        const SlopeFit fit = fit_slope(xs, ys);
        if (q == 4.0) {
            slope4 = fit.slope;
            sigma4 = fit.slope_sigma;
        } else {
            slope2 = fit.slope;
        }
    }
    r.seconds = since(t0);
    r.measured = "mixed " + sci(mixed_err) + ", iso " + sci(iso_err) + ", q=4 slope " + fixed(slope4) + " (sigma " + sci(sigma4) +
                 "), q=2 slope " + sci(slope2);
    r.passed = mixed_err <= 0.05 && iso_err <= 0.08 && slope4 > 3.0 * sigma4 && slope4 > 0.0 && std::abs(slope2) < 0.05;
    limit_runtime(r, 300.0);
    return r;
}

/// Representation through fattened pieces: exact reconstruction, upper bound 3^d.
inline Result nikolskij() {
    using namespace detail;
    const auto t0 = Clock::now();
    Result r{6, "fattened-piece representation", false, "", "residual <= 1e-10, upper <= 9 * norm", 0.0};
    CorpusConfig c;
    c.d = 2;
    c.count = 50;
    c.seed = 606;
    const auto corpus = random_corpus(c);
    const Grid g = corpus_grid(c);
    double residual = 0.0, bound = 0.0;
    for (const auto& f : corpus)
        for (double t : {0.0, 1.0})
            for (double q : {1.0, 2.0}) {
                const SpaceParams s{Scale::mixed, Family::F, t, 2.0, q, 2};
                const auto dec = nikolskij_decompose(f, s);
                const GridFunction back = nikolskij_reconstruct(dec, g);
                cvec diff(g.size());
                for (std::size_t i = 0; i < diff.size(); ++i) diff[i] = back[i] - f[i];
                residual = std::max(residual, lp_norm(GridFunction(g, std::move(diff)), 2.0) / lp_norm(f, 2.0));
                bound = std::max(bound, dec.upper_norm / norm_mixed_F(f, s));
            }
    r.seconds = since(t0);
    r.measured = "residual " + sci(residual) + ", upper/norm " + fixed(bound);
    r.passed = residual <= 1e-10 && bound <= 9.0;
    return r;
}

/// Mixed F-norm of a tensor product is the product of the 1D norms.
inline Result cross_norm() {
    using namespace detail;
    const auto t0 = Clock::now();
    Result r{7, "cross-norm on tensor products", false, "", "relative error <= 1e-8", 0.0};
    CorpusConfig c1;
    c1.d = 1;
    c1.count = 10;
    c1.seed = 71;
    CorpusConfig c2 = c1;
    c2.seed = 72;
    const auto f1 = random_corpus(c1);
    const auto f2 = random_corpus(c2);
    const Grid g1 = corpus_grid(c1);
    const Grid g = Grid::with_frequency_step({c1.n, c1.n}, {c1.frequency_step, c1.frequency_step});
    std::mt19937_64 rng(73);
    const double ts[] = {-0.5, 0.0, 1.0}, ps[] = {1.0, 2.0, 3.0}, qs[] = {1.0, 2.0, infinity};
    std::uniform_int_distribution<int> pick(0, 2);
    double err = 0.0;
    for (std::size_t k = 0; k < f1.size(); ++k) {
        cvec v(g.size());
        for (std::size_t i = 0; i < c1.n; ++i)
            for (std::size_t j = 0; j < c1.n; ++j) v[i * c1.n + j] = f1[k][i] * f2[k][j];
        const GridFunction f(g, std::move(v));
        const double t = ts[pick(rng)], p = ps[pick(rng)], q = qs[pick(rng)];
        const double lhs = norm_mixed_F(f, SpaceParams{Scale::mixed, Family::F, t, p, q, 2});
        const SpaceParams s1{Scale::mixed, Family::F, t, p, q, 1};
        const double rhs = norm_mixed_F(GridFunction(g1, f1[k].copy_samples()), s1) * norm_mixed_F(GridFunction(g1, f2[k].copy_samples()), s1);
        err = std::max(err, rel(lhs, rhs));
    }
    r.seconds = since(t0);
    r.measured = "max relative error " + sci(err);
    r.passed = err <= 1e-8;
    return r;
}

struct VerdictFixture {
    char pair; // 'A': S^t vs F^t, 'B': F^{td} vs S^t
    double t, p, q;
    int d;
    Status forward, reverse;
};

inline const std::vector<VerdictFixture>& verdict_fixtures() {
    using S = Status;
    static const std::vector<VerdictFixture> f = {
        {'A', 1.0, 2.0, 3.0, 2, S::yes, S::no},
        {'A', 0.0, 2.0, 3.0, 2, S::no, S::yes},
        {'A', -1.0, 0.5, 2.0, 2, S::no, S::no},
        {'A', 0.0, 2.0, 2.0, 2, S::yes, S::yes},
        {'A', 0.0, 2.0, 1.5, 2, S::yes, S::no},
        {'A', -1.0, 2.0, 2.0, 3, S::no, S::yes},
        {'A', 0.0, 0.5, 1.0, 2, S::yes, S::open},
        {'A', 0.0, 1.0, 2.0, 2, S::open, S::open},
        {'A', 0.0, 3.0, infinity, 2, S::no, S::yes},
        {'B', 0.5, 2.0, 2.0, 2, S::yes, S::no},
        {'B', 1.0, 0.5, 2.0, 2, S::no, S::no},
        {'B', -1.0, 2.0, 2.0, 2, S::no, S::yes},
        {'B', 0.0, 2.0, 1.0, 2, S::no, S::yes},
        {'B', 1.0, 2.0, infinity, 2, S::yes, S::no},
        {'B', 1.5, 0.5, infinity, 2, S::open, S::no},
        {'B', 2.5, 0.5, infinity, 2, S::yes, S::no},
    };
    return f;
}

/// Labeled regions of the two phase diagrams at q = 2, away from their
/// boundary lines. Returns false when the verdict contradicts the region.
inline bool matches_figure(char pair, double t, double inv_p, const EmbeddingVerdict& v, bool& on_boundary) {
    constexpr double eps = 1e-9;
    using S = Status;
    if (pair == 'A') {
        on_boundary = std::abs(t) < eps || std::abs(inv_p - 1.0) < eps;
        if (on_boundary) return true;
        if (t > 0) return v.forward.status == S::yes && v.reverse.status != S::yes;
        if (inv_p < 1.0) return v.forward.status == S::no && v.reverse.status == S::yes;
        return v.forward.status == S::no && v.reverse.status == S::no;
    }
    const double crit = std::max(inv_p - 1.0, 0.0);
    on_boundary = std::abs(t) < eps || (inv_p > 1.0 && std::abs(t - crit) < eps);
    if (on_boundary) return true;
    if (t > crit) return v.forward.status == S::yes && v.reverse.status != S::yes;
    if (t < 0) return v.forward.status == S::no && v.reverse.status == S::yes;
    return v.forward.status == S::no && v.reverse.status == S::no;
}

inline Result classifier() {
    using namespace detail;
    const auto t0 = Clock::now();
    Result r{8, "classifier fixtures and phase diagrams", false, "", "16/16 fixtures, 0 contradictions", 0.0};
    int ok = 0;
    for (const auto& f : verdict_fixtures()) {
        const auto v = f.pair == 'A' ? classify_SF_into_F(f.t, f.p, f.q, f.d) : classify_F_into_SF(f.t, f.p, f.q, f.d);
        const bool tagged = (v.forward.status == Status::open || !v.forward.tag.empty()) &&
                            (v.reverse.status == Status::open || !v.reverse.tag.empty());
        if (v.forward.status == f.forward && v.reverse.status == f.reverse && tagged) ++ok;
    }
    int contradictions = 0, open_off_boundary = 0;
    for (char pair : {'A', 'B'})
        for (int k = 1; k <= 40; ++k)
            for (int i = 0; i < 40; ++i) {
                const double inv_p = k / 20.0;
                const double t = (i - 19) / 10.0;
                const auto v = pair == 'A' ? classify_SF_into_F(t, 1.0 / inv_p, 2.0, 2) : classify_F_into_SF(t, 1.0 / inv_p, 2.0, 2);
                bool boundary = false;
                if (!matches_figure(pair, t, inv_p, v, boundary)) ++contradictions;
                if (!boundary && (v.forward.status == Status::open || v.reverse.status == Status::open)) ++open_off_boundary;
            }
    r.seconds = since(t0);
    r.measured = std::to_string(ok) + "/" + std::to_string(verdict_fixtures().size()) + " fixtures, " + std::to_string(contradictions) +
                 " contradictions, " + std::to_string(open_off_boundary) + " open off boundary";
    r.passed = ok == static_cast<int>(verdict_fixtures().size()) && contradictions == 0 && open_off_boundary == 0;
    return r;
}

/// Random-corpus ratios for both embeddings at t = 1, p = q = 2, two seeds each.
inline Result corpus_boundedness() {
    using namespace detail;
    const auto t0 = Clock::now();
    Result r{9, "random-corpus boundedness", false, "", "finite ratios, corpus max stable within 10% across seeds", 0.0};
    const int d = 2;
    const SpaceParams s1{Scale::mixed, Family::F, 1.0, 2.0, 2.0, d};
    const SpaceParams f1{Scale::isotropic, Family::F, 1.0, 2.0, 2.0, d};
    const SpaceParams f2{Scale::isotropic, Family::F, 2.0, 2.0, 2.0, d};
    struct Pair {
        SpaceParams src, dst;
        const char* name;
    };
    const Pair pairs[] = {{s1, f1, "S^1 -> F^1"}, {f2, s1, "F^2 -> S^1"}};
    bool finite = true;
    double worst = 0.0;
    std::ostringstream os;
    for (const auto& pr : pairs) {
        double mx[2];
        for (int k = 0; k < 2; ++k) {
            CorpusConfig c;
            c.d = d;
            c.count = 100;
            c.seed = 9001 + static_cast<std::uint64_t>(k);
            const CorpusReport rep = random_corpus_check(pr.src, pr.dst, c);
            finite = finite && rep.all_finite;
            mx[k] = rep.max_ratio;
        }
        const double drift = std::abs(mx[1] / mx[0] - 1.0);
        worst = std::max(worst, drift);
        os << pr.name << " max " << fixed(mx[0]) << "/" << fixed(mx[1]) << "; ";
    }
    r.seconds = since(t0);
    r.measured = os.str() + "drift " + sci(worst);
    r.passed = finite && worst <= 0.10;
    return r;
}

/// Pointwise lower bound and sublinearity on random data, brute force on spikes.
inline Result maximal_properties() {
    using namespace detail;
    const auto t0 = Clock::now();
    Result r{10, "maximal operators", false, "", "Mf >= |f| exact, sublinear (1e-12 rel), brute force exact", 0.0};
    const Grid g = Grid::uniform(2, 32, 32.0);
    const auto fs = random_samples(g, 20, 1010);
    const auto gs = random_samples(g, 20, 1011);
    const std::vector<double> sc = {2.0, 4.0};
    bool lower = true;
    double sub = 0.0; // worst excess of M(f+g) over Mf + Mg, relative
    std::vector<std::function<GridFunction(const GridFunction&)>> ops = {
        [](const GridFunction& f) { return hl_max(f); },
        [](const GridFunction& f) { return dir_max(f, 0); },
        [](const GridFunction& f) { return dir_max(f, 1); },
        [&sc](const GridFunction& f) { return peetre_max(f, 1.5, sc); },
    };
    for (std::size_t k = 0; k < fs.size(); ++k) {
        const GridFunction sum = fs[k] + gs[k];
        for (const auto& op : ops) {
            const GridFunction mf = op(fs[k]), mg = op(gs[k]), ms = op(sum);
            for (std::size_t i = 0; i < g.size(); ++i) {
                lower = lower && mf[i].real() >= std::abs(fs[k][i]);
                const double bound = mf[i].real() + mg[i].real();
                sub = std::max(sub, (ms[i].real() - bound) / bound);
            }
        }
    }

    // d = 1, n = 8, unit spikes: every dyadic window and every shift by hand.
    const Grid g1 = Grid::uniform(1, 8, 8.0);
    bool brute = true;
    const std::vector<double> s1 = {2.0};
    for (std::size_t pos = 0; pos < 8; ++pos) {
        cvec v(8, cplx{});
        v[pos] = 1.0;
        const GridFunction f(g1, v);
        const GridFunction hl = hl_max(f);
        const GridFunction pm = peetre_max(f, 1.0, s1);
        for (std::size_t x = 0; x < 8; ++x) {
            double best = 0.0;
            for (std::size_t w = 1; w <= 8; w *= 2)
                for (std::size_t start = 0; start < 8; ++start) {
                    bool contains = false;
                    double total = 0.0;
                    for (std::size_t c = 0; c < w; ++c) {
                        const std::size_t idx = (start + c) % 8;
                        contains = contains || idx == x;
                        total += std::abs(v[idx]);
                    }
                    if (contains) best = std::max(best, total / static_cast<double>(w));
                }
            brute = brute && hl[x].real() == best;

            double pbest = 0.0;
            for (long m = -4; m < 4; ++m) {
                const double z = static_cast<double>(m);
                const std::size_t idx = static_cast<std::size_t>(((static_cast<long>(x) - m) % 8 + 8) % 8);
                pbest = std::max(pbest, std::abs(v[idx]) * (1.0 / (1.0 + std::pow(std::abs(2.0 * z), 1.0))));
            }
            brute = brute && pm[x].real() == pbest;
            // closed form at offset z from the spike
            long off = static_cast<long>(x) - static_cast<long>(pos);
            off = ((off + 4) % 8 + 8) % 8 - 4;
            brute = brute && std::abs(pm[x].real() - 1.0 / (1.0 + 2.0 * std::abs(static_cast<double>(off)))) <= 1e-15;
        }
    }
    r.seconds = since(t0);
    r.measured = std::string("lower bound ") + (lower ? "ok" : "violated") + ", sublinearity excess " + sci(std::max(sub, 0.0)) +
                 ", brute force " + (brute ? "exact" : "mismatch");
    r.passed = lower && sub <= 1e-12 && brute;
    return r;
}

struct Criterion {
    int id;
    bool fast;
    Result (*run)();
};

inline const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {1, true, partition_of_unity}, {2, false, example6_scaling}, {3, false, example5_ratio},
        {4, true, example4_equality},  {5, false, example1_sharpness}, {6, false, nikolskij},
        {7, true, cross_norm},         {8, true, classifier},         {9, false, corpus_boundedness},
        {10, true, maximal_properties},
    };
    return all;
}

/// Runs the suite, reporting each result as soon as it is known.
template <class OnResult>
std::vector<Result> run_suite(Suite suite, OnResult&& on_result) {
    std::vector<Result> out;
    for (const auto& c : criteria()) {
        if (suite == Suite::fast && !c.fast) continue;
        Result r;
        try {
            r = c.run();
        } catch (const std::exception& e) {
            r = Result{c.id, "criterion " + std::to_string(c.id), false, std::string("exception: ") + e.what(), "", 0.0};
        }
        on_result(r);
        out.push_back(std::move(r));
    }
    return out;
}

inline std::vector<Result> run_suite(Suite suite) {
    return run_suite(suite, [](const Result&) {});
}

} // namespace mixsmooth::acceptance
