#pragma once

// Numerical embedding experiments: norm-ratio scans along a test family and
// ratio statistics over seeded random corpora.

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <cstdint>
#include <optional>
#include <random>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "mixsmooth/embedding.hpp"
#include "mixsmooth/error.hpp"
#include "mixsmooth/grid.hpp"
#include "mixsmooth/quasinorm.hpp"
#include "mixsmooth/spectral.hpp"
#include "mixsmooth/testfun.hpp"

namespace mixsmooth {

struct SlopeFit {
    double slope = 0.0;
    double intercept = 0.0;
    double slope_sigma = 0.0; // standard error of the slope
    double rms_residual = 0.0;
    std::size_t points = 0;
};

/// Least squares y = a + b x; needs 3 or more points with distinct x.
inline SlopeFit fit_slope(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InvalidParams("fit needs as many y values as x values");
    const std::size_t n = x.size();
    if (n < 3) throw DegenerateFit("slope fit needs at least 3 points, got " + std::to_string(n));
    double mx = 0.0, my = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        if (!std::isfinite(x[i]) || !std::isfinite(y[i])) throw DegenerateFit("slope fit got a non-finite point");
        mx += x[i];
        my += y[i];
    }
    mx /= static_cast<double>(n);
    my /= static_cast<double>(n);
    double sxx = 0.0, sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        sxx += (x[i] - mx) * (x[i] - mx);
        sxy += (x[i] - mx) * (y[i] - my);
    }
    if (!(sxx > 0.0)) throw DegenerateFit("slope fit needs distinct x values");
    SlopeFit f;
    f.points = n;
    f.slope = sxy / sxx;
    f.intercept = my - f.slope * mx;
    double ssr = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double r = y[i] - f.intercept - f.slope * x[i];
        ssr += r * r;
    }
    f.rms_residual = std::sqrt(ssr / static_cast<double>(n));
    f.slope_sigma = std::sqrt(ssr / static_cast<double>(n - 2) / sxx);
    return f;
}

enum class CoeffRule { ones, delta, decay };

/// Coefficient sequence as a function of l, for scans.
struct CoeffSpec {
    CoeffRule rule = CoeffRule::ones;
    double rate = 0.0; // decay: a_j = 2^{-j rate}

    std::vector<double> resolve(int l) const {
        switch (rule) {
        case CoeffRule::ones: return coeffs::ones(l);
        case CoeffRule::delta: return coeffs::delta(l);
        case CoeffRule::decay: return coeffs::decay(l, rate);
        }
        return {};
    }

    std::string label() const {
        switch (rule) {
        case CoeffRule::ones: return "ones";
        case CoeffRule::delta: return "delta";
        case CoeffRule::decay: {
            std::ostringstream os;
            os << "decay:" << rate;
            return os.str();
        }
        }
        return "ones";
    }
};

/// "ones", "delta" or "decay:<rate>".
inline CoeffSpec parse_coeff_rule(const std::string& s) {
    if (s == "ones") return {CoeffRule::ones, 0.0};
    if (s == "delta") return {CoeffRule::delta, 0.0};
    if (s.rfind("decay:", 0) == 0) {
        try {
            std::size_t used = 0;
            const double r = std::stod(s.substr(6), &used);
            if (used == s.size() - 6 && std::isfinite(r)) return {CoeffRule::decay, r};
        } catch (const std::exception&) {
        }
    }
    throw InvalidParams("coefficient rule must be ones, delta or decay:<rate>, got '" + s + "'");
}

struct ScanConfig {
    FamilyId family = FamilyId::ex5;
    int d = 2;
    CoeffSpec coeffs;
    SpaceParams src;
    SpaceParams dst;
    int lmin = 1;
    int lmax = 4;
    std::optional<Grid> grid; // default: the family's grid at lmax, shared by all l
};

struct ScanRow {
    int scale = 0;
    double x = 0.0; // fit abscissa
    double src_norm = 0.0;
    double dst_norm = 0.0;
    double ratio = 0.0;
    double predicted = std::numeric_limits<double>::quiet_NaN(); // oracle dst/src, up to a constant
};

enum class Expectation { bounded, growing, none };

inline const char* to_string(Expectation e) {
    switch (e) {
    case Expectation::bounded: return "bounded";
    case Expectation::growing: return "growing";
    case Expectation::none: return "none";
    }
    return "none";
}

struct ScanReport {
    ScanConfig config;
    Grid grid{{2}, {1.0}};
    std::vector<ScanRow> rows;
    SlopeFit fit;
    std::optional<double> predicted_slope;
    std::string verdict; // classifier claim for src into dst, if the pair is classified
    Expectation expectation = Expectation::none;
    bool consistent = true;
};

/// Classifier claim for "src embeds into dst" when the pair is one of the
/// classified comparisons with shared (p, q).
inline std::optional<Claim> classified_claim(const SpaceParams& src, const SpaceParams& dst) {
    if (src.family != Family::F || dst.family != Family::F) return std::nullopt;
    if (src.p != dst.p || src.q != dst.q || src.d != dst.d || src.d < 2 || std::isinf(src.p)) return std::nullopt;
    const double d = src.d;
    if (src.scale == Scale::mixed && dst.scale == Scale::isotropic) {
        if (src.t == dst.t) return classify_SF_into_F(src.t, src.p, src.q, src.d).forward;
        if (dst.t == d * src.t) return classify_F_into_SF(src.t, src.p, src.q, src.d).reverse;
    }
    if (src.scale == Scale::isotropic && dst.scale == Scale::mixed) {
        if (src.t == dst.t) return classify_SF_into_F(src.t, src.p, src.q, src.d).reverse;
        if (src.t == d * dst.t) return classify_F_into_SF(dst.t, dst.p, dst.q, dst.d).forward;
    }
    return std::nullopt;
}

/// r_l = norm(f_l, dst) / norm(f_l, src) for l = lmin..lmax and the fitted
/// slope of log2 r_l against the family's scale variable.
inline ScanReport ratio_scan(const ScanConfig& cfg) {
    cfg.src.validate();
    cfg.dst.validate();
    if (cfg.src.d != cfg.d || cfg.dst.d != cfg.d) throw InvalidParams("space dimensions must match the scan dimension");
    if (cfg.lmax < cfg.lmin) throw InvalidParams("lmax must be >= lmin");
    if (cfg.lmax - cfg.lmin + 1 < 3) throw DegenerateFit("scan needs at least 3 scales for a slope fit");

    ScanReport rep;
    rep.config = cfg;
    FamilySpec top{cfg.family, cfg.lmax, cfg.d, cfg.coeffs.resolve(cfg.lmax)};
    if (!uses_coefficients(cfg.family)) top.a.clear();
    top.validate();
    rep.grid = cfg.grid ? *cfg.grid : default_grid(top);

    std::vector<double> xs, ys, ps;
    bool have_prediction = true;
    for (int l = cfg.lmin; l <= cfg.lmax; ++l) {
        FamilySpec s{cfg.family, l, cfg.d, uses_coefficients(cfg.family) ? cfg.coeffs.resolve(l) : std::vector<double>{}};
        const GridFunction f = generate(s, rep.grid);
        ScanRow row;
        row.scale = l;
        row.x = scale_variable(cfg.family, l);
        row.src_norm = norm(f, cfg.src);
        row.dst_norm = norm(f, cfg.dst);
        if (!(row.src_norm > 0.0) || !(row.dst_norm > 0.0))
            throw DegenerateFit("family member at scale " + std::to_string(l) + " has zero norm");
        row.ratio = row.dst_norm / row.src_norm;
        const Oracle os = oracle(s, rep.grid, cfg.src);
        const Oracle od = oracle(s, rep.grid, cfg.dst);
        if (os.kind != OracleKind::none && od.kind != OracleKind::none && os.value > 0.0 && od.value > 0.0)
            row.predicted = od.value / os.value;
        else
            have_prediction = false;
        xs.push_back(row.x);
        ys.push_back(std::log2(row.ratio));
        ps.push_back(std::log2(row.predicted));
        rep.rows.push_back(row);
    }
    rep.fit = fit_slope(xs, ys);
    if (have_prediction) rep.predicted_slope = fit_slope(xs, ps).slope;

    if (const auto claim = classified_claim(cfg.src, cfg.dst)) {
        rep.verdict = to_string(*claim);
        const bool predicts_growth = rep.predicted_slope && *rep.predicted_slope > 0.05;
        if (claim->status == Status::yes) rep.expectation = Expectation::bounded;
        else if (claim->status == Status::no && predicts_growth) rep.expectation = Expectation::growing;
    }
    const double noise = 3.0 * rep.fit.slope_sigma;
    switch (rep.expectation) {
    case Expectation::bounded: rep.consistent = rep.fit.slope <= std::max(noise, 0.05); break;
    case Expectation::growing: rep.consistent = rep.fit.slope > noise && rep.fit.slope > 0.0; break;
    case Expectation::none: rep.consistent = true; break;
    }
    return rep;
}

struct CorpusConfig {
    int d = 2;
    std::size_t n = 128;
    double frequency_step = 0.25;
    std::size_t count = 100;
    std::uint64_t seed = 1;
};

inline Grid corpus_grid(const CorpusConfig& c) {
    return Grid::with_frequency_step(std::vector<std::size_t>(static_cast<std::size_t>(c.d), c.n),
                                     std::vector<double>(static_cast<std::size_t>(c.d), c.frequency_step));
}

/// Seeded random band-limited functions: complex Gaussian lattice spectra with
/// a random power-law envelope 2^{-gamma m}, m the dyadic level of |w|_inf,
/// supported in 1 <= |w|_inf <= 2^{J-1} (J the Nyquist level), so the top
/// band is never touched.
inline std::vector<GridFunction> random_corpus(const CorpusConfig& c) {
    if (c.count == 0) throw InvalidParams("corpus size must be positive");
    const Grid g = corpus_grid(c);
    const int J = isotropic_level_cap(g);
    if (J < 2) throw InvalidParams("corpus grid too coarse for levels 1..J-1");
    const double top = std::ldexp(1.0, J - 1);
    std::mt19937_64 rng(c.seed);
    std::normal_distribution<double> normal(0.0, 1.0);
    std::uniform_real_distribution<double> gamma_dist(0.0, 2.0);
    std::vector<GridFunction> out;
    out.reserve(c.count);
    while (out.size() < c.count) {
        const double gamma = gamma_dist(rng);
        cvec spec(g.size(), cplx{});
        bool any = false;
        for_each_frequency(g, [&](std::size_t k, std::span<const double> w) {
            double m = 0.0;
            for (double x : w) m = std::max(m, std::abs(x));
            const double re = normal(rng);
            const double im = normal(rng);
            if (m < 1.0 || m > top) return;
            spec[k] = std::exp2(-gamma * std::log2(m)) * cplx(re, im);
            any = true;
        });
        if (!any) continue; // the zero function has no ratio
        out.push_back(synthesize(g, std::move(spec)));
    }
    return out;
}

struct CorpusReport {
    CorpusConfig config;
    SpaceParams src;
    SpaceParams dst;
    std::vector<double> ratios;
    double max_ratio = 0.0;
    double median_ratio = 0.0;
    double min_ratio = 0.0;
    bool all_finite = true;
};

/// dst/src norm ratios over a random corpus.
inline CorpusReport random_corpus_check(const SpaceParams& src, const SpaceParams& dst, const CorpusConfig& c) {
    src.validate();
    dst.validate();
    if (src.d != c.d || dst.d != c.d) throw InvalidParams("space dimensions must match the corpus dimension");
    CorpusReport rep{c, src, dst, {}, 0.0, 0.0, 0.0, true};
    for (const auto& f : random_corpus(c)) {
        const double a = norm(f, src);
        if (!(a > 0.0)) continue;
        const double r = norm(f, dst) / a;
        rep.all_finite = rep.all_finite && std::isfinite(r);
        rep.ratios.push_back(r);
    }
    if (rep.ratios.empty()) throw DegenerateFit("corpus produced no nonzero functions");
    auto sorted = rep.ratios;
    std::sort(sorted.begin(), sorted.end());
    rep.min_ratio = sorted.front();
    rep.max_ratio = sorted.back();
    const std::size_t m = sorted.size() / 2;
    rep.median_ratio = sorted.size() % 2 ? sorted[m] : 0.5 * (sorted[m - 1] + sorted[m]);
    return rep;
}

} // namespace mixsmooth
