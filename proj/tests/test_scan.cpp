#include <gtest/gtest.h>

#include <array>
#include <cmath>
#include <limits>
#include <vector>

#include "mixsmooth/scan.hpp"

using namespace mixsmooth;

namespace {

SpaceParams iso(double t, double p, double q, int d = 2) { return {Scale::isotropic, Family::F, t, p, q, d}; }
SpaceParams mixed(double t, double p, double q, int d = 2) { return {Scale::mixed, Family::F, t, p, q, d}; }

ScanConfig config(FamilyId fam, CoeffSpec c, SpaceParams src, SpaceParams dst, int lmin, int lmax) {
    ScanConfig cfg;
    cfg.family = fam;
    cfg.d = src.d;
    cfg.coeffs = c;
    cfg.src = src;
    cfg.dst = dst;
    cfg.lmin = lmin;
    cfg.lmax = lmax;
    return cfg;
}

} // namespace

TEST(FitSlope, ExactLineAndNoise) {
    const std::array<double, 5> x{1, 2, 3, 4, 5};
    const std::array<double, 5> y{0.5, 2.0, 3.5, 5.0, 6.5};
    const SlopeFit f = fit_slope(x, y);
    EXPECT_NEAR(f.slope, 1.5, 1e-14);
    EXPECT_NEAR(f.intercept, -1.0, 1e-14);
    EXPECT_NEAR(f.slope_sigma, 0.0, 1e-12);
    EXPECT_EQ(f.points, 5u);

    const std::array<double, 5> wobble{0.6, 1.9, 3.6, 4.9, 6.6};
    const SlopeFit g = fit_slope(x, wobble);
    EXPECT_NEAR(g.slope, 1.5, 0.05);
    EXPECT_GT(g.slope_sigma, 0.0);
    EXPECT_GT(g.rms_residual, 0.0);
}

TEST(FitSlope, Degenerate) {
    const std::array<double, 2> two{1, 2};
    EXPECT_THROW(fit_slope(two, two), DegenerateFit);
    const std::array<double, 3> same{2, 2, 2}, y{1, 2, 3};
    EXPECT_THROW(fit_slope(same, y), DegenerateFit);
    const std::array<double, 3> x{1, 2, 3}, bad{1, std::numeric_limits<double>::quiet_NaN(), 3};
    EXPECT_THROW(fit_slope(x, bad), DegenerateFit);
    const std::array<double, 4> four{1, 2, 3, 4};
    EXPECT_THROW(fit_slope(x, four), InvalidParams);
}

TEST(CoeffRule, Parsing) {
    EXPECT_EQ(parse_coeff_rule("ones").rule, CoeffRule::ones);
    EXPECT_EQ(parse_coeff_rule("delta").rule, CoeffRule::delta);
    const CoeffSpec d = parse_coeff_rule("decay:0.5");
    EXPECT_EQ(d.rule, CoeffRule::decay);
    EXPECT_DOUBLE_EQ(d.rate, 0.5);
    EXPECT_EQ(d.label(), "decay:0.5");
    const auto a = d.resolve(3);
    ASSERT_EQ(a.size(), 3u);
    EXPECT_DOUBLE_EQ(a[2], std::exp2(-1.5));
    const auto delta = parse_coeff_rule("delta").resolve(4);
    EXPECT_EQ(delta, (std::vector<double>{0, 0, 0, 1}));
    for (const char* bad : {"", "one", "decay:", "decay:x", "decay:1q", "decay:inf"}) EXPECT_THROW(parse_coeff_rule(bad), InvalidParams) << bad;
}

TEST(RatioScan, DiagonalModulationGrowsLikeTwoToTheL) {
    const ScanReport r = ratio_scan(config(FamilyId::ex5, {CoeffRule::delta, 0}, iso(1, 2, 2), mixed(1, 2, 2), 2, 6));
    ASSERT_EQ(r.rows.size(), 5u);
    for (const auto& row : r.rows) EXPECT_NEAR(row.ratio / std::exp2(row.scale), 1.0, 0.02) << "l=" << row.scale;
    EXPECT_NEAR(r.fit.slope, 1.0, 0.05);
    ASSERT_TRUE(r.predicted_slope.has_value());
    EXPECT_NEAR(*r.predicted_slope, 1.0, 1e-9);
    EXPECT_EQ(r.expectation, Expectation::growing);
    EXPECT_EQ(r.verdict, "No [" + tags::ex3 + "]");
    EXPECT_TRUE(r.consistent);
}

TEST(RatioScan, OppositeDirectionIsBounded) {
    const ScanReport r = ratio_scan(config(FamilyId::ex5, {CoeffRule::delta, 0}, mixed(1, 2, 2), iso(1, 2, 2), 2, 5));
    EXPECT_NEAR(r.fit.slope, -1.0, 0.05);
    EXPECT_EQ(r.expectation, Expectation::bounded);
    EXPECT_TRUE(r.consistent);
}

TEST(RatioScan, DilationAlongOneAxisHasUnitRatio) {
    for (auto [t, p, q] : {std::array{1.0, 2.0, 2.0}, std::array{-0.5, 1.5, 3.0}}) {
        const ScanReport r = ratio_scan(config(FamilyId::ex2, {}, iso(t, p, q), mixed(t, p, q), 1, 4));
        for (const auto& row : r.rows) EXPECT_NEAR(row.ratio, 1.0, 0.02) << "l=" << row.scale << " t=" << t;
        EXPECT_NEAR(r.fit.slope, 0.0, 0.02);
    }
}

TEST(RatioScan, CubeDilationWitnessesFailure) {
    const ScanReport r = ratio_scan(config(FamilyId::ex3, {}, iso(1, 2, 2), mixed(1, 2, 2), 1, 4));
    ASSERT_TRUE(r.predicted_slope.has_value());
    EXPECT_NEAR(r.fit.slope, *r.predicted_slope, 0.05);
    EXPECT_GT(r.fit.slope, 3.0 * r.fit.slope_sigma);
    EXPECT_EQ(r.expectation, Expectation::growing);
    EXPECT_TRUE(r.consistent);
}

TEST(RatioScan, RejectsShortOrMismatchedRanges) {
    EXPECT_THROW(ratio_scan(config(FamilyId::ex5, {}, iso(1, 2, 2), mixed(1, 2, 2), 2, 3)), DegenerateFit);
    EXPECT_THROW(ratio_scan(config(FamilyId::ex5, {}, iso(1, 2, 2), mixed(1, 2, 2), 4, 2)), InvalidParams);
    ScanConfig bad = config(FamilyId::ex5, {}, iso(1, 2, 2), mixed(1, 2, 2), 1, 4);
    bad.d = 3;
    EXPECT_THROW(ratio_scan(bad), InvalidParams);
    EXPECT_THROW(ratio_scan(config(FamilyId::ex5, {}, iso(1, 2, 2), mixed(1, 2, 2), 1, 30)), NyquistError);
}

TEST(ClassifiedClaim, PairsAndUnclassified) {
    EXPECT_EQ(classified_claim(mixed(1, 2, 2), iso(1, 2, 2))->status, Status::yes);
    EXPECT_EQ(classified_claim(iso(2, 2, 2), mixed(1, 2, 2))->status, Status::yes);
    EXPECT_EQ(classified_claim(mixed(-1, 2, 2), iso(-2, 2, 2))->status, Status::yes);
    EXPECT_FALSE(classified_claim(mixed(1, 2, 2), iso(1, 3, 2)).has_value());
    EXPECT_FALSE(classified_claim(mixed(1, 2, 2), iso(0.3, 2, 2)).has_value());
}

TEST(Corpus, SeededNonzeroAndBandLimited) {
    CorpusConfig c;
    c.n = 32;
    c.count = 6;
    const auto a = random_corpus(c), b = random_corpus(c);
    c.seed = 2;
    const auto other = random_corpus(c);
    ASSERT_EQ(a.size(), 6u);
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].copy_samples(), b[i].copy_samples());
        EXPECT_NE(a[i].copy_samples(), other[i].copy_samples());
        EXPECT_GT(lp_norm(a[i], 2.0), 0.0);
    }
    c.count = 0;
    EXPECT_THROW(random_corpus(c), InvalidParams);
}

TEST(Corpus, BoundedRatiosForAYesPair) {
    CorpusConfig c;
    c.n = 64;
    c.count = 20;
    const CorpusReport r = random_corpus_check(iso(2, 2, 2), mixed(1, 2, 2), c);
    ASSERT_EQ(r.ratios.size(), 20u);
    EXPECT_TRUE(r.all_finite);
    EXPECT_LE(r.min_ratio, r.median_ratio);
    EXPECT_LE(r.median_ratio, r.max_ratio);
    for (double x : r.ratios) EXPECT_GT(x, 0.0);
    c.seed = 7;
    const CorpusReport s = random_corpus_check(iso(2, 2, 2), mixed(1, 2, 2), c);
    EXPECT_NEAR(s.max_ratio / r.max_ratio, 1.0, 0.25);
}
