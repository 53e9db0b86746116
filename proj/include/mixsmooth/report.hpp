#pragma once

// CSV and JSON renderings of norm records, scans, corpus checks and verdict
// tables. JSON keys keep insertion order; every number is rounded to 12
// significant digits so reports are byte-stable across runs.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <ctime>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "mixsmooth/embedding.hpp"
#include "mixsmooth/grid.hpp"
#include "mixsmooth/quasinorm.hpp"
#include "mixsmooth/scan.hpp"

namespace mixsmooth::report {

using json = nlohmann::ordered_json;

inline constexpr int schema_version = 1;

/// 12 significant digits, the way every report prints numbers.
inline std::string num(double v) {
    if (std::isnan(v)) return "nan";
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.12g", v);
    return buf;
}

/// JSON number rounded to 12 significant digits; non-finite values become strings.
inline json jnum(double v) {
    if (!std::isfinite(v)) return num(v);
    return std::strtod(num(v).c_str(), nullptr);
}

inline std::string timestamp_utc() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

/// Envelope shared by every JSON report.
inline json envelope(const std::string& kind) {
    json j;
    j["schema_version"] = schema_version;
    j["kind"] = kind;
    j["timestamp"] = timestamp_utc();
    return j;
}

inline json to_json(const Grid& g) {
    json j;
    j["d"] = g.dim();
    j["n"] = g.shape();
    json periods = json::array();
    for (double L : g.periods()) periods.push_back(jnum(L));
    j["period"] = periods;
    json nyq = json::array();
    for (int i = 0; i < g.dim(); ++i) nyq.push_back(jnum(g.nyquist(i)));
    j["nyquist"] = nyq;
    return j;
}

inline json to_json(const SpaceParams& s) {
    json j;
    j["label"] = s.label();
    j["scale"] = to_string(s.scale);
    j["family"] = to_string(s.family);
    j["t"] = jnum(s.t);
    j["p"] = jnum(s.p);
    j["q"] = jnum(s.q);
    j["d"] = s.d;
    return j;
}

inline json to_json(const Claim& c) {
    json j;
    j["status"] = to_string(c.status);
    j["tag"] = c.tag;
    return j;
}

inline json to_json(const EmbeddingVerdict& v) {
    json j;
    j["forward"] = to_json(v.forward);
    j["reverse"] = to_json(v.reverse);
    j["notes"] = v.notes;
    return j;
}

inline json to_json(const SlopeFit& f) {
    json j;
    j["slope"] = jnum(f.slope);
    j["intercept"] = jnum(f.intercept);
    j["slope_sigma"] = jnum(f.slope_sigma);
    j["rms_residual"] = jnum(f.rms_residual);
    j["points"] = f.points;
    return j;
}

struct NormRecord {
    SpaceParams space;
    double value = 0.0;
    std::string source; // file path or family description
    std::string oracle_kind = "none";
    double oracle = std::numeric_limits<double>::quiet_NaN();
    std::string oracle_formula;
};

inline json norm_json(const std::vector<NormRecord>& recs, const Grid& g) {
    json j = envelope("norm");
    j["grid"] = to_json(g);
    json arr = json::array();
    for (const auto& r : recs) {
        json e;
        e["source"] = r.source;
        e["space"] = to_json(r.space);
        e["value"] = jnum(r.value);
        json o;
        o["kind"] = r.oracle_kind;
        o["value"] = std::isnan(r.oracle) ? json(nullptr) : jnum(r.oracle);
        o["formula"] = r.oracle_formula;
        e["oracle"] = o;
        arr.push_back(e);
    }
    j["results"] = arr;
    return j;
}

inline std::string norm_csv(const std::vector<NormRecord>& recs) {
    std::ostringstream os;
    os << "source,scale,family,t,p,q,d,value,oracle_kind,oracle\n";
    for (const auto& r : recs)
        os << r.source << ',' << to_string(r.space.scale) << ',' << to_string(r.space.family) << ',' << num(r.space.t) << ','
           << num(r.space.p) << ',' << num(r.space.q) << ',' << r.space.d << ',' << num(r.value) << ',' << r.oracle_kind << ','
           << (std::isnan(r.oracle) ? std::string() : num(r.oracle)) << '\n';
    return os.str();
}

inline json scan_json(const ScanReport& r) {
    json j = envelope("scan");
    j["family"] = to_string(r.config.family);
    j["coefficients"] = r.config.coeffs.label();
    j["src"] = to_json(r.config.src);
    j["dst"] = to_json(r.config.dst);
    j["lmin"] = r.config.lmin;
    j["lmax"] = r.config.lmax;
    j["grid"] = to_json(r.grid);
    json rows = json::array();
    for (const auto& row : r.rows) {
        json e;
        e["l"] = row.scale;
        e["x"] = jnum(row.x);
        e["src_norm"] = jnum(row.src_norm);
        e["dst_norm"] = jnum(row.dst_norm);
        e["ratio"] = jnum(row.ratio);
        e["predicted_ratio_shape"] = std::isnan(row.predicted) ? json(nullptr) : jnum(row.predicted);
        rows.push_back(e);
    }
    j["rows"] = rows;
    j["fit"] = to_json(r.fit);
    j["predicted_slope"] = r.predicted_slope ? jnum(*r.predicted_slope) : json(nullptr);
    j["verdict"] = r.verdict;
    j["expectation"] = to_string(r.expectation);
    j["consistent"] = r.consistent;
    return j;
}

inline std::string scan_csv(const ScanReport& r) {
    std::ostringstream os;
    os << "l,x,src_norm,dst_norm,ratio,predicted_ratio_shape\n";
    for (const auto& row : r.rows)
        os << row.scale << ',' << num(row.x) << ',' << num(row.src_norm) << ',' << num(row.dst_norm) << ',' << num(row.ratio) << ','
           << (std::isnan(row.predicted) ? std::string() : num(row.predicted)) << '\n';
    return os.str();
}

inline json corpus_json(const CorpusReport& r) {
    json j = envelope("corpus");
    j["src"] = to_json(r.src);
    j["dst"] = to_json(r.dst);
    j["seed"] = r.config.seed;
    j["count"] = r.config.count;
    j["grid"] = to_json(corpus_grid(r.config));
    j["max_ratio"] = jnum(r.max_ratio);
    j["median_ratio"] = jnum(r.median_ratio);
    j["min_ratio"] = jnum(r.min_ratio);
    j["all_finite"] = r.all_finite;
    json arr = json::array();
    for (double v : r.ratios) arr.push_back(jnum(v));
    j["ratios"] = arr;
    return j;
}

inline std::string corpus_csv(const CorpusReport& r) {
    std::ostringstream os;
    os << "index,ratio\n";
    for (std::size_t i = 0; i < r.ratios.size(); ++i) os << i << ',' << num(r.ratios[i]) << '\n';
    return os.str();
}

struct RegionRow {
    double t = 0.0, p = 0.0, q = 0.0;
    int d = 2;
    EmbeddingVerdict pair_a; // S^t into F^t
    EmbeddingVerdict pair_b; // F^{td} into S^t
};

inline json region_json(const std::vector<RegionRow>& rows) {
    json j = envelope("region");
    json arr = json::array();
    for (const auto& r : rows) {
        json e;
        e["t"] = jnum(r.t);
        e["p"] = jnum(r.p);
        e["q"] = jnum(r.q);
        e["d"] = r.d;
        e["S_vs_F"] = to_json(r.pair_a);
        e["Ftd_vs_S"] = to_json(r.pair_b);
        arr.push_back(e);
    }
    j["points"] = arr;
    return j;
}

inline std::string region_csv(const std::vector<RegionRow>& rows) {
    std::ostringstream os;
    os << "t,p,q,d,S_into_F,S_into_F_tag,F_into_S,F_into_S_tag,Ftd_into_S,Ftd_into_S_tag,S_into_Ftd,S_into_Ftd_tag\n";
    auto claim = [](const Claim& c) { return std::string(to_string(c.status)) + ",\"" + c.tag + "\""; };
    for (const auto& r : rows)
        os << num(r.t) << ',' << num(r.p) << ',' << num(r.q) << ',' << r.d << ',' << claim(r.pair_a.forward) << ','
           << claim(r.pair_a.reverse) << ',' << claim(r.pair_b.forward) << ',' << claim(r.pair_b.reverse) << '\n';
    return os.str();
}

/// Drops the volatile timestamp so two reports can be compared byte for byte.
inline std::string canonical(json j) {
    j.erase("timestamp");
    return j.dump(2);
}

} // namespace mixsmooth::report
