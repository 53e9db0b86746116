#pragma once

// Embedding verdicts between F^t_{p,q} (isotropic) and S^t_{p,q}F (mixed),
// plus the necessary conditions forced by the test families.
//
// Two comparisons are classified, each in both directions:
//   pair A:  S^t_{p,q}F  vs  F^t_{p,q}
//   pair B:  F^{td}_{p,q}  vs  S^t_{p,q}F
// Branches follow the cited statements with their strict / non-strict
// inequalities. Anything not covered is Open; the classifier never guesses.

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "mixsmooth/error.hpp"
#include "mixsmooth/quasinorm.hpp"

namespace mixsmooth {

enum class Status { yes, no, open };

inline const char* to_string(Status s) {
    switch (s) {
    case Status::yes: return "Yes";
    case Status::no: return "No";
    case Status::open: return "Open";
    }
    return "Open";
}

struct Claim {
    Status status = Status::open;
    std::string tag; // empty for Open

    bool operator==(const Claim&) const = default;
};

inline std::string to_string(const Claim& c) {
    return c.tag.empty() ? std::string(to_string(c.status)) : std::string(to_string(c.status)) + " [" + c.tag + "]";
}

struct EmbeddingVerdict {
    Claim forward;
    Claim reverse;
    std::vector<std::string> notes;
};

namespace tags {
inline const std::string main1 = "Thm main1";
inline const std::string main2 = "Thm main2";
inline const std::string vc = "Thm 1<p,q<vc";
inline const std::string vc2 = "Thm 1<p,q<vc-2";
inline const std::string pro1i = "Prop pro:1(i)";
inline const std::string pro1ii = "Prop pro:1(ii)";
inline const std::string pro2i = "Prop pro:2(i)";
inline const std::string pro2ii = "Prop pro:2(ii)";
inline const std::string q2f = "Lemma q<2-f";
inline const std::string p0p1 = "Lemma p0p1";
inline const std::string emb = "Lemma emb";
inline const std::string ex1 = "Example 1";
inline const std::string ex2 = "Example 2";
inline const std::string ex3 = "Example 3";
inline const std::string ex4 = "Example 4";
inline const std::string ex5 = "Example 5";
inline const std::string ex6 = "Example 6";
} // namespace tags

namespace detail {

inline void check_classifier_domain(double t, double p, double q, int d) {
    if (d < 2) throw InvalidParams("embedding classification requires d >= 2");
    if (!std::isfinite(t)) throw InvalidParams("smoothness t must be finite");
    if (!(p > 0.0) || !std::isfinite(p)) throw InvalidParams("classification requires 0 < p < inf");
    if (std::isnan(q) || !(q > 0.0)) throw InvalidParams("classification requires 0 < q <= inf");
}

inline Claim yes(const std::string& tag) { return {Status::yes, tag}; }
inline Claim no(const std::string& tag) { return {Status::no, tag}; }
inline Claim open() { return {Status::open, {}}; }

/// S^0_{p,q}F into F^0_{p,q}; shared by pair A forward and pair B reverse.
inline Claim mixed_into_iso_at_zero(double p, double q) {
    if (q > 2.0) return no(tags::q2f);
    if (p > 1.0) return yes(tags::main1);
    if (q < 2.0) return yes(tags::main1);
    return open();
}

} // namespace detail

/// forward: S^t_{p,q}F into F^t_{p,q}; reverse: F^t_{p,q} into S^t_{p,q}F.
inline EmbeddingVerdict classify_SF_into_F(double t, double p, double q, int d) {
    detail::check_classifier_domain(t, p, q, d);
    using namespace detail;
    EmbeddingVerdict v;
    const bool lp = p > 1.0;

    if (t > 0.0) v.forward = yes(tags::main1);
    else if (t == 0.0) v.forward = mixed_into_iso_at_zero(p, q);
    else if (lp && q >= 1.0) v.forward = no(tags::vc);
    else if (p < 1.0) v.forward = no(tags::pro1ii);
    else v.forward = no(tags::ex3);

    if (t > 0.0) {
        v.reverse = no(tags::ex3);
    } else if (t == 0.0) {
        if (lp && q >= 2.0) v.reverse = yes(tags::main2);
        else if (lp) v.reverse = no(q >= 1.0 ? tags::vc2 : tags::ex1);
        else v.reverse = open();
    } else {
        if (lp && q >= 1.0) v.reverse = yes(tags::pro1i);
        else if (p < 1.0) v.reverse = no(tags::pro1ii);
        else v.reverse = open();
    }

    if (v.forward.status == Status::no && v.reverse.status == Status::no) v.notes.push_back("not comparable");
    if (t == 0.0 && p <= 1.0 && q == 2.0) v.notes.push_back("forward open: conjectured S^0_{p,2}F into F^0_{p,2}");
    return v;
}

/// forward: F^{td}_{p,q} into S^t_{p,q}F; reverse: S^t_{p,q}F into F^{td}_{p,q}.
inline EmbeddingVerdict classify_F_into_SF(double t, double p, double q, int d) {
    detail::check_classifier_domain(t, p, q, d);
    using namespace detail;
    EmbeddingVerdict v;
    const bool lp = p > 1.0;
    const bool qinf = std::isinf(q);
    const double crit = std::max(1.0 / std::min(p, q) - 1.0, 0.0);

    if (!qinf && t > crit) v.forward = yes(tags::main2);
    else if (qinf && ((lp && t > 0.0) || (!lp && t > 1.0 / p))) v.forward = yes(tags::main2);
    else if (t == 0.0 && lp && q >= 2.0) v.forward = yes(tags::main2);
    else if (t < 0.0) v.forward = no(lp && q >= 1.0 ? tags::vc2 : tags::ex4);
    else if (p < 1.0 && t > 0.0 && t <= 1.0 / p - 1.0) v.forward = no(tags::pro2i);
    else if (t == 0.0 && lp) v.forward = no(q >= 1.0 ? tags::vc2 : tags::ex1);
    else v.forward = open();

    if (t < 0.0) v.reverse = yes(tags::pro2ii);
    else if (t == 0.0) v.reverse = mixed_into_iso_at_zero(p, q);
    else if (p < 1.0 && t <= 1.0 / p - 1.0) v.reverse = no(tags::pro2i);
    else v.reverse = no(tags::ex4);

    if (v.forward.status == Status::no && v.reverse.status == Status::no) v.notes.push_back("not comparable");
    return v;
}

enum class Direction { mixed_to_iso, iso_to_mixed };

inline const char* to_string(Direction d) { return d == Direction::mixed_to_iso ? "mixed->iso" : "iso->mixed"; }

struct Condition {
    std::string name;
    std::string witness;
    bool satisfied = true;
    std::string detail;
};

namespace detail {

inline double inv(double p) { return std::isinf(p) ? 0.0 : 1.0 / p; }

inline std::string fmt(double v) {
    if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

/// ||2^{j s1} a | l_{q1}|| <= C ||2^{j s0} a | l_{q0}|| for all sequences a.
inline bool sequence_embeds(double s0, double q0, double s1, double q1) {
    constexpr double eps = 1e-12;
    if (s1 < s0 - eps) return true;
    if (s1 > s0 + eps) return false;
    return q0 <= q1;
}

} // namespace detail

/// Conditions any embedding src into dst must satisfy, each tied to the test
/// family that forces it. src and dst must have the scales the direction names.
inline std::vector<Condition> necessary_conditions(const SpaceParams& src, const SpaceParams& dst, Direction dir) {
    src.validate();
    dst.validate();
    const bool m2i = dir == Direction::mixed_to_iso;
    if (src.scale != (m2i ? Scale::mixed : Scale::isotropic) || dst.scale != (m2i ? Scale::isotropic : Scale::mixed))
        throw InvalidParams("source and target scales do not match the direction");
    if (src.d != dst.d) throw InvalidParams("source and target dimensions differ");
    using detail::fmt;
    using detail::inv;
    const double d = src.d;
    const double t0 = src.t, p0 = src.p, q0 = src.q;
    const double t1 = dst.t, p1 = dst.p, q1 = dst.q;
    std::vector<Condition> out;

    out.push_back({"p0 <= p1", tags::p0p1 + " / " + tags::ex6, p0 <= p1, fmt(p0) + " <= " + fmt(p1)});

    {
        const double lhs = t1 - inv(p1), rhs = t0 - inv(p0);
        out.push_back({"t1 - 1/p1 <= t0 - 1/p0", tags::ex2, lhs <= rhs + 1e-12, fmt(lhs) + " <= " + fmt(rhs)});
    }
    if (m2i) {
        const double lhs = t1 - d * inv(p1), rhs = d * t0 - d * inv(p0);
        out.push_back({"t1 - d/p1 <= d t0 - d/p0", tags::ex3, lhs <= rhs + 1e-12, fmt(lhs) + " <= " + fmt(rhs)});
    } else {
        const double lhs = d * t1 - d * inv(p1), rhs = t0 - d * inv(p0);
        out.push_back({"d t1 - d/p1 <= t0 - d/p0", tags::ex3, lhs <= rhs + 1e-12, fmt(lhs) + " <= " + fmt(rhs)});
    }

    auto seq = [&](const std::string& witness, double s0, double s1) {
        const bool ok = detail::sequence_embeds(s0, q0, s1, q1);
        std::string what = "weights 2^{j " + fmt(s0) + "} l_" + fmt(q0) + " into 2^{j " + fmt(s1) + "} l_" + fmt(q1);
        out.push_back({"s1 < s0, or s1 = s0 and q0 <= q1", witness, ok, what});
    };
    seq(tags::ex4, t0, t1);
    if (m2i) seq(tags::ex5, d * t0, t1);
    else seq(tags::ex5, t0, d * t1);
    return out;
}

inline bool all_satisfied(const std::vector<Condition>& cs) {
    for (const auto& c : cs)
        if (!c.satisfied) return false;
    return true;
}

} // namespace mixsmooth
