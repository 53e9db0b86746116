#pragma once

// Command-line front end. run() never exits the process; it returns one of
// the documented exit codes so tests can drive it in-process.

#include <cmath>
#include <cstdint>
#include <cstdio>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mixsmooth/acceptance.hpp"
#include "mixsmooth/embedding.hpp"
#include "mixsmooth/error.hpp"
#include "mixsmooth/grid_io.hpp"
#include "mixsmooth/quasinorm.hpp"
#include "mixsmooth/report.hpp"
#include "mixsmooth/scan.hpp"
#include "mixsmooth/testfun.hpp"

namespace mixsmooth::cli {

enum ExitCode : int {
    ok = 0,
    verification_failed = 1,
    usage = 2,
    nyquist = 3,
    format = 4,
    io_failure = 5,
    internal = 6,
};

namespace detail {

inline double parse_exponent(const std::string& s, const char* what) {
    if (s == "inf" || s == "infinity" || s == "Inf") return infinity;
    try {
        std::size_t used = 0;
        const double v = std::stod(s, &used);
        if (used == s.size()) return v;
    } catch (const std::exception&) {
    }
    throw InvalidParams(std::string("cannot parse ") + what + " '" + s + "'");
}

inline Scale parse_scale(const std::string& s) {
    if (s == "iso" || s == "isotropic") return Scale::isotropic;
    if (s == "mixed") return Scale::mixed;
    throw InvalidParams("scale must be iso or mixed, got '" + s + "'");
}

inline Family parse_space_family(const std::string& s) {
    if (s == "F") return Family::F;
    if (s == "B") return Family::B;
    throw InvalidParams("space must be F or B, got '" + s + "'");
}

inline std::vector<std::string> split(const std::string& s, char sep) {
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, sep)) out.push_back(item);
    return out;
}

/// Explicit list "a1,a2,..." or a rule understood by parse_coeff_rule.
inline std::vector<double> resolve_coeffs(const std::string& spec, int l) {
    if (spec.empty()) return {};
    if (spec == "ones" || spec == "delta" || spec.rfind("decay:", 0) == 0) return parse_coeff_rule(spec).resolve(l);
    std::vector<double> a;
    for (const auto& item : split(spec, ',')) a.push_back(parse_exponent(item, "coefficient"));
    return a;
}

inline void emit(const std::string& text, const std::string& path, std::ostream& out) {
    if (path.empty() || path == "-") {
        out << text;
        if (!text.empty() && text.back() != '\n') out << '\n';
        return;
    }
    std::ofstream os(path, std::ios::trunc);
    if (!os) throw IoError("cannot open '" + path + "' for writing");
    os << text;
    if (!text.empty() && text.back() != '\n') os << '\n';
    if (!os) throw IoError("failed writing '" + path + "'");
}

} // namespace detail

struct GridOptions {
    std::vector<std::size_t> n;
    std::vector<double> period;

    /// Explicit grid if --n was given; periods default to the family's lattice step.
    std::optional<Grid> build(int d, std::optional<FamilySpec> family) const {
        if (n.empty()) {
            if (!period.empty()) throw InvalidParams("--period requires --n");
            return std::nullopt;
        }
        auto expand = [d](auto v, const char* what) {
            if (v.size() == 1) v.assign(static_cast<std::size_t>(d), v.front());
            if (static_cast<int>(v.size()) != d) throw InvalidParams(std::string(what) + " needs 1 or d values");
            return v;
        };
        const auto nn = expand(n, "--n");
        std::vector<double> L;
        if (!period.empty()) {
            L = expand(period, "--period");
        } else {
            for (int i = 0; i < d; ++i) {
                const double dl = family ? mixsmooth::detail::preferred_step(family->id, i, d) : 1.0;
                L.push_back(2.0 * std::numbers::pi / dl);
            }
        }
        return Grid(nn, L);
    }
};

struct SpaceOptions {
    std::string space = "F";
    std::string scale = "both";
    double t = 0.0;
    std::string p = "2";
    std::string q = "2";

    std::vector<SpaceParams> spaces(int d) const {
        std::vector<Scale> scales;
        if (scale == "both") scales = {Scale::isotropic, Scale::mixed};
        else scales = {detail::parse_scale(scale)};
        std::vector<SpaceParams> out;
        for (Scale sc : scales) {
            SpaceParams s{sc, detail::parse_space_family(space), t, detail::parse_exponent(p, "p"), detail::parse_exponent(q, "q"), d};
            s.validate();
            out.push_back(s);
        }
        return out;
    }
};

class App {
public:
    App(std::ostream& out, std::ostream& err) : out_(out), err_(err) {}

    int run(int argc, const char* const* argv) {
        CLI::App app{"Isotropic and dominating-mixed smoothness quasi-norms on periodic grids"};
        app.require_subcommand(1);
        app.set_version_flag("--version", "mixsmooth 1.0");

        auto* norm = app.add_subcommand("norm", "Compute quasi-norms of a grid-function file or a test-family member");
        add_family(norm);
        add_grid(norm);
        add_space(norm);
        norm->add_option("--file", file_, "Grid-function container to read");
        add_output(norm);

        auto* gen = app.add_subcommand("generate", "Write a test-family member as a grid-function container plus JSON sidecar");
        add_family(gen);
        add_grid(gen);
        add_space(gen);
        gen->add_option("--out", out_path_, "Container path; the sidecar goes to <path>.json")->required();

        auto* region = app.add_subcommand("region", "Embedding verdicts at one point or over a (1/p, t) lattice");
        region->add_option("--t", region_t_, "Smoothness t (single point)");
        region->add_option("--p", region_p_, "Integrability p (single point)");
        region->add_option("--q", space_.q, "Fine index q (number or inf)");
        region->add_option("--d", d_, "Dimension (>= 2)");
        region->add_option("--sweep", sweep_, "Lattice size per axis over 1/p in (0,2], t in (-2,2]");
        region->add_flag("--ascii", ascii_, "Render the sweep as character maps");
        add_output(region, "text");

        auto* scan = app.add_subcommand("scan", "Norm-ratio scan along a family, or a random-corpus check");
        scan->add_option("--family", family_, "ex1..ex6");
        scan->add_option("--d", d_, "Dimension");
        scan->add_option("--coeffs", coeffs_, "ones | delta | decay:<rate>");
        scan->add_option("--lmin", lmin_, "Smallest scale");
        scan->add_option("--lmax", lmax_, "Largest scale");
        scan->add_option("--src", src_scale_, "Source scale iso|mixed");
        scan->add_option("--dst", dst_scale_, "Target scale iso|mixed");
        scan->add_option("--src-t", src_t_, "Source smoothness (default --t)");
        scan->add_option("--dst-t", dst_t_, "Target smoothness (default --t)");
        scan->add_option("--corpus", corpus_, "Random corpus size; switches to the corpus check");
        scan->add_option("--seed", seed_, "Corpus seed");
        add_grid(scan);
        add_space(scan, false);
        add_output(scan);

        auto* verify = app.add_subcommand("verify", "Run the acceptance suite");
        verify->add_option("--suite", suite_, "fast | full")->check(CLI::IsMember({"fast", "full"}));

        try {
            app.parse(argc, argv);
        } catch (const CLI::ParseError& e) {
            const int code = app.exit(e, out_, err_);
            return code == 0 ? ok : usage;
        }

        try {
            if (*norm) return cmd_norm();
            if (*gen) return cmd_generate();
            if (*region) return cmd_region();
            if (*scan) return cmd_scan();
            if (*verify) return cmd_verify();
        } catch (const InvalidParams& e) {
            return fail(usage, e.what());
        } catch (const DegenerateFit& e) {
            return fail(usage, e.what());
        } catch (const NyquistError& e) {
            return fail(nyquist, e.what());
        } catch (const FormatError& e) {
            return fail(format, e.what());
        } catch (const IoError& e) {
            return fail(io_failure, e.what());
        } catch (const std::exception& e) {
            return fail(internal, e.what());
        }
        return usage;
    }

private:
    void add_family(CLI::App* c) {
        c->add_option("--family", family_, "ex1..ex6");
        c->add_option("--l,--j", scale_, "Family scale l (ex1..ex5) or j (ex6)");
        c->add_option("--d", d_, "Dimension");
        c->add_option("--coeffs", coeffs_, "a_1,...,a_l or ones | delta | decay:<rate>");
    }

    void add_grid(CLI::App* c) {
        c->add_option("--n", grid_.n, "Samples per axis (one value or one per axis)")->delimiter(',');
        c->add_option("--period", grid_.period, "Period per axis (one value or one per axis)")->delimiter(',');
    }

    void add_space(CLI::App* c, bool with_scale = true) {
        c->add_option("--space", space_.space, "F or B");
        if (with_scale) c->add_option("--scale", space_.scale, "iso | mixed | both");
        c->add_option("--t", space_.t, "Smoothness t");
        c->add_option("--p", space_.p, "Integrability p (number or inf)");
        c->add_option("--q", space_.q, "Fine index q (number or inf)");
    }

    void add_output(CLI::App* c, const std::string& def = "json") {
        c->add_option("--format", format_, "csv | json" + std::string(def == "text" ? " | text" : ""));
        if (!c->get_option_no_throw("--out")) c->add_option("--out", out_path_, "Output path (default stdout)");
    }

    int fail(int code, const std::string& msg) {
        err_ << "error: " << msg << '\n';
        return code;
    }

    FamilySpec family_spec() const {
        if (family_.empty()) throw InvalidParams("--family is required");
        if (!scale_) throw InvalidParams("--l (or --j) is required with --family");
        FamilySpec s{parse_family(family_), *scale_, d_, {}};
        if (uses_coefficients(s.id)) s.a = detail::resolve_coeffs(coeffs_, s.scale);
        else if (!coeffs_.empty()) throw InvalidParams(family_ + " takes no coefficients");
        s.validate();
        return s;
    }

    void check_format(std::initializer_list<const char*> allowed) {
        if (format_.empty()) format_ = *allowed.begin();
        for (const char* a : allowed)
            if (format_ == a) return;
        throw InvalidParams("unsupported --format '" + format_ + "'");
    }

    int cmd_norm() {
        check_format({"json", "csv"});
        std::vector<report::NormRecord> recs;
        std::optional<GridFunction> f;
        std::optional<FamilySpec> fam;
        std::string source;
        if (!file_.empty()) {
            if (!family_.empty()) throw InvalidParams("give either --file or --family, not both");
            f = io::load(file_);
            d_ = f->grid().dim();
            source = file_;
        } else {
            fam = family_spec();
            const auto g = grid_.build(d_, fam);
            f = g ? generate(*fam, *g) : generate(*fam);
            source = std::string(to_string(fam->id)) + " scale " + std::to_string(fam->scale);
        }
        for (const auto& s : space_.spaces(d_)) {
            report::NormRecord r{s, norm(*f, s), source};
            if (fam) {
                const Oracle o = oracle(*fam, f->grid(), s);
                r.oracle_kind = to_string(o.kind);
                r.oracle = o.value;
                r.oracle_formula = o.formula;
            }
            recs.push_back(r);
        }
        detail::emit(format_ == "csv" ? report::norm_csv(recs) : report::norm_json(recs, f->grid()).dump(2), out_path_, out_);
        return ok;
    }

    int cmd_generate() {
        const FamilySpec fam = family_spec();
        const auto g0 = grid_.build(d_, fam);
        const Grid g = g0 ? *g0 : default_grid(fam);
        const GridFunction f = generate(fam, g);
        io::save(out_path_, f);

        report::json side = report::envelope("family");
        side["family"] = to_string(fam.id);
        side["scale"] = fam.scale;
        side["d"] = fam.d;
        report::json a = report::json::array();
        for (double v : fam.coefficients()) a.push_back(report::jnum(v));
        side["coefficients"] = a;
        side["grid"] = report::to_json(g);
        side["container"] = out_path_;
        report::json oracles = report::json::array();
        for (const auto& s : space_.spaces(d_)) {
            const Oracle o = oracle(fam, g, s);
            report::json e;
            e["space"] = report::to_json(s);
            e["kind"] = to_string(o.kind);
            e["value"] = std::isnan(o.value) ? report::json(nullptr) : report::jnum(o.value);
            e["formula"] = o.formula;
            oracles.push_back(e);
        }
        side["oracles"] = oracles;
        detail::emit(side.dump(2), out_path_ + ".json", out_);
        out_ << "wrote " << out_path_ << " and " << out_path_ << ".json\n";
        return ok;
    }

    int cmd_region() {
        check_format({"text", "csv", "json"});
        const double q = detail::parse_exponent(space_.q, "q");
        std::vector<report::RegionRow> rows;
        if (region_t_ || region_p_) {
            if (!region_t_ || !region_p_) throw InvalidParams("a single point needs both --t and --p");
            rows.push_back({*region_t_, *region_p_, q, d_, classify_SF_into_F(*region_t_, *region_p_, q, d_),
                            classify_F_into_SF(*region_t_, *region_p_, q, d_)});
        } else {
            if (sweep_ < 2) throw InvalidParams("--sweep needs at least 2 points per axis");
            for (int i = sweep_ - 1; i >= 0; --i)
                for (int k = 1; k <= sweep_; ++k) {
                    const double inv_p = 2.0 * k / sweep_;
                    const double t = -2.0 + 4.0 * (i + 1) / sweep_;
                    rows.push_back({t, 1.0 / inv_p, q, d_, classify_SF_into_F(t, 1.0 / inv_p, q, d_), classify_F_into_SF(t, 1.0 / inv_p, q, d_)});
                }
        }
        std::string text;
        if (format_ == "json") text = report::region_json(rows).dump(2);
        else if (format_ == "csv") text = report::region_csv(rows);
        else text = region_text(rows, !(region_t_ || region_p_));
        detail::emit(text, out_path_, out_);
        return ok;
    }

    std::string region_text(const std::vector<report::RegionRow>& rows, bool sweep) const {
        std::ostringstream os;
        if (!sweep || !ascii_) {
            for (const auto& r : rows) {
                os << "t=" << report::num(r.t) << " p=" << report::num(r.p) << " q=" << report::num(r.q) << " d=" << r.d << '\n';
                os << "  S^t_{p,q}F into F^t_{p,q}     forward: " << to_string(r.pair_a.forward) << '\n';
                os << "  F^t_{p,q} into S^t_{p,q}F     reverse: " << to_string(r.pair_a.reverse) << '\n';
                os << "  F^{td}_{p,q} into S^t_{p,q}F  forward: " << to_string(r.pair_b.forward) << '\n';
                os << "  S^t_{p,q}F into F^{td}_{p,q}  reverse: " << to_string(r.pair_b.reverse) << '\n';
            }
            return os.str();
        }
        // One character per lattice point: '>' forward only, '<' reverse only,
        // '=' both, 'x' not comparable, '?' anything open. Rows run from t = 2 down.
        auto glyph = [](const EmbeddingVerdict& v) {
            const Status f = v.forward.status, r = v.reverse.status;
            if (f == Status::open || r == Status::open) return '?';
            if (f == Status::yes && r == Status::yes) return '=';
            if (f == Status::yes) return '>';
            if (r == Status::yes) return '<';
            return 'x';
        };
        for (int pair = 0; pair < 2; ++pair) {
            os << (pair == 0 ? "S^t_{p,q}F vs F^t_{p,q}" : "F^{td}_{p,q} vs S^t_{p,q}F") << "  (columns: 1/p from " << report::num(2.0 / sweep_)
               << " to 2; rows: t from 2 down to " << report::num(-2.0 + 4.0 / sweep_) << ")\n";
            for (int i = 0; i < sweep_; ++i) {
                char label[16];
                std::snprintf(label, sizeof label, "%6.2f ", rows[static_cast<std::size_t>(i * sweep_)].t);
                os << label;
                for (int k = 0; k < sweep_; ++k) {
                    const auto& r = rows[static_cast<std::size_t>(i * sweep_ + k)];
                    os << glyph(pair == 0 ? r.pair_a : r.pair_b);
                }
                os << '\n';
            }
            os << '\n';
        }
        os << "> forward only, < reverse only, = both, x not comparable, ? open\n";
        return os.str();
    }

    int cmd_scan() {
        check_format({"json", "csv"});
        const double p = detail::parse_exponent(space_.p, "p");
        const double q = detail::parse_exponent(space_.q, "q");
        const Family fam = detail::parse_space_family(space_.space);
        SpaceParams src{detail::parse_scale(src_scale_), fam, src_t_.value_or(space_.t), p, q, d_};
        SpaceParams dst{detail::parse_scale(dst_scale_), fam, dst_t_.value_or(space_.t), p, q, d_};
        src.validate();
        dst.validate();

        if (corpus_) {
            CorpusConfig c;
            c.d = d_;
            c.count = *corpus_;
            c.seed = seed_;
            if (!grid_.n.empty()) c.n = grid_.n.front();
            const CorpusReport rep = random_corpus_check(src, dst, c);
            detail::emit(format_ == "csv" ? report::corpus_csv(rep) : report::corpus_json(rep).dump(2), out_path_, out_);
            return ok;
        }

        ScanConfig c;
        c.family = parse_family(family_.empty() ? "ex5" : family_);
        c.d = d_;
        const bool modulated = c.family == FamilyId::ex4 || c.family == FamilyId::ex5;
        c.coeffs = coeffs_.empty() ? CoeffSpec{modulated ? CoeffRule::delta : CoeffRule::ones, 0.0} : parse_coeff_rule(coeffs_);
        c.src = src;
        c.dst = dst;
        c.lmin = lmin_.value_or(c.family == FamilyId::ex1 ? 3 : (c.family == FamilyId::ex6 ? 0 : 2));
        c.lmax = lmax_;
        FamilySpec top{c.family, c.lmax, d_, {}};
        if (!grid_.n.empty()) {
            c.grid = grid_.build(d_, top);
        } else if (c.lmax > 30) {
            throw NyquistError("scale " + std::to_string(c.lmax) + " exceeds any supported grid");
        }
        const ScanReport rep = ratio_scan(c);
        detail::emit(format_ == "csv" ? report::scan_csv(rep) : report::scan_json(rep).dump(2), out_path_, out_);
        return ok;
    }

    int cmd_verify() {
        const auto suite = suite_ == "full" ? acceptance::Suite::full : acceptance::Suite::fast;
        out_ << std::left << std::setw(4) << "id" << std::setw(46) << "criterion" << std::setw(6) << "pass" << std::setw(9) << "time[s]"
             << "measured | tolerance\n";
        const auto results = acceptance::run_suite(suite, [this](const acceptance::Result& r) {
            out_ << std::left << std::setw(4) << r.id << std::setw(46) << r.name << std::setw(6) << (r.passed ? "PASS" : "FAIL") << std::setw(9)
                 << std::fixed << std::setprecision(2) << r.seconds << r.measured << " | " << r.tolerance << '\n'
                 << std::flush;
        });
        std::size_t passed = 0;
        for (const auto& r : results) passed += r.passed ? 1 : 0;
        out_ << passed << "/" << results.size() << " criteria passed\n";
        return passed == results.size() ? ok : verification_failed;
    }

    std::ostream& out_;
    std::ostream& err_;

    std::string family_;
    std::optional<int> scale_;
    int d_ = 2;
    std::string coeffs_;
    GridOptions grid_;
    SpaceOptions space_;
    std::string file_;
    std::string out_path_;
    std::string format_;

    std::optional<double> region_t_;
    std::optional<double> region_p_;
    int sweep_ = 40;
    bool ascii_ = false;

    std::optional<int> lmin_;
    int lmax_ = 6;
    std::string src_scale_ = "iso";
    std::string dst_scale_ = "mixed";
    std::optional<double> src_t_;
    std::optional<double> dst_t_;
    std::optional<std::size_t> corpus_;
    std::uint64_t seed_ = 1;

    std::string suite_ = "fast";
};

inline int run(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    return App(out, err).run(argc, argv);
}

} // namespace mixsmooth::cli
