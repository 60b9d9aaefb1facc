#pragma once

// Command-line front end: argument parsing into a RunConfig, dispatch to the
// checkers, and report emission. Exit codes: 0 holds / certificate found,
// 1 violated or refuted, 2 inconclusive, 64 usage error, 65 data error,
// 70 internal error.

#include <CLI11.hpp>

#include <iostream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "mwlab/dependence.hpp"
#include "mwlab/encoding.hpp"
#include "mwlab/experiment.hpp"
#include "mwlab/primesearch.hpp"
#include "mwlab/support.hpp"

namespace mwlab::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitViolated = 1;
inline constexpr int kExitInconclusive = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitData = 65;
inline constexpr int kExitInternal = 70;

class UsageError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

/// --help was given; carries the help text.
struct HelpRequested {
    std::string text;
};

enum class Format { json, csv, text };

struct RunConfig {
    std::string command;
    /// canonical backend encoding: Q, S={...} or ec:a1,a2,a3,a4,a6
    std::string backend = "Q";
    PrimeRange scan{3, 10000};
    /// experiment only: whether --primes overrides the per-suite windows
    bool scan_explicit = false;
    Format format = Format::json;
    unsigned workers = 1;

    // points, each in canonical encoding
    std::vector<std::string> xs, ys, points, lambda, qs;
    std::string x, y, p, q;

    std::string condition = "erdos";
    u64 l = 0;
    std::vector<unsigned> ks;
    std::size_t max_hits = 10;
    bool density = false;
    int search_bound = 20;
    BigInt bound = 1'000'000;

    std::string suite = "erdos";
    std::size_t trials = 100;
    u64 seed = 0;

    /// --verify v:n
    std::optional<std::pair<u64, BigInt>> verify;

    friend bool operator==(const RunConfig&, const RunConfig&) = default;
};

inline const std::vector<std::string>& commands() {
    static const std::vector<std::string> c{"support-check", "cs-check", "find-primes", "replay",
                                            "detect",        "recover",  "experiment"};
    return c;
}

namespace detail {

inline PrimeRange parse_range(const std::string& text) {
    const auto dots = text.find("..");
    if (dots == std::string::npos) throw UsageError("--primes: expected lo..hi, got '" + text + "'");
    u64 lo = 0, hi = 0;
    try {
        lo = parse_u64(text.substr(0, dots));
        hi = parse_u64(text.substr(dots + 2));
    } catch (const ParseError& e) {
        throw UsageError(std::string("--primes: ") + e.what());
    }
    if (lo < 2) throw UsageError("--primes: lower bound must be at least 2");
    if (hi < lo) throw UsageError("--primes: inverted range " + text);
    return PrimeRange(lo, hi);
}

template <MordellWeilGroup G>
std::vector<std::string> canonical_points(const G& g, const std::string& flag, const std::string& text,
                                          bool allow_empty = false) {
    if (trim(text).empty()) {
        if (allow_empty) return {};
        throw UsageError(flag + ": empty point list");
    }
    try {
        std::vector<std::string> out;
        for (const auto& pt : parse_points(g, text)) out.push_back(format_point(pt));
        return out;
    } catch (const std::invalid_argument& e) {
        throw UsageError(flag + ": " + e.what());
    }
}

template <MordellWeilGroup G>
std::string canonical_point(const G& g, const std::string& flag, const std::string& text) {
    auto pts = canonical_points(g, flag, text);
    if (pts.size() != 1) throw UsageError(flag + ": expected a single point, got " + std::to_string(pts.size()));
    return pts[0];
}

}  // namespace detail

/// Parses the arguments after the program name. Throws UsageError naming the
/// offending flag, or HelpRequested.
inline RunConfig parse_args(const std::vector<std::string>& args) {
    CLI::App app{"mwlab: support problems and dependence detection over Q* and elliptic curves", "mwlab"};
    app.require_subcommand(1);

    RunConfig c;
    std::string backend = "Q", primes, format = "json", verify;
    unsigned workers = 0;
    std::string xs, ys, x, y, points, lambda, p, q, qs, ks;
    std::string bound;
    bool lambda_given = false;

    auto common = [&](CLI::App* s) {
        s->add_option("--backend", backend, "Q, S={p,...} or ec:a1,a2,a3,a4,a6");
        s->add_option("--primes", primes, "prime window lo..hi");
        s->add_option("--format", format, "json, csv or text")->check(CLI::IsMember({"json", "csv", "text"}));
        s->add_option("--workers", workers, "worker threads (default: MWLAB_WORKERS or 1)")->check(CLI::PositiveNumber);
    };
    auto verifiable = [&](CLI::App* s) {
        s->add_option("--verify", verify, "re-check a single witness v:n");
    };

    auto* support = app.add_subcommand("support-check", "scan a support condition for two point lists");
    common(support);
    verifiable(support);
    support->add_option("--xs", xs, "left points")->required();
    support->add_option("--ys", ys, "right points")->required();
    support->add_option("--condition", c.condition, "erdos, cor22 or thm2")
        ->check(CLI::IsMember({"erdos", "cor22", "thm2"}));

    auto* cs = app.add_subcommand("cs-check", "scan the one-sided condition for a pair of points");
    common(cs);
    verifiable(cs);
    cs->add_option("--x", x, "left point")->required();
    cs->add_option("--y", y, "right point")->required();

    auto* find = app.add_subcommand("find-primes", "primes with prescribed l-adic valuations of the orders");
    common(find);
    find->add_option("--points", points, "points")->required();
    find->add_option("--l", c.l, "prime l")->required();
    find->add_option("--ks", ks, "exponent of l in each order")->required();
    find->add_option("--max-hits", c.max_hits, "stop after this many hits");
    find->add_flag("--density", c.density, "also report the hit density over the whole window");

    auto* replay = app.add_subcommand("replay", "search a prime refuting the one-sided condition via l-adic orders");
    common(replay);
    verifiable(replay);
    replay->add_option("--p", p, "point P")->required();
    replay->add_option("--qs", qs, "points Q_i")->required();
    replay->add_option("--l", c.l, "prime l")->required();

    auto* detect = app.add_subcommand("detect", "local-global membership of points in a subgroup");
    common(detect);
    verifiable(detect);
    detect->add_option("--points", points, "points P_i")->required();
    detect->add_option("--lambda", lambda, "generators of the subgroup (may be empty)")->required();
    detect->add_option("--search-bound", c.search_bound, "coefficient bound for curve certificates")
        ->check(CLI::PositiveNumber);

    auto* recover = app.add_subcommand("recover", "find d with Q = dP");
    common(recover);
    verifiable(recover);
    recover->add_option("--p", p, "point P")->required();
    recover->add_option("--q", q, "point Q")->required();
    recover->add_option("--bound", bound, "bound on |d| for curves");

    auto* experiment = app.add_subcommand("experiment", "seeded randomized suite");
    common(experiment);
    experiment->add_option("--suite", c.suite, "suite name")->check(CLI::IsMember(experiment_suites()));
    experiment->add_option("--trials", c.trials, "number of trials");
    experiment->add_option("--seed", c.seed, "64-bit seed");

    std::vector<const char*> argv{"mwlab"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());
    } catch (const CLI::CallForHelp&) {
        throw HelpRequested{app.help()};
    } catch (const CLI::CallForAllHelp&) {
        throw HelpRequested{app.help("", CLI::AppFormatMode::All)};
    } catch (const CLI::ParseError& e) {
        throw UsageError(e.what());
    }
    for (const auto* sub : app.get_subcommands()) c.command = sub->get_name();
    lambda_given = detect->count("--lambda") > 0;

    Backend b;
    try {
        b = parse_backend(backend);
    } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--backend: ") + e.what());
    }
    c.backend = format_backend(b);
    const bool elliptic = std::holds_alternative<EllipticGroup>(b);
    c.scan = elliptic ? PrimeRange(3, 2000) : PrimeRange(3, 10000);
    if (!primes.empty()) {
        c.scan = detail::parse_range(primes);
        c.scan_explicit = true;
    }
    c.format = format == "csv" ? Format::csv : format == "text" ? Format::text : Format::json;
    c.workers = workers ? workers : workers_from_env(1);

    if (!verify.empty()) {
        const auto colon = verify.find(':');
        if (colon == std::string::npos) throw UsageError("--verify: expected v:n, got '" + verify + "'");
        try {
            const u64 v = parse_u64(verify.substr(0, colon));
            const BigInt n = parse_integer(verify.substr(colon + 1));
            if (!is_prime(v)) throw UsageError("--verify: v = " + std::to_string(v) + " is not prime");
            if (n < 1) throw UsageError("--verify: n must be positive");
            c.verify = std::make_pair(v, n);
        } catch (const ParseError& e) {
            throw UsageError(std::string("--verify: ") + e.what());
        }
    }

    std::visit(
        [&](const auto& g) {
            if (c.command == "support-check") {
                c.xs = detail::canonical_points(g, "--xs", xs);
                c.ys = detail::canonical_points(g, "--ys", ys);
            } else if (c.command == "cs-check") {
                c.x = detail::canonical_point(g, "--x", x);
                c.y = detail::canonical_point(g, "--y", y);
            } else if (c.command == "find-primes") {
                c.points = detail::canonical_points(g, "--points", points);
            } else if (c.command == "replay") {
                c.p = detail::canonical_point(g, "--p", p);
                c.qs = detail::canonical_points(g, "--qs", qs);
            } else if (c.command == "detect") {
                c.points = detail::canonical_points(g, "--points", points);
                c.lambda = detail::canonical_points(g, "--lambda", lambda, lambda_given);
            } else if (c.command == "recover") {
                c.p = detail::canonical_point(g, "--p", p);
                c.q = detail::canonical_point(g, "--q", q);
            }
        },
        b);

    if (c.command == "find-primes" || c.command == "replay") {
        if (!is_prime(c.l)) throw UsageError("--l: " + std::to_string(c.l) + " is not prime");
    }
    if (c.command == "find-primes") {
        try {
            for (const auto& k : split_top_level(ks)) {
                const u64 v = parse_u64(k);
                if (v > 64) throw UsageError("--ks: exponent " + k + " is too large");
                c.ks.push_back(static_cast<unsigned>(v));
            }
        } catch (const ParseError& e) {
            throw UsageError(std::string("--ks: ") + e.what());
        }
        if (c.ks.size() != c.points.size()) {
            throw UsageError("--ks: expected " + std::to_string(c.points.size()) + " exponents, got " +
                             std::to_string(c.ks.size()));
        }
    }
    if (!bound.empty()) {
        try {
            c.bound = parse_integer(bound);
        } catch (const ParseError& e) {
            throw UsageError(std::string("--bound: ") + e.what());
        }
        if (c.bound < 1) throw UsageError("--bound: must be positive");
    }
    return c;
}

namespace detail {

struct Output {
    Json json;
    std::vector<std::string> csv_rows;
    int code = kExitOk;
};

inline std::string csv_row(const std::vector<std::string>& cols) {
    std::string s;
    for (std::size_t i = 0; i < cols.size(); ++i) {
        if (i) s += ",";
        s += csv_escape(cols[i]);
    }
    return s;
}

inline void flatten(const Json& j, const std::string& key, std::ostream& out) {
    if (j.is_object()) {
        for (const auto& [k, v] : j.items()) flatten(v, key.empty() ? k : key + "." + k, out);
    } else if (j.is_array() && std::any_of(j.begin(), j.end(), [](const Json& e) { return e.is_structured(); })) {
        for (std::size_t i = 0; i < j.size(); ++i) flatten(j[i], key + "[" + std::to_string(i) + "]", out);
    } else {
        out << key << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << "\n";
    }
}

inline void emit(const Output& o, Format f, std::ostream& out) {
    switch (f) {
        case Format::json:
            out << o.json.dump(2) << "\n";
            break;
        case Format::csv:
            out << kCsvHeader << "\n";
            for (const auto& r : o.csv_rows) out << r << "\n";
            break;
        case Format::text:
            flatten(o.json, "", out);
            break;
    }
}

template <MordellWeilGroup G>
std::vector<typename G::Point> points_of(const G& g, const std::vector<std::string>& enc) {
    std::vector<typename G::Point> out;
    for (const auto& e : enc) out.push_back(parse_point(g, e));
    return out;
}

inline Json string_array(const std::vector<std::string>& v) {
    Json a = Json::array();
    for (const auto& s : v) a.push_back(s);
    return a;
}

inline Json header(const RunConfig& c) {
    Json j;
    j["command"] = c.command;
    j["backend"] = c.backend;
    j["scan"] = Json{{"lo", c.scan.lo}, {"hi", c.scan.hi}};
    return j;
}

inline Output verify_output(const RunConfig& c, bool reproduced) {
    Output o;
    o.json = header(c);
    o.json["verify"] = Json{{"v", c.verify->first}, {"n", big_to_json(c.verify->second)}, {"reproduced", reproduced}};
    o.csv_rows.push_back(csv_row({c.command, reproduced ? "reproduced" : "not_reproduced", std::to_string(c.verify->first),
                                  c.verify->second.str(), ""}));
    o.code = reproduced ? kExitViolated : kExitOk;
    return o;
}

inline ConditionId condition_of(const std::string& name) {
    if (name == "cor22") return ConditionId::cor22;
    if (name == "thm2") return ConditionId::thm2;
    return ConditionId::erdos_union;
}

template <MordellWeilGroup G>
Output run_support(const G& g, const RunConfig& c, ConditionId id, const std::vector<std::string>& xe,
                   const std::vector<std::string>& ye) {
    const auto xs = points_of(g, xe), ys = points_of(g, ye);
    const std::span<const typename G::Point> sx(xs), sy(ys);
    if (c.verify) return verify_output(c, verify_witness(id, g, sx, sy, c.verify->first, c.verify->second));

    const auto report = scan_condition(id, g, sx, sy, c.scan, c.workers);
    Output o;
    o.json = header(c);
    o.json["condition"] = to_string(id);
    o.json["xs"] = string_array(xe);
    o.json["ys"] = string_array(ye);
    o.json["report"] = to_json(report);
    o.csv_rows.push_back(to_csv_row(report));

    std::string conclusion = "not_applicable";
    std::optional<RelationCertificate> match;
    if (id == ConditionId::erdos_union || id == ConditionId::cor22) {
        if (xs.size() == ys.size()) match = verify_conclusion_match(g, sx, sy);
        conclusion = match ? "matched" : "refuted";
    }
    o.json["conclusion"] = conclusion;
    o.json["conclusion_certificate"] = match ? to_json(*match) : Json(nullptr);
    if (conclusion != "not_applicable") o.csv_rows.push_back(csv_row({c.command, "conclusion_" + conclusion, "", "", ""}));

    if (!report.holds()) {
        o.code = kExitViolated;
    } else {
        // holding on the scan while the exact conclusion fails means the
        // distinguishing primes lie past the window
        o.code = conclusion == "refuted" ? kExitInconclusive : kExitOk;
    }
    return o;
}

template <MordellWeilGroup G>
Output run_find_primes(const G& g, const RunConfig& c) {
    const auto pts = points_of(g, c.points);
    const std::span<const typename G::Point> sp(pts);
    const ValuationPattern pattern(c.l, c.ks);
    const auto hits = find_pattern_primes(g, sp, pattern, c.scan, c.max_hits, c.workers);
    Output o;
    o.json = header(c);
    o.json["points"] = string_array(c.points);
    Json ks = Json::array();
    for (unsigned k : c.ks) ks.push_back(k);
    o.json["pattern"] = Json{{"l", c.l}, {"ks", ks}};
    Json h = Json::array();
    for (const auto& hit : hits) {
        Json orders = Json::array();
        for (u64 x : hit.orders) orders.push_back(x);
        h.push_back(Json{{"v", hit.v}, {"orders", orders}, {"verified", hit.verified}});
        o.csv_rows.push_back(csv_row({c.command, "hit", std::to_string(hit.v), "", "orders=" + ::mwlab::detail::orders_text(hit.orders)}));
    }
    o.json["hits"] = h;
    if (c.density) {
        const auto d = pattern_density(g, sp, pattern, c.scan, c.workers);
        std::ostringstream ratio;
        ratio.precision(6);
        ratio << std::fixed << d.ratio;
        o.json["density"] = Json{{"hits", d.hits}, {"good_primes", d.good_primes}, {"ratio", ratio.str()},
                                 {"inconclusive", d.inconclusive}};
        o.csv_rows.push_back(csv_row({c.command, "density", "", "",
                                      std::to_string(d.hits) + "/" + std::to_string(d.good_primes)}));
    }
    o.code = hits.empty() ? kExitInconclusive : kExitOk;
    return o;
}

template <MordellWeilGroup G>
Output run_replay(const G& g, const RunConfig& c) {
    const auto p = parse_point(g, c.p);
    const auto qs = points_of(g, c.qs);
    if (c.verify) {
        const auto [v, n] = *c.verify;
        std::vector<typename G::Point> all{p};
        all.insert(all.end(), qs.begin(), qs.end());
        bool reproduced = false;
        if (g.good_prime(std::span<const typename G::Point>(all), v)) {
            const auto loc = g.at(v);
            const u64 e = mod_u64(n, loc.group_order().value);
            auto killed = [&](const typename G::Point& x) { return loc.is_identity(loc.mul(loc.reduce(x), e)); };
            reproduced = killed(p) && std::none_of(qs.begin(), qs.end(), killed);
        }
        return verify_output(c, reproduced);
    }
    const auto r = replay_step1(g, p, std::span<const typename G::Point>(qs), c.l, c.scan, c.workers);
    ConditionReport report;
    report.condition_id = ConditionId::thm2;
    report.scanned = c.scan;
    report.good_primes = r.good_primes;
    if (r.witness) {
        report.verdict = Verdict::violated;
        report.witness = Witness{r.witness->v, BigInt(r.witness->n),
                                 "ord_v P=" + std::to_string(r.witness->order_p) +
                                     ", ord_v Qs=" + ::mwlab::detail::orders_text(r.witness->orders_q)};
    }
    Output o;
    o.json = header(c);
    o.json["p"] = c.p;
    o.json["qs"] = string_array(c.qs);
    o.json["l"] = c.l;
    o.json["pattern_hits"] = r.pattern_hits;
    o.json["report"] = to_json(report);
    o.csv_rows.push_back(to_csv_row(report));
    o.code = r.witness ? kExitViolated : kExitOk;
    return o;
}

template <MordellWeilGroup G>
Output run_detect(const G& g, const RunConfig& c) {
    const auto ps = points_of(g, c.points);
    const SubgroupSpec<G> lam{points_of(g, c.lambda)};
    const std::span<const typename G::Point> sp(ps);
    if (c.verify) return verify_output(c, verify_detect_witness(g, sp, lam, c.verify->first));

    DetectOptions opts;
    opts.workers = c.workers;
    opts.search_bound = c.search_bound;
    const auto r = detect_dependence(g, sp, lam, c.scan, opts);
    Output o;
    o.json = header(c);
    o.json["points"] = string_array(c.points);
    o.json["lambda"] = string_array(c.lambda);
    o.json["status"] = to_string(r.status);
    o.json["report"] = to_json(r.report);
    o.json["certificate"] = r.certificate ? to_json(*r.certificate) : Json(nullptr);
    o.csv_rows.push_back(to_csv_row(r.report));
    o.csv_rows.push_back(csv_row({c.command, to_string(r.status), "", "", ""}));
    switch (r.status) {
        case DetectStatus::certified: o.code = kExitOk; break;
        case DetectStatus::hypothesis_violated: o.code = kExitViolated; break;
        case DetectStatus::inconclusive:
        case DetectStatus::theorem_forbidden: o.code = kExitInconclusive; break;
    }
    return o;
}

template <MordellWeilGroup G>
Output run_recover(const G& g, const RunConfig& c) {
    const auto p = parse_point(g, c.p), q = parse_point(g, c.q);
    if (c.verify) {
        const std::vector<typename G::Point> both{p, q};
        const u64 v = c.verify->first;
        bool reproduced = false;
        if (g.good_prime(std::span<const typename G::Point>(both), v)) {
            const auto loc = g.at(v);
            const auto rp = loc.reduce(p);
            reproduced = !loc.dlog(rp, loc.reduce(q), loc.order(rp)).has_value();
        }
        return verify_output(c, reproduced);
    }
    RecoverOptions opts;
    opts.elliptic_bound = c.bound;
    const auto r = recover_exponent(g, p, q, c.scan, opts);
    Output o;
    o.json = header(c);
    o.json["p"] = c.p;
    o.json["q"] = c.q;
    o.json["status"] = to_string(r.status);
    o.json["d"] = r.d ? big_to_json(*r.d) : Json(nullptr);
    o.json["modulus"] = big_to_json(r.modulus);
    o.json["height_bound"] = big_to_json(r.height_bound);
    o.json["primes_used"] = r.primes_used;
    o.json["witness_v"] = r.witness_v ? Json(*r.witness_v) : Json(nullptr);
    o.json["conflict"] = r.conflict ? Json::array({r.conflict->first, r.conflict->second}) : Json(nullptr);
    o.csv_rows.push_back(csv_row({c.command, to_string(r.status), r.witness_v ? std::to_string(*r.witness_v) : "",
                                  r.d ? r.d->str() : "", ""}));
    switch (r.status) {
        case RecoverStatus::found: o.code = kExitOk; break;
        case RecoverStatus::scan_exhausted: o.code = kExitInconclusive; break;
        default: o.code = kExitViolated; break;
    }
    return o;
}

inline Output run_experiment_command(const RunConfig& c) {
    ExperimentConfig e;
    e.suite = c.suite;
    e.trials = c.trials;
    e.seed = c.seed;
    e.workers = c.workers;
    if (c.scan_explicit) e.scan = c.scan;
    auto r = run_experiment(e);
    Output o;
    o.json = std::move(r.report);
    o.code = r.exit_code;
    o.csv_rows.push_back(csv_row({c.command, o.json["verdict"].get<std::string>(), "", "",
                                  "suite=" + c.suite + "; agreement=" + o.json["agreement"].dump() +
                                      "; disagreements=" + o.json["disagreements"].dump() +
                                      "; scan_misses=" + o.json["scan_misses"].dump()}));
    return o;
}

}  // namespace detail

/// Runs a validated config, writing the report to out and one progress line
/// to err. Returns the exit code.
inline int run(const RunConfig& c, std::ostream& out, std::ostream& err) {
    try {
        err << "mwlab: " << c.command << " on " << c.backend << " over primes " << c.scan.lo << ".." << c.scan.hi << " ("
            << c.workers << (c.workers == 1 ? " worker)" : " workers)") << std::endl;
        detail::Output o;
        if (c.command == "experiment") {
            o = detail::run_experiment_command(c);
        } else {
            const Backend b = parse_backend(c.backend);
            o = std::visit(
                [&](const auto& g) -> detail::Output {
                    if (c.command == "support-check") {
                        return detail::run_support(g, c, detail::condition_of(c.condition), c.xs, c.ys);
                    }
                    if (c.command == "cs-check") {
                        return detail::run_support(g, c, ConditionId::corrales_schoof, {c.x}, {c.y});
                    }
                    if (c.command == "find-primes") return detail::run_find_primes(g, c);
                    if (c.command == "replay") return detail::run_replay(g, c);
                    if (c.command == "detect") return detail::run_detect(g, c);
                    if (c.command == "recover") return detail::run_recover(g, c);
                    throw UsageError("unknown command '" + c.command + "'");
                },
                b);
        }
        detail::emit(o, c.format, out);
        return o.code;
    } catch (const UsageError& e) {
        err << "mwlab: usage error: " << e.what() << "\n";
        return kExitUsage;
    } catch (const std::invalid_argument& e) {
        err << "mwlab: " << c.command << ": " << e.what() << "\n";
        return kExitData;
    } catch (const std::domain_error& e) {
        err << "mwlab: " << c.command << ": " << e.what() << "\n";
        return kExitData;
    } catch (const std::exception& e) {
        err << "mwlab: internal error: " << e.what() << "\n";
        return kExitInternal;
    }
}

inline int main(int argc, const char* const* argv, std::ostream& out = std::cout, std::ostream& err = std::cerr) {
    const std::vector<std::string> args(argv + 1, argv + argc);
    RunConfig c;
    try {
        c = parse_args(args);
    } catch (const HelpRequested& h) {
        out << h.text;
        return kExitOk;
    } catch (const UsageError& e) {
        err << "mwlab: usage error: " << e.what() << "\n";
        return kExitUsage;
    }
    return run(c, out, err);
}

}  // namespace mwlab::cli
