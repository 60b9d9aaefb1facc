#pragma once

// Seeded randomized suites comparing the scanning checkers with the exact
// oracles. Every draw goes through Rng::below, so a seed gives the same
// instances on every platform and the report is byte-identical across runs.

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>
#include <vector>

#include "mwlab/dependence.hpp"
#include "mwlab/encoding.hpp"
#include "mwlab/support.hpp"

namespace mwlab {

class Rng {
public:
    explicit Rng(u64 seed) : gen_(seed) {}

    /// Uniform in [0, n) by rejection, independent of the standard library's
    /// distribution implementations.
    u64 below(u64 n) {
        if (n == 0) throw std::invalid_argument("Rng::below(0)");
        const u64 limit = std::numeric_limits<u64>::max() - std::numeric_limits<u64>::max() % n;
        for (;;) {
            const u64 x = gen_();
            if (x < limit) return x % n;
        }
    }

    u64 between(u64 lo, u64 hi) { return lo + below(hi - lo + 1); }
    long long signed_between(long long lo, long long hi) {
        return lo + static_cast<long long>(below(static_cast<u64>(hi - lo) + 1));
    }
    bool coin(u64 one_in = 2) { return below(one_in) == 0; }

private:
    std::mt19937_64 gen_;
};

/// Product of one or two distinct primes <= 50 with exponents in [1, 5].
inline BigInt sample_natural(Rng& rng) {
    static const std::vector<u64> primes = primes_in(PrimeRange(2, 50));
    BigInt n = 1;
    const u64 k = rng.between(1, 2);
    std::vector<u64> chosen;
    while (chosen.size() < k) {
        const u64 p = primes[rng.below(primes.size())];
        if (std::find(chosen.begin(), chosen.end(), p) == chosen.end()) chosen.push_back(p);
    }
    for (u64 p : chosen) n *= boost::multiprecision::pow(BigInt(p), static_cast<unsigned>(rng.between(1, 5)));
    return n;
}

/// t multiplicatively independent naturals, resampling on any relation.
inline std::vector<RationalPoint> sample_independent_tuple(Rng& rng, std::size_t t) {
    for (;;) {
        std::vector<RationalPoint> xs;
        for (std::size_t i = 0; i < t; ++i) xs.emplace_back(sample_natural(rng), BigInt(1));
        if (multiplicative_independence(xs).independent) return xs;
    }
}

struct ExperimentConfig {
    std::string suite = "erdos";
    std::size_t trials = 100;
    u64 seed = 0;
    unsigned workers = 1;
    std::optional<PrimeRange> scan;
};

struct ExperimentResult {
    Json report;
    /// 0 every trial agreed, 1 some disagreement, 2 only scan-window misses
    int exit_code = 0;
};

inline const std::vector<std::string>& experiment_suites() {
    static const std::vector<std::string> suites{"erdos", "cs", "detect", "recover", "elliptic"};
    return suites;
}

namespace detail {

inline Json points_json(const std::vector<RationalPoint>& xs) {
    Json a = Json::array();
    for (const auto& x : xs) a.push_back(format_point(x));
    return a;
}

inline bool same_set(const std::vector<RationalPoint>& a, const std::vector<RationalPoint>& b) {
    auto sa = a, sb = b;
    std::sort(sa.begin(), sa.end());
    std::sort(sb.begin(), sb.end());
    sa.erase(std::unique(sa.begin(), sa.end()), sa.end());
    sb.erase(std::unique(sb.begin(), sb.end()), sb.end());
    return sa == sb;
}

struct Tally {
    std::size_t agree = 0, disagree = 0, misses = 0;
};

inline void run_erdos_suite(const ExperimentConfig& cfg, Rng& rng, Json& cases, Json& summary, Tally& tally) {
    const PrimeRange scan = cfg.scan.value_or(PrimeRange(3, 10000));
    const MultiplicativeGroup q;
    std::size_t violated = 0, reverified = 0, missed = 0, identical_held = 0, conclusion_refuted = 0;
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
        const auto xs = sample_independent_tuple(rng, rng.between(1, 3));
        std::vector<RationalPoint> ys;
        do {
            ys = sample_independent_tuple(rng, rng.between(1, 3));
        } while (same_set(xs, ys));
        const std::span<const RationalPoint> sx(xs), sy(ys);
        const auto distinct = scan_condition(ConditionId::erdos_union, q, sx, sy, scan, cfg.workers);
        const auto identical = scan_condition(ConditionId::erdos_union, q, sx, sx, scan, cfg.workers);
        bool ok = true, miss = false, witness_ok = false;
        if (distinct.holds()) {
            miss = true;
        } else {
            ++violated;
            witness_ok = verify_witness(ConditionId::erdos_union, q, sx, sy, distinct.witness->v, distinct.witness->n);
            if (witness_ok) ++reverified;
            ok = ok && witness_ok;
        }
        if (identical.holds()) {
            ++identical_held;
        } else {
            ok = false;
        }
        // the exact conclusion check must refute a match between distinct sets
        if (xs.size() == ys.size()) {
            if (verify_conclusion_match(q, sx, sy)) ok = false;
            ++conclusion_refuted;
        }
        missed += miss ? 1 : 0;
        if (!ok) {
            ++tally.disagree;
        } else if (miss) {
            ++tally.misses;
        } else {
            ++tally.agree;
        }
        cases.push_back(Json{{"trial", trial},
                             {"xs", points_json(xs)},
                             {"ys", points_json(ys)},
                             {"distinct", to_json(distinct)},
                             {"witness_reverified", witness_ok},
                             {"identical", to_json(identical)}});
    }
    summary["distinct_violated"] = violated;
    summary["distinct_reverified"] = reverified;
    summary["distinct_missed"] = missed;
    summary["identical_held"] = identical_held;
    summary["conclusion_refuted"] = conclusion_refuted;
}

inline void run_cs_suite(const ExperimentConfig& cfg, Rng& rng, Json& cases, Json& summary, Tally& tally) {
    const u64 hi = cfg.scan ? cfg.scan->hi : 1000;
    const u64 lo = cfg.scan ? std::max<u64>(cfg.scan->lo, 3) : 3;
    const auto primes = primes_in(PrimeRange(lo, std::max(lo, hi)));
    if (primes.empty()) throw std::invalid_argument("cs suite: no odd primes in the scan window");
    const MultiplicativeGroup q;
    std::size_t holds = 0;
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
        const u64 p = primes[rng.below(primes.size())];
        auto draw = [&] {
            for (;;) {
                const u64 x = rng.between(2, 1000);
                if (x % p != 0) return x;
            }
        };
        const u64 x = draw(), y = draw();
        const bool exact = corrales_schoof_at_prime(q, RationalPoint(static_cast<long long>(x)),
                                                    RationalPoint(static_cast<long long>(y)), p);
        // the literal implication for n up to lcm of the orders
        const u64 ox = multiplicative_order(x, p), oy = multiplicative_order(y, p);
        const u64 l = std::lcm(ox, oy);
        bool literal = true;
        for (u64 n = 1; n <= l && literal; ++n) {
            if (powmod(x, n, p) == 1 && powmod(y, n, p) != 1) literal = false;
        }
        holds += exact ? 1 : 0;
        (exact == literal ? tally.agree : tally.disagree) += 1;
        cases.push_back(Json{{"trial", trial}, {"x", x}, {"y", y}, {"p", p}, {"exact", exact}, {"literal", literal}});
    }
    summary["condition_held"] = holds;
}

inline void run_detect_suite(const ExperimentConfig& cfg, Rng& rng, Json& cases, Json& summary, Tally& tally) {
    const PrimeRange scan = cfg.scan.value_or(PrimeRange(3, 10000));
    const MultiplicativeGroup q;
    std::size_t certified = 0, violated = 0, forbidden = 0;
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
        SubgroupSpec<MultiplicativeGroup> lam{sample_independent_tuple(rng, rng.between(1, 2))};
        std::vector<RationalPoint> ps = sample_independent_tuple(rng, rng.between(1, 2));
        if (rng.coin()) {
            // plant a dependent point: P = prod L_j^{c_j}, possibly with a
            // sign, possibly against squared generators
            for (;;) {
                Rational v = 1;
                for (const auto& l : lam.generators) {
                    const long long c = rng.signed_between(-2, 2);
                    for (long long k = 0; k < std::abs(c); ++k) v = c > 0 ? Rational(v * l.value()) : Rational(v / l.value());
                }
                if (rng.coin(4)) v = -v;
                if (v == 1 || v == -1) continue;
                ps[0] = RationalPoint(v);
                if (multiplicative_independence(ps).independent) break;
            }
            if (rng.coin()) {
                for (auto& l : lam.generators) l = q.scalar_mul(l, 2);
            }
        }
        const auto r = detect_dependence(q, std::span<const RationalPoint>(ps), lam, scan, {cfg.workers});
        bool ok = true;
        switch (r.status) {
            case DetectStatus::certified:
                ++certified;
                ok = verify_membership_certificate(q, std::span<const RationalPoint>(ps), lam, *r.certificate);
                break;
            case DetectStatus::hypothesis_violated:
                ++violated;
                ok = verify_detect_witness(q, std::span<const RationalPoint>(ps), lam, r.report.witness->v);
                break;
            case DetectStatus::theorem_forbidden:
                ++forbidden;
                ok = false;
                break;
            case DetectStatus::inconclusive:
                ok = false;
                break;
        }
        (ok ? tally.agree : tally.disagree) += 1;
        cases.push_back(Json{{"trial", trial},
                             {"ps", points_json(ps)},
                             {"lambda", points_json(lam.generators)},
                             {"status", to_string(r.status)},
                             {"report", to_json(r.report)},
                             {"certificate", r.certificate ? to_json(*r.certificate) : Json(nullptr)}});
    }
    summary["certified"] = certified;
    summary["hypothesis_violated"] = violated;
    summary["theorem_forbidden"] = forbidden;
}

inline void run_recover_suite(const ExperimentConfig& cfg, Rng& rng, Json& cases, Json& summary, Tally& tally) {
    const PrimeRange scan = cfg.scan.value_or(PrimeRange(3, 10000));
    const MultiplicativeGroup q;
    std::size_t recovered = 0;
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
        RationalPoint p(sample_natural(rng), BigInt(1));
        if (rng.coin(3)) {
            BigInt den;
            do {
                den = sample_natural(rng);
            } while (den == p.numerator());
            p = RationalPoint(p.numerator(), den);
        }
        long long d = 0;
        while (d == 0) d = rng.signed_between(-50, 50);
        const auto r = recover_exponent(q, p, q.scalar_mul(p, d), scan);
        const bool ok = r.status == RecoverStatus::found && r.d == BigInt(d);
        recovered += ok ? 1 : 0;
        (ok ? tally.agree : tally.disagree) += 1;
        cases.push_back(Json{{"trial", trial},
                             {"p", format_point(p)},
                             {"d", d},
                             {"status", to_string(r.status)},
                             {"recovered", r.d ? big_to_json(*r.d) : Json(nullptr)},
                             {"primes_used", r.primes_used}});
    }
    summary["recovered"] = recovered;
}

struct CuratedCurve {
    std::string name;
    WeierstrassCurve curve;
    std::vector<CurvePoint> generators;
};

inline const std::vector<CuratedCurve>& curated_curves() {
    auto pt = [](long long x, long long y) { return CurvePoint::affine(Rational(x), Rational(y)); };
    static const std::vector<CuratedCurve> curves{
        {"37a1", WeierstrassCurve(0, 0, 1, -1, 0), {pt(0, 0)}},
        {"389a1", WeierstrassCurve(0, 1, 1, -2, 0), {pt(-1, 1), pt(0, 0)}},
        {"5077a1", WeierstrassCurve(0, 0, 1, -7, 6), {pt(1, 0), pt(2, 0), pt(0, 2)}},
    };
    return curves;
}

inline void run_elliptic_suite(const ExperimentConfig& cfg, Rng& rng, Json& cases, Json& summary, Tally& tally) {
    const PrimeRange scan = cfg.scan.value_or(PrimeRange(3, 500));
    std::size_t recovered = 0, certified = 0, local_checks = 0;
    for (std::size_t trial = 0; trial < cfg.trials; ++trial) {
        const auto& cc = curated_curves()[rng.below(curated_curves().size())];
        const EllipticGroup g(cc.curve);
        CurvePoint p;
        std::vector<long long> coeffs;
        do {
            coeffs.clear();
            p = g.identity();
            for (const auto& gen : cc.generators) {
                coeffs.push_back(rng.signed_between(-2, 2));
                p = g.add(p, g.scalar_mul(gen, coeffs.back()));
            }
        } while (p.infinity);
        long long d = 0;
        while (d == 0) d = rng.signed_between(-4, 4);
        const CurvePoint qpt = g.scalar_mul(p, d);

        RecoverOptions ro;
        ro.elliptic_bound = 1000;
        const auto r = recover_exponent(g, p, qpt, scan, ro);
        const bool rec_ok = r.status == RecoverStatus::found && r.d == BigInt(d);
        recovered += rec_ok ? 1 : 0;

        const SubgroupSpec<EllipticGroup> lam{{p}};
        const std::vector<CurvePoint> ps{qpt};
        const auto det = detect_dependence(g, std::span<const CurvePoint>(ps), lam, scan, {cfg.workers});
        const bool det_ok = det.status == DetectStatus::certified &&
                            verify_membership_certificate(g, std::span<const CurvePoint>(ps), lam, *det.certificate);
        certified += det_ok ? 1 : 0;

        // Hasse bound and the reduction homomorphism at a random good prime
        const auto primes = primes_in(PrimeRange(3, 2000));
        u64 v = 0;
        do {
            v = primes[rng.below(primes.size())];
        } while (!g.good_prime({}, v));
        const auto loc = g.at(v);
        const double n = static_cast<double>(loc.group_order().value);
        const bool hasse = std::abs(n - static_cast<double>(v + 1)) <= 2.0 * std::sqrt(static_cast<double>(v));
        const bool hom = loc.reduce(g.add(p, qpt)) == loc.add(loc.reduce(p), loc.reduce(qpt));
        local_checks += hasse && hom ? 1 : 0;

        const bool ok = rec_ok && det_ok && hasse && hom;
        (ok ? tally.agree : tally.disagree) += 1;
        Json c = Json::array();
        for (long long x : coeffs) c.push_back(x);
        cases.push_back(Json{{"trial", trial},
                             {"curve", cc.name},
                             {"coefficients", c},
                             {"d", d},
                             {"recover", to_string(r.status)},
                             {"detect", to_string(det.status)},
                             {"v", v},
                             {"hasse", hasse},
                             {"homomorphism", hom}});
    }
    summary["recovered"] = recovered;
    summary["certified"] = certified;
    summary["local_checks"] = local_checks;
}

}  // namespace detail

inline ExperimentResult run_experiment(const ExperimentConfig& cfg) {
    const auto& suites = experiment_suites();
    if (std::find(suites.begin(), suites.end(), cfg.suite) == suites.end()) {
        throw std::invalid_argument("unknown suite '" + cfg.suite + "'");
    }
    Rng rng(cfg.seed);
    Json cases = Json::array();
    Json summary = Json::object();
    detail::Tally tally;
    if (cfg.suite == "erdos") detail::run_erdos_suite(cfg, rng, cases, summary, tally);
    if (cfg.suite == "cs") detail::run_cs_suite(cfg, rng, cases, summary, tally);
    if (cfg.suite == "detect") detail::run_detect_suite(cfg, rng, cases, summary, tally);
    if (cfg.suite == "recover") detail::run_recover_suite(cfg, rng, cases, summary, tally);
    if (cfg.suite == "elliptic") detail::run_elliptic_suite(cfg, rng, cases, summary, tally);

    ExperimentResult out;
    std::string verdict = "agree";
    if (tally.disagree > 0) {
        verdict = "disagree";
        out.exit_code = 1;
    } else if (tally.misses > 0) {
        verdict = "inconclusive";
        out.exit_code = 2;
    }
    Json j;
    j["command"] = "experiment";
    j["suite"] = cfg.suite;
    j["seed"] = cfg.seed;
    j["trials"] = cfg.trials;
    j["verdict"] = verdict;
    j["agreement"] = tally.agree;
    j["disagreements"] = tally.disagree;
    j["scan_misses"] = tally.misses;
    j["summary"] = summary;
    j["cases"] = cases;
    out.report = std::move(j);
    return out;
}

}  // namespace mwlab
