#pragma once

// Detecting linear dependence by reduction maps: membership of P in a
// subgroup modulo v, the scanning detector, exact membership certificates,
// and recovery of d with Q = dP by discrete logs and CRT.

#include <algorithm>
#include <cmath>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <type_traits>
#include <unordered_set>
#include <vector>

#include "mwlab/encoding.hpp"
#include "mwlab/lattice.hpp"
#include "mwlab/mwgroup.hpp"
#include "mwlab/parallel.hpp"
#include "mwlab/report.hpp"
#include "mwlab/support.hpp"

namespace mwlab {

/// Λ given by generators (non-torsion basis, optionally with torsion points).
template <MordellWeilGroup G>
struct SubgroupSpec {
    std::vector<typename G::Point> generators;
};

// =============================================================================
// Membership modulo v
// =============================================================================

/// Every element of the subgroup generated by `gens` in the finite group at
/// v, by closing under addition of the generators.
template <class Local>
auto enumerate_subgroup(const Local& loc, std::span<const decltype(loc.identity())> gens) {
    using R = decltype(loc.identity());
    auto h = [&loc](const R& a) { return loc.hash(a); };
    std::unordered_set<R, decltype(h)> seen(16, h);
    std::vector<R> elems{loc.identity()};
    seen.insert(loc.identity());
    for (std::size_t i = 0; i < elems.size(); ++i) {
        for (const auto& g : gens) {
            R next = loc.add(elems[i], g);
            if (seen.insert(next).second) elems.push_back(next);
        }
    }
    if (loc.group_order().value % elems.size() != 0) {
        throw std::logic_error("subgroup of order " + std::to_string(elems.size()) + " does not divide the group order " +
                               std::to_string(loc.group_order().value));
    }
    return elems;
}

struct LocalMembership {
    bool member = false;
    /// |Λ mod v|
    u64 subgroup_order = 1;
};

namespace detail {

/// Membership of each point in Λ mod v. F_v* is cyclic, so there P is in Λ
/// mod v iff ord_v P divides lcm ord_v L_j; on curves the subgroup is
/// enumerated.
template <MordellWeilGroup G>
std::vector<LocalMembership> memberships_at(const G& g, std::span<const typename G::Point> ps,
                                            std::span<const typename G::Point> gens, u64 v) {
    const auto loc = g.at(v);
    std::vector<LocalMembership> out;
    if constexpr (std::is_same_v<G, MultiplicativeGroup>) {
        u64 size = 1;
        for (const auto& l : gens) size = std::lcm(size, loc.order(loc.reduce(l)));
        for (const auto& p : ps) out.push_back({size % loc.order(loc.reduce(p)) == 0, size});
    } else {
        std::vector<typename G::Reduced> rg;
        for (const auto& l : gens) rg.push_back(loc.reduce(l));
        const auto elems = enumerate_subgroup(loc, std::span<const typename G::Reduced>(rg));
        for (const auto& p : ps) {
            const auto r = loc.reduce(p);
            out.push_back({std::find(elems.begin(), elems.end(), r) != elems.end(), elems.size()});
        }
    }
    return out;
}

}  // namespace detail

template <MordellWeilGroup G>
bool member_mod(const G& g, const typename G::Point& p, const SubgroupSpec<G>& lambda, u64 v) {
    detail::require_good(g, std::span(&p, 1), std::span<const typename G::Point>(lambda.generators), v);
    return detail::memberships_at(g, std::span(&p, 1), std::span<const typename G::Point>(lambda.generators), v)
        .front()
        .member;
}

// =============================================================================
// Exact certificates
// =============================================================================

/// Least alpha > 0 with alpha P in Λ, and lambdas with alpha P = sum lambda_j L_j,
/// solved on exponent vectors with the sign coordinate taken mod 2.
/// nullopt: no nonzero multiple of P lies in Λ.
inline std::optional<RelationCertificate> exact_membership_multiplicative(const RationalPoint& p,
                                                                          const SubgroupSpec<MultiplicativeGroup>& lambda) {
    std::vector<RationalPoint> all{p};
    all.insert(all.end(), lambda.generators.begin(), lambda.generators.end());
    const IntMatrix kernel = detail::relation_lattice(all);
    // the kernel is in Hermite form: if any relation involves P, the first
    // row carries the least positive coefficient of P
    if (kernel.empty() || kernel.front()[0] == 0) return std::nullopt;
    const IntRow& row = kernel.front();
    RelationCertificate c;
    c.kind = RelationCertificate::Kind::membership;
    c.alpha = row[0];
    for (std::size_t j = 1; j < row.size(); ++j) c.lambdas.push_back(-row[j]);
    return c;
}

/// Checks alpha P[point_index] - sum lambda_j L_j = residual torsion (or the
/// identity) by exact arithmetic.
template <MordellWeilGroup G>
bool verify_membership_certificate(const G& g, std::span<const typename G::Point> ps, const SubgroupSpec<G>& lambda,
                                   const RelationCertificate& c) {
    if (c.kind != RelationCertificate::Kind::membership || c.point_index >= ps.size() || c.alpha == 0 ||
        c.lambdas.size() != lambda.generators.size()) {
        return false;
    }
    auto z = g.scalar_mul(ps[c.point_index], c.alpha);
    for (std::size_t j = 0; j < c.lambdas.size(); ++j) z = g.add(z, g.negate(g.scalar_mul(lambda.generators[j], c.lambdas[j])));
    if (!c.residual_torsion) return g.is_identity(z);
    const auto t = parse_point(g, *c.residual_torsion);
    return g.torsion_order(t).has_value() && z == t;
}

/// Bounded search for alpha in [1, bound] and |lambda_j| <= bound with
/// alpha P - sum lambda_j L_j torsion, smallest sup-norm first. Candidates are
/// screened by reduction at `filter_primes` good primes, then checked exactly.
inline std::optional<RelationCertificate> elliptic_membership_search(const EllipticGroup& g, const CurvePoint& p,
                                                                     const SubgroupSpec<EllipticGroup>& lambda,
                                                                     int bound = 20, std::size_t filter_primes = 12) {
    const auto& gens = lambda.generators;
    const std::size_t s = gens.size();
    const auto torsion = g.torsion_elements();

    struct Filter {
        EllipticGroup::Local loc;
        std::vector<ModPoint> p_mult;               // a * P for a in [0, bound]
        std::vector<std::vector<ModPoint>> l_mult;  // -c * L_j for c in [-bound, bound]
        std::vector<ModPoint> torsion;
    };
    std::vector<Filter> filters;
    for (u64 v = 5; filters.size() < filter_primes; v += 2) {
        if (!is_prime(v) || !g.good_prime({}, v)) continue;
        Filter f{g.at(v), {}, {}, {}};
        const ModPoint rp = f.loc.reduce(p);
        for (int a = 0; a <= bound; ++a) f.p_mult.push_back(f.loc.mul(rp, static_cast<u64>(a)));
        for (const auto& l : gens) {
            const ModPoint rl = f.loc.negate(f.loc.reduce(l));
            std::vector<ModPoint> row;
            for (int c = -bound; c <= bound; ++c) {
                const ModPoint m = f.loc.mul(rl, static_cast<u64>(std::abs(c)));
                row.push_back(c < 0 ? f.loc.negate(m) : m);
            }
            f.l_mult.push_back(std::move(row));
        }
        for (const auto& t : torsion) f.torsion.push_back(f.loc.reduce(t));
        filters.push_back(std::move(f));
    }

    auto survives = [&](int alpha, const std::vector<int>& lam) {
        for (const auto& f : filters) {
            ModPoint z = f.p_mult[static_cast<std::size_t>(alpha)];
            for (std::size_t j = 0; j < s; ++j) z = f.loc.add(z, f.l_mult[j][static_cast<std::size_t>(lam[j] + bound)]);
            if (std::find(f.torsion.begin(), f.torsion.end(), z) == f.torsion.end()) return false;
        }
        return true;
    };

    for (int r = 1; r <= bound; ++r) {
        for (int alpha = 1; alpha <= r; ++alpha) {
            std::vector<int> lam(s, -r);
            for (;;) {
                const bool on_shell =
                    alpha == r || std::any_of(lam.begin(), lam.end(), [r](int c) { return std::abs(c) == r; });
                if (on_shell && survives(alpha, lam)) {
                    CurvePoint z = g.scalar_mul(p, alpha);
                    for (std::size_t j = 0; j < s; ++j) z = g.add(z, g.negate(g.scalar_mul(gens[j], lam[j])));
                    if (const auto it = std::find(torsion.begin(), torsion.end(), z); it != torsion.end()) {
                        RelationCertificate c;
                        c.kind = RelationCertificate::Kind::membership;
                        c.alpha = alpha;
                        for (int x : lam) c.lambdas.emplace_back(x);
                        if (!it->infinity) c.residual_torsion = format_point(*it);
                        return c;
                    }
                }
                std::size_t i = 0;
                while (i < s && lam[i] == r) lam[i++] = -r;
                if (i == s) break;
                ++lam[i];
            }
        }
    }
    return std::nullopt;
}

// =============================================================================
// Detection scan
// =============================================================================

enum class DetectStatus {
    /// some good v has no P_i in Λ mod v
    hypothesis_violated,
    /// the scan holds and some alpha P_i in Λ was certified
    certified,
    /// the scan holds, bounded search found nothing (curves only)
    inconclusive,
    /// the scan holds but the exact oracle refutes every alpha P_i in Λ
    theorem_forbidden,
};

inline std::string to_string(DetectStatus s) {
    switch (s) {
        case DetectStatus::hypothesis_violated: return "hypothesis_violated";
        case DetectStatus::certified: return "certified";
        case DetectStatus::inconclusive: return "inconclusive";
        case DetectStatus::theorem_forbidden: return "theorem_forbidden";
    }
    return "unknown";
}

struct DetectionResult {
    ConditionReport report;
    std::optional<RelationCertificate> certificate;
    DetectStatus status = DetectStatus::inconclusive;
};

struct DetectOptions {
    unsigned workers = 1;
    /// coefficient bound for the curve certificate search
    int search_bound = 20;
};

/// Scans condition "some P_i in Λ mod v" over the good primes. The witness
/// carries n = |Λ mod v|.
template <MordellWeilGroup G>
ConditionReport scan_detect(const G& g, std::span<const typename G::Point> ps, const SubgroupSpec<G>& lambda,
                            const PrimeRange& scan, unsigned workers = 1) {
    using Fail = std::pair<BigInt, std::string>;
    const std::span<const typename G::Point> gens(lambda.generators);
    auto outcome = scan_first_failure<Fail>(primes_in(scan), workers, [&](u64 v) {
        if (!detail::all_good(g, ps, gens, v)) return PrimeOutcome<Fail>::skipped();
        const auto m = detail::memberships_at(g, ps, gens, v);
        if (std::any_of(m.begin(), m.end(), [](const LocalMembership& x) { return x.member; })) {
            return PrimeOutcome<Fail>::pass();
        }
        const auto loc = g.at(v);
        std::vector<u64> orders;
        for (const auto& p : ps) orders.push_back(loc.order(loc.reduce(p)));
        const u64 size = m.empty() ? 1 : m.front().subgroup_order;
        return PrimeOutcome<Fail>::fail(
            Fail{BigInt(size), "no P_i in Λ mod v; |Λ mod v| = " + std::to_string(size) + ", ord_v Ps=" + detail::orders_text(orders)});
    });
    return make_report<std::string>(ConditionId::detect, scan, std::move(outcome));
}

/// Re-checks a detect witness by enumerating Λ mod v outright.
template <MordellWeilGroup G>
bool verify_detect_witness(const G& g, std::span<const typename G::Point> ps, const SubgroupSpec<G>& lambda, u64 v) {
    const std::span<const typename G::Point> gens(lambda.generators);
    if (!is_prime(v) || !detail::all_good(g, ps, gens, v)) return false;
    const auto loc = g.at(v);
    std::vector<typename G::Reduced> rg;
    for (const auto& l : gens) rg.push_back(loc.reduce(l));
    const auto elems = enumerate_subgroup(loc, std::span<const typename G::Reduced>(rg));
    return std::none_of(ps.begin(), ps.end(), [&](const auto& p) {
        return std::find(elems.begin(), elems.end(), loc.reduce(p)) != elems.end();
    });
}

template <MordellWeilGroup G>
DetectionResult detect_dependence(const G& g, std::span<const typename G::Point> ps, const SubgroupSpec<G>& lambda,
                                  const PrimeRange& scan, const DetectOptions& opts = {}) {
    DetectionResult r;
    r.report = scan_detect(g, ps, lambda, scan, opts.workers);
    if constexpr (std::is_same_v<G, MultiplicativeGroup>) {
        for (std::size_t i = 0; i < ps.size() && !r.certificate; ++i) {
            if (auto c = exact_membership_multiplicative(ps[i], lambda)) {
                c->point_index = i;
                r.certificate = std::move(c);
            }
        }
        if (!r.report.holds()) {
            r.status = DetectStatus::hypothesis_violated;
        } else {
            r.status = r.certificate ? DetectStatus::certified : DetectStatus::theorem_forbidden;
        }
    } else {
        if (!r.report.holds()) {
            r.status = DetectStatus::hypothesis_violated;
            return r;
        }
        for (std::size_t i = 0; i < ps.size() && !r.certificate; ++i) {
            if (auto c = elliptic_membership_search(g, ps[i], lambda, opts.search_bound)) {
                c->point_index = i;
                r.certificate = std::move(c);
            }
        }
        r.status = r.certificate ? DetectStatus::certified : DetectStatus::inconclusive;
    }
    return r;
}

// =============================================================================
// Exponent recovery
// =============================================================================

enum class RecoverStatus { found, not_member, inconsistent, scan_exhausted, verification_failed };

inline std::string to_string(RecoverStatus s) {
    switch (s) {
        case RecoverStatus::found: return "found";
        case RecoverStatus::not_member: return "not_member";
        case RecoverStatus::inconsistent: return "inconsistent";
        case RecoverStatus::scan_exhausted: return "scan_exhausted";
        case RecoverStatus::verification_failed: return "verification_failed";
    }
    return "unknown";
}

struct RecoverResult {
    RecoverStatus status = RecoverStatus::scan_exhausted;
    std::optional<BigInt> d;
    /// not_member: the prime where Q mod v is outside <P mod v>
    std::optional<u64> witness_v;
    /// inconsistent: two primes whose congruences for d disagree
    std::optional<std::pair<u64, u64>> conflict;
    BigInt modulus = 1;
    BigInt height_bound = 0;
    std::size_t primes_used = 0;
};

/// |d| <= ceil(log max(num, den of Q) / log min>1(num, den of P)) + 1.
inline BigInt multiplicative_height_bound(const RationalPoint& p, const RationalPoint& q) {
    auto log_big = [](const BigInt& n) {
        // log of a big integer via its leading digits
        const std::string s = n.str();
        const std::size_t keep = std::min<std::size_t>(s.size(), 17);
        return std::log(std::stod(s.substr(0, keep))) + static_cast<double>(s.size() - keep) * std::log(10.0);
    };
    BigInt base = 0;
    for (const BigInt& x : {p.numerator(), p.denominator()}) {
        if (x > 1 && (base == 0 || x < base)) base = x;
    }
    if (base == 0) throw std::invalid_argument("height bound: P is torsion");
    const BigInt top = std::max(q.numerator(), q.denominator());
    const double ratio = log_big(top) / log_big(base);
    // the small slack absorbs floating rounding; the final exact check decides
    return BigInt(static_cast<long long>(std::ceil(ratio - 1e-12))) + 1;
}

struct RecoverOptions {
    /// bound on |d| for curves, where no height bound is computed
    BigInt elliptic_bound = 1'000'000;
};

/// Finds d with Q = dP: d mod ord_v P from discrete logs at the good primes
/// in ascending order, combined by CRT until the modulus exceeds twice the
/// bound on |d|, then verified exactly.
template <MordellWeilGroup G>
RecoverResult recover_exponent(const G& g, const typename G::Point& p, const typename G::Point& q,
                               const PrimeRange& scan, const RecoverOptions& opts = {}) {
    if (g.torsion_order(p)) throw std::invalid_argument("recover_exponent: P is torsion");
    RecoverResult r;
    if constexpr (std::is_same_v<G, MultiplicativeGroup>) {
        r.height_bound = multiplicative_height_bound(p, q);
    } else {
        r.height_bound = opts.elliptic_bound;
    }
    const std::vector<typename G::Point> both{p, q};
    CrtAccumulator acc;
    std::vector<std::pair<u64, std::pair<u64, u64>>> used;  // v, (residue, modulus)
    for (u64 v : primes_in(scan)) {
        if (acc.modulus() > 2 * r.height_bound) break;
        if (!g.good_prime(std::span<const typename G::Point>(both), v)) continue;
        const auto loc = g.at(v);
        const auto rp = loc.reduce(p), rq = loc.reduce(q);
        const u64 ord = loc.order(rp);
        const auto e = loc.dlog(rp, rq, ord);
        if (!e) {
            r.status = RecoverStatus::not_member;
            r.witness_v = v;
            return r;
        }
        if (!acc.add(*e, ord)) {
            r.status = RecoverStatus::inconsistent;
            // pairwise consistency is equivalent to joint consistency, so
            // some earlier prime conflicts with v on its own
            for (const auto& [w, c] : used) {
                const u64 gg = std::gcd(c.second, ord);
                if ((c.first % gg) != (*e % gg)) {
                    r.conflict = std::pair{w, v};
                    break;
                }
            }
            r.modulus = acc.modulus();
            return r;
        }
        used.push_back({v, {*e, ord}});
        ++r.primes_used;
    }
    r.modulus = acc.modulus();
    if (acc.modulus() <= 2 * r.height_bound) {
        r.status = RecoverStatus::scan_exhausted;
        return r;
    }
    const BigInt d = acc.symmetric_value();
    if (g.scalar_mul(p, d) == q) {
        r.status = RecoverStatus::found;
        r.d = d;
    } else {
        r.status = RecoverStatus::verification_failed;
    }
    return r;
}

}  // namespace mwlab
