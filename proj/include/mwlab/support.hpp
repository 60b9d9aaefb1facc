#pragma once

// Supports of x^n - 1 and the support-style conditions, each reduced to an
// exact divisibility test on orders at a single prime, plus range scans that
// produce minimal witnesses.

#include <algorithm>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <vector>

#include "mwlab/mwgroup.hpp"
#include "mwlab/parallel.hpp"
#include "mwlab/report.hpp"

namespace mwlab {

/// Prime divisors of m, ascending.
inline std::vector<BigInt> support_of(const BigInt& m) {
    if (m <= 0) throw std::invalid_argument("support_of: m must be positive");
    std::vector<BigInt> out;
    for (const auto& f : factor(m).factors) out.push_back(f.prime);
    return out;
}

struct SupportSet {
    u64 modulus_bound = 0;
    std::vector<u64> primes;
    friend bool operator==(const SupportSet&, const SupportSet&) = default;
};

/// {p <= bound : p | x_i^n - 1 for some i}, via p | x^n - 1 <=> p does not
/// divide x and ord_p(x) | n.
inline SupportSet support_union_at_n(std::span<const BigInt> xs, const BigInt& n, u64 bound) {
    if (n < 1) throw std::invalid_argument("support_union_at_n: n must be positive");
    for (const auto& x : xs) {
        if (x < 2) throw std::invalid_argument("support_union_at_n: entries must be at least 2");
    }
    SupportSet s{bound, {}};
    if (bound < 2) return s;
    for (u64 p : primes_in(PrimeRange(2, bound))) {
        for (const auto& x : xs) {
            if (mod_u64(x, p) == 0) continue;
            if (n % multiplicative_order(x, p) == 0) {
                s.primes.push_back(p);
                break;
            }
        }
    }
    return s;
}

namespace detail {

inline bool divisible_by_any(u64 a, std::span<const u64> bs) {
    return std::any_of(bs.begin(), bs.end(), [a](u64 b) { return a % b == 0; });
}

/// Least n in exactly one of {n : some a_i | n} and {n : some b_j | n}, or
/// nullopt when the two sets coincide.
inline std::optional<u64> two_sided_gap(std::span<const u64> a, std::span<const u64> b) {
    std::optional<u64> best;
    auto consider = [&](u64 n) {
        if (!best || n < *best) best = n;
    };
    for (u64 x : a) {
        if (!divisible_by_any(x, b)) consider(x);
    }
    for (u64 y : b) {
        if (!divisible_by_any(y, a)) consider(y);
    }
    return best;
}

template <class Local, class Pt>
std::vector<u64> local_orders(const Local& loc, std::span<const Pt> pts) {
    std::vector<u64> out;
    out.reserve(pts.size());
    for (const auto& p : pts) out.push_back(loc.order(loc.reduce(p)));
    return out;
}

inline std::string orders_text(std::span<const u64> o) {
    std::string s = "(";
    for (std::size_t i = 0; i < o.size(); ++i) {
        if (i) s += ",";
        s += std::to_string(o[i]);
    }
    return s + ")";
}

template <MordellWeilGroup G>
bool all_good(const G& g, std::span<const typename G::Point> xs, std::span<const typename G::Point> ys, u64 v) {
    return g.good_prime(xs, v) && g.good_prime(ys, v);
}

template <MordellWeilGroup G>
void require_good(const G& g, std::span<const typename G::Point> xs, std::span<const typename G::Point> ys, u64 v) {
    if (!all_good(g, xs, ys, v)) throw BadReduction(std::to_string(v) + " is a bad prime for the inputs");
}

}  // namespace detail

enum class CoverMode { one_sided, two_sided };

/// Erdos-union condition at p: {n : exists i, p | x_i^n - 1} equals
/// {n : exists j, p | y_j^n - 1}.
inline bool erdos_exact_at_prime(std::span<const BigInt> xs, std::span<const BigInt> ys, u64 p) {
    auto orders = [p](std::span<const BigInt> zs) {
        std::vector<u64> o;
        for (const auto& z : zs) o.push_back(multiplicative_order(z, p));
        return o;
    };
    for (const auto& z : xs) {
        if (mod_u64(z, p) == 0) throw BadReduction(std::to_string(p) + " divides an input");
    }
    for (const auto& z : ys) {
        if (mod_u64(z, p) == 0) throw BadReduction(std::to_string(p) + " divides an input");
    }
    const auto a = orders(xs), b = orders(ys);
    return !detail::two_sided_gap(a, b).has_value();
}

/// y^n = 1 mod p whenever x^n = 1 mod p, i.e. ord_p(y) | ord_p(x).
template <MordellWeilGroup G>
bool corrales_schoof_at_prime(const G& g, const typename G::Point& x, const typename G::Point& y, u64 p) {
    detail::require_good(g, std::span(&x, 1), std::span(&y, 1), p);
    const auto loc = g.at(p);
    return loc.order(loc.reduce(x)) % loc.order(loc.reduce(y)) == 0;
}

/// one_sided (Ps = {P}): some ord_v Q_i divides ord_v P.
/// two_sided: every ord_v P_i is a multiple of some ord_v Q_j and vice versa.
template <MordellWeilGroup G>
bool divisibility_cover_at_prime(const G& g, std::span<const typename G::Point> ps,
                                 std::span<const typename G::Point> qs, u64 v, CoverMode mode) {
    detail::require_good(g, ps, qs, v);
    const auto loc = g.at(v);
    const auto a = detail::local_orders(loc, ps), b = detail::local_orders(loc, qs);
    if (mode == CoverMode::two_sided) return !detail::two_sided_gap(a, b).has_value();
    if (ps.size() != 1) throw std::invalid_argument("one-sided cover takes a single point P");
    return std::any_of(b.begin(), b.end(), [&](u64 q) { return a[0] % q == 0; });
}

/// Least violating n at a good prime for an order-based condition, with a
/// description of the orders involved. Conditions:
///   erdos_union, cor22   two-sided cover of xs by ys
///   corrales_schoof      xs = {x}, ys = {y}
///   thm2                 xs = {P}, ys = Qs
template <MordellWeilGroup G>
std::optional<std::pair<u64, std::string>> condition_failure_at(ConditionId id, const G& g,
                                                                std::span<const typename G::Point> xs,
                                                                std::span<const typename G::Point> ys, u64 v) {
    const auto loc = g.at(v);
    const auto a = detail::local_orders(loc, xs), b = detail::local_orders(loc, ys);
    const std::string orders = "ord_v xs=" + detail::orders_text(a) + " ord_v ys=" + detail::orders_text(b);
    switch (id) {
        case ConditionId::erdos_union:
        case ConditionId::cor22:
            if (auto n = detail::two_sided_gap(a, b)) {
                const bool left = detail::divisible_by_any(*n, a);
                return std::pair{*n, orders + "; n kills " + (left ? "an xs point but no ys point" : "a ys point but no xs point")};
            }
            return std::nullopt;
        case ConditionId::corrales_schoof:
        case ConditionId::thm2:
            if (a.size() != 1) throw std::invalid_argument(to_string(id) + " takes a single left-hand point");
            if (detail::divisible_by_any(a[0], b)) return std::nullopt;
            return std::pair{a[0], orders + "; n = ord_v of the left point kills no right-hand point"};
        default:
            throw std::invalid_argument("condition " + to_string(id) + " is not an order-cover condition");
    }
}

/// Assembles a report from a first-failure scan.
template <class Detail>
ConditionReport make_report(ConditionId id, const PrimeRange& scan,
                            ScanOutcome<std::pair<BigInt, Detail>>&& outcome) {
    ConditionReport r;
    r.condition_id = id;
    r.scanned = scan;
    r.skipped_primes = std::move(outcome.skipped);
    r.good_primes = outcome.good;
    if (outcome.failure) {
        r.verdict = Verdict::violated;
        r.witness = Witness{outcome.failure->first, outcome.failure->second.first, outcome.failure->second.second};
    }
    return r;
}

/// Evaluates the condition at every good prime of the scan, stopping at the
/// first violation. The report does not depend on `workers`.
template <MordellWeilGroup G>
ConditionReport scan_condition(ConditionId id, const G& g, std::span<const typename G::Point> xs,
                               std::span<const typename G::Point> ys, const PrimeRange& scan, unsigned workers = 1) {
    using Fail = std::pair<BigInt, std::string>;
    auto outcome = scan_first_failure<Fail>(primes_in(scan), workers, [&](u64 v) {
        if (!detail::all_good(g, xs, ys, v)) return PrimeOutcome<Fail>::skipped();
        auto f = condition_failure_at(id, g, xs, ys, v);
        if (!f) return PrimeOutcome<Fail>::pass();
        return PrimeOutcome<Fail>::fail(Fail{BigInt(f->first), std::move(f->second)});
    });
    return make_report<std::string>(id, scan, std::move(outcome));
}

/// Re-checks a witness from scratch by computing n * (point) mod v directly,
/// without using orders. True when the violation reproduces.
template <MordellWeilGroup G>
bool verify_witness(ConditionId id, const G& g, std::span<const typename G::Point> xs,
                    std::span<const typename G::Point> ys, u64 v, const BigInt& n) {
    if (n < 1 || !is_prime(v) || !detail::all_good(g, xs, ys, v)) return false;
    const auto loc = g.at(v);
    auto killed = [&](std::span<const typename G::Point> pts) {
        std::vector<bool> out;
        for (const auto& p : pts) {
            // n only matters modulo the exponent of the finite group
            const u64 e = mod_u64(n, loc.group_order().value);
            out.push_back(loc.is_identity(loc.mul(loc.reduce(p), e)));
        }
        return out;
    };
    const auto kx = killed(xs), ky = killed(ys);
    const bool any_x = std::find(kx.begin(), kx.end(), true) != kx.end();
    const bool any_y = std::find(ky.begin(), ky.end(), true) != ky.end();
    switch (id) {
        case ConditionId::erdos_union:
        case ConditionId::cor22:
            return any_x != any_y;
        case ConditionId::corrales_schoof:
        case ConditionId::thm2:
            return any_x && !any_y;
        default:
            return false;
    }
}

/// Finds a permutation and signs with xs[i] = sign[i] * ys[perm[i]] in the
/// group (for Q*: ys[perm[i]] or its inverse), preferring sign +1 and the
/// lowest index. nullopt is a refutation.
template <MordellWeilGroup G>
std::optional<RelationCertificate> verify_conclusion_match(const G& g, std::span<const typename G::Point> xs,
                                                           std::span<const typename G::Point> ys) {
    if (xs.size() != ys.size()) throw std::invalid_argument("verify_conclusion_match: lists differ in length");
    const std::size_t t = xs.size();
    std::vector<std::size_t> perm(t);
    std::vector<int> signs(t);
    std::vector<bool> used(t, false);
    auto search = [&](auto&& self, std::size_t i) -> bool {
        if (i == t) return true;
        for (int s : {1, -1}) {
            for (std::size_t j = 0; j < t; ++j) {
                if (used[j]) continue;
                const auto candidate = s == 1 ? ys[j] : g.negate(ys[j]);
                if (!(candidate == xs[i])) continue;
                used[j] = true;
                perm[i] = j;
                signs[i] = s;
                if (self(self, i + 1)) return true;
                used[j] = false;
            }
        }
        return false;
    };
    if (!search(search, 0)) return std::nullopt;
    RelationCertificate c;
    c.kind = RelationCertificate::Kind::match;
    c.permutation = perm;
    c.signs = signs;
    return c;
}

}  // namespace mwlab
