#pragma once

// Searches for primes v at which the orders ord_v P_i have a prescribed
// l-adic valuation pattern, and replays the witness constructions that such
// primes feed into.

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <vector>

#include "mwlab/mwgroup.hpp"
#include "mwlab/parallel.hpp"

namespace mwlab {

/// l^{k_i} || ord_v P_i when k_i > 0, and l does not divide ord_v P_i when k_i = 0.
struct ValuationPattern {
    u64 l = 2;
    std::vector<unsigned> ks;

    ValuationPattern() = default;
    ValuationPattern(u64 l_, std::vector<unsigned> ks_) : l(l_), ks(std::move(ks_)) {
        if (!is_prime(l)) throw std::invalid_argument("valuation pattern: l = " + std::to_string(l) + " is not prime");
        if (ks.empty()) throw std::invalid_argument("valuation pattern: exponent list is empty");
    }

    bool matches(std::span<const u64> orders) const {
        if (orders.size() != ks.size()) return false;
        for (std::size_t i = 0; i < ks.size(); ++i) {
            if (!exact_valuation(l, ks[i], orders[i])) return false;
        }
        return true;
    }
};

struct PatternHit {
    u64 v = 0;
    std::vector<u64> orders;
    bool verified = false;
    friend bool operator==(const PatternHit&, const PatternHit&) = default;
};

namespace detail {

/// ord_v of each point, or nullopt at a bad prime.
template <MordellWeilGroup G>
std::optional<std::vector<u64>> orders_at(const G& g, std::span<const typename G::Point> points, u64 v) {
    if (!g.good_prime(points, v)) return std::nullopt;
    const auto loc = g.at(v);
    std::vector<u64> out;
    out.reserve(points.size());
    for (const auto& p : points) out.push_back(loc.order(loc.reduce(p)));
    return out;
}

/// Calls fn(v, orders) for good primes in ascending order, evaluating in
/// parallel chunks; fn returns false to stop.
template <MordellWeilGroup G, class Fn>
void for_each_good_prime(const G& g, std::span<const typename G::Point> points, const PrimeRange& scan,
                         unsigned workers, Fn&& fn) {
    const auto primes = primes_in(scan);
    constexpr std::size_t chunk = 4096;
    for (std::size_t start = 0; start < primes.size(); start += chunk) {
        const std::vector<u64> part(primes.begin() + static_cast<std::ptrdiff_t>(start),
                                    primes.begin() + static_cast<std::ptrdiff_t>(std::min(primes.size(), start + chunk)));
        const auto orders = parallel_map(part, workers, [&](u64 v) { return orders_at(g, points, v); });
        for (std::size_t i = 0; i < part.size(); ++i) {
            if (!fn(part[i], orders[i])) return;
        }
    }
}

}  // namespace detail

/// Up to max_hits good primes in the scan realizing the pattern, ascending.
template <MordellWeilGroup G>
std::vector<PatternHit> find_pattern_primes(const G& g, std::span<const typename G::Point> points,
                                            const ValuationPattern& pattern, const PrimeRange& scan,
                                            std::size_t max_hits, unsigned workers = 1) {
    if (points.size() != pattern.ks.size()) throw std::invalid_argument("find_pattern_primes: one exponent per point");
    std::vector<PatternHit> hits;
    if (max_hits == 0) return hits;
    detail::for_each_good_prime(g, points, scan, workers, [&](u64 v, const std::optional<std::vector<u64>>& orders) {
        if (orders && pattern.matches(*orders)) hits.push_back({v, *orders, true});
        return hits.size() < max_hits;
    });
    return hits;
}

struct PatternDensity {
    std::size_t hits = 0;
    std::size_t good_primes = 0;
    double ratio = 0.0;
    /// No hit at all: the scan says nothing about the pattern.
    bool inconclusive = true;
};

template <MordellWeilGroup G>
PatternDensity pattern_density(const G& g, std::span<const typename G::Point> points, const ValuationPattern& pattern,
                               const PrimeRange& scan, unsigned workers = 1) {
    if (points.size() != pattern.ks.size()) throw std::invalid_argument("pattern_density: one exponent per point");
    PatternDensity d;
    detail::for_each_good_prime(g, points, scan, workers, [&](u64, const std::optional<std::vector<u64>>& orders) {
        if (!orders) return true;
        ++d.good_primes;
        if (pattern.matches(*orders)) ++d.hits;
        return true;
    });
    d.ratio = d.good_primes ? static_cast<double>(d.hits) / static_cast<double>(d.good_primes) : 0.0;
    d.inconclusive = d.hits == 0;
    return d;
}

/// A prime with l not dividing ord_v P and l dividing every ord_v Q_i, and
/// n = ord_v P: then nP = 0 mod v while nQ_i != 0 mod v for every i.
struct Step1Witness {
    u64 v = 0;
    u64 n = 0;
    u64 order_p = 0;
    std::vector<u64> orders_q;
    friend bool operator==(const Step1Witness&, const Step1Witness&) = default;
};

struct Step1Result {
    std::optional<Step1Witness> witness;
    /// Primes matching the valuation pattern before the refutation check.
    std::size_t pattern_hits = 0;
    std::size_t good_primes = 0;
};

template <MordellWeilGroup G>
Step1Result replay_step1(const G& g, const typename G::Point& p, std::span<const typename G::Point> qs, u64 l,
                         const PrimeRange& scan, unsigned workers = 1) {
    if (!is_prime(l)) throw std::invalid_argument("replay_step1: l must be prime");
    if (qs.empty()) throw std::invalid_argument("replay_step1: Qs is empty");
    std::vector<typename G::Point> all{p};
    all.insert(all.end(), qs.begin(), qs.end());
    Step1Result r;
    detail::for_each_good_prime(g, std::span<const typename G::Point>(all), scan, workers,
                                [&](u64 v, const std::optional<std::vector<u64>>& orders) {
                                    if (!orders) return true;
                                    ++r.good_primes;
                                    const auto& o = *orders;
                                    if (o[0] % l == 0) return true;
                                    if (!std::all_of(o.begin() + 1, o.end(), [l](u64 q) { return q % l == 0; })) return true;
                                    ++r.pattern_hits;
                                    const u64 n = o[0];
                                    if (std::any_of(o.begin() + 1, o.end(), [n](u64 q) { return n % q == 0; })) return true;
                                    r.witness = Step1Witness{v, n, n, std::vector<u64>(o.begin() + 1, o.end())};
                                    return false;
                                });
    return r;
}

/// lcm of orders[i] / divisors[i]; each divisor must divide its order.
inline u64 replay_step2_lcm(std::span<const u64> orders, std::span<const u64> divisors) {
    if (orders.size() != divisors.size() || orders.empty()) {
        throw std::invalid_argument("replay_step2_lcm: need one divisor per order");
    }
    u64 n = 1;
    for (std::size_t i = 0; i < orders.size(); ++i) {
        if (divisors[i] == 0 || orders[i] % divisors[i] != 0) {
            throw std::invalid_argument("replay_step2_lcm: " + std::to_string(divisors[i]) + " does not divide " +
                                        std::to_string(orders[i]));
        }
        n = std::lcm(n, orders[i] / divisors[i]);
    }
    return n;
}

}  // namespace mwlab
