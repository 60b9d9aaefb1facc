#pragma once

// Mordell-Weil-type groups: the backend concept shared by Q* (S-units) and
// elliptic curves over Q, and the backend-generic reduction operations.

#include <concepts>
#include <optional>
#include <span>
#include <sstream>
#include <string>
#include <variant>
#include <vector>

#include "mwlab/mwgroup/elliptic.hpp"
#include "mwlab/mwgroup/multiplicative.hpp"
#include "mwlab/numth.hpp"
#include "mwlab/parallel.hpp"
#include "mwlab/report.hpp"

namespace mwlab {

template <class L, class G>
concept LocalGroupOf = requires(const L& loc, const typename G::Point& p, const typename G::Reduced& r, u64 k) {
    { loc.prime() } -> std::same_as<u64>;
    { loc.group_order() } -> std::convertible_to<const SmallFactorization&>;
    { loc.reduce(p) } -> std::same_as<typename G::Reduced>;
    { loc.identity() } -> std::same_as<typename G::Reduced>;
    { loc.is_identity(r) } -> std::same_as<bool>;
    { loc.add(r, r) } -> std::same_as<typename G::Reduced>;
    { loc.negate(r) } -> std::same_as<typename G::Reduced>;
    { loc.mul(r, k) } -> std::same_as<typename G::Reduced>;
    { loc.order(r) } -> std::same_as<u64>;
    { loc.hash(r) } -> std::same_as<std::size_t>;
    { loc.dlog(r, r, k) } -> std::same_as<std::optional<u64>>;
};

/// A finitely generated abelian group over Q with reduction maps at almost
/// all primes.
template <class G>
concept MordellWeilGroup = requires(const G& g, const typename G::Point& p, std::span<const typename G::Point> pts,
                                    u64 v, const BigInt& n) {
    typename G::Point;
    typename G::Reduced;
    typename G::Local;
    { g.good_prime(pts, v) } -> std::same_as<bool>;
    { g.at(v) } -> std::same_as<typename G::Local>;
    { g.identity() } -> std::same_as<typename G::Point>;
    { g.is_identity(p) } -> std::same_as<bool>;
    { g.add(p, p) } -> std::same_as<typename G::Point>;
    { g.negate(p) } -> std::same_as<typename G::Point>;
    { g.scalar_mul(p, n) } -> std::same_as<typename G::Point>;
    { g.torsion_elements() } -> std::same_as<std::vector<typename G::Point>>;
    { g.torsion_order(p) } -> std::same_as<std::optional<u64>>;
    { g.name() } -> std::same_as<std::string>;
} && LocalGroupOf<typename G::Local, G>;

static_assert(MordellWeilGroup<MultiplicativeGroup>);
static_assert(MordellWeilGroup<EllipticGroup>);

using Backend = std::variant<MultiplicativeGroup, EllipticGroup>;

// =============================================================================
// Reduction operations
// =============================================================================

template <MordellWeilGroup G>
bool good_prime(const G& g, std::span<const typename G::Point> points, u64 v) {
    return g.good_prime(points, v);
}

template <MordellWeilGroup G>
typename G::Reduced reduce(const G& g, const typename G::Point& p, u64 v) {
    if (!g.good_prime(std::span(&p, 1), v)) throw BadReduction(std::to_string(v) + " is not a good prime for the point");
    return g.at(v).reduce(p);
}

/// ord_v P: order of P mod v in the finite group.
template <MordellWeilGroup G>
u64 order_mod(const G& g, const typename G::Point& p, u64 v) {
    const auto loc = g.at(v);
    if (!g.good_prime(std::span(&p, 1), v)) throw BadReduction(std::to_string(v) + " is not a good prime for the point");
    return loc.order(loc.reduce(p));
}

template <MordellWeilGroup G>
std::vector<typename G::Point> torsion_elements(const G& g) {
    return g.torsion_elements();
}

/// Sum of coefficient * point, computed exactly.
template <MordellWeilGroup G>
typename G::Point linear_combination(const G& g, std::span<const typename G::Point> points,
                                     std::span<const BigInt> coefficients) {
    if (points.size() != coefficients.size()) throw std::invalid_argument("linear_combination: size mismatch");
    auto acc = g.identity();
    for (std::size_t i = 0; i < points.size(); ++i) {
        if (coefficients[i] != 0) acc = g.add(acc, g.scalar_mul(points[i], coefficients[i]));
    }
    return acc;
}

/// Checks ord_v T = ord T at every good prime in the scan; the witness is the
/// smallest violating prime with n = ord_v T.
template <MordellWeilGroup G>
ConditionReport torsion_order_stability(const G& g, const typename G::Point& t, const PrimeRange& scan,
                                        unsigned workers = 1) {
    const auto ord = g.torsion_order(t);
    if (!ord) throw std::invalid_argument("torsion_order_stability: point is not torsion");
    const auto outcome = scan_first_failure<u64>(primes_in(scan), workers, [&](u64 v) {
        if (!g.good_prime(std::span(&t, 1), v)) return PrimeOutcome<u64>::skipped();
        const auto loc = g.at(v);
        const u64 local = loc.order(loc.reduce(t));
        return local == *ord ? PrimeOutcome<u64>::pass() : PrimeOutcome<u64>::fail(local);
    });
    ConditionReport r;
    r.condition_id = ConditionId::torsion_stability;
    r.scanned = scan;
    r.skipped_primes = outcome.skipped;
    r.good_primes = outcome.good;
    if (outcome.failure) {
        r.verdict = Verdict::violated;
        std::ostringstream detail;
        detail << "ord T = " << *ord << " but ord_v T = " << outcome.failure->second;
        r.witness = Witness{outcome.failure->first, outcome.failure->second, detail.str()};
    }
    return r;
}

}  // namespace mwlab
