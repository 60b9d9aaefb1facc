#pragma once

// The multiplicative group of Q (S-units when a finite set S of primes is
// excluded), with reduction to F_v* at admissible primes.

#include <algorithm>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mwlab/lattice.hpp"
#include "mwlab/numth.hpp"

namespace mwlab {

using Rational = boost::multiprecision::cpp_rational;

/// Thrown when a point is reduced at a prime where it has no good image.
class BadReduction : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// Nonzero rational, kept in lowest terms with an explicit sign.
class RationalPoint {
public:
    RationalPoint() : q_(1) {}
    explicit RationalPoint(Rational q) : q_(std::move(q)) {
        if (q_ == 0) throw std::invalid_argument("multiplicative point must be nonzero");
    }
    RationalPoint(long long n) : RationalPoint(Rational(n)) {}  // NOLINT(google-explicit-constructor)
    RationalPoint(BigInt num, BigInt den) : RationalPoint(make(std::move(num), std::move(den))) {}

    int sign() const { return q_ < 0 ? -1 : 1; }
    BigInt numerator() const { return boost::multiprecision::abs(boost::multiprecision::numerator(q_)); }
    BigInt denominator() const { return boost::multiprecision::denominator(q_); }
    const Rational& value() const { return q_; }

    bool is_one() const { return q_ == 1; }

    friend bool operator==(const RationalPoint& a, const RationalPoint& b) { return a.q_ == b.q_; }
    friend bool operator<(const RationalPoint& a, const RationalPoint& b) { return a.q_ < b.q_; }

private:
    static Rational make(BigInt num, BigInt den) {
        if (den == 0) throw std::invalid_argument("zero denominator");
        return Rational(num, den);
    }

    Rational q_;
};

class MultiplicativeGroup {
public:
    using Point = RationalPoint;
    using Reduced = u64;

    /// Reduction context at one admissible prime v: F_v* with |F_v*| = v - 1.
    class Local {
    public:
        explicit Local(u64 p) : p_(p), order_(factor(p - 1)) {}

        u64 prime() const { return p_; }
        const SmallFactorization& group_order() const { return order_; }

        bool reduces(const Point& x) const {
            return x.numerator() % p_ != 0 && x.denominator() % p_ != 0;
        }

        Reduced reduce(const Point& x) const {
            const u64 num = mod_u64(x.numerator(), p_);
            const u64 den = mod_u64(x.denominator(), p_);
            if (num == 0 || den == 0) {
                throw BadReduction("point " + x.value().str() + " has bad reduction at " + std::to_string(p_));
            }
            u64 r = mulmod(num, invmod(den, p_), p_);
            if (x.sign() < 0) r = submod(0, r, p_);
            return r;
        }

        Reduced identity() const { return 1 % p_; }
        bool is_identity(Reduced a) const { return a == identity(); }
        Reduced add(Reduced a, Reduced b) const { return mulmod(a, b, p_); }
        Reduced negate(Reduced a) const { return invmod(a, p_); }
        Reduced mul(Reduced a, u64 k) const { return powmod(a, k, p_); }
        std::size_t hash(Reduced a) const { return std::hash<u64>()(a); }

        u64 order(Reduced a) const { return residue_order(a, p_, order_); }

        std::optional<u64> dlog(Reduced base, Reduced target, u64 order_of_base) const {
            return bsgs_dlog(base, target, p_, order_of_base);
        }

    private:
        u64 p_;
        SmallFactorization order_;
    };

    MultiplicativeGroup() = default;

    /// S-units: primes in `excluded` are never used for reduction.
    explicit MultiplicativeGroup(std::vector<u64> excluded) : excluded_(std::move(excluded)) {
        for (u64 s : excluded_) {
            if (!is_prime(s)) throw std::invalid_argument("S-set entry " + std::to_string(s) + " is not prime");
        }
        std::sort(excluded_.begin(), excluded_.end());
        excluded_.erase(std::unique(excluded_.begin(), excluded_.end()), excluded_.end());
    }

    const std::vector<u64>& excluded_primes() const { return excluded_; }

    bool excluded(u64 v) const { return std::binary_search(excluded_.begin(), excluded_.end(), v); }

    bool good_prime(std::span<const Point> points, u64 v) const {
        if (excluded(v)) return false;
        return std::all_of(points.begin(), points.end(), [v](const Point& x) {
            return x.numerator() % v != 0 && x.denominator() % v != 0;
        });
    }

    Local at(u64 v) const {
        if (!is_prime(v)) throw std::invalid_argument(std::to_string(v) + " is not prime");
        if (excluded(v)) throw BadReduction(std::to_string(v) + " is in S");
        return Local(v);
    }

    Point identity() const { return Point(1); }
    bool is_identity(const Point& x) const { return x.is_one(); }
    Point add(const Point& a, const Point& b) const { return Point(a.value() * b.value()); }
    Point negate(const Point& a) const { return Point(Rational(1) / a.value()); }

    Point scalar_mul(const Point& a, const BigInt& n) const {
        if (n == 0) return identity();
        const BigInt e = boost::multiprecision::abs(n);
        if (e > 1'000'000) throw std::invalid_argument("exponent too large to materialize: " + n.str());
        const unsigned k = e.convert_to<unsigned>();
        BigInt num = boost::multiprecision::pow(boost::multiprecision::numerator(a.value()), k);
        BigInt den = boost::multiprecision::pow(boost::multiprecision::denominator(a.value()), k);
        if (n > 0) return Point(num, den);
        // keep the denominator positive for a negative base
        if (num < 0) return Point(-den, -num);
        return Point(den, num);
    }

    /// Torsion of Q* is {1, -1}.
    std::vector<Point> torsion_elements() const { return {Point(1), Point(-1)}; }

    std::optional<u64> torsion_order(const Point& x) const {
        if (x.value() == 1) return 1;
        if (x.value() == -1) return 2;
        return std::nullopt;
    }

    std::string name() const { return "multiplicative"; }

private:
    std::vector<u64> excluded_;
};

/// Result of an independence test: either no relation, or a nonzero integer
/// vector e with sum e_i * P_i = 0 in the group.
struct IndependenceResult {
    bool independent = true;
    std::vector<BigInt> relation;
};

namespace detail {

/// Rows: exponent vectors of each point over the union of supports, plus a
/// trailing sign coordinate (0 or 1). Returns the sorted prime list too.
inline std::pair<IntMatrix, std::vector<BigInt>> exponent_matrix(std::span<const RationalPoint> points) {
    std::vector<BigInt> primes;
    std::vector<Factorization> nums, dens;
    for (const auto& x : points) {
        nums.push_back(factor(x.numerator()));
        dens.push_back(factor(x.denominator()));
        for (const auto& f : nums.back().factors) primes.push_back(f.prime);
        for (const auto& f : dens.back().factors) primes.push_back(f.prime);
    }
    std::sort(primes.begin(), primes.end());
    primes.erase(std::unique(primes.begin(), primes.end()), primes.end());
    IntMatrix rows;
    for (std::size_t i = 0; i < points.size(); ++i) {
        IntRow row(primes.size() + 1, 0);
        for (std::size_t c = 0; c < primes.size(); ++c) {
            row[c] = BigInt(nums[i].exponent_of(primes[c])) - BigInt(dens[i].exponent_of(primes[c]));
        }
        row.back() = points[i].sign() < 0 ? 1 : 0;
        rows.push_back(std::move(row));
    }
    return {std::move(rows), std::move(primes)};
}

/// Left kernel of the exponent matrix, with the sign coordinate taken mod 2.
/// Each kernel vector e satisfies prod x_i^{e_i} = 1 exactly.
inline IntMatrix relation_lattice(std::span<const RationalPoint> points) {
    auto [rows, primes] = exponent_matrix(points);
    const std::size_t width = primes.size() + 1;
    IntRow aux(width, 0);
    aux.back() = 2;
    rows.push_back(aux);
    IntMatrix kernel = integer_left_kernel(rows);
    for (auto& k : kernel) k.pop_back();
    return kernel;
}

}  // namespace detail

/// Decides multiplicative independence of nonzero rationals exactly.
inline IndependenceResult multiplicative_independence(std::span<const RationalPoint> points) {
    if (points.empty()) return {};
    IntMatrix kernel = detail::relation_lattice(points);
    if (kernel.empty()) return {};
    return {false, kernel.front()};
}

}  // namespace mwlab
