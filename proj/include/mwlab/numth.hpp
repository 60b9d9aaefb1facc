#pragma once

// Exact integer arithmetic: primality, factorization, prime ranges,
// multiplicative orders, exact valuations, CRT and baby-step giant-step.

#include <algorithm>
#include <cmath>
#include <concepts>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <unordered_map>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace mwlab {

using BigInt = boost::multiprecision::cpp_int;
using u64 = std::uint64_t;
using u128 = unsigned __int128;

// =============================================================================
// Machine-width modular arithmetic
// =============================================================================

inline u64 mulmod(u64 a, u64 b, u64 m) {
    return static_cast<u64>(static_cast<u128>(a) * b % m);
}

inline u64 addmod(u64 a, u64 b, u64 m) {
    u64 s = a + b;
    if (s < a || s >= m) s -= m;
    return s;
}

inline u64 submod(u64 a, u64 b, u64 m) { return a >= b ? a - b : a + (m - b); }

inline u64 powmod(u64 base, u64 exp, u64 m) {
    if (m == 1) return 0;
    u64 result = 1;
    base %= m;
    while (exp > 0) {
        if (exp & 1) result = mulmod(result, base, m);
        base = mulmod(base, base, m);
        exp >>= 1;
    }
    return result;
}

/// Inverse of a modulo m; throws std::domain_error when gcd(a, m) != 1.
inline u64 invmod(u64 a, u64 m) {
    if (m == 1) return 0;
    std::int64_t t = 0, new_t = 1;
    u64 r = m, new_r = a % m;
    while (new_r != 0) {
        u64 q = r / new_r;
        std::int64_t tmp_t = t - static_cast<std::int64_t>(q) * new_t;
        t = new_t;
        new_t = tmp_t;
        u64 tmp_r = r - q * new_r;
        r = new_r;
        new_r = tmp_r;
    }
    if (r != 1) throw std::domain_error("invmod: " + std::to_string(a) + " is not invertible mod " + std::to_string(m));
    return t < 0 ? static_cast<u64>(t + static_cast<std::int64_t>(m)) : static_cast<u64>(t);
}

/// Residue of an arbitrary-precision integer in [0, m).
inline u64 mod_u64(const BigInt& a, u64 m) {
    BigInt r = a % m;
    if (r < 0) r += m;
    return r.convert_to<u64>();
}

inline BigInt lcm_big(const BigInt& a, const BigInt& b) {
    if (a == 0 || b == 0) return 0;
    return boost::multiprecision::abs(a / boost::multiprecision::gcd(a, b) * b);
}

// =============================================================================
// Primality
// =============================================================================

namespace detail {

inline bool mr_witness(u64 n, u64 a, u64 d, int r) {
    u64 x = powmod(a, d, n);
    if (x == 1 || x == n - 1) return true;
    for (int i = 1; i < r; ++i) {
        x = mulmod(x, x, n);
        if (x == n - 1) return true;
    }
    return false;
}

}  // namespace detail

/// Deterministic Miller-Rabin; the witness set is exact for all 64-bit n.
inline bool is_prime(u64 n) {
    if (n < 2) return false;
    for (u64 p : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (n % p == 0) return n == p;
    }
    u64 d = n - 1;
    int r = 0;
    while ((d & 1) == 0) {
        d >>= 1;
        ++r;
    }
    for (u64 a : {2ULL, 3ULL, 5ULL, 7ULL, 11ULL, 13ULL, 17ULL, 19ULL, 23ULL, 29ULL, 31ULL, 37ULL}) {
        if (!detail::mr_witness(n, a, d, r)) return false;
    }
    return true;
}

/// Miller-Rabin over the first twelve prime bases; exact below 3.3e24 and
/// probabilistic beyond.
inline bool is_probable_prime(const BigInt& n) {
    if (n < 2) return false;
    if (n <= std::numeric_limits<u64>::max()) return is_prime(n.convert_to<u64>());
    for (unsigned p : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        if (n % p == 0) return false;
    }
    BigInt d = n - 1;
    unsigned r = 0;
    while (boost::multiprecision::bit_test(d, 0) == false) {
        d >>= 1;
        ++r;
    }
    for (unsigned a : {2u, 3u, 5u, 7u, 11u, 13u, 17u, 19u, 23u, 29u, 31u, 37u}) {
        BigInt x = boost::multiprecision::powm(BigInt(a), d, n);
        if (x == 1 || x == n - 1) continue;
        bool composite = true;
        for (unsigned i = 1; i < r; ++i) {
            x = x * x % n;
            if (x == n - 1) {
                composite = false;
                break;
            }
        }
        if (composite) return false;
    }
    return true;
}

// =============================================================================
// Prime ranges and sieving
// =============================================================================

/// Inclusive window [lo, hi] of candidate primes.
struct PrimeRange {
    u64 lo = 2;
    u64 hi = 2;

    PrimeRange() = default;
    PrimeRange(u64 lo_, u64 hi_) : lo(lo_), hi(hi_) {
        if (lo < 2) throw std::invalid_argument("prime range: lo must be >= 2, got " + std::to_string(lo));
        if (hi < lo) throw std::invalid_argument("prime range: hi < lo (" + std::to_string(hi) + " < " + std::to_string(lo) + ")");
    }

    bool contains(u64 v) const { return lo <= v && v <= hi; }
    friend bool operator==(const PrimeRange&, const PrimeRange&) = default;
};

namespace detail {

inline std::vector<u64> simple_sieve(u64 limit) {
    std::vector<u64> primes;
    if (limit < 2) return primes;
    std::vector<bool> composite(limit + 1, false);
    for (u64 i = 2; i <= limit; ++i) {
        if (composite[i]) continue;
        primes.push_back(i);
        for (u64 j = i * i; j <= limit; j += i) composite[j] = true;
    }
    return primes;
}

constexpr u64 kTrialDivisionBound = 1'000'000;

/// Primes below the trial-division bound, built once on first use.
inline const std::vector<u64>& small_primes() {
    static const std::vector<u64> table = simple_sieve(kTrialDivisionBound);
    return table;
}

inline u64 isqrt(u64 n) {
    u64 r = static_cast<u64>(std::sqrt(static_cast<long double>(n)));
    while (r > 0 && r * r > n) --r;
    while ((r + 1) * (r + 1) <= n) ++r;
    return r;
}

}  // namespace detail

/// Exactly the primes in [range.lo, range.hi], ascending (segmented sieve).
inline std::vector<u64> primes_in(const PrimeRange& range) {
    const u64 lo = range.lo, hi = range.hi;
    std::vector<u64> out;
    const u64 root = detail::isqrt(hi);
    const std::vector<u64> base = root <= detail::kTrialDivisionBound
                                      ? std::vector<u64>()
                                      : detail::simple_sieve(root);
    const std::vector<u64>& bp = base.empty() ? detail::small_primes() : base;
    constexpr u64 kSegment = 1 << 18;
    for (u64 seg_lo = lo; seg_lo <= hi; seg_lo += kSegment) {
        const u64 seg_hi = std::min(hi, seg_lo + kSegment - 1);
        std::vector<bool> composite(seg_hi - seg_lo + 1, false);
        for (u64 p : bp) {
            if (p * p > seg_hi) break;
            u64 start = std::max(p * p, (seg_lo + p - 1) / p * p);
            for (u64 j = start; j <= seg_hi; j += p) composite[j - seg_lo] = true;
        }
        for (u64 i = seg_lo; i <= seg_hi; ++i) {
            if (!composite[i - seg_lo]) out.push_back(i);
        }
        if (seg_hi == hi) break;
    }
    return out;
}

// =============================================================================
// Factorization
// =============================================================================

template <class Int>
struct PrimePower {
    Int prime;
    unsigned exponent = 0;
    friend bool operator==(const PrimePower&, const PrimePower&) = default;
};

/// Prime-power decomposition of a positive integer, primes strictly increasing.
template <class Int>
struct BasicFactorization {
    Int value = 1;
    std::vector<PrimePower<Int>> factors;

    Int recompose() const {
        Int acc = 1;
        for (const auto& f : factors) {
            for (unsigned i = 0; i < f.exponent; ++i) acc *= f.prime;
        }
        return acc;
    }

    unsigned exponent_of(const Int& p) const {
        for (const auto& f : factors) {
            if (f.prime == p) return f.exponent;
        }
        return 0;
    }

    /// All positive divisors, ascending.
    std::vector<Int> divisors() const {
        std::vector<Int> divs{Int(1)};
        for (const auto& f : factors) {
            const std::size_t n = divs.size();
            Int pk = 1;
            for (unsigned e = 1; e <= f.exponent; ++e) {
                pk *= f.prime;
                for (std::size_t i = 0; i < n; ++i) divs.push_back(divs[i] * pk);
            }
        }
        std::sort(divs.begin(), divs.end());
        return divs;
    }

    friend bool operator==(const BasicFactorization&, const BasicFactorization&) = default;
};

using SmallFactorization = BasicFactorization<u64>;
using Factorization = BasicFactorization<BigInt>;

namespace detail {

inline u64 pollard_brent(u64 n) {
    if (n % 2 == 0) return 2;
    for (u64 c = 1;; ++c) {
        u64 y = 2, x = 2, g = 1, q = 1, ys = 2;
        const u64 m = 128;
        u64 r = 1;
        auto f = [&](u64 v) { return addmod(mulmod(v, v, n), c, n); };
        do {
            x = y;
            for (u64 i = 0; i < r; ++i) y = f(y);
            u64 k = 0;
            do {
                ys = y;
                for (u64 i = 0; i < std::min(m, r - k); ++i) {
                    y = f(y);
                    q = mulmod(q, x > y ? x - y : y - x, n);
                }
                g = std::gcd(q, n);
                k += m;
            } while (k < r && g == 1);
            r *= 2;
        } while (g == 1);
        if (g == n) {
            do {
                ys = f(ys);
                g = std::gcd(x > ys ? x - ys : ys - x, n);
            } while (g == 1);
        }
        if (g != n) return g;
    }
}

inline void factor_rho(u64 n, std::vector<u64>& out) {
    if (n == 1) return;
    if (is_prime(n)) {
        out.push_back(n);
        return;
    }
    u64 d = pollard_brent(n);
    factor_rho(d, out);
    factor_rho(n / d, out);
}

inline BigInt pollard_brent_big(const BigInt& n) {
    if (!boost::multiprecision::bit_test(n, 0)) return 2;
    for (unsigned c = 1;; ++c) {
        BigInt x = 2, y = 2, d = 1;
        auto f = [&](const BigInt& v) { return (v * v + c) % n; };
        while (d == 1) {
            x = f(x);
            y = f(f(y));
            d = boost::multiprecision::gcd(x > y ? BigInt(x - y) : BigInt(y - x), n);
        }
        if (d != n) return d;
    }
}

inline void factor_rho_big(const BigInt& n, std::vector<BigInt>& out) {
    if (n == 1) return;
    if (n <= std::numeric_limits<u64>::max()) {
        std::vector<u64> small;
        factor_rho(n.convert_to<u64>(), small);
        for (u64 p : small) out.emplace_back(p);
        return;
    }
    if (is_probable_prime(n)) {
        out.push_back(n);
        return;
    }
    BigInt d = pollard_brent_big(n);
    factor_rho_big(d, out);
    factor_rho_big(n / d, out);
}

template <class Int>
BasicFactorization<Int> collect(Int value, std::vector<Int> primes) {
    std::sort(primes.begin(), primes.end());
    BasicFactorization<Int> f;
    f.value = std::move(value);
    for (auto& p : primes) {
        if (!f.factors.empty() && f.factors.back().prime == p) {
            ++f.factors.back().exponent;
        } else {
            f.factors.push_back({p, 1});
        }
    }
    return f;
}

}  // namespace detail

/// Factor a positive machine integer: trial division, then Pollard-Brent.
inline SmallFactorization factor(u64 n) {
    if (n == 0) throw std::invalid_argument("factor: n must be positive");
    std::vector<u64> primes;
    u64 m = n;
    for (u64 p : detail::small_primes()) {
        if (p * p > m) break;
        while (m % p == 0) {
            primes.push_back(p);
            m /= p;
        }
    }
    if (m > 1) detail::factor_rho(m, primes);
    return detail::collect<u64>(n, std::move(primes));
}

template <std::signed_integral T>
SmallFactorization factor(T n) {
    if (n <= 0) throw std::invalid_argument("factor: n must be positive, got " + std::to_string(n));
    return factor(static_cast<u64>(n));
}

/// Factor a positive arbitrary-precision integer.
inline Factorization factor(const BigInt& n) {
    if (n <= 0) throw std::invalid_argument("factor: n must be positive, got " + n.str());
    std::vector<BigInt> primes;
    BigInt m = n;
    for (u64 p : detail::small_primes()) {
        if (m <= std::numeric_limits<u64>::max()) break;
        if (BigInt(p) * p > m) break;
        while (m % p == 0) {
            primes.emplace_back(p);
            m /= p;
        }
    }
    if (m <= std::numeric_limits<u64>::max()) {
        for (const auto& f : factor(m.convert_to<u64>()).factors) {
            for (unsigned i = 0; i < f.exponent; ++i) primes.emplace_back(f.prime);
        }
    } else if (m > 1) {
        detail::factor_rho_big(m, primes);
    }
    return detail::collect<BigInt>(n, std::move(primes));
}

// =============================================================================
// Orders and valuations
// =============================================================================

/// Order of a group element given the factored group order. `killed(k)` must
/// report whether k times the element is the identity; killed(N) must hold.
template <class Killed>
u64 order_by_stripping(const SmallFactorization& group_order, Killed&& killed) {
    u64 ord = group_order.value;
    for (const auto& f : group_order.factors) {
        for (unsigned i = 0; i < f.exponent; ++i) {
            if (killed(ord / f.prime)) {
                ord /= f.prime;
            } else {
                break;
            }
        }
    }
    return ord;
}

/// Order of the residue a in F_p*, with p - 1 already factored.
inline u64 residue_order(u64 a, u64 p, const SmallFactorization& p_minus_1) {
    a %= p;
    if (a == 0) throw std::domain_error("residue_order: residue is 0 mod " + std::to_string(p));
    return order_by_stripping(p_minus_1, [&](u64 k) { return powmod(a, k, p) == 1; });
}

/// Least n >= 1 with a^n = 1 (mod p).
inline u64 multiplicative_order(const BigInt& a, u64 p) {
    if (!is_prime(p)) throw std::invalid_argument("multiplicative_order: " + std::to_string(p) + " is not prime");
    const u64 r = mod_u64(a, p);
    if (r == 0) throw std::domain_error("multiplicative_order: " + std::to_string(p) + " divides " + a.str());
    return residue_order(r, p, factor(p - 1));
}

/// Exponent of the prime l in n (n != 0).
template <class Int>
unsigned valuation(u64 l, Int n) {
    if (n == 0) throw std::invalid_argument("valuation of 0");
    if (n < 0) n = -n;
    unsigned v = 0;
    while (n % l == 0) {
        n /= l;
        ++v;
    }
    return v;
}

/// l^k || n for k > 0; l does not divide n for k = 0.
template <class Int>
bool exact_valuation(u64 l, unsigned k, const Int& n) {
    if (n < 1) throw std::invalid_argument("exact_valuation: n must be positive");
    return valuation(l, n) == k;
}

// =============================================================================
// Chinese remaindering
// =============================================================================

struct CrtSolution {
    BigInt value;
    BigInt modulus;
    friend bool operator==(const CrtSolution&, const CrtSolution&) = default;
};

/// Incremental CRT over arbitrary (not necessarily coprime) moduli.
class CrtAccumulator {
public:
    /// Folds in x = residue (mod modulus); returns false (and leaves the
    /// state unchanged) when the congruence contradicts the ones so far.
    bool add(const BigInt& residue, const BigInt& modulus) {
        if (modulus < 1) throw std::invalid_argument("crt: modulus must be >= 1");
        BigInt r = residue % modulus;
        if (r < 0) r += modulus;
        // value + modulus_ * t = r (mod m)
        BigInt g = boost::multiprecision::gcd(modulus_, modulus);
        BigInt diff = r - value_;
        if (diff % g != 0) return false;
        BigInt m_over_g = modulus / g;
        BigInt inv = inverse_mod(BigInt((modulus_ / g) % m_over_g), m_over_g);
        BigInt t = (diff / g) % m_over_g * inv % m_over_g;
        if (t < 0) t += m_over_g;
        BigInt new_mod = modulus_ * m_over_g;
        value_ = (value_ + modulus_ * t) % new_mod;
        if (value_ < 0) value_ += new_mod;
        modulus_ = new_mod;
        return true;
    }

    const BigInt& value() const { return value_; }
    const BigInt& modulus() const { return modulus_; }
    CrtSolution solution() const { return {value_, modulus_}; }

    /// Representative of the class in (-modulus/2, modulus/2].
    BigInt symmetric_value() const {
        BigInt v = value_;
        if (2 * v > modulus_) v -= modulus_;
        return v;
    }

private:
    static BigInt inverse_mod(BigInt a, const BigInt& m) {
        if (m == 1) return 0;
        BigInt t = 0, new_t = 1, r = m, new_r = a % m;
        if (new_r < 0) new_r += m;
        while (new_r != 0) {
            BigInt q = r / new_r;
            BigInt tmp = t - q * new_t;
            t = new_t;
            new_t = tmp;
            tmp = r - q * new_r;
            r = new_r;
            new_r = tmp;
        }
        if (t < 0) t += m;
        return t;
    }

    BigInt value_ = 0;
    BigInt modulus_ = 1;
};

/// Unique solution modulo the lcm of the moduli, or nullopt when inconsistent.
inline std::optional<CrtSolution> crt(const std::vector<std::pair<BigInt, BigInt>>& congruences) {
    CrtAccumulator acc;
    for (const auto& [r, m] : congruences) {
        if (!acc.add(r, m)) return std::nullopt;
    }
    return acc.solution();
}

// =============================================================================
// Baby-step giant-step
// =============================================================================

/// Least e in [0, order) with base^e = target in a group where `base` has
/// exact order `order`. Group operations are supplied by the caller.
template <class Elem, class Op, class Hash, class Eq = std::equal_to<Elem>>
std::optional<u64> bsgs(const Elem& identity, const Elem& base, const Elem& target, u64 order,
                        Op&& op, const Elem& base_inverse, Hash hash = Hash(), Eq eq = Eq()) {
    if (order == 0) throw std::invalid_argument("bsgs: order must be positive");
    const u64 m = detail::isqrt(order - 1) + 1;
    std::unordered_map<Elem, u64, Hash, Eq> baby(static_cast<std::size_t>(m) * 2, hash, eq);
    Elem cur = identity;
    for (u64 j = 0; j < m; ++j) {
        baby.try_emplace(cur, j);
        cur = op(cur, base);
    }
    // giant = base^{-m}
    Elem giant = identity;
    for (u64 j = 0; j < m; ++j) giant = op(giant, base_inverse);
    Elem gamma = target;
    for (u64 i = 0; i * m < order; ++i) {
        if (auto it = baby.find(gamma); it != baby.end()) {
            const u64 e = i * m + it->second;
            if (e < order) return e;
        }
        gamma = op(gamma, giant);
    }
    return std::nullopt;
}

/// Discrete log of target to the base in F_p*, base of exact order
/// `order_of_base`; nullopt when target is not in the subgroup.
inline std::optional<u64> bsgs_dlog(u64 base, u64 target, u64 p, u64 order_of_base) {
    base %= p;
    target %= p;
    if (base == 0) throw std::domain_error("bsgs_dlog: p divides base");
    if (target == 0) throw std::domain_error("bsgs_dlog: p divides target");
    auto mul = [p](u64 a, u64 b) { return mulmod(a, b, p); };
    return bsgs<u64>(1, base, target, order_of_base, mul, invmod(base, p), std::hash<u64>());
}

}  // namespace mwlab
