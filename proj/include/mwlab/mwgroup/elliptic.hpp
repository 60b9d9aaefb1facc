#pragma once

// Elliptic curves over Q in long Weierstrass form
//   y^2 + a1 xy + a3 y = x^3 + a2 x^2 + a4 x + a6
// with exact rational arithmetic and reduction to E(F_v) at good primes.

#include <algorithm>
#include <array>
#include <functional>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "mwlab/mwgroup/multiplicative.hpp"
#include "mwlab/numth.hpp"

namespace mwlab {

struct WeierstrassCurve {
    BigInt a1, a2, a3, a4, a6;

    WeierstrassCurve() = default;
    WeierstrassCurve(BigInt a1_, BigInt a2_, BigInt a3_, BigInt a4_, BigInt a6_)
        : a1(std::move(a1_)), a2(std::move(a2_)), a3(std::move(a3_)), a4(std::move(a4_)), a6(std::move(a6_)) {
        if (discriminant() == 0) throw std::invalid_argument("singular curve: discriminant is zero");
    }

    BigInt b2() const { return a1 * a1 + 4 * a2; }
    BigInt b4() const { return 2 * a4 + a1 * a3; }
    BigInt b6() const { return a3 * a3 + 4 * a6; }
    BigInt b8() const { return a1 * a1 * a6 + 4 * a2 * a6 - a1 * a3 * a4 + a2 * a3 * a3 - a4 * a4; }
    BigInt c4() const { return b2() * b2() - 24 * b4(); }
    BigInt c6() const { return -b2() * b2() * b2() + 36 * b2() * b4() - 216 * b6(); }

    BigInt discriminant() const {
        const BigInt B2 = b2(), B4 = b4(), B6 = b6(), B8 = b8();
        return -B2 * B2 * B8 - 8 * B4 * B4 * B4 - 27 * B6 * B6 + 9 * B2 * B4 * B6;
    }

    friend bool operator==(const WeierstrassCurve&, const WeierstrassCurve&) = default;
};

/// Affine point or the point at infinity.
template <class E>
struct AffinePoint {
    bool infinity = true;
    E x{};
    E y{};

    static AffinePoint identity() { return {}; }
    static AffinePoint affine(E x_, E y_) { return {false, std::move(x_), std::move(y_)}; }

    friend bool operator==(const AffinePoint& a, const AffinePoint& b) {
        if (a.infinity || b.infinity) return a.infinity == b.infinity;
        return a.x == b.x && a.y == b.y;
    }
};

using CurvePoint = AffinePoint<Rational>;
using ModPoint = AffinePoint<u64>;

namespace detail {

struct RationalField {
    using E = Rational;
    E zero() const { return 0; }
    E from(const BigInt& a) const { return Rational(a); }
    E add(const E& a, const E& b) const { return a + b; }
    E sub(const E& a, const E& b) const { return a - b; }
    E mul(const E& a, const E& b) const { return a * b; }
    E div(const E& a, const E& b) const { return a / b; }
    bool is_zero(const E& a) const { return a == 0; }
};

struct PrimeField {
    using E = u64;
    u64 p;
    E zero() const { return 0; }
    E from(const BigInt& a) const { return mod_u64(a, p); }
    E add(E a, E b) const { return addmod(a, b, p); }
    E sub(E a, E b) const { return submod(a, b, p); }
    E mul(E a, E b) const { return mulmod(a, b, p); }
    E div(E a, E b) const { return mulmod(a, invmod(b, p), p); }
    bool is_zero(E a) const { return a == 0; }
};

/// Group law on a long-form Weierstrass curve over any field.
template <class Field>
struct WeierstrassLaw {
    using E = typename Field::E;
    using Pt = AffinePoint<E>;

    Field f;
    E a1, a2, a3, a4, a6;

    WeierstrassLaw(Field field, const WeierstrassCurve& c)
        : f(field), a1(f.from(c.a1)), a2(f.from(c.a2)), a3(f.from(c.a3)), a4(f.from(c.a4)), a6(f.from(c.a6)) {}

    E lhs_minus_rhs(const E& x, const E& y) const {
        E lhs = f.add(f.add(f.mul(y, y), f.mul(f.mul(a1, x), y)), f.mul(a3, y));
        E x2 = f.mul(x, x);
        E rhs = f.add(f.add(f.add(f.mul(x2, x), f.mul(a2, x2)), f.mul(a4, x)), a6);
        return f.sub(lhs, rhs);
    }

    bool on_curve(const Pt& p) const { return p.infinity || f.is_zero(lhs_minus_rhs(p.x, p.y)); }

    Pt negate(const Pt& p) const {
        if (p.infinity) return p;
        return Pt::affine(p.x, f.sub(f.sub(f.zero(), p.y), f.add(f.mul(a1, p.x), a3)));
    }

    Pt add(const Pt& p, const Pt& q) const {
        if (p.infinity) return q;
        if (q.infinity) return p;
        E lambda;
        if (p.x == q.x) {
            // q = -p
            if (f.is_zero(f.add(f.add(p.y, q.y), f.add(f.mul(a1, q.x), a3)))) return Pt::identity();
            E three_x2 = f.mul(f.add(f.add(p.x, p.x), p.x), p.x);
            E num = f.sub(f.add(f.add(three_x2, f.mul(f.add(a2, a2), p.x)), a4), f.mul(a1, p.y));
            E den = f.add(f.add(f.add(p.y, p.y), f.mul(a1, p.x)), a3);
            lambda = f.div(num, den);
        } else {
            lambda = f.div(f.sub(q.y, p.y), f.sub(q.x, p.x));
        }
        E nu = f.sub(p.y, f.mul(lambda, p.x));
        E x3 = f.sub(f.sub(f.sub(f.add(f.mul(lambda, lambda), f.mul(a1, lambda)), a2), p.x), q.x);
        E y3 = f.sub(f.sub(f.sub(f.zero(), f.mul(f.add(lambda, a1), x3)), nu), a3);
        return Pt::affine(std::move(x3), std::move(y3));
    }

    /// Double-and-add; negative multipliers use the negation.
    template <class Int>
    Pt mul(Pt p, Int n) const {
        if constexpr (!std::is_unsigned_v<Int>) {
            if (n < 0) {
                p = negate(p);
                n = -n;
            }
        }
        Pt acc = Pt::identity();
        while (n > 0) {
            if (n % 2 == 1) acc = add(acc, p);
            n /= 2;
            if (n > 0) p = add(p, p);
        }
        return acc;
    }
};

}  // namespace detail

/// |E(F_v)| by enumeration; v must not divide the discriminant.
inline u64 curve_group_order(const WeierstrassCurve& curve, u64 v) {
    if (!is_prime(v)) throw std::invalid_argument(std::to_string(v) + " is not prime");
    if (curve.discriminant() % v == 0) throw BadReduction("curve has bad reduction at " + std::to_string(v));
    detail::PrimeField f{v};
    detail::WeierstrassLaw<detail::PrimeField> law(f, curve);
    u64 count = 1;  // point at infinity
    if (v == 2) {
        for (u64 x = 0; x < 2; ++x) {
            for (u64 y = 0; y < 2; ++y) {
                if (law.lhs_minus_rhs(x, y) == 0) ++count;
            }
        }
        return count;
    }
    // y^2 + h(x) y - g(x) = 0 has 1 + chi(h^2 + 4g) solutions for odd v.
    std::vector<signed char> chi(v, -1);
    chi[0] = 0;
    for (u64 y = 1; y <= v / 2; ++y) chi[mulmod(y, y, v)] = 1;
    for (u64 x = 0; x < v; ++x) {
        const u64 h = f.add(f.mul(law.a1, x), law.a3);
        const u64 x2 = f.mul(x, x);
        const u64 g = f.add(f.add(f.add(f.mul(x2, x), f.mul(law.a2, x2)), f.mul(law.a4, x)), law.a6);
        const u64 disc = f.add(f.mul(h, h), f.mul(4 % v, g));
        count += static_cast<u64>(1 + chi[disc]);
    }
    return count;
}

class EllipticGroup {
public:
    using Point = CurvePoint;
    using Reduced = ModPoint;

    /// Reduction context at a prime of good reduction.
    class Local {
    public:
        Local(const WeierstrassCurve& curve, u64 p)
            : p_(p), law_(detail::PrimeField{p}, curve), order_(factor(curve_group_order(curve, p))) {}

        u64 prime() const { return p_; }
        const SmallFactorization& group_order() const { return order_; }

        /// Points with p in the x-denominator reduce to the identity.
        bool reduces(const Point&) const { return true; }

        Reduced reduce(const Point& pt) const {
            if (pt.infinity) return Reduced::identity();
            if (boost::multiprecision::denominator(pt.x) % p_ == 0) return Reduced::identity();
            Reduced r = Reduced::affine(reduce_coord(pt.x), reduce_coord(pt.y));
            if (!law_.on_curve(r)) throw BadReduction("reduction of point is off the curve at " + std::to_string(p_));
            return r;
        }

        Reduced identity() const { return Reduced::identity(); }
        bool is_identity(const Reduced& a) const { return a.infinity; }
        Reduced add(const Reduced& a, const Reduced& b) const { return law_.add(a, b); }
        Reduced negate(const Reduced& a) const { return law_.negate(a); }
        Reduced mul(const Reduced& a, u64 k) const { return law_.mul(a, k); }
        bool on_curve(const Reduced& a) const { return law_.on_curve(a); }

        std::size_t hash(const Reduced& a) const {
            return a.infinity ? static_cast<std::size_t>(-1) : std::hash<u64>()(a.x * p_ + a.y);
        }

        u64 order(const Reduced& a) const {
            return order_by_stripping(order_, [&](u64 k) { return mul(a, k).infinity; });
        }

        std::optional<u64> dlog(const Reduced& base, const Reduced& target, u64 order_of_base) const {
            auto op = [this](const Reduced& a, const Reduced& b) { return add(a, b); };
            auto h = [this](const Reduced& a) { return hash(a); };
            return bsgs<Reduced>(identity(), base, target, order_of_base, op, negate(base), h);
        }

        /// Every point of E(F_p), identity first.
        std::vector<Reduced> all_points() const {
            std::vector<Reduced> pts{Reduced::identity()};
            for (u64 x = 0; x < p_; ++x) {
                for (u64 y = 0; y < p_; ++y) {
                    if (law_.lhs_minus_rhs(x, y) == 0) pts.push_back(Reduced::affine(x, y));
                }
            }
            return pts;
        }

    private:
        u64 reduce_coord(const Rational& q) const {
            const u64 num = mod_u64(boost::multiprecision::numerator(q), p_);
            const u64 den = mod_u64(boost::multiprecision::denominator(q), p_);
            return mulmod(num, invmod(den, p_), p_);
        }

        u64 p_;
        detail::WeierstrassLaw<detail::PrimeField> law_;
        SmallFactorization order_;
    };

    explicit EllipticGroup(WeierstrassCurve curve)
        : curve_(std::move(curve)), disc_(curve_.discriminant()), law_(detail::RationalField{}, curve_) {}

    const WeierstrassCurve& curve() const { return curve_; }
    const BigInt& discriminant() const { return disc_; }

    bool on_curve(const Point& p) const { return law_.on_curve(p); }

    Point make_point(Rational x, Rational y) const {
        Point p = Point::affine(std::move(x), std::move(y));
        if (!on_curve(p)) throw std::invalid_argument("point is not on the curve");
        return p;
    }

    bool good_prime(std::span<const Point>, u64 v) const { return disc_ % v != 0; }

    Local at(u64 v) const {
        if (!is_prime(v)) throw std::invalid_argument(std::to_string(v) + " is not prime");
        if (disc_ % v == 0) throw BadReduction("curve has bad reduction at " + std::to_string(v));
        return Local(curve_, v);
    }

    Point identity() const { return Point::identity(); }
    bool is_identity(const Point& p) const { return p.infinity; }
    Point add(const Point& a, const Point& b) const { return law_.add(a, b); }
    Point negate(const Point& a) const { return law_.negate(a); }
    Point scalar_mul(const Point& a, const BigInt& n) const { return law_.mul(a, n); }

    /// Order of a rational torsion point (at most 12 by Mazur), or nullopt.
    std::optional<u64> torsion_order(const Point& p) const {
        Point acc = p;
        for (u64 k = 1; k <= 12; ++k) {
            if (acc.infinity) return k;
            acc = add(acc, p);
        }
        return std::nullopt;
    }

    /// gcd of |E(F_v)| over the first `count` good odd primes; the rational
    /// torsion subgroup injects into each E(F_v), so its order divides this.
    u64 torsion_bound(std::size_t count = 8) const {
        u64 g = 0;
        std::size_t used = 0;
        for (u64 v = 3; used < count; v += 2) {
            if (!is_prime(v) || disc_ % v == 0) continue;
            g = std::gcd(g, curve_group_order(curve_, v));
            ++used;
        }
        return g;
    }

    /// All rational torsion points: Nagell-Lutz candidates on the integral
    /// short model, kept when their order divides torsion_bound().
    std::vector<Point> torsion_elements() const;

    std::string name() const { return "elliptic"; }

private:
    WeierstrassCurve curve_;
    BigInt disc_;
    detail::WeierstrassLaw<detail::RationalField> law_;
};

namespace detail {

/// Integer roots of x^3 + a x + c, found by bisection on monotone pieces.
inline std::vector<BigInt> depressed_cubic_integer_roots(const BigInt& a, const BigInt& c) {
    auto f = [&](const BigInt& x) { return x * x * x + a * x + c; };
    const BigInt bound = 1 + std::max(boost::multiprecision::abs(a), boost::multiprecision::abs(c));
    struct Piece {
        BigInt lo, hi;
        bool increasing;
    };
    std::vector<Piece> pieces;
    if (a >= 0) {
        pieces.push_back({-bound, bound, true});
    } else {
        const BigInt s0 = boost::multiprecision::sqrt(BigInt(-a / 3));
        pieces.push_back({-bound, -s0 - 1, true});
        pieces.push_back({-s0, s0, false});
        pieces.push_back({s0 + 1, bound, true});
    }
    std::vector<BigInt> roots;
    for (const auto& piece : pieces) {
        BigInt lo = piece.lo, hi = piece.hi;
        while (lo <= hi) {
            BigInt mid = lo + (hi - lo) / 2;
            BigInt val = f(mid);
            if (val == 0) {
                roots.push_back(mid);
                break;
            }
            if ((val < 0) == piece.increasing) {
                lo = mid + 1;
            } else {
                hi = mid - 1;
            }
        }
    }
    std::sort(roots.begin(), roots.end());
    roots.erase(std::unique(roots.begin(), roots.end()), roots.end());
    return roots;
}

inline bool curve_point_less(const CurvePoint& a, const CurvePoint& b) {
    if (a.infinity != b.infinity) return a.infinity;
    if (a.infinity) return false;
    if (a.x != b.x) return a.x < b.x;
    return a.y < b.y;
}

}  // namespace detail

inline std::vector<CurvePoint> EllipticGroup::torsion_elements() const {
    // y'^2 = x'^3 + A x' + B with x' = 36x + 3 b2, y' = 108 (2y + a1 x + a3).
    const BigInt A = -27 * curve_.c4();
    const BigInt B = -54 * curve_.c6();
    const BigInt D = 4 * A * A * A + 27 * B * B;
    const u64 bound = torsion_bound();

    std::vector<BigInt> ys{0};
    const Factorization fd = factor(BigInt(boost::multiprecision::abs(D)));
    BasicFactorization<BigInt> half;
    half.value = 1;
    for (const auto& f : fd.factors) {
        if (f.exponent >= 2) {
            half.factors.push_back({f.prime, f.exponent / 2});
        }
    }
    half.value = half.recompose();
    for (const auto& y : half.divisors()) ys.push_back(y);

    std::vector<Point> out{Point::identity()};
    const BigInt b2 = curve_.b2();
    for (const auto& yabs : ys) {
        for (const auto& xs : detail::depressed_cubic_integer_roots(A, B - yabs * yabs)) {
            for (int s : {1, -1}) {
                if (yabs == 0 && s < 0) continue;
                const BigInt ys_signed = s * yabs;
                Rational x = Rational(xs - 3 * b2) / 36;
                Rational y = (Rational(ys_signed) / 108 - Rational(curve_.a1) * x - Rational(curve_.a3)) / 2;
                Point p = Point::affine(x, y);
                if (!on_curve(p)) continue;
                auto ord = torsion_order(p);
                if (ord && bound % *ord == 0) out.push_back(p);
            }
        }
    }
    std::sort(out.begin(), out.end(), detail::curve_point_less);
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Searches for a nonzero relation sum n_i P_i = O with |n_i| <= bound,
/// filtering candidates through reductions at `filter_primes` good primes
/// and confirming survivors with exact arithmetic.
inline std::optional<std::vector<BigInt>> elliptic_relation_search(const EllipticGroup& g,
                                                                   std::span<const CurvePoint> points,
                                                                   int bound = 10,
                                                                   std::size_t filter_primes = 20) {
    std::vector<EllipticGroup::Local> locals;
    for (u64 v = 5; locals.size() < filter_primes; v += 2) {
        if (is_prime(v) && g.good_prime(points, v)) locals.push_back(g.at(v));
    }
    std::vector<std::vector<ModPoint>> reduced(locals.size());
    for (std::size_t k = 0; k < locals.size(); ++k) {
        for (const auto& p : points) reduced[k].push_back(locals[k].reduce(p));
    }
    const std::size_t t = points.size();
    if (t == 0) return std::nullopt;
    // shells of growing sup-norm, so the first hit is a smallest relation
    for (int r = 1; r <= bound; ++r) {
        std::vector<int> coeff(t, -r);
        for (;;) {
            // first nonzero coefficient positive: each relation up to sign once
            auto first_nz = std::find_if(coeff.begin(), coeff.end(), [](int c) { return c != 0; });
            const bool on_shell = std::any_of(coeff.begin(), coeff.end(), [r](int c) { return std::abs(c) == r; });
            if (on_shell && first_nz != coeff.end() && *first_nz > 0) {
                bool survives = true;
                for (std::size_t k = 0; k < locals.size() && survives; ++k) {
                    ModPoint acc = ModPoint::identity();
                    for (std::size_t i = 0; i < t; ++i) {
                        if (coeff[i] == 0) continue;
                        ModPoint term = locals[k].mul(reduced[k][i], static_cast<u64>(std::abs(coeff[i])));
                        acc = locals[k].add(acc, coeff[i] < 0 ? locals[k].negate(term) : term);
                    }
                    survives = acc.infinity;
                }
                if (survives) {
                    CurvePoint acc = CurvePoint::identity();
                    for (std::size_t i = 0; i < t; ++i) acc = g.add(acc, g.scalar_mul(points[i], coeff[i]));
                    if (acc.infinity) return std::vector<BigInt>(coeff.begin(), coeff.end());
                }
            }
            std::size_t i = 0;
            while (i < t && coeff[i] == r) coeff[i++] = -r;
            if (i == t) break;
            ++coeff[i];
        }
    }
    return std::nullopt;
}

}  // namespace mwlab
