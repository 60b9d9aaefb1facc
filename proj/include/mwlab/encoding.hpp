#pragma once

// Textual encodings of backends and points:
//   multiplicative point   "±num/den" (or "±num")
//   curve                  "ec:a1,a2,a3,a4,a6"
//   curve point            "(x,y)" with rational coordinates, or "O"
//   S-set                  "S={p1,p2,...}"

#include <cctype>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "mwlab/mwgroup.hpp"

namespace mwlab {

class ParseError : public std::invalid_argument {
public:
    using std::invalid_argument::invalid_argument;
};

inline std::string trim(std::string_view s) {
    std::size_t b = 0, e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return std::string(s.substr(b, e - b));
}

/// Splits on `sep` outside any (), {} or [] nesting.
inline std::vector<std::string> split_top_level(std::string_view s, char sep = ',') {
    std::vector<std::string> out;
    int depth = 0;
    std::size_t start = 0;
    for (std::size_t i = 0; i < s.size(); ++i) {
        const char c = s[i];
        if (c == '(' || c == '{' || c == '[') ++depth;
        if (c == ')' || c == '}' || c == ']') --depth;
        if (depth < 0) throw ParseError("unbalanced brackets in '" + std::string(s) + "'");
        if (c == sep && depth == 0) {
            out.push_back(trim(s.substr(start, i - start)));
            start = i + 1;
        }
    }
    if (depth != 0) throw ParseError("unbalanced brackets in '" + std::string(s) + "'");
    out.push_back(trim(s.substr(start)));
    if (out.size() == 1 && out.front().empty()) out.clear();
    return out;
}

inline BigInt parse_integer(std::string_view text) {
    std::string s = trim(text);
    std::size_t i = 0;
    bool negative = false;
    if (i < s.size() && (s[i] == '+' || s[i] == '-')) negative = s[i++] == '-';
    if (i == s.size()) throw ParseError("expected an integer, got '" + s + "'");
    for (std::size_t k = i; k < s.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(s[k]))) throw ParseError("expected an integer, got '" + s + "'");
    }
    BigInt n(s.substr(i));
    return negative ? BigInt(-n) : n;
}

inline u64 parse_u64(std::string_view text) {
    const BigInt n = parse_integer(text);
    if (n < 0 || n > std::numeric_limits<u64>::max()) throw ParseError("expected a nonnegative 64-bit integer, got '" + std::string(text) + "'");
    return n.convert_to<u64>();
}

inline Rational parse_rational(std::string_view text) {
    const std::string s = trim(text);
    const auto slash = s.find('/');
    if (slash == std::string::npos) return Rational(parse_integer(s));
    const BigInt num = parse_integer(s.substr(0, slash));
    const std::string den_text = trim(s.substr(slash + 1));
    if (!den_text.empty() && (den_text[0] == '+' || den_text[0] == '-')) throw ParseError("sign belongs on the numerator: '" + s + "'");
    const BigInt den = parse_integer(den_text);
    if (den == 0) throw ParseError("zero denominator in '" + s + "'");
    return Rational(num, den);
}

inline std::string format_rational(const Rational& q) {
    const BigInt num = boost::multiprecision::numerator(q);
    const BigInt den = boost::multiprecision::denominator(q);
    return den == 1 ? num.str() : num.str() + "/" + den.str();
}

inline RationalPoint parse_multiplicative_point(std::string_view text) {
    const Rational q = parse_rational(text);
    if (q == 0) throw ParseError("multiplicative point must be nonzero");
    return RationalPoint(q);
}

inline std::string format_point(const RationalPoint& p) { return format_rational(p.value()); }

inline WeierstrassCurve parse_curve(std::string_view text) {
    const std::string s = trim(text);
    if (s.rfind("ec:", 0) != 0) throw ParseError("curve must look like ec:a1,a2,a3,a4,a6, got '" + s + "'");
    const auto parts = split_top_level(std::string_view(s).substr(3));
    if (parts.size() != 5) throw ParseError("curve needs exactly five coefficients, got '" + s + "'");
    try {
        return WeierstrassCurve(parse_integer(parts[0]), parse_integer(parts[1]), parse_integer(parts[2]),
                                parse_integer(parts[3]), parse_integer(parts[4]));
    } catch (const ParseError&) {
        throw;
    } catch (const std::invalid_argument& e) {
        throw ParseError(std::string(e.what()) + " for '" + s + "'");
    }
}

inline std::string format_curve(const WeierstrassCurve& c) {
    return "ec:" + c.a1.str() + "," + c.a2.str() + "," + c.a3.str() + "," + c.a4.str() + "," + c.a6.str();
}

inline CurvePoint parse_curve_point(const EllipticGroup& g, std::string_view text) {
    const std::string s = trim(text);
    if (s == "O") return CurvePoint::identity();
    if (s.size() < 2 || s.front() != '(' || s.back() != ')') throw ParseError("curve point must be (x,y) or O, got '" + s + "'");
    const auto parts = split_top_level(std::string_view(s).substr(1, s.size() - 2));
    if (parts.size() != 2) throw ParseError("curve point must have two coordinates, got '" + s + "'");
    CurvePoint p = CurvePoint::affine(parse_rational(parts[0]), parse_rational(parts[1]));
    if (!g.on_curve(p)) throw ParseError("point " + s + " is not on " + format_curve(g.curve()));
    return p;
}

inline std::string format_point(const CurvePoint& p) {
    if (p.infinity) return "O";
    return "(" + format_rational(p.x) + "," + format_rational(p.y) + ")";
}

inline std::vector<u64> parse_s_set(std::string_view text) {
    const std::string s = trim(text);
    if (s.rfind("S={", 0) != 0 || s.back() != '}') throw ParseError("S-set must look like S={p1,p2,...}, got '" + s + "'");
    std::vector<u64> out;
    for (const auto& part : split_top_level(std::string_view(s).substr(3, s.size() - 4))) {
        const u64 p = parse_u64(part);
        if (!is_prime(p)) throw ParseError("S-set entry " + part + " is not prime");
        out.push_back(p);
    }
    return out;
}

/// "Q" / "mult" / "multiplicative" / "S={...}" / "ec:...".
inline Backend parse_backend(std::string_view text) {
    const std::string s = trim(text);
    if (s.empty() || s == "Q" || s == "mult" || s == "multiplicative") return MultiplicativeGroup();
    if (s.rfind("S=", 0) == 0) return MultiplicativeGroup(parse_s_set(s));
    if (s.rfind("ec:", 0) == 0) return EllipticGroup(parse_curve(s));
    throw ParseError("unknown backend '" + s + "' (expected Q, S={...} or ec:a1,a2,a3,a4,a6)");
}

inline std::string format_backend(const Backend& b) {
    if (const auto* m = std::get_if<MultiplicativeGroup>(&b)) {
        if (m->excluded_primes().empty()) return "Q";
        std::string s = "S={";
        for (std::size_t i = 0; i < m->excluded_primes().size(); ++i) {
            if (i) s += ",";
            s += std::to_string(m->excluded_primes()[i]);
        }
        return s + "}";
    }
    return format_curve(std::get<EllipticGroup>(b).curve());
}

inline RationalPoint parse_point(const MultiplicativeGroup&, std::string_view text) {
    return parse_multiplicative_point(text);
}

inline CurvePoint parse_point(const EllipticGroup& g, std::string_view text) { return parse_curve_point(g, text); }

/// Comma- or semicolon-separated list of points for the given backend.
template <MordellWeilGroup G>
std::vector<typename G::Point> parse_points(const G& g, std::string_view text) {
    std::vector<typename G::Point> out;
    const char sep = text.find(';') != std::string_view::npos ? ';' : ',';
    for (const auto& part : split_top_level(text, sep)) {
        if (part.empty()) throw ParseError("empty entry in point list '" + std::string(text) + "'");
        out.push_back(parse_point(g, part));
    }
    return out;
}

template <class P>
std::string format_points(const std::vector<P>& pts) {
    std::string s;
    for (std::size_t i = 0; i < pts.size(); ++i) {
        if (i) s += ",";
        s += format_point(pts[i]);
    }
    return s;
}

}  // namespace mwlab
