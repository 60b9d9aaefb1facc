#pragma once

// Condition reports and relation certificates, with JSON / CSV / text
// serialization. JSON key order is fixed so reports diff cleanly.

#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "mwlab/numth.hpp"

namespace mwlab {

using Json = nlohmann::ordered_json;

enum class ConditionId { erdos_union, corrales_schoof, thm2, cor22, detect, torsion_stability };

inline std::string to_string(ConditionId id) {
    switch (id) {
        case ConditionId::erdos_union: return "erdos_union";
        case ConditionId::corrales_schoof: return "corrales_schoof";
        case ConditionId::thm2: return "thm2";
        case ConditionId::cor22: return "cor22";
        case ConditionId::detect: return "detect";
        case ConditionId::torsion_stability: return "torsion_stability";
    }
    return "unknown";
}

enum class Verdict { holds_on_scan, violated };

inline std::string to_string(Verdict v) { return v == Verdict::holds_on_scan ? "holds_on_scan" : "violated"; }

/// A concrete (v, n) at which a condition fails.
struct Witness {
    u64 v = 0;
    BigInt n = 0;
    std::string detail;
    friend bool operator==(const Witness&, const Witness&) = default;
};

struct ConditionReport {
    ConditionId condition_id = ConditionId::erdos_union;
    Verdict verdict = Verdict::holds_on_scan;
    std::optional<Witness> witness;
    PrimeRange scanned;
    std::vector<u64> skipped_primes;
    /// Good primes at which the condition was evaluated.
    std::size_t good_primes = 0;

    bool holds() const { return verdict == Verdict::holds_on_scan; }
    friend bool operator==(const ConditionReport&, const ConditionReport&) = default;
};

/// Exact conclusion artifact; re-verifiable by arithmetic in the group.
struct RelationCertificate {
    enum class Kind { membership, exponent, match };

    Kind kind = Kind::membership;
    // membership: alpha * P[point_index] = sum lambdas[j] * L[j]
    std::size_t point_index = 0;
    BigInt alpha = 0;
    std::vector<BigInt> lambdas;
    // torsion discrepancy of the primitive relation found by bounded search:
    // (alpha / ord T) P - sum (lambda_j / ord T) L_j = T
    std::optional<std::string> residual_torsion;
    // exponent: Q = d P
    BigInt d = 0;
    // match: xs[i] = ys[permutation[i]]^signs[i]
    std::vector<std::size_t> permutation;
    std::vector<int> signs;

    friend bool operator==(const RelationCertificate&, const RelationCertificate&) = default;
};

inline std::string to_string(RelationCertificate::Kind k) {
    switch (k) {
        case RelationCertificate::Kind::membership: return "membership";
        case RelationCertificate::Kind::exponent: return "exponent";
        case RelationCertificate::Kind::match: return "match";
    }
    return "unknown";
}

// =============================================================================
// JSON
// =============================================================================

/// Integers that fit in 64 bits become JSON numbers, larger ones strings.
inline Json big_to_json(const BigInt& n) {
    if (n >= std::numeric_limits<std::int64_t>::min() && n <= std::numeric_limits<std::int64_t>::max()) {
        return n.convert_to<std::int64_t>();
    }
    return n.str();
}

inline Json to_json(const Witness& w) {
    Json j;
    j["v"] = w.v;
    j["n"] = big_to_json(w.n);
    j["detail"] = w.detail;
    return j;
}

inline Json to_json(const ConditionReport& r) {
    Json j;
    j["condition_id"] = to_string(r.condition_id);
    j["verdict"] = to_string(r.verdict);
    j["witness"] = r.witness ? to_json(*r.witness) : Json(nullptr);
    j["scanned"] = Json{{"lo", r.scanned.lo}, {"hi", r.scanned.hi}};
    j["skipped_primes"] = r.skipped_primes;
    j["good_primes"] = r.good_primes;
    return j;
}

inline Json to_json(const RelationCertificate& c) {
    Json j;
    j["kind"] = to_string(c.kind);
    switch (c.kind) {
        case RelationCertificate::Kind::membership: {
            j["point_index"] = c.point_index;
            j["alpha"] = big_to_json(c.alpha);
            Json l = Json::array();
            for (const auto& x : c.lambdas) l.push_back(big_to_json(x));
            j["lambdas"] = l;
            j["residual_torsion"] = c.residual_torsion ? Json(*c.residual_torsion) : Json(nullptr);
            break;
        }
        case RelationCertificate::Kind::exponent:
            j["d"] = big_to_json(c.d);
            break;
        case RelationCertificate::Kind::match:
            j["permutation"] = c.permutation;
            j["signs"] = c.signs;
            break;
    }
    return j;
}

// =============================================================================
// CSV / text
// =============================================================================

inline std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

inline constexpr const char* kCsvHeader = "condition_id,verdict,v,n,detail";

inline std::string to_csv_row(const ConditionReport& r) {
    std::ostringstream os;
    os << to_string(r.condition_id) << ',' << to_string(r.verdict) << ',';
    if (r.witness) {
        os << r.witness->v << ',' << r.witness->n << ',' << csv_escape(r.witness->detail);
    } else {
        os << ",,";
    }
    return os.str();
}

inline std::string to_text(const ConditionReport& r) {
    std::ostringstream os;
    os << to_string(r.condition_id) << ": " << to_string(r.verdict) << " on primes [" << r.scanned.lo << ", "
       << r.scanned.hi << "] (" << r.good_primes << " good)";
    if (r.witness) os << "\n  witness v=" << r.witness->v << " n=" << r.witness->n << ": " << r.witness->detail;
    if (!r.skipped_primes.empty()) {
        os << "\n  skipped:";
        for (u64 p : r.skipped_primes) os << ' ' << p;
    }
    return os.str();
}

}  // namespace mwlab
