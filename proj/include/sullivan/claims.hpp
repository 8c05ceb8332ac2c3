#pragma once

// Recorded claims for the built-in family: the values the accompanying
// write-up states for the cocycle spaces, obstruction classes, stage
// relations and the final group.  These are data, compared against computed
// results by the verification layer; mismatches become discrepancy records.

#include "sullivan/family.hpp"
#include "sullivan/selfequiv.hpp"

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace sullivan::claims {

inline std::uint64_t claimed_group_order(int n) {
    return std::uint64_t(1) << (n + 1); // 2^{n+1} copies of Z_2 claimed... order 2^{n+1}
}

inline std::vector<std::string> claimed_order_variants(int n) {
    return {
        "claimed group: elementary abelian of order 2^" + std::to_string(n + 1),
        "claimed case counts: 2^" + std::to_string(n) + " classes per sign case",
        "claimed total in prose: 2^" + std::to_string(n - 1) +
            " classes (inconsistent with the case counts)",
    };
}

/// Claimed spanning-set sizes for the three stage-degree cocycle spaces
/// (degrees 5*2^{n+1}-3, 6*2^{n+1}-5, 7*2^{n+1}-7 with caps one below).
inline std::vector<int> claimed_stage_space_spans(int /*n*/) { return {0, 2, 5}; }

/// Claimed obstruction values, as elements of the family algebra.  The y1
/// and y3 values are recorded as stated, which is swapped relative to the
/// differential.
inline std::map<GenIndex, Element<Rational>> claimed_obstruction_values(const FamilyInstance& f) {
    const SullivanAlgebra& a = *f.algebra;
    std::map<GenIndex, Element<Rational>> out;
    Element<Rational> xn1 = a.generator(f.x(f.n + 1));
    Element<Rational> xn2 = a.generator(f.x(f.n + 2));
    out.emplace(f.gen_y1(), mul(xn1, pow(xn2, 3)));           // stated: x_{n+1} x_{n+2}^3
    out.emplace(f.gen_y2(), mul(pow(xn1, 2), pow(xn2, 2)));
    out.emplace(f.gen_y3(), mul(pow(xn1, 3), xn2));           // stated: x_{n+1}^3 x_{n+2}
    out.emplace(f.gen_w(), a.diff(f.gen_w()));
    out.emplace(f.gen_z(), a.diff(f.gen_z()));
    return out;
}

struct RelationClaim {
    std::string subject;              // scale unknown claimed on the left
    std::map<std::string, int> value; // power product it is claimed to equal
    std::string note;                 // free-form provenance note

    UnitEquation to_equation(const ParameterTable& params) const {
        std::map<ParamIndex, int> diff;
        auto subj = params.find(subject);
        if (!subj) throw std::invalid_argument("unknown claimed subject " + subject);
        diff[*subj] += 1;
        for (auto& [name, e] : value) {
            auto p = params.find(name);
            if (!p) throw std::invalid_argument("unknown claimed unknown " + name);
            diff[*p] -= e;
        }
        std::erase_if(diff, [](const auto& kv) { return kv.second == 0; });
        return UnitEquation::from_difference(diff);
    }
};

/// The displayed stage relations for the family at a given n.
inline std::vector<RelationClaim> claimed_stage_relations(int n) {
    auto p = [](int k) { return "p" + std::to_string(k); };
    std::vector<RelationClaim> out;
    out.push_back({"p_y1", {{p(n + 1), 3}, {p(n + 2), 1}}, "first stage relation"});
    out.push_back({"p_y2", {{p(n + 1), 2}, {p(n + 2), 2}}, "second stage relation"});
    out.push_back({"p_y3", {{p(n + 1), 1}, {p(n + 2), 3}}, "third stage relation"});
    {
        std::map<std::string, int> pw{{p(1), 28}};
        for (int k = 2; k <= n; ++k) pw.emplace(p(k), 18);
        out.push_back({"p_w", pw, "fourth stage relation (exponent 28 display)"});
    }
    out.push_back({"p_z",
                   {{p(1), (1 << n) + 7}, {p(n + 1), 5}, {p(n + 2), 6}},
                   "top stage relation, product form"});
    for (int k = 1; k <= n + 1; ++k)
        out.push_back({"p_z", {{p(k), 9 * (1 << (n + 2 - k))}},
                       "top stage relation, pure power of " + p(k)});
    out.push_back({"p_z", {{p(1), 9}, {p(n + 2), 9}}, "top stage relation, mixed form"});
    return out;
}

/// The prose variant of the fourth stage relation with exponent 38; recorded
/// so reports can quote both spellings.
inline RelationClaim claimed_pw_prose_variant(int n) {
    auto p = [](int k) { return "p" + std::to_string(k); };
    std::map<std::string, int> pw{{p(1), 38}};
    for (int k = 2; k <= n; ++k) pw.emplace(p(k), 18);
    return {"p_w", pw, "fourth stage relation (prose variant, exponent 38)"};
}

} // namespace sullivan::claims
