#pragma once

#include "sullivan/generators.hpp"

#include <algorithm>
#include <compare>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace sullivan {

/// One factor of a canonical monomial: generator index plus exponent >= 1.
struct Factor {
    GenIndex gen = 0;
    std::uint32_t exp = 1;

    friend bool operator==(const Factor&, const Factor&) = default;
};

/// Canonical monomial: factors strictly increasing in generator index, odd
/// generators with exponent exactly 1.  The total degree is cached so the
/// term order does not need the generator table.
class Monomial {
public:
    Monomial() = default; // the unit monomial, degree 0

    static Monomial unit() { return Monomial(); }

    /// Builds the canonical form from factors already sorted and merged.
    /// Callers that start from raw data go through normalize() instead.
    static Monomial from_sorted(std::vector<Factor> factors, long degree) {
        Monomial m;
        m.factors_ = std::move(factors);
        m.degree_ = degree;
        return m;
    }

    const std::vector<Factor>& factors() const { return factors_; }
    long degree() const { return degree_; }
    bool is_unit() const { return factors_.empty(); }

    std::uint32_t exponent_of(GenIndex g) const {
        for (const Factor& f : factors_)
            if (f.gen == g) return f.exp;
        return 0;
    }

    /// True when the monomial is a product of >= 2 generator factors
    /// (counting multiplicity); single generators are the indecomposables.
    bool decomposable() const {
        std::uint64_t len = 0;
        for (const Factor& f : factors_) len += f.exp;
        return len >= 2;
    }

    /// Largest generator degree occurring; 0 for the unit.
    int max_generator_degree(const GeneratorTable& table) const {
        int m = 0;
        for (const Factor& f : factors_) m = std::max(m, table.degree(f.gen));
        return m;
    }

    std::string to_string(const GeneratorTable& table) const {
        if (factors_.empty()) return "1";
        std::string out;
        for (std::size_t i = 0; i < factors_.size(); ++i) {
            if (i) out += "*";
            out += table.name(factors_[i].gen);
            if (factors_[i].exp != 1) out += "^" + std::to_string(factors_[i].exp);
        }
        return out;
    }

    friend bool operator==(const Monomial& a, const Monomial& b) {
        return a.degree_ == b.degree_ && a.factors_ == b.factors_;
    }

    /// Term order: graded first, then lexicographic on exponent vectors with
    /// a larger exponent at the earliest differing generator sorting first.
    /// This is the one canonical order used everywhere (bases, matrices,
    /// printed elements), so every run produces identical output.
    friend std::strong_ordering operator<=>(const Monomial& a, const Monomial& b) {
        if (a.degree_ != b.degree_) return a.degree_ <=> b.degree_;
        std::size_t i = 0, j = 0;
        while (i < a.factors_.size() && j < b.factors_.size()) {
            const Factor& fa = a.factors_[i];
            const Factor& fb = b.factors_[j];
            if (fa.gen != fb.gen) {
                // the one with a nonzero exponent at the smaller index is larger there
                return fa.gen < fb.gen ? std::strong_ordering::less : std::strong_ordering::greater;
            }
            if (fa.exp != fb.exp) return fa.exp > fb.exp ? std::strong_ordering::less : std::strong_ordering::greater;
            ++i, ++j;
        }
        if (i < a.factors_.size()) return std::strong_ordering::less;
        if (j < b.factors_.size()) return std::strong_ordering::greater;
        return std::strong_ordering::equal;
    }

private:
    std::vector<Factor> factors_;
    long degree_ = 0;
};

/// Result of canonicalizing a raw factor word: the canonical monomial plus
/// the Koszul sign, or zero when an odd generator repeats.
struct NormalizedMonomial {
    Monomial monomial;
    int sign = 1;   // +1 or -1
    bool zero = false;
};

/// Canonicalizes an arbitrary factor sequence.  The sign counts inversions
/// among odd-degree factors only; one transposition of two odd factors
/// contributes -1, even factors move freely.
inline NormalizedMonomial normalize_factors(const GeneratorTable& table, std::vector<Factor> raw) {
    NormalizedMonomial out;
    long inversions = 0;

    // flatten odd occurrences in input order to count inversions
    std::vector<GenIndex> odd_seq;
    for (const Factor& f : raw) {
        if (f.gen >= table.size())
            throw std::out_of_range("unknown generator index in monomial");
        if (f.exp == 0) continue;
        if (table.odd(f.gen)) {
            if (f.exp > 1) { out.zero = true; return out; } // odd square inside one factor
            odd_seq.push_back(f.gen);
        }
    }
    for (std::size_t i = 0; i < odd_seq.size(); ++i)
        for (std::size_t j = i + 1; j < odd_seq.size(); ++j) {
            if (odd_seq[i] == odd_seq[j]) { out.zero = true; return out; }
            if (odd_seq[i] > odd_seq[j]) ++inversions;
        }

    std::stable_sort(raw.begin(), raw.end(),
                     [](const Factor& a, const Factor& b) { return a.gen < b.gen; });

    std::vector<Factor> merged;
    long degree = 0;
    for (const Factor& f : raw) {
        if (f.exp == 0) continue;
        if (!merged.empty() && merged.back().gen == f.gen) {
            if (table.odd(f.gen)) { out.zero = true; return out; }
            merged.back().exp += f.exp;
        } else {
            merged.push_back(f);
        }
        degree += static_cast<long>(f.exp) * table.degree(f.gen);
    }

    out.monomial = Monomial::from_sorted(std::move(merged), degree);
    out.sign = (inversions % 2 == 0) ? 1 : -1;
    return out;
}

/// Product of two canonical monomials with the Koszul sign of interleaving.
inline NormalizedMonomial mul_monomials(const GeneratorTable& table, const Monomial& a, const Monomial& b) {
    NormalizedMonomial out;
    long inversions = 0;

    // odd factors of a that sit to the left of smaller odd factors of b
    for (const Factor& fb : b.factors()) {
        if (!table.odd(fb.gen)) continue;
        for (const Factor& fa : a.factors()) {
            if (!table.odd(fa.gen)) continue;
            if (fa.gen == fb.gen) { out.zero = true; return out; }
            if (fa.gen > fb.gen) ++inversions;
        }
    }

    std::vector<Factor> merged;
    merged.reserve(a.factors().size() + b.factors().size());
    std::size_t i = 0, j = 0;
    while (i < a.factors().size() || j < b.factors().size()) {
        if (j == b.factors().size() ||
            (i < a.factors().size() && a.factors()[i].gen < b.factors()[j].gen)) {
            merged.push_back(a.factors()[i++]);
        } else if (i == a.factors().size() || b.factors()[j].gen < a.factors()[i].gen) {
            merged.push_back(b.factors()[j++]);
        } else {
            // same generator: even merge (odd duplicates were caught above)
            Factor f = a.factors()[i++];
            f.exp += b.factors()[j++].exp;
            merged.push_back(f);
        }
    }

    out.monomial = Monomial::from_sorted(std::move(merged), a.degree() + b.degree());
    out.sign = (inversions % 2 == 0) ? 1 : -1;
    return out;
}

} // namespace sullivan
