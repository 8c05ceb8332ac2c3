#pragma once

#include "sullivan/algebra.hpp"
#include "sullivan/linalg.hpp"

#include <limits>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sullivan {

/// Algebra map defined by generator images; may be restricted to the
/// subalgebra of generators of degree <= cap.  `validated` records that
/// degree preservation and commutation with the differentials have been
/// checked (exactly for rational coefficients; symbolic residuals are
/// collected separately and handed to the equation solver).
template <class Ring>
struct CochainMorphism {
    std::shared_ptr<const SullivanAlgebra> source;
    std::shared_ptr<const SullivanAlgebra> target;
    int cap = std::numeric_limits<int>::max();
    std::map<GenIndex, Element<Ring>> images; // per source generator within cap
    bool validated = false;

    bool in_cap(GenIndex g) const { return source->table().degree(g) <= cap; }

    const Element<Ring>& image(GenIndex g) const {
        auto it = images.find(g);
        if (it == images.end())
            throw std::out_of_range("morphism has no image for generator '" +
                                    source->table().name(g) + "'");
        return it->second;
    }

    friend bool operator==(const CochainMorphism& a, const CochainMorphism& b) {
        return a.source == b.source && a.target == b.target && a.cap == b.cap &&
               a.images == b.images;
    }
};

/// Multiplicative extension of generator images to a whole element.
template <class Ring, class SrcRing>
Element<Ring> apply_morphism(const CochainMorphism<Ring>& f, const Element<SrcRing>& e) {
    detail::check_same_table(e.table(), &f.source->table());
    Element<Ring> out(&f.target->table());
    for (auto& [mono, coeff] : e.terms()) {
        Element<Ring> term = Element<Ring>::unit(f.target->table(), Ring(coeff));
        for (const Factor& fac : mono.factors()) {
            if (!f.in_cap(fac.gen))
                throw std::invalid_argument("morphism restricted to degree <= " +
                                            std::to_string(f.cap) + " applied to " +
                                            f.source->table().name(fac.gen));
            term = mul(term, pow(f.image(fac.gen), fac.exp));
            if (term.is_zero()) break;
        }
        out = add(out, term);
    }
    return out;
}

/// Per-generator validation failure: the residual f(d v) - d(f v).
template <class Ring>
struct MorphismResidual {
    GenIndex generator;
    Element<Ring> residual;
};

template <class Ring>
struct ValidationReport {
    std::vector<MorphismResidual<Ring>> failures; // degree errors have empty residuals
    std::vector<std::string> messages;
    bool ok() const { return failures.empty() && messages.empty(); }
};

/// Checks degree preservation and commutation with the differentials on
/// every generator within the cap.
template <class Ring>
ValidationReport<Ring> morphism_residuals(CochainMorphism<Ring>& f) {
    ValidationReport<Ring> report;
    const auto& src = *f.source;
    for (GenIndex g = 0; g < src.generator_count(); ++g) {
        if (!f.in_cap(g)) continue;
        auto it = f.images.find(g);
        if (it == f.images.end()) {
            report.messages.push_back("missing image for '" + src.table().name(g) + "'");
            continue;
        }
        if (!it->second.is_zero() &&
            !it->second.is_homogeneous_of_degree(src.table().degree(g))) {
            report.messages.push_back("image of '" + src.table().name(g) +
                                      "' is not homogeneous of degree " +
                                      std::to_string(src.table().degree(g)));
            continue;
        }
        Element<Ring> lhs = apply_morphism(f, src.diff(g));
        Element<Ring> rhs = extend_derivation(*f.target, it->second);
        Element<Ring> residual = sub(lhs, rhs);
        if (!residual.is_zero()) report.failures.push_back({g, std::move(residual)});
    }
    return report;
}

/// Validates a rational morphism; throws on failure with the offending
/// generator, returns the morphism with `validated` set otherwise.
template <class Ring>
CochainMorphism<Ring> validate_morphism(CochainMorphism<Ring> f) {
    ValidationReport<Ring> r = morphism_residuals(f);
    if (!r.messages.empty()) throw std::invalid_argument("invalid morphism: " + r.messages.front());
    if (!r.failures.empty())
        throw std::invalid_argument(
            "morphism does not commute with the differential on '" +
            f.source->table().name(r.failures.front().generator) + "'");
    f.validated = true;
    return f;
}

template <class Ring>
CochainMorphism<Ring> identity_morphism(std::shared_ptr<const SullivanAlgebra> a) {
    CochainMorphism<Ring> f;
    f.source = f.target = a;
    for (GenIndex g = 0; g < a->generator_count(); ++g)
        f.images.emplace(g, Element<Ring>::generator(a->table(), g));
    f.validated = true;
    return f;
}

/// Diagonal morphism g -> scale_g * g; scales indexed by generator.
template <class Ring>
CochainMorphism<Ring> diagonal_morphism(std::shared_ptr<const SullivanAlgebra> a,
                                        const std::vector<Ring>& scales) {
    if (scales.size() != a->generator_count())
        throw std::invalid_argument("one scale per generator required");
    CochainMorphism<Ring> f;
    f.source = f.target = a;
    for (GenIndex g = 0; g < a->generator_count(); ++g)
        f.images.emplace(g, Element<Ring>::generator(a->table(), g, scales[g]));
    return f;
}

/// Composition f after g.
template <class Ring>
CochainMorphism<Ring> compose(const CochainMorphism<Ring>& f, const CochainMorphism<Ring>& g) {
    if (g.target != f.source)
        throw std::invalid_argument("morphisms are not composable");
    CochainMorphism<Ring> h;
    h.source = g.source;
    h.target = f.target;
    h.cap = std::min(f.cap, g.cap);
    for (auto& [gen, img] : g.images) {
        if (g.source->table().degree(gen) > h.cap) continue;
        h.images.emplace(gen, apply_morphism(f, img));
    }
    h.validated = f.validated && g.validated;
    return h;
}

/// Restriction to generators of degree <= cap.  Degree preservation makes
/// restricted images land in the capped subalgebra automatically; this is
/// still verified and reported as an error if violated.
template <class Ring>
CochainMorphism<Ring> restrict(const CochainMorphism<Ring>& f, int cap) {
    CochainMorphism<Ring> r = f;
    r.cap = std::min(f.cap, cap);
    std::erase_if(r.images, [&](const auto& kv) {
        return f.source->table().degree(kv.first) > r.cap;
    });
    for (auto& [gen, img] : r.images)
        for (auto& [m, c] : img.terms())
            if (m.max_generator_degree(f.target->table()) > r.cap)
                throw std::invalid_argument("morphism is not filtration-preserving at '" +
                                            f.source->table().name(gen) + "'");
    return r;
}

/// The induced map on indecomposables, one matrix block per degree.
/// Entry (row = target generator, col = source generator) is the coefficient
/// of the single-generator monomial of the target generator in the image.
template <class Ring>
struct LinearPart {
    std::map<int, std::vector<std::vector<Ring>>> blocks; // degree -> dense matrix
    std::map<int, std::vector<GenIndex>> source_gens;
    std::map<int, std::vector<GenIndex>> target_gens;
};

template <class Ring>
LinearPart<Ring> linear_part(const CochainMorphism<Ring>& f) {
    LinearPart<Ring> out;
    const auto& src = f.source->table();
    const auto& tgt = f.target->table();
    for (GenIndex g = 0; g < src.size(); ++g)
        if (src.degree(g) <= f.cap) out.source_gens[src.degree(g)].push_back(g);
    for (GenIndex g = 0; g < tgt.size(); ++g)
        if (tgt.degree(g) <= f.cap) out.target_gens[tgt.degree(g)].push_back(g);

    for (auto& [deg, cols] : out.source_gens) {
        auto rows_it = out.target_gens.find(deg);
        std::size_t nrows = rows_it == out.target_gens.end() ? 0 : rows_it->second.size();
        std::vector<std::vector<Ring>> block(nrows, std::vector<Ring>(cols.size(), Ring(0)));
        for (std::size_t j = 0; j < cols.size(); ++j) {
            const Element<Ring>& img = f.image(cols[j]);
            for (std::size_t i = 0; i < nrows; ++i) {
                Monomial single = Monomial::from_sorted({Factor{rows_it->second[i], 1}}, deg);
                block[i][j] = img.coefficient_of(single);
            }
        }
        out.blocks.emplace(deg, std::move(block));
    }
    return out;
}

/// A validated endomorphism is a homotopy equivalence exactly when every
/// degree block of its linear part is invertible.
inline bool is_equivalence(const CochainMorphism<Rational>& f) {
    if (f.source != f.target) return false;
    LinearPart<Rational> lp = linear_part(f);
    for (auto& [deg, block] : lp.blocks) {
        const std::size_t n = block.size();
        if (n != (block.empty() ? 0 : block[0].size())) return false;
        if (lp.source_gens[deg].size() != n) return false;
        RationalMatrix m(static_cast<int>(n), static_cast<int>(n));
        for (std::size_t i = 0; i < n; ++i)
            for (std::size_t j = 0; j < n; ++j)
                if (!is_zero(block[i][j])) m.set(static_cast<int>(i), static_cast<int>(j), block[i][j]);
        if (rref(m).rank != static_cast<int>(n)) return false;
    }
    return true;
}

} // namespace sullivan
