#pragma once

// Shared helpers for the test suites: small fixture algebras, a random
// generator of valid minimal Sullivan algebras, and element parsing from
// compact strings.

#include "sullivan/algebra.hpp"
#include "sullivan/degree_basis.hpp"
#include "sullivan/linalg.hpp"

#include <memory>
#include <random>
#include <string>
#include <vector>

namespace testsupport {

using namespace sullivan;

/// Builds an element as a product of named generators (repeats allowed, any
/// order), e.g. factors {"y2","y1"} with coeff -1.
inline Element<Rational> word(const SullivanAlgebra& a, const std::vector<std::string>& names,
                              Rational coeff = Rational(1)) {
    std::vector<Factor> fs;
    for (auto& n : names) fs.push_back(Factor{a.table().index_of(n), 1});
    return normalize<Rational>(a.table(), std::move(fs), coeff);
}

/// x1(2), x2(4), x3(6) closed; handy even-generator playground.
inline std::shared_ptr<SullivanAlgebra> even_algebra() {
    std::vector<GeneratorDecl> decls{{"x1", 2, 0}, {"x2", 4, 1}, {"x3", 6, 2}};
    GeneratorTable staging(decls);
    std::vector<Element<Rational>> diffs(3, Element<Rational>(&staging));
    return std::make_shared<SullivanAlgebra>("even", decls, diffs);
}

/// Random valid minimal Sullivan algebra: starts from a few closed
/// generators, then repeatedly adjoins a generator whose differential is a
/// random decomposable cocycle of the algebra built so far.  d^2 = 0 holds by
/// construction, minimality because only decomposable monomials are used.
inline std::shared_ptr<SullivanAlgebra> random_algebra(std::mt19937& rng, int max_gens = 6) {
    std::uniform_int_distribution<int> deg_pick(2, 7);
    std::uniform_int_distribution<int> count_pick(2, max_gens);
    const int target = count_pick(rng);

    std::vector<GeneratorDecl> decls;
    std::vector<Element<Rational>> diffs_data; // rebuilt against each staging table

    auto rebuild = [&](const GeneratorTable& staging,
                       const std::vector<std::vector<std::pair<std::vector<Factor>, Rational>>>&
                           raw) {
        std::vector<Element<Rational>> out;
        for (auto& img : raw) {
            Element<Rational> e(&staging);
            for (auto& [fs, c] : img) e = add(e, normalize<Rational>(staging, fs, c));
            out.push_back(std::move(e));
        }
        return out;
    };

    std::vector<std::vector<std::pair<std::vector<Factor>, Rational>>> raw_imgs;

    int closed = 1 + static_cast<int>(rng() % 3);
    for (int i = 0; i < closed; ++i) {
        decls.push_back({"g" + std::to_string(i), deg_pick(rng), 0});
        raw_imgs.push_back({});
    }

    while (static_cast<int>(decls.size()) < target) {
        GeneratorTable staging(decls);
        SullivanAlgebra current("tmp", decls, rebuild(staging, raw_imgs));

        // choose a degree whose next degree has decomposable cocycles
        std::vector<std::pair<int, Element<Rational>>> options;
        for (int d = 2; d <= 14 && options.empty(); ++d) {
            DegreeBasis b = enumerate_basis(current, d + 1, d +
                                            1); // full cap: subalgebra so far
            std::vector<Monomial> decomp;
            for (auto& m : b.monomials)
                if (m.decomposable()) decomp.push_back(m);
            if (decomp.empty()) continue;
            // random combination of decomposables lying in ker d
            RationalMatrix mat(static_cast<int>(decomp.size()), static_cast<int>(decomp.size()));
            // build the boundary matrix restricted to decomposables via full basis
            DegreeBasis target_b = enumerate_basis(current, d + 2, d + 2);
            RationalMatrix dm(target_b.dimension(), static_cast<int>(decomp.size()));
            for (std::size_t j = 0; j < decomp.size(); ++j) {
                Element<Rational> img = extend_derivation(
                    current, Element<Rational>::monomial(current.table(), decomp[j]));
                for (auto& [m, c] : img.terms()) dm.set(target_b.position(m), static_cast<int>(j), c);
            }
            auto kernel = kernel_basis(dm);
            if (kernel.empty()) continue;
            auto& k = kernel[rng() % kernel.size()];
            Element<Rational> diff(&current.table());
            for (std::size_t j = 0; j < decomp.size(); ++j)
                if (!is_zero(k[j]))
                    diff = add(diff, Element<Rational>::monomial(current.table(), decomp[j], k[j]));
            if (!diff.is_zero()) options.push_back({d, diff});
        }
        if (options.empty()) break;
        auto& [d, diff] = options.front();
        decls.push_back({"g" + std::to_string(decls.size()), d, 0});
        std::vector<std::pair<std::vector<Factor>, Rational>> raw;
        for (auto& [m, c] : diff.terms()) {
            std::vector<Factor> fs(m.factors().begin(), m.factors().end());
            raw.push_back({fs, c});
        }
        raw_imgs.push_back(std::move(raw));
    }

    GeneratorTable staging(decls);
    return std::make_shared<SullivanAlgebra>("random", decls, rebuild(staging, raw_imgs));
}

/// Random monomial from a degree basis of the algebra (uniform over a few
/// degrees that are nonempty).
inline Monomial random_monomial(std::mt19937& rng, const SullivanAlgebra& a, int max_degree = 30) {
    for (int tries = 0; tries < 64; ++tries) {
        int d = 2 + static_cast<int>(rng() % (max_degree - 1));
        DegreeBasis b = enumerate_basis(a, d, max_degree);
        if (b.dimension() == 0) continue;
        return b.monomials[rng() % b.monomials.size()];
    }
    return Monomial::unit();
}

inline Element<Rational> random_element(std::mt19937& rng, const SullivanAlgebra& a,
                                        int terms = 3, int max_degree = 24) {
    Element<Rational> e(&a.table());
    std::uniform_int_distribution<long> coeff(-5, 5);
    for (int i = 0; i < terms; ++i) {
        long c = coeff(rng);
        if (c == 0) c = 1;
        e = add(e, Element<Rational>::monomial(a.table(), random_monomial(rng, a, max_degree),
                                               Rational(c)));
    }
    return e;
}

} // namespace testsupport
