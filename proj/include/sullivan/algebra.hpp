#pragma once

#include "sullivan/element.hpp"

#include <memory>
#include <string>
#include <utility>
#include <vector>

namespace sullivan {

/// A 1-connected minimal Sullivan algebra: a free graded-commutative algebra
/// on declared generators together with one differential image per
/// generator.  Construction validates degrees and the filtration condition;
/// the d^2 = 0 and minimality checks are separate so callers can inspect
/// failures generator by generator.
class SullivanAlgebra {
public:
    SullivanAlgebra(std::string name, std::vector<GeneratorDecl> decls,
                    std::vector<Element<Rational>> diff_images)
        : name_(std::move(name)), table_(std::make_unique<GeneratorTable>(std::move(decls))) {
        if (diff_images.size() != table_->size())
            throw std::invalid_argument("one differential image per generator required");
        diff_.reserve(diff_images.size());
        for (GenIndex g = 0; g < diff_images.size(); ++g) {
            Element<Rational> img = rebase(diff_images[g]);
            if (!img.is_zero() && !img.is_homogeneous_of_degree(table_->degree(g) + 1))
                throw std::invalid_argument("differential of '" + table_->name(g) +
                                            "' is not homogeneous of degree " +
                                            std::to_string(table_->degree(g) + 1));
            // note: a homogeneous decomposable image automatically stays in
            // the filtration below |g|+1; minimality is checked separately
            diff_.push_back(std::move(img));
        }
    }

    const std::string& name() const { return name_; }
    const GeneratorTable& table() const { return *table_; }
    std::size_t generator_count() const { return table_->size(); }
    const Element<Rational>& diff(GenIndex g) const { return diff_.at(g); }

    Element<Rational> zero() const { return Element<Rational>::zero(*table_); }
    Element<Rational> unit() const { return Element<Rational>::unit(*table_); }
    Element<Rational> generator(GenIndex g) const {
        return Element<Rational>::generator(*table_, g);
    }
    Element<Rational> generator(const std::string& name) const {
        return generator(table_->index_of(name));
    }

private:
    // incoming images may have been built against a staging table; re-anchor
    // them to this algebra's own table
    Element<Rational> rebase(const Element<Rational>& e) const {
        Element<Rational> out(table_.get());
        for (auto& [m, c] : e.terms()) out.add_term(m, c);
        return out;
    }

    std::string name_;
    std::unique_ptr<GeneratorTable> table_;
    std::vector<Element<Rational>> diff_;
};

/// Extends the generator differentials to an arbitrary element by linearity
/// and the graded Leibniz rule d(ab) = d(a)b + (-1)^{|a|} a d(b).  For the
/// factor g^e inside a monomial A g^e B this contributes
/// (-1)^{|A|} e * A g^{e-1} d(g) B, and d(g) is multiplied in at its own
/// position so the Koszul signs against the suffix come out right.
template <class Ring>
Element<Ring> extend_derivation(const SullivanAlgebra& algebra, const Element<Ring>& e) {
    const GeneratorTable& table = algebra.table();
    detail::check_same_table(e.table(), &table);
    Element<Ring> result(&table);
    for (auto& [mono, coeff] : e.terms()) {
        long prefix_degree = 0;
        const auto& factors = mono.factors();
        for (std::size_t i = 0; i < factors.size(); ++i) {
            const Factor& f = factors[i];
            const Element<Rational>& dg = algebra.diff(f.gen);
            if (!dg.is_zero()) {
                std::vector<Factor> left_f(factors.begin(), factors.begin() + i);
                if (f.exp > 1) left_f.push_back(Factor{f.gen, f.exp - 1});
                std::vector<Factor> right_f(factors.begin() + i + 1, factors.end());
                const long left_deg =
                    prefix_degree + static_cast<long>(f.exp - 1) * table.degree(f.gen);
                const long right_deg =
                    mono.degree() - prefix_degree - static_cast<long>(f.exp) * table.degree(f.gen);

                Ring c = coeff * Ring(Rational(static_cast<long>(f.exp)));
                if (prefix_degree % 2 != 0) c = Ring(0) - c;

                Element<Ring> term = Element<Ring>::monomial(
                    table, Monomial::from_sorted(std::move(left_f), left_deg), std::move(c));
                term = mul(term, lift<Ring>(dg));
                term = mul(term, Element<Ring>::monomial(
                                     table, Monomial::from_sorted(std::move(right_f), right_deg)));
                result = add(result, term);
            }
            prefix_degree += static_cast<long>(f.exp) * table.degree(f.gen);
        }
    }
    return result;
}

/// Report of a per-generator check; empty failure list means the property
/// holds on all generators.
struct GeneratorCheckReport {
    struct Failure {
        GenIndex generator;
        std::string reason;
    };
    std::vector<Failure> failures;
    bool ok() const { return failures.empty(); }
};

/// d(d(g)) = 0 for every generator; by the derivation property this is
/// sufficient for d^2 = 0 on the whole algebra.
inline GeneratorCheckReport check_d_squared(const SullivanAlgebra& a) {
    GeneratorCheckReport report;
    for (GenIndex g = 0; g < a.generator_count(); ++g) {
        Element<Rational> dd = extend_derivation(a, a.diff(g));
        if (!dd.is_zero())
            report.failures.push_back({g, "d(d(" + a.table().name(g) + ")) = " + dd.to_string()});
    }
    return report;
}

/// All generator degrees >= 2 and every differential image decomposable.
inline GeneratorCheckReport check_minimal_1connected(const SullivanAlgebra& a) {
    GeneratorCheckReport report;
    for (GenIndex g = 0; g < a.generator_count(); ++g) {
        if (a.table().degree(g) < 2) {
            report.failures.push_back({g, "generator degree < 2"});
            continue;
        }
        for (auto& [m, c] : a.diff(g).terms())
            if (!m.decomposable()) {
                report.failures.push_back(
                    {g, "differential has the linear term " + m.to_string(a.table())});
                break;
            }
    }
    return report;
}

/// The subalgebra generated by generators of degree <= cap, with generators
/// re-indexed in their original relative order.
inline std::shared_ptr<SullivanAlgebra> restrict_algebra(const SullivanAlgebra& a, int cap) {
    std::vector<GeneratorDecl> decls;
    std::vector<GenIndex> keep;
    for (GenIndex g = 0; g < a.generator_count(); ++g)
        if (a.table().degree(g) <= cap) {
            keep.push_back(g);
            decls.push_back({a.table().name(g), a.table().degree(g), 0});
        }
    std::vector<GenIndex> remap(a.generator_count(), static_cast<GenIndex>(-1));
    for (GenIndex i = 0; i < keep.size(); ++i) remap[keep[i]] = i;

    GeneratorTable staging(decls);
    std::vector<Element<Rational>> diffs;
    diffs.reserve(keep.size());
    for (GenIndex g : keep) {
        Element<Rational> img(&staging);
        for (auto& [m, c] : a.diff(g).terms()) {
            std::vector<Factor> fs;
            for (const Factor& f : m.factors()) {
                if (remap[f.gen] == static_cast<GenIndex>(-1))
                    throw std::logic_error("filtration violated while restricting algebra");
                fs.push_back(Factor{remap[f.gen], f.exp});
            }
            // relative order is preserved, so no sign can arise
            img = add(img, normalize<Rational>(staging, std::move(fs), c));
        }
        diffs.push_back(std::move(img));
    }
    return std::make_shared<SullivanAlgebra>(a.name() + "<=" + std::to_string(cap),
                                             std::move(decls), std::move(diffs));
}

} // namespace sullivan
