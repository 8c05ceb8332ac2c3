#pragma once

#include "sullivan/degree_basis.hpp"
#include "sullivan/linalg.hpp"
#include "sullivan/morphism.hpp"

#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

namespace sullivan {

/// Coordinates of an element in a degree basis.  Throws if a monomial of the
/// element falls outside the basis (degree or cap violation).
template <class Ring>
std::vector<Ring> coordinates(const Element<Ring>& e, const DegreeBasis& basis) {
    std::vector<Ring> v(basis.monomials.size(), Ring(0));
    for (auto& [m, c] : e.terms()) {
        int pos = basis.position(m);
        if (pos < 0)
            throw std::invalid_argument("element does not lie in the requested filtered degree");
        v[pos] = c;
    }
    return v;
}

template <class Ring>
Element<Ring> from_coordinates(const GeneratorTable& table, const DegreeBasis& basis,
                               const std::vector<Ring>& v) {
    Element<Ring> e(&table);
    for (std::size_t i = 0; i < v.size(); ++i)
        if (!sullivan::is_zero(v[i])) e.add_term(basis.monomials[i], v[i]);
    return e;
}

/// Matrix of the differential from the degree-d basis to the degree-(d+1)
/// basis of the cap-filtered subalgebra.  Row index = target monomial,
/// column index = source monomial.
inline RationalMatrix differential_matrix(const SullivanAlgebra& a, long degree, int cap,
                                          std::uint64_t limit = kDefaultBasisLimit) {
    DegreeBasis dom = enumerate_basis(a, degree, cap, limit);
    DegreeBasis cod = enumerate_basis(a, degree + 1, cap, limit);
    RationalMatrix m(cod.dimension(), dom.dimension());
    for (int j = 0; j < dom.dimension(); ++j) {
        Element<Rational> img = extend_derivation(
            a, Element<Rational>::monomial(a.table(), dom.monomials[j]));
        for (auto& [mono, c] : img.terms()) {
            int i = cod.position(mono);
            if (i < 0) throw std::logic_error("differential left the filtered subalgebra");
            m.set(i, j, c);
        }
    }
    return m;
}

/// Reduce a coordinate vector modulo a row-echelon basis of a subspace
/// (rows with unit pivots).  Works for rational and parameter coefficients.
template <class Ring>
void reduce_mod_rref(std::vector<Ring>& v, const RationalMatrix& reduced,
                     const std::vector<int>& pivot_cols) {
    for (int r = 0; r < reduced.rows(); ++r) {
        Ring c = v[pivot_cols[r]];
        if (sullivan::is_zero(c)) continue;
        for (auto& [j, q] : reduced.row(r)) v[j] = v[j] - c * Ring(q);
    }
}

/// Cocycles, coboundaries and chosen representatives of H^d of the
/// subalgebra generated by generators of degree <= cap.
struct CohomologySpace {
    long degree = 0;
    int cap = 0;
    DegreeBasis basis;                         // of (Lambda V^{<=cap})^degree
    std::vector<std::vector<Rational>> cocycles;     // kernel basis vectors
    RationalMatrix coboundary_rref;                  // echelon rows spanning the image
    std::vector<int> coboundary_pivots;
    std::vector<std::vector<Rational>> representatives; // echelon reps of H
    std::vector<int> representative_pivots;

    int cocycle_dim() const { return static_cast<int>(cocycles.size()); }
    int coboundary_dim() const { return coboundary_rref.rows(); }
    int h_dim() const { return static_cast<int>(representatives.size()); }

    /// Normal form of a coordinate vector modulo the coboundary space.
    template <class Ring>
    std::vector<Ring> normal_form(std::vector<Ring> v) const {
        reduce_mod_rref(v, coboundary_rref, coboundary_pivots);
        return v;
    }

    /// Coordinates of a cocycle's class in the representative basis;
    /// nullopt if the vector is not a cocycle of this space.
    std::optional<std::vector<Rational>> class_coordinates(std::vector<Rational> v) const {
        v = normal_form(std::move(v));
        std::vector<Rational> coords(representatives.size(), Rational(0));
        for (std::size_t r = 0; r < representatives.size(); ++r) {
            const Rational c = v[representative_pivots[r]];
            if (is_zero(c)) continue;
            coords[r] = c;
            for (std::size_t j = 0; j < v.size(); ++j)
                if (!is_zero(representatives[r][j])) v[j] -= c * representatives[r][j];
        }
        for (auto& q : v)
            if (!is_zero(q)) return std::nullopt;
        return coords;
    }
};

inline CohomologySpace cohomology(const SullivanAlgebra& a, long degree, int cap,
                                  std::uint64_t limit = kDefaultBasisLimit) {
    CohomologySpace h;
    h.degree = degree;
    h.cap = cap;
    h.basis = enumerate_basis(a, degree, cap, limit);

    RationalMatrix out = differential_matrix(a, degree, cap, limit);
    h.cocycles = kernel_basis(out);

    if (degree >= 1) {
        RationalMatrix in = differential_matrix(a, degree - 1, cap, limit);
        RrefResult image = rref(in.transposed());
        h.coboundary_rref = std::move(image.reduced);
        h.coboundary_pivots = std::move(image.pivot_cols);
    } else {
        h.coboundary_rref = RationalMatrix(0, h.basis.dimension());
    }

    // independent representatives: reduce each kernel vector modulo the
    // image, then row-reduce the results
    RationalMatrix reduced_kernel(static_cast<int>(h.cocycles.size()), h.basis.dimension());
    for (std::size_t i = 0; i < h.cocycles.size(); ++i) {
        std::vector<Rational> v = h.normal_form(h.cocycles[i]);
        for (std::size_t j = 0; j < v.size(); ++j)
            if (!is_zero(v[j])) reduced_kernel.set(static_cast<int>(i), static_cast<int>(j), v[j]);
    }
    RrefResult reps = rref(reduced_kernel);
    for (int r = 0; r < reps.reduced.rows(); ++r) {
        std::vector<Rational> v(h.basis.dimension(), Rational(0));
        for (auto& [j, q] : reps.reduced.row(r)) v[j] = q;
        h.representatives.push_back(std::move(v));
        h.representative_pivots.push_back(reps.pivot_cols[r]);
    }

    if (h.h_dim() != h.cocycle_dim() - h.coboundary_dim())
        throw std::logic_error("cohomology dimension bookkeeping failed");
    return h;
}

/// Matrix of the map [c] -> [f(c)] between chosen representative bases.
/// Well-definedness is certified on every call: the image of each
/// coboundary-space echelon row must reduce to zero on the target side.
inline RationalMatrix induced_map_on_h(const CochainMorphism<Rational>& f, long degree, int cap,
                                       const CohomologySpace& source_h,
                                       const CohomologySpace& target_h) {
    if (f.cap < cap) throw std::invalid_argument("morphism cap below requested filtration");
    const GeneratorTable& tgt = f.target->table();

    auto push_through = [&](const std::vector<Rational>& v) {
        Element<Rational> e = from_coordinates(f.source->table(), source_h.basis, v);
        Element<Rational> img = apply_morphism(f, e);
        for (auto& [m, c] : img.terms())
            if (m.max_generator_degree(tgt) > cap)
                throw std::invalid_argument("morphism is not filtration-preserving");
        return coordinates(img, target_h.basis);
    };

    for (int r = 0; r < source_h.coboundary_rref.rows(); ++r) {
        std::vector<Rational> row(source_h.basis.dimension(), Rational(0));
        for (auto& [j, q] : source_h.coboundary_rref.row(r)) row[j] = q;
        std::vector<Rational> img = target_h.normal_form(push_through(row));
        for (auto& q : img)
            if (!is_zero(q))
                throw std::logic_error("induced map is not well defined: "
                                       "a coboundary maps to a nonzero class");
    }

    RationalMatrix m(target_h.h_dim(), source_h.h_dim());
    for (int j = 0; j < source_h.h_dim(); ++j) {
        auto coords = target_h.class_coordinates(push_through(source_h.representatives[j]));
        if (!coords)
            throw std::logic_error("image of a cocycle representative is not a cocycle");
        for (int i = 0; i < target_h.h_dim(); ++i)
            if (!is_zero((*coords)[i])) m.set(i, j, (*coords)[i]);
    }
    return m;
}

/// Convenience overload for self-maps: both cohomologies computed on the
/// source algebra.
inline RationalMatrix induced_map_on_h(const CochainMorphism<Rational>& f, long degree, int cap) {
    CohomologySpace hs = cohomology(*f.source, degree, cap);
    if (f.source == f.target) return induced_map_on_h(f, degree, cap, hs, hs);
    CohomologySpace ht = cohomology(*f.target, degree, cap);
    return induced_map_on_h(f, degree, cap, hs, ht);
}

/// The obstruction map at stage degree n: columns are the classes of the
/// generator differentials in H^{n+1} of the subalgebra below the stage.
struct ObstructionMap {
    int stage = 0;                    // generator degree n
    std::vector<GenIndex> generators; // the degree-n generators (column order)
    CohomologySpace h;                // H^{n+1}(cap n-1)
    RationalMatrix matrix;            // h.h_dim() x generators.size()
};

inline ObstructionMap obstruction_b(const SullivanAlgebra& a, int stage,
                                    std::uint64_t limit = kDefaultBasisLimit) {
    if (stage < 3) throw std::invalid_argument("obstruction maps are defined for stage >= 3");
    ObstructionMap out;
    out.stage = stage;
    for (GenIndex g = 0; g < a.generator_count(); ++g)
        if (a.table().degree(g) == stage) out.generators.push_back(g);
    out.h = cohomology(a, stage + 1, stage - 1, limit);
    out.matrix = RationalMatrix(out.h.h_dim(), static_cast<int>(out.generators.size()));
    for (std::size_t j = 0; j < out.generators.size(); ++j) {
        auto coords = out.h.class_coordinates(coordinates(a.diff(out.generators[j]), out.h.basis));
        if (!coords) throw std::logic_error("d^2 != 0: generator differential is not a cocycle");
        for (int i = 0; i < out.h.h_dim(); ++i)
            if (!is_zero((*coords)[i])) out.matrix.set(i, static_cast<int>(j), (*coords)[i]);
    }
    return out;
}

/// Naturality square of the obstruction maps for a self-morphism at stage
/// degree n+1: H(f_(n)) b^{n+1} = b^{n+1} (linear part of f).
inline bool check_naturality(const CochainMorphism<Rational>& f, int stage,
                             std::uint64_t limit = kDefaultBasisLimit) {
    if (f.source != f.target)
        throw std::invalid_argument("naturality check expects a self-morphism");
    if (!f.validated) return false;
    ObstructionMap b = obstruction_b(*f.source, stage, limit);
    if (b.generators.empty()) return true;

    LinearPart<Rational> lp = linear_part(f);
    auto it = lp.blocks.find(stage);
    RationalMatrix xi(static_cast<int>(b.generators.size()),
                      static_cast<int>(b.generators.size()));
    if (it != lp.blocks.end())
        for (std::size_t i = 0; i < it->second.size(); ++i)
            for (std::size_t j = 0; j < it->second[i].size(); ++j)
                if (!is_zero(it->second[i][j]))
                    xi.set(static_cast<int>(i), static_cast<int>(j), it->second[i][j]);

    RationalMatrix h_of_f = induced_map_on_h(restrict(f, stage - 1), stage + 1, stage - 1, b.h, b.h);
    return h_of_f * b.matrix == b.matrix * xi;
}

} // namespace sullivan
