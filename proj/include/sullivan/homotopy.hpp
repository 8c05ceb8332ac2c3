#pragma once

#include "sullivan/cohomology.hpp"
#include "sullivan/morphism.hpp"

#include <map>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace sullivan {

/// Element of W (x) Lambda(t, dt) with |t| = 0, |dt| = 1: two polynomials in
/// t with coefficients in W, the second carrying the dt factor.
struct CylinderElement {
    const GeneratorTable* table = nullptr;
    std::vector<Element<Rational>> t_part;  // index = t exponent
    std::vector<Element<Rational>> dt_part; // index = t exponent, times dt

    explicit CylinderElement(const GeneratorTable* t = nullptr) : table(t) {}

    static CylinderElement from_constant(const Element<Rational>& e) {
        CylinderElement c(e.table());
        c.t_part.push_back(e);
        return c;
    }

    bool is_zero() const {
        for (auto& e : t_part)
            if (!e.is_zero()) return false;
        for (auto& e : dt_part)
            if (!e.is_zero()) return false;
        return true;
    }

    Element<Rational> t_coeff(std::size_t j) const {
        return j < t_part.size() ? t_part[j] : Element<Rational>::zero(*table);
    }
    Element<Rational> dt_coeff(std::size_t j) const {
        return j < dt_part.size() ? dt_part[j] : Element<Rational>::zero(*table);
    }

    void add_t(std::size_t j, const Element<Rational>& e) {
        if (t_part.size() <= j) t_part.resize(j + 1, Element<Rational>::zero(*table));
        t_part[j] = add(t_part[j], e);
    }
    void add_dt(std::size_t j, const Element<Rational>& e) {
        if (dt_part.size() <= j) dt_part.resize(j + 1, Element<Rational>::zero(*table));
        dt_part[j] = add(dt_part[j], e);
    }

    friend CylinderElement add(const CylinderElement& a, const CylinderElement& b) {
        CylinderElement r(a.table ? a.table : b.table);
        for (std::size_t j = 0; j < a.t_part.size(); ++j) r.add_t(j, a.t_part[j]);
        for (std::size_t j = 0; j < b.t_part.size(); ++j) r.add_t(j, b.t_part[j]);
        for (std::size_t j = 0; j < a.dt_part.size(); ++j) r.add_dt(j, a.dt_part[j]);
        for (std::size_t j = 0; j < b.dt_part.size(); ++j) r.add_dt(j, b.dt_part[j]);
        return r;
    }

    friend bool operator==(const CylinderElement& a, const CylinderElement& b) {
        std::size_t n = std::max(a.t_part.size(), b.t_part.size());
        for (std::size_t j = 0; j < n; ++j)
            if (!(a.t_coeff(j) == b.t_coeff(j))) return false;
        n = std::max(a.dt_part.size(), b.dt_part.size());
        for (std::size_t j = 0; j < n; ++j)
            if (!(a.dt_coeff(j) == b.dt_coeff(j))) return false;
        return true;
    }
};

/// Splits an element into (even part, odd part) by monomial degree; the sign
/// rules of the tensor algebra only see the parity.
inline std::pair<Element<Rational>, Element<Rational>> split_parity(const Element<Rational>& e) {
    Element<Rational> even(e.table()), odd(e.table());
    for (auto& [m, c] : e.terms())
        (m.degree() % 2 == 0 ? even : odd).add_term(m, c);
    return {even, odd};
}

/// Product in W (x) Lambda(t, dt): dt is odd, t is even of degree zero, and
/// dt * dt = 0.  Moving dt past an element costs the parity sign.
inline CylinderElement mul(const CylinderElement& a, const CylinderElement& b) {
    CylinderElement r(a.table);
    for (std::size_t i = 0; i < a.t_part.size(); ++i) {
        if (a.t_part[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.t_part.size(); ++j)
            r.add_t(i + j, mul(a.t_part[i], b.t_part[j]));
        for (std::size_t j = 0; j < b.dt_part.size(); ++j)
            r.add_dt(i + j, mul(a.t_part[i], b.dt_part[j]));
    }
    for (std::size_t i = 0; i < a.dt_part.size(); ++i) {
        if (a.dt_part[i].is_zero()) continue;
        for (std::size_t j = 0; j < b.t_part.size(); ++j) {
            // (x dt)(y t^j) = (-1)^{|y|} (x y) t^j dt
            auto [even, odd] = split_parity(b.t_part[j]);
            r.add_dt(i + j, sub(mul(a.dt_part[i], even), mul(a.dt_part[i], odd)));
        }
        // dt * dt = 0
    }
    return r;
}

/// Total differential D = d (x) 1 + (-1)^{deg} 1 (x) d, with d(t) = dt.
inline CylinderElement cylinder_differential(const SullivanAlgebra& w, const CylinderElement& a) {
    CylinderElement r(a.table);
    for (std::size_t j = 0; j < a.t_part.size(); ++j) {
        if (a.t_part[j].is_zero()) continue;
        r.add_t(j, extend_derivation(w, a.t_part[j]));
        if (j >= 1) {
            // d(t^j) = j t^{j-1} dt crossed past the W-part
            auto [even, odd] = split_parity(a.t_part[j]);
            r.add_dt(j - 1, scale(Rational(static_cast<long>(j)), sub(even, odd)));
        }
    }
    for (std::size_t j = 0; j < a.dt_part.size(); ++j)
        if (!a.dt_part[j].is_zero()) r.add_dt(j, extend_derivation(w, a.dt_part[j]));
    return r;
}

/// Evaluation at t = 0 or t = 1 (dt = 0 either way).
inline Element<Rational> evaluate_cylinder(const CylinderElement& a, int endpoint) {
    Element<Rational> out(a.table);
    if (a.t_part.empty()) return out;
    if (endpoint == 0) return a.t_part[0];
    for (auto& e : a.t_part) out = add(out, e);
    return out;
}

/// A homotopy witness: a cochain morphism from the source algebra into the
/// cylinder of the target algebra, stored by generator images.
struct HomotopyWitness {
    std::shared_ptr<const SullivanAlgebra> source;
    std::shared_ptr<const SullivanAlgebra> target;
    int cap = std::numeric_limits<int>::max();
    std::map<GenIndex, CylinderElement> images;
    // endpoint bookkeeping: evaluate(0) is recorded as `at_zero`
    std::string at_zero, at_one;
};

inline CylinderElement apply_witness(const HomotopyWitness& w, const Element<Rational>& e) {
    detail::check_same_table(e.table(), &w.source->table());
    CylinderElement out(&w.target->table());
    for (auto& [mono, coeff] : e.terms()) {
        CylinderElement term =
            CylinderElement::from_constant(Element<Rational>::unit(w.target->table(), coeff));
        for (const Factor& f : mono.factors()) {
            auto it = w.images.find(f.gen);
            if (it == w.images.end())
                throw std::out_of_range("witness lacks an image for '" +
                                        w.source->table().name(f.gen) + "'");
            for (std::uint32_t k = 0; k < f.exp; ++k) term = mul(term, it->second);
        }
        out = add(out, term);
    }
    return out;
}

/// D(w(v)) = w(d v) on every generator within the cap.
inline bool witness_is_cochain(const HomotopyWitness& w) {
    for (auto& [g, img] : w.images) {
        CylinderElement lhs = cylinder_differential(*w.target, img);
        CylinderElement rhs = apply_witness(w, w.source->diff(g));
        if (!(lhs == rhs)) return false;
    }
    return true;
}

inline CochainMorphism<Rational> evaluate_witness(const HomotopyWitness& w, int endpoint) {
    CochainMorphism<Rational> f;
    f.source = w.source;
    f.target = w.target;
    f.cap = w.cap;
    for (auto& [g, img] : w.images) f.images.emplace(g, evaluate_cylinder(img, endpoint));
    return f;
}

/// Builds the straight-line homotopy between two morphisms that agree below
/// the top stage and differ by exact terms there:
///   w(v) = f1(v) + d(y_v) t - (-1)^{|d y_v|} y_v dt
/// for corrected generators, constant on the rest.  Preconditions are
/// enforced: for v outside `corrections` the images must coincide, and for
/// corrected v the stated reconciliation f0(v) = f1(v) + d(y_v) must hold.
inline HomotopyWitness homotopy_witness(const CochainMorphism<Rational>& f0,
                                        const CochainMorphism<Rational>& f1,
                                        const std::map<GenIndex, Element<Rational>>& corrections) {
    if (f0.source != f1.source || f0.target != f1.target || f0.cap != f1.cap)
        throw std::invalid_argument("witness endpoints live on different morphism spaces");
    HomotopyWitness w;
    w.source = f0.source;
    w.target = f0.target;
    w.cap = f0.cap;
    w.at_zero = "f1";
    w.at_one = "f0";

    for (auto& [g, img0] : f0.images) {
        const Element<Rational>& img1 = f1.image(g);
        auto corr = corrections.find(g);
        if (corr == corrections.end() || corr->second.is_zero()) {
            if (!(img0 == img1))
                throw std::invalid_argument("morphisms differ on '" + w.source->table().name(g) +
                                            "' but no correction was supplied");
            w.images.emplace(g, CylinderElement::from_constant(img0));
            continue;
        }
        Element<Rational> dy = extend_derivation(*w.target, corr->second);
        if (!(img0 == add(img1, dy)))
            throw std::invalid_argument("correction for '" + w.source->table().name(g) +
                                        "' does not reconcile the two images");
        CylinderElement img(&w.target->table());
        img.add_t(0, img1);
        img.add_t(1, dy);
        // - (-1)^{|d y_v|} y_v dt; d(y_v) has the generator's degree
        const int vdeg = w.source->table().degree(g);
        img.add_dt(0, vdeg % 2 == 0 ? negate(corr->second) : corr->second);
        w.images.emplace(g, img);
    }
    return w;
}

/// Lemma-style stage homotopy test: f0 and f1 must agree on generators of
/// degree <= stage; for each generator of degree stage+1 the difference of
/// images must be a coboundary of the filtered subalgebra, witnessed by an
/// explicit correction.  Returns the correction table, or the first failing
/// generator.
struct StageHomotopyResult {
    bool homotopic = false;
    std::map<GenIndex, Element<Rational>> corrections;
    std::optional<GenIndex> failed_generator;
};

inline StageHomotopyResult homotopic_at_stage(const CochainMorphism<Rational>& f0,
                                              const CochainMorphism<Rational>& f1, int stage,
                                              std::uint64_t limit = kDefaultBasisLimit) {
    if (f0.source != f1.source || f0.target != f1.target)
        throw std::invalid_argument("stage homotopy test expects parallel morphisms");
    const SullivanAlgebra& w = *f0.target;
    StageHomotopyResult out;

    for (auto& [g, img] : f0.images)
        if (f0.source->table().degree(g) <= stage && !(img == f1.image(g)))
            throw std::invalid_argument("morphisms differ below the stage on '" +
                                        f0.source->table().name(g) + "'");

    DegreeBasis dom = enumerate_basis(w, stage, stage + 1, limit);
    DegreeBasis cod = enumerate_basis(w, stage + 1, stage + 1, limit);
    RationalMatrix d = differential_matrix(w, stage, stage + 1, limit);
    RrefSolver solver(d);

    for (GenIndex g = 0; g < f0.source->generator_count(); ++g) {
        if (f0.source->table().degree(g) != stage + 1) continue;
        Element<Rational> diff = sub(f0.image(g), f1.image(g));
        auto witness = solver.solve(coordinates(diff, cod));
        if (!witness) {
            out.failed_generator = g;
            return out;
        }
        out.corrections.emplace(g, from_coordinates(w.table(), dom, *witness));
    }
    out.homotopic = true;
    return out;
}

} // namespace sullivan
