#pragma once

#include "sullivan/monomial.hpp"
#include "sullivan/param_poly.hpp"
#include "sullivan/rational.hpp"

#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sullivan {

/// Finite signed sum of canonical monomials with coefficients in an exact
/// ring (Rational or ParamPoly).  No zero coefficient is ever stored; the
/// zero element is the empty sum.  Every element remembers its generator
/// table so that mixed-algebra arithmetic is rejected.
template <class Ring>
class Element {
public:
    Element() = default;
    explicit Element(const GeneratorTable* table) : table_(table) {}

    static Element zero(const GeneratorTable& table) { return Element(&table); }

    static Element unit(const GeneratorTable& table, Ring c = Ring(1)) {
        Element e(&table);
        e.add_term(Monomial::unit(), std::move(c));
        return e;
    }

    static Element monomial(const GeneratorTable& table, Monomial m, Ring c = Ring(1)) {
        Element e(&table);
        e.add_term(std::move(m), std::move(c));
        return e;
    }

    static Element generator(const GeneratorTable& table, GenIndex g, Ring c = Ring(1)) {
        return monomial(table, Monomial::from_sorted({Factor{g, 1}}, table.degree(g)), std::move(c));
    }

    const GeneratorTable* table() const { return table_; }
    const std::map<Monomial, Ring>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }
    std::size_t term_count() const { return terms_.size(); }

    /// Degree of a homogeneous element; zero elements have no degree.
    std::optional<long> homogeneous_degree() const {
        std::optional<long> d;
        for (auto& [m, c] : terms_) {
            if (!d) d = m.degree();
            else if (*d != m.degree()) return std::nullopt;
        }
        return d;
    }

    bool is_homogeneous_of_degree(long d) const {
        for (auto& [m, c] : terms_)
            if (m.degree() != d) return false;
        return true;
    }

    std::set<long> degrees() const {
        std::set<long> out;
        for (auto& [m, c] : terms_) out.insert(m.degree());
        return out;
    }

    /// The component of the given degree.
    Element component(long d) const {
        Element e(table_);
        for (auto& [m, c] : terms_)
            if (m.degree() == d) e.terms_.emplace(m, c);
        return e;
    }

    Ring coefficient_of(const Monomial& m) const {
        auto it = terms_.find(m);
        return it == terms_.end() ? Ring(0) : it->second;
    }

    void add_term(Monomial m, Ring c) {
        if (sullivan::is_zero(c)) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(std::move(m), std::move(c));
        } else {
            it->second += c;
            if (sullivan::is_zero(it->second)) terms_.erase(it);
        }
    }

    friend bool operator==(const Element& a, const Element& b) {
        return a.terms_ == b.terms_;
    }

    std::string to_string() const {
        if (!table_ || terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (auto& [m, c] : terms_) {
            std::string cs = coeff_string(c);
            bool negated = false;
            if (!cs.empty() && cs[0] == '-' && cs.find_first_of("+-", 1) == std::string::npos) {
                negated = true;
                cs = cs.substr(1);
            }
            if (first) { if (negated) out += "-"; }
            else out += negated ? " - " : " + ";
            first = false;
            bool trivial_coeff = (cs == "1");
            if (m.is_unit()) out += cs;
            else if (trivial_coeff) out += m.to_string(*table_);
            else out += cs + "*" + m.to_string(*table_);
        }
        return out;
    }

private:
    static std::string coeff_string(const Rational& c) { return to_coeff_string(c); }
    static std::string coeff_string(const ParamPoly& c) {
        // used only by debugging output paths that do not have the table;
        // report code prints parameter polynomials with their table instead
        if (c.is_constant()) return to_coeff_string(c.constant_value());
        return "<poly>";
    }

    const GeneratorTable* table_ = nullptr;
    std::map<Monomial, Ring> terms_;
};

namespace detail {
inline void check_same_table(const GeneratorTable* a, const GeneratorTable* b) {
    if (a == nullptr || b == nullptr)
        throw std::invalid_argument("element without an ambient algebra");
    if (a != b)
        throw std::invalid_argument("elements belong to different algebras");
}
} // namespace detail

/// Canonicalizes a raw factor word into a one-term element, applying the
/// Koszul sign and dropping odd squares.
template <class Ring>
Element<Ring> normalize(const GeneratorTable& table, std::vector<Factor> raw, Ring coeff) {
    Element<Ring> e(&table);
    if (sullivan::is_zero(coeff)) return e;
    NormalizedMonomial nm = normalize_factors(table, std::move(raw));
    if (nm.zero) return e;
    if (nm.sign < 0) coeff = Ring(0) - coeff;
    e.add_term(std::move(nm.monomial), std::move(coeff));
    return e;
}

template <class Ring>
Element<Ring> add(const Element<Ring>& a, const Element<Ring>& b) {
    detail::check_same_table(a.table(), b.table());
    Element<Ring> r = a;
    for (auto& [m, c] : b.terms()) r.add_term(m, c);
    return r;
}

template <class Ring>
Element<Ring> sub(const Element<Ring>& a, const Element<Ring>& b) {
    detail::check_same_table(a.table(), b.table());
    Element<Ring> r = a;
    for (auto& [m, c] : b.terms()) r.add_term(m, Ring(0) - c);
    return r;
}

template <class Ring, class Scalar>
Element<Ring> scale(const Scalar& c, const Element<Ring>& a) {
    Element<Ring> r(a.table());
    Ring cc(c);
    if (sullivan::is_zero(cc)) return r;
    for (auto& [m, v] : a.terms()) r.add_term(m, v * cc);
    return r;
}

template <class Ring>
Element<Ring> negate(const Element<Ring>& a) {
    Element<Ring> r(a.table());
    for (auto& [m, v] : a.terms()) r.add_term(m, Ring(0) - v);
    return r;
}

template <class Ring>
Element<Ring> mul(const Element<Ring>& a, const Element<Ring>& b) {
    detail::check_same_table(a.table(), b.table());
    Element<Ring> r(a.table());
    for (auto& [ma, ca] : a.terms())
        for (auto& [mb, cb] : b.terms()) {
            NormalizedMonomial nm = mul_monomials(*a.table(), ma, mb);
            if (nm.zero) continue;
            Ring c = ca * cb;
            if (nm.sign < 0) c = Ring(0) - c;
            r.add_term(std::move(nm.monomial), std::move(c));
        }
    return r;
}

template <class Ring>
Element<Ring> pow(const Element<Ring>& a, std::uint32_t e) {
    Element<Ring> r = Element<Ring>::unit(*a.table());
    Element<Ring> base = a;
    while (e) {
        if (e & 1u) r = mul(r, base);
        e >>= 1u;
        if (e) base = mul(base, base);
    }
    return r;
}

/// Embeds a rational element into a larger coefficient ring.
template <class Ring>
Element<Ring> lift(const Element<Rational>& a) {
    Element<Ring> r(a.table());
    for (auto& [m, c] : a.terms()) r.add_term(m, Ring(c));
    return r;
}

template <>
inline Element<Rational> lift<Rational>(const Element<Rational>& a) {
    return a;
}

} // namespace sullivan
