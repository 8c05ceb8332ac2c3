#pragma once

#include "sullivan/rational.hpp"

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sullivan {

using ParamIndex = std::uint32_t;

/// Whether a named unknown is known to be invertible.  Scale factors of
/// indecomposables ("p" unknowns) are nonzero rationals; additive correction
/// coefficients ("q" unknowns) are plain rationals that may vanish.
enum class ParamClass { Invertible, Plain };

/// Interned table of parameter names.  Shared by every polynomial of one
/// symbolic computation.
class ParameterTable {
public:
    ParamIndex add(const std::string& name, ParamClass cls) {
        if (by_name_.count(name))
            throw std::invalid_argument("duplicate parameter name '" + name + "'");
        ParamIndex id = static_cast<ParamIndex>(names_.size());
        names_.push_back(name);
        classes_.push_back(cls);
        by_name_.emplace(name, id);
        return id;
    }

    std::size_t size() const { return names_.size(); }
    const std::string& name(ParamIndex i) const { return names_.at(i); }
    ParamClass param_class(ParamIndex i) const { return classes_.at(i); }
    bool invertible(ParamIndex i) const { return classes_.at(i) == ParamClass::Invertible; }

    std::optional<ParamIndex> find(const std::string& name) const {
        auto it = by_name_.find(name);
        if (it == by_name_.end()) return std::nullopt;
        return it->second;
    }

private:
    std::vector<std::string> names_;
    std::vector<ParamClass> classes_;
    std::map<std::string, ParamIndex> by_name_;
};

/// Power product of parameters, sorted by parameter index, exponents >= 1.
struct ParamMonomial {
    std::vector<std::pair<ParamIndex, int>> powers;

    bool is_constant() const { return powers.empty(); }

    int exponent_of(ParamIndex p) const {
        for (auto& [id, e] : powers)
            if (id == p) return e;
        return 0;
    }

    friend bool operator==(const ParamMonomial&, const ParamMonomial&) = default;
    friend auto operator<=>(const ParamMonomial&, const ParamMonomial&) = default;

    static ParamMonomial one() { return {}; }

    static ParamMonomial single(ParamIndex p, int e = 1) {
        ParamMonomial m;
        if (e != 0) m.powers.push_back({p, e});
        return m;
    }

    ParamMonomial times(const ParamMonomial& o) const {
        ParamMonomial r;
        std::size_t i = 0, j = 0;
        while (i < powers.size() || j < o.powers.size()) {
            if (j == o.powers.size() || (i < powers.size() && powers[i].first < o.powers[j].first))
                r.powers.push_back(powers[i++]);
            else if (i == powers.size() || o.powers[j].first < powers[i].first)
                r.powers.push_back(o.powers[j++]);
            else {
                int e = powers[i].second + o.powers[j].second;
                if (e != 0) r.powers.push_back({powers[i].first, e});
                ++i, ++j;
            }
        }
        return r;
    }

    std::string to_string(const ParameterTable& table, const std::string& sep = " * ") const {
        if (powers.empty()) return "1";
        std::string out;
        for (std::size_t i = 0; i < powers.size(); ++i) {
            if (i) out += sep;
            out += table.name(powers[i].first);
            if (powers[i].second != 1) out += "^" + std::to_string(powers[i].second);
        }
        return out;
    }
};

/// Multivariate polynomial in the parameters with exact rational
/// coefficients.  This is the second coefficient ring of the library, used
/// for symbolic morphisms whose images carry unknown scalars.
class ParamPoly {
public:
    ParamPoly() = default;
    ParamPoly(const Rational& c) { // implicit: constants embed
        if (!sullivan::is_zero(c)) terms_.emplace(ParamMonomial::one(), c);
    }
    ParamPoly(long c) : ParamPoly(Rational(c)) {}

    static ParamPoly variable(ParamIndex p) {
        ParamPoly r;
        r.terms_.emplace(ParamMonomial::single(p), Rational(1));
        return r;
    }

    static ParamPoly monomial(ParamMonomial m, const Rational& c) {
        ParamPoly r;
        if (!sullivan::is_zero(c)) r.terms_.emplace(std::move(m), c);
        return r;
    }

    const std::map<ParamMonomial, Rational>& terms() const { return terms_; }
    bool is_zero() const { return terms_.empty(); }

    bool is_constant() const {
        return terms_.empty() || (terms_.size() == 1 && terms_.begin()->first.is_constant());
    }

    Rational constant_value() const {
        if (terms_.empty()) return Rational(0);
        if (!is_constant()) throw std::logic_error("parameter polynomial is not constant");
        return terms_.begin()->second;
    }

    ParamPoly& operator+=(const ParamPoly& o) {
        for (auto& [m, c] : o.terms_) add_term(m, c);
        return *this;
    }
    ParamPoly& operator-=(const ParamPoly& o) {
        for (auto& [m, c] : o.terms_) add_term(m, -c);
        return *this;
    }
    friend ParamPoly operator+(ParamPoly a, const ParamPoly& b) { a += b; return a; }
    friend ParamPoly operator-(ParamPoly a, const ParamPoly& b) { a -= b; return a; }
    friend ParamPoly operator-(const ParamPoly& a) {
        ParamPoly r;
        for (auto& [m, c] : a.terms_) r.terms_.emplace(m, -c);
        return r;
    }

    friend ParamPoly operator*(const ParamPoly& a, const ParamPoly& b) {
        ParamPoly r;
        for (auto& [ma, ca] : a.terms_)
            for (auto& [mb, cb] : b.terms_) r.add_term(ma.times(mb), ca * cb);
        return r;
    }
    ParamPoly& operator*=(const ParamPoly& o) { return *this = *this * o; }

    ParamPoly& operator*=(const Rational& c) {
        if (sullivan::is_zero(c)) { terms_.clear(); return *this; }
        for (auto& [m, v] : terms_) v *= c;
        return *this;
    }
    friend ParamPoly operator*(ParamPoly a, const Rational& c) { a *= c; return a; }
    friend ParamPoly operator*(const Rational& c, ParamPoly a) { a *= c; return a; }

    ParamPoly& operator/=(const Rational& c) {
        if (sullivan::is_zero(c)) throw std::domain_error("division by zero");
        for (auto& [m, v] : terms_) v /= c;
        return *this;
    }

    friend bool operator==(const ParamPoly& a, const ParamPoly& b) { return a.terms_ == b.terms_; }

    /// Substitutes poly for every occurrence of parameter p.
    ParamPoly substituted(ParamIndex p, const ParamPoly& value) const {
        ParamPoly r;
        for (auto& [m, c] : terms_) {
            int e = m.exponent_of(p);
            if (e == 0) { r.add_term(m, c); continue; }
            if (e < 0) throw std::logic_error("negative parameter exponent in substitution");
            ParamMonomial rest;
            for (auto& [id, ex] : m.powers)
                if (id != p) rest.powers.push_back({id, ex});
            ParamPoly pw(Rational(1));
            for (int k = 0; k < e; ++k) pw *= value;
            r += pw * ParamPoly::monomial(rest, c);
        }
        return r;
    }

    std::string to_string(const ParameterTable& table) const {
        if (terms_.empty()) return "0";
        std::string out;
        bool first = true;
        for (auto& [m, c] : terms_) {
            Rational a = c;
            if (first) {
                if (a < 0) { out += "-"; a = -a; }
            } else {
                out += (a < 0) ? " - " : " + ";
                if (a < 0) a = -a;
            }
            first = false;
            if (m.is_constant()) out += to_coeff_string(a);
            else {
                if (a != 1) out += to_coeff_string(a) + "*";
                out += m.to_string(table, "*");
            }
        }
        return out;
    }

private:
    void add_term(const ParamMonomial& m, const Rational& c) {
        if (sullivan::is_zero(c)) return;
        auto it = terms_.find(m);
        if (it == terms_.end()) {
            terms_.emplace(m, c);
        } else {
            it->second += c;
            if (sullivan::is_zero(it->second)) terms_.erase(it);
        }
    }

    std::map<ParamMonomial, Rational> terms_;
};

inline bool is_zero(const ParamPoly& p) { return p.is_zero(); }

} // namespace sullivan
