#pragma once

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace sullivan {

using GenIndex = std::uint32_t;

/// A declared generator of the free graded-commutative algebra.
/// Degree is the cohomological degree; parity of the degree decides whether
/// the generator is polynomial (even) or exterior (odd).
struct GeneratorDecl {
    std::string name;
    int degree = 0;   // >= 2: the algebras handled here are 1-connected
    GenIndex index = 0; // position in declaration order

    bool odd() const { return degree % 2 != 0; }
};

/// Immutable ordered table of generator declarations.  Element arithmetic
/// identifies its ambient algebra through the address of this table, so a
/// table is created once and shared.
class GeneratorTable {
public:
    GeneratorTable() = default;

    explicit GeneratorTable(std::vector<GeneratorDecl> decls) : decls_(std::move(decls)) {
        for (GenIndex i = 0; i < decls_.size(); ++i) {
            decls_[i].index = i;
            if (decls_[i].degree < 1)
                throw std::invalid_argument("generator '" + decls_[i].name +
                                            "' must have positive degree");
            if (!by_name_.emplace(decls_[i].name, i).second)
                throw std::invalid_argument("duplicate generator name '" + decls_[i].name + "'");
        }
    }

    std::size_t size() const { return decls_.size(); }
    const GeneratorDecl& operator[](GenIndex i) const { return decls_.at(i); }
    const std::vector<GeneratorDecl>& decls() const { return decls_; }

    int degree(GenIndex i) const { return decls_.at(i).degree; }
    bool odd(GenIndex i) const { return decls_.at(i).odd(); }
    const std::string& name(GenIndex i) const { return decls_.at(i).name; }

    GenIndex index_of(const std::string& name) const {
        auto it = by_name_.find(name);
        if (it == by_name_.end())
            throw std::out_of_range("unknown generator symbol '" + name + "'");
        return it->second;
    }

    bool contains(const std::string& name) const { return by_name_.count(name) != 0; }

    bool same_decls(const GeneratorTable& other) const {
        if (decls_.size() != other.decls_.size()) return false;
        for (std::size_t i = 0; i < decls_.size(); ++i)
            if (decls_[i].name != other.decls_[i].name || decls_[i].degree != other.decls_[i].degree)
                return false;
        return true;
    }

private:
    std::vector<GeneratorDecl> decls_;
    std::map<std::string, GenIndex> by_name_;
};

} // namespace sullivan
