#pragma once

#include "sullivan/algebra.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace sullivan {

/// Thrown when a basis would exceed the configured monomial cap.
class BasisCapExceeded : public std::length_error {
public:
    BasisCapExceeded(long degree, int cap_degree, std::uint64_t predicted, std::uint64_t limit)
        : std::length_error("basis of degree " + std::to_string(degree) + " (generator cap " +
                            std::to_string(cap_degree) + ") has " + std::to_string(predicted) +
                            " monomials, over the limit of " + std::to_string(limit)),
          degree(degree), cap_degree(cap_degree), predicted(predicted), limit(limit) {}
    long degree;
    int cap_degree;
    std::uint64_t predicted, limit;
};

inline constexpr std::uint64_t kDefaultBasisLimit = 500000;

/// Coefficient of t^d in the truncated product of 1/(1 - t^{|g|}) over even
/// generators and (1 + t^{|g|}) over odd generators of degree <= cap.
/// Deliberately computed as a power series, independent of the recursive
/// enumeration it cross-checks.
inline std::uint64_t hilbert_count(const SullivanAlgebra& a, long degree, int cap) {
    if (degree < 0) throw std::invalid_argument("negative degree");
    std::vector<std::uint64_t> series(static_cast<std::size_t>(degree) + 1, 0);
    series[0] = 1;
    for (GenIndex g = 0; g < a.generator_count(); ++g) {
        const int dg = a.table().degree(g);
        if (dg > cap || dg > degree) continue;
        if (a.table().odd(g)) {
            for (long r = degree; r >= dg; --r) series[r] += series[r - dg];
        } else {
            for (long r = dg; r <= degree; ++r) series[r] += series[r - dg];
        }
    }
    return series[degree];
}

/// The canonical monomial basis of the degree-d part of the subalgebra
/// generated by generators of degree <= cap.
struct DegreeBasis {
    long degree = 0;
    int cap = 0;
    std::vector<Monomial> monomials; // canonical term order

    int dimension() const { return static_cast<int>(monomials.size()); }

    /// Position of a monomial in the basis, or -1.
    int position(const Monomial& m) const {
        auto it = std::lower_bound(monomials.begin(), monomials.end(), m);
        if (it != monomials.end() && *it == m) return static_cast<int>(it - monomials.begin());
        return -1;
    }
};

namespace detail {

// Feasibility table for the enumeration: can generators from position i of
// the descending-degree list make up exactly the remaining degree?
struct BasisEnumerator {
    const GeneratorTable& table;
    std::vector<GenIndex> gens; // descending degree
    std::vector<std::vector<char>> feasible;

    BasisEnumerator(const SullivanAlgebra& a, long degree, int cap) : table(a.table()) {
        for (GenIndex g = 0; g < a.generator_count(); ++g)
            if (table.degree(g) <= cap && table.degree(g) <= degree) gens.push_back(g);
        std::sort(gens.begin(), gens.end(), [&](GenIndex x, GenIndex y) {
            if (table.degree(x) != table.degree(y)) return table.degree(x) > table.degree(y);
            return x < y;
        });
        feasible.assign(gens.size() + 1, std::vector<char>(degree + 1, 0));
        feasible[gens.size()][0] = 1;
        for (std::size_t i = gens.size(); i-- > 0;) {
            const int dg = table.degree(gens[i]);
            const bool odd = table.odd(gens[i]);
            for (long r = 0; r <= degree; ++r) {
                char ok = feasible[i + 1][r];
                if (!ok && odd && r >= dg) ok = feasible[i + 1][r - dg];
                if (!ok && !odd) {
                    for (long used = dg; used <= r && !ok; used += dg)
                        ok = feasible[i + 1][r - used];
                }
                feasible[i][r] = ok;
            }
        }
    }

    void run(std::size_t i, long remaining, std::vector<Factor>& stack,
             std::vector<Monomial>& out) {
        if (remaining == 0) {
            std::vector<Factor> fs(stack.rbegin(), stack.rend()); // ascending index order
            std::sort(fs.begin(), fs.end(),
                      [](const Factor& a, const Factor& b) { return a.gen < b.gen; });
            long deg = 0;
            for (const Factor& f : fs) deg += static_cast<long>(f.exp) * table.degree(f.gen);
            out.push_back(Monomial::from_sorted(std::move(fs), deg));
            return;
        }
        if (i == gens.size() || !feasible[i][remaining]) return;
        const int dg = table.degree(gens[i]);
        const long max_exp = table.odd(gens[i]) ? std::min<long>(1, remaining / dg)
                                                : remaining / dg;
        for (long e = 0; e <= max_exp; ++e) {
            if (!feasible[i + 1][remaining - e * dg]) continue;
            if (e > 0) stack.push_back(Factor{gens[i], static_cast<std::uint32_t>(e)});
            run(i + 1, remaining - e * dg, stack, out);
            if (e > 0) stack.pop_back();
        }
    }
};

} // namespace detail

inline DegreeBasis enumerate_basis(const SullivanAlgebra& a, long degree, int cap,
                                   std::uint64_t limit = kDefaultBasisLimit) {
    if (degree < 0) throw std::invalid_argument("negative degree");
    const std::uint64_t predicted = hilbert_count(a, degree, cap);
    if (predicted > limit) throw BasisCapExceeded(degree, cap, predicted, limit);

    DegreeBasis basis;
    basis.degree = degree;
    basis.cap = cap;
    detail::BasisEnumerator e(a, degree, cap);
    std::vector<Factor> stack;
    e.run(0, degree, stack, basis.monomials);
    std::sort(basis.monomials.begin(), basis.monomials.end());
    return basis;
}

} // namespace sullivan
