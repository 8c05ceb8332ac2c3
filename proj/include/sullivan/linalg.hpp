#pragma once

#include "sullivan/rational.hpp"

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace sullivan {

/// Sparse vector over the rationals: (index, value) pairs sorted by index,
/// no explicit zeros.
using SparseVec = std::vector<std::pair<int, Rational>>;

inline SparseVec sparse_axpy(const SparseVec& x, const Rational& c, const SparseVec& y) {
    // x + c*y
    SparseVec r;
    r.reserve(x.size() + y.size());
    std::size_t i = 0, j = 0;
    while (i < x.size() || j < y.size()) {
        if (j == y.size() || (i < x.size() && x[i].first < y[j].first)) r.push_back(x[i++]);
        else if (i == x.size() || y[j].first < x[i].first) {
            Rational v = c * y[j].second;
            if (!is_zero(v)) r.emplace_back(y[j].first, std::move(v));
            ++j;
        } else {
            Rational v = x[i].second + c * y[j].second;
            if (!is_zero(v)) r.emplace_back(x[i].first, std::move(v));
            ++i, ++j;
        }
    }
    return r;
}

inline Rational sparse_get(const SparseVec& v, int idx) {
    auto it = std::lower_bound(v.begin(), v.end(), idx,
                               [](const auto& p, int k) { return p.first < k; });
    if (it != v.end() && it->first == idx) return it->second;
    return Rational(0);
}

/// Rescales to the primitive integer form: integer entries, content 1,
/// leading entry positive.  Keeps elimination intermediates small.
inline void sparse_make_primitive(SparseVec& v) {
    if (v.empty()) return;
    Integer den_lcm = 1, num_gcd = 0;
    for (auto& [i, q] : v) den_lcm = lcm(den_lcm, denominator(q));
    for (auto& [i, q] : v) num_gcd = gcd(num_gcd, numerator(q) * (den_lcm / denominator(q)));
    Rational scale(den_lcm, num_gcd);
    if (v.front().second < 0) scale = -scale;
    for (auto& [i, q] : v) q *= scale;
}

/// Exact sparse rational matrix stored by rows.
class RationalMatrix {
public:
    RationalMatrix() = default;
    RationalMatrix(int rows, int cols) : rows_(rows), cols_(cols), data_(rows) {}

    int rows() const { return rows_; }
    int cols() const { return cols_; }

    const SparseVec& row(int i) const { return data_.at(i); }
    SparseVec& row(int i) { return data_.at(i); }

    void set(int i, int j, Rational v) {
        if (i < 0 || i >= rows_ || j < 0 || j >= cols_)
            throw std::out_of_range("matrix index out of range");
        SparseVec& r = data_[i];
        auto it = std::lower_bound(r.begin(), r.end(), j,
                                   [](const auto& p, int k) { return p.first < k; });
        if (it != r.end() && it->first == j) {
            if (is_zero(v)) r.erase(it);
            else it->second = std::move(v);
        } else if (!is_zero(v)) {
            r.insert(it, {j, std::move(v)});
        }
    }

    Rational get(int i, int j) const { return sparse_get(data_.at(i), j); }

    std::size_t nonzero_count() const {
        std::size_t n = 0;
        for (auto& r : data_) n += r.size();
        return n;
    }

    RationalMatrix transposed() const {
        RationalMatrix t(cols_, rows_);
        for (int i = 0; i < rows_; ++i)
            for (auto& [j, v] : data_[i]) t.data_[j].emplace_back(i, v);
        return t; // each column visited in row order -> already sorted
    }

    std::vector<Rational> apply(const std::vector<Rational>& x) const {
        if (static_cast<int>(x.size()) != cols_)
            throw std::invalid_argument("dimension mismatch in matrix-vector product");
        std::vector<Rational> y(rows_, Rational(0));
        for (int i = 0; i < rows_; ++i)
            for (auto& [j, v] : data_[i]) y[i] += v * x[j];
        return y;
    }

    friend bool operator==(const RationalMatrix& a, const RationalMatrix& b) {
        return a.rows_ == b.rows_ && a.cols_ == b.cols_ && a.data_ == b.data_;
    }

    static RationalMatrix identity(int n) {
        RationalMatrix m(n, n);
        for (int i = 0; i < n; ++i) m.data_[i].emplace_back(i, Rational(1));
        return m;
    }

    friend RationalMatrix operator*(const RationalMatrix& a, const RationalMatrix& b) {
        if (a.cols_ != b.rows_) throw std::invalid_argument("dimension mismatch in matrix product");
        RationalMatrix r(a.rows_, b.cols_);
        for (int i = 0; i < a.rows_; ++i) {
            SparseVec acc;
            for (auto& [k, v] : a.data_[i]) acc = sparse_axpy(acc, v, b.data_[k]);
            r.data_[i] = std::move(acc);
        }
        return r;
    }

private:
    int rows_ = 0, cols_ = 0;
    std::vector<SparseVec> data_;
};

struct RrefResult {
    RationalMatrix reduced;       // nonzero rows only, pivots scaled to 1, sorted by pivot column
    std::vector<int> pivot_cols;  // one per reduced row, strictly increasing
    int rank = 0;
};

/// Reduced row echelon form.  Pivot rule: columns in ascending order; the
/// pivot row is the candidate with the fewest nonzeros (ties by original row
/// index).  Rows are kept in primitive integer form during elimination and
/// scaled to unit pivots only at the end, which bounds coefficient growth on
/// the sparse boundary matrices this library produces.
inline RrefResult rref(const RationalMatrix& m) {
    struct WorkRow {
        SparseVec v;
        int orig;
    };
    std::vector<WorkRow> work;
    work.reserve(m.rows());
    for (int i = 0; i < m.rows(); ++i) {
        if (m.row(i).empty()) continue;
        WorkRow w{m.row(i), i};
        sparse_make_primitive(w.v);
        work.push_back(std::move(w));
    }

    std::vector<std::size_t> pivot_rows;
    std::vector<int> pivot_cols;
    std::vector<bool> used(work.size(), false);

    for (int c = 0; c < m.cols(); ++c) {
        std::size_t best = work.size();
        for (std::size_t r = 0; r < work.size(); ++r) {
            if (used[r] || work[r].v.empty()) continue;
            if (work[r].v.front().first != c) continue; // leading entry decides candidacy
            if (best == work.size() || work[r].v.size() < work[best].v.size() ||
                (work[r].v.size() == work[best].v.size() && work[r].orig < work[best].orig))
                best = r;
        }
        if (best == work.size()) continue;

        used[best] = true;
        pivot_rows.push_back(best);
        pivot_cols.push_back(c);
        const Rational pivot = work[best].v.front().second;
        for (std::size_t r = 0; r < work.size(); ++r) {
            if (r == best || work[r].v.empty()) continue;
            Rational coeff = sparse_get(work[r].v, c);
            if (is_zero(coeff)) continue;
            work[r].v = sparse_axpy(work[r].v, -coeff / pivot, work[best].v);
            sparse_make_primitive(work[r].v);
        }
    }

    RrefResult out;
    out.rank = static_cast<int>(pivot_rows.size());
    out.reduced = RationalMatrix(out.rank, m.cols());
    out.pivot_cols = pivot_cols;
    for (int r = 0; r < out.rank; ++r) {
        SparseVec v = work[pivot_rows[r]].v;
        const Rational pivot = v.front().second;
        for (auto& [j, q] : v) q /= pivot;
        out.reduced.row(r) = std::move(v);
    }
    return out;
}

/// Basis of the right kernel {x : Mx = 0}, one vector per free column, in
/// ascending free-column order.
inline std::vector<std::vector<Rational>> kernel_basis(const RationalMatrix& m) {
    RrefResult r = rref(m);
    std::vector<bool> is_pivot(m.cols(), false);
    for (int c : r.pivot_cols) is_pivot[c] = true;

    std::vector<std::vector<Rational>> basis;
    for (int f = 0; f < m.cols(); ++f) {
        if (is_pivot[f]) continue;
        std::vector<Rational> v(m.cols(), Rational(0));
        v[f] = 1;
        for (int pr = 0; pr < r.rank; ++pr)
            v[r.pivot_cols[pr]] = -sparse_get(r.reduced.row(pr), f);
        basis.push_back(std::move(v));
    }
    return basis;
}

/// Precomputed solver for repeated membership queries against one matrix.
/// Internally holds the reduced form of [M | I]; each query costs one sparse
/// transform of the right-hand side.
class RrefSolver {
public:
    explicit RrefSolver(const RationalMatrix& m) : rows_(m.rows()), cols_(m.cols()) {
        RationalMatrix aug(m.rows(), m.cols() + m.rows());
        for (int i = 0; i < m.rows(); ++i) {
            aug.row(i) = m.row(i);
            aug.row(i).emplace_back(cols_ + i, Rational(1));
        }
        RrefResult r = rref(aug);
        reduced_ = std::move(r.reduced);
        pivot_cols_ = std::move(r.pivot_cols);
        for (std::size_t i = 0; i < pivot_cols_.size(); ++i)
            if (pivot_cols_[i] < cols_) rank_ = static_cast<int>(i) + 1;
    }

    int rank() const { return rank_; }

    /// Returns x with Mx = v, or nullopt if v is not in the column space.
    std::optional<std::vector<Rational>> solve(const std::vector<Rational>& v) const {
        if (static_cast<int>(v.size()) != rows_)
            throw std::invalid_argument("dimension mismatch in membership query");
        std::vector<Rational> x(cols_, Rational(0));
        for (int r = 0; r < reduced_.rows(); ++r) {
            Rational u(0);
            // dot of the transform part of this row with v
            const SparseVec& row = reduced_.row(r);
            auto it = std::lower_bound(row.begin(), row.end(), cols_,
                                       [](const auto& p, int k) { return p.first < k; });
            for (; it != row.end(); ++it) {
                const Rational& vi = v[it->first - cols_];
                if (!is_zero(vi)) u += it->second * vi;
            }
            if (pivot_cols_[r] < cols_) {
                x[pivot_cols_[r]] = std::move(u);
            } else if (!is_zero(u)) {
                return std::nullopt; // combo with zero image demands zero coefficient
            }
        }
        return x;
    }

private:
    int rows_ = 0, cols_ = 0, rank_ = 0;
    RationalMatrix reduced_;
    std::vector<int> pivot_cols_;
};

/// Membership witness for v in the column space of M.
inline std::optional<std::vector<Rational>> image_membership(const RationalMatrix& m,
                                                             const std::vector<Rational>& v) {
    return RrefSolver(m).solve(v);
}

// ---------------------------------------------------------------------------
// Integer lattices
// ---------------------------------------------------------------------------

using IntVec = std::vector<Integer>;

struct IntegerLattice {
    std::vector<IntVec> basis; // independent integer kernel vectors
    int rank() const { return static_cast<int>(basis.size()); }
    bool trivial() const { return basis.empty(); }
};

/// Kernel of an integer matrix over the integers, by Hermite-style column
/// reduction with a unimodular transform.  No floating point anywhere.
inline IntegerLattice integer_kernel(const std::vector<IntVec>& m_rows, std::size_t cols) {
    for (auto& r : m_rows)
        if (r.size() != cols) throw std::invalid_argument("ragged integer matrix");

    // columns of M and of the unimodular transform U
    std::vector<IntVec> col(cols), ucol(cols);
    for (std::size_t j = 0; j < cols; ++j) {
        col[j].resize(m_rows.size());
        for (std::size_t i = 0; i < m_rows.size(); ++i) col[j][i] = m_rows[i][j];
        ucol[j].assign(cols, Integer(0));
        ucol[j][j] = 1;
    }

    std::vector<bool> active(cols, true);
    for (std::size_t i = 0; i < m_rows.size(); ++i) {
        // gcd-eliminate row i across the active columns until one survivor
        while (true) {
            std::size_t best = cols;
            int nonzero = 0;
            for (std::size_t j = 0; j < cols; ++j) {
                if (!active[j] || col[j][i] == 0) continue;
                ++nonzero;
                if (best == cols || abs(col[j][i]) < abs(col[best][i])) best = j;
            }
            if (nonzero <= 1) {
                if (nonzero == 1) active[best] = false; // pivot column for this row
                break;
            }
            for (std::size_t j = 0; j < cols; ++j) {
                if (!active[j] || j == best || col[j][i] == 0) continue;
                Integer q = col[j][i] / col[best][i]; // truncated division
                for (std::size_t k = 0; k < m_rows.size(); ++k) col[j][k] -= q * col[best][k];
                for (std::size_t k = 0; k < cols; ++k) ucol[j][k] -= q * ucol[best][k];
            }
        }
    }

    IntegerLattice out;
    for (std::size_t j = 0; j < cols; ++j) {
        if (!active[j]) continue;
        // active columns have been annihilated by every row
        bool nonzero = false;
        for (auto& v : ucol[j]) nonzero = nonzero || v != 0;
        if (!nonzero) continue;
        IntVec b = ucol[j];
        Integer g = 0;
        for (auto& v : b) g = gcd(g, v);
        if (g > 1)
            for (auto& v : b) v /= g;
        // canonical orientation: first nonzero positive
        for (auto& v : b) {
            if (v == 0) continue;
            if (v < 0)
                for (auto& w : b) w = -w;
            break;
        }
        out.basis.push_back(std::move(b));
    }
    return out;
}

// ---------------------------------------------------------------------------
// GF(2) affine systems
// ---------------------------------------------------------------------------

struct Gf2System {
    std::size_t unknowns = 0;
    std::vector<std::vector<std::uint8_t>> rows; // coefficient rows
    std::vector<std::uint8_t> rhs;

    void add_equation(std::vector<std::uint8_t> coeffs, std::uint8_t b) {
        if (coeffs.size() != unknowns) throw std::invalid_argument("bad GF(2) equation width");
        rows.push_back(std::move(coeffs));
        rhs.push_back(b & 1u);
    }
};

struct Gf2Solution {
    bool consistent = false;
    std::vector<std::uint8_t> particular;               // one solution
    std::vector<std::vector<std::uint8_t>> kernel_basis; // homogeneous basis

    std::size_t solution_count_log2() const { return kernel_basis.size(); }

    /// Enumerates the full affine solution set (intended for small systems).
    std::vector<std::vector<std::uint8_t>> enumerate() const {
        std::vector<std::vector<std::uint8_t>> out;
        if (!consistent) return out;
        const std::size_t k = kernel_basis.size();
        if (k >= 26) throw std::length_error("GF(2) solution set too large to enumerate");
        for (std::uint64_t mask = 0; mask < (1ull << k); ++mask) {
            std::vector<std::uint8_t> v = particular;
            for (std::size_t b = 0; b < k; ++b)
                if (mask & (1ull << b))
                    for (std::size_t i = 0; i < v.size(); ++i) v[i] ^= kernel_basis[b][i];
            out.push_back(std::move(v));
        }
        std::sort(out.begin(), out.end());
        return out;
    }
};

inline Gf2Solution gf2_solve(const Gf2System& sys) {
    const std::size_t n = sys.unknowns;
    std::vector<std::vector<std::uint8_t>> rows = sys.rows;
    std::vector<std::uint8_t> rhs = sys.rhs;

    std::vector<std::size_t> pivot_of_col(n, SIZE_MAX);
    std::size_t next_row = 0;
    for (std::size_t c = 0; c < n && next_row < rows.size(); ++c) {
        std::size_t p = SIZE_MAX;
        for (std::size_t r = next_row; r < rows.size(); ++r)
            if (rows[r][c]) { p = r; break; }
        if (p == SIZE_MAX) continue;
        std::swap(rows[p], rows[next_row]);
        std::swap(rhs[p], rhs[next_row]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r == next_row || !rows[r][c]) continue;
            for (std::size_t k = 0; k < n; ++k) rows[r][k] ^= rows[next_row][k];
            rhs[r] ^= rhs[next_row];
        }
        pivot_of_col[c] = next_row++;
    }

    Gf2Solution out;
    for (std::size_t r = next_row; r < rows.size(); ++r)
        if (rhs[r]) return out; // inconsistent: 0 = 1
    out.consistent = true;
    out.particular.assign(n, 0);
    for (std::size_t c = 0; c < n; ++c)
        if (pivot_of_col[c] != SIZE_MAX) out.particular[c] = rhs[pivot_of_col[c]];
    for (std::size_t f = 0; f < n; ++f) {
        if (pivot_of_col[f] != SIZE_MAX) continue;
        std::vector<std::uint8_t> v(n, 0);
        v[f] = 1;
        for (std::size_t c = 0; c < n; ++c)
            if (pivot_of_col[c] != SIZE_MAX) v[c] = rows[pivot_of_col[c]][f];
        out.kernel_basis.push_back(std::move(v));
    }
    return out;
}

} // namespace sullivan
