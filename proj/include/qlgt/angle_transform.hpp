#pragma once

#include <cmath>
#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "qlgt/gray.hpp"
#include "qlgt/sequencer.hpp"

namespace qlgt {

/// Dense square matrix of +-1 entries (stored as double for the solvers).
struct Mat {
    int n = 0;
    std::vector<double> a;

    Mat() = default;
    explicit Mat(int size) : n(size), a(static_cast<std::size_t>(size) * size, 0.0) {}

    double& at(int i, int j) { return a[static_cast<std::size_t>(i) * n + j]; }
    double at(int i, int j) const { return a[static_cast<std::size_t>(i) * n + j]; }
};

/// Eq.-style angle-transform matrix: M_ij = prod_l (-1)^{f(b_i[l], g_j[l])}
/// with f = 1 iff 0 < b <= g.
inline Mat build_M(const std::vector<Word>& b_words, const std::vector<Word>& g_words) {
    if (b_words.size() != g_words.size())
        throw std::invalid_argument("build_M: sequence length mismatch");
    const int n = static_cast<int>(b_words.size());
    Mat m(n);
    for (int i = 0; i < n; ++i) {
        if (b_words[static_cast<std::size_t>(i)].size() != g_words[0].size())
            throw std::invalid_argument("build_M: word length mismatch");
        for (int j = 0; j < n; ++j) {
            int parity = 0;
            const auto& b = b_words[static_cast<std::size_t>(i)];
            const auto& g = g_words[static_cast<std::size_t>(j)];
            for (std::size_t l = 0; l < b.size(); ++l)
                if (0 < b[l] && b[l] <= g[l]) parity ^= 1;
            m.at(i, j) = parity ? -1.0 : 1.0;
        }
    }
    return m;
}

/// Control-gate skeleton of a Gray-sequenced decomposition: before[j] holds
/// the (wire, value) GCX gates emitted immediately before rotation j. The
/// j = 0 slot carries the leading gates needed when the first Gray word is
/// not all zeros.
struct CcSkeleton {
    std::vector<std::vector<std::pair<int, int>>> before;

    static CcSkeleton from_gray(const std::vector<Word>& g) {
        CcSkeleton s;
        s.before.resize(g.size());
        for (std::size_t l = 0; l < g[0].size(); ++l)
            if (g[0][l] != 0) s.before[0].emplace_back(static_cast<int>(l), g[0][l]);
        for (std::size_t j = 1; j < g.size(); ++j)
            for (std::size_t l = 0; l < g[j].size(); ++l)
                if (g[j][l] != g[j - 1][l])
                    s.before[j].emplace_back(static_cast<int>(l),
                                             std::max(g[j][l], g[j - 1][l]));
        return s;
    }

    long gate_count() const {
        long n = 0;
        for (const auto& v : before) n += static_cast<long>(v.size());
        return n;
    }
};

/// Sign matrix realized by a skeleton: entry (i, j) is the parity of control
/// gates firing on row word i before rotation j. Rows are the d-ary-tree
/// words in sorted control order; this is the matrix the emitted circuit
/// actually implements, and it coincides with build_M on the sequencer
/// output for product sequences.
inline Mat skeleton_matrix(const std::vector<Word>& rows, const CcSkeleton& skel) {
    const int n = static_cast<int>(rows.size());
    Mat m(n);
    for (int i = 0; i < n; ++i) {
        const auto& w = rows[static_cast<std::size_t>(i)];
        int parity = 0;
        for (int j = 0; j < n; ++j) {
            for (const auto& [wire, value] : skel.before[static_cast<std::size_t>(j)])
                if (w[static_cast<std::size_t>(wire)] == value) parity ^= 1;
            m.at(i, j) = parity ? -1.0 : 1.0;
        }
    }
    return m;
}

namespace detail {

// Row-echelon pass with partial pivoting; reports rank and the dependent
// (non-pivot) columns in ascending order.
inline std::pair<int, std::vector<int>> echelon_rank(Mat m) {
    const int n = m.n;
    const double tol = 1e-8 * n;
    int rank = 0;
    std::vector<int> nonpivot;
    for (int col = 0; col < n && rank < n; ++col) {
        int piv = -1;
        double best = tol;
        for (int r = rank; r < n; ++r) {
            const double v = std::abs(m.at(r, col));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (piv < 0) {
            nonpivot.push_back(col);
            continue;
        }
        if (piv != rank)
            for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(rank, j));
        for (int r = rank + 1; r < n; ++r) {
            const double f = m.at(r, col) / m.at(rank, col);
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) m.at(r, j) -= f * m.at(rank, j);
        }
        ++rank;
    }
    return {rank, std::move(nonpivot)};
}

// Right-nullspace structure of M: the rank plus, for each nullspace basis
// vector (one per non-pivot column of the reduced row echelon form, in
// ascending order), the ascending list of columns it is supported on.
inline std::pair<int, std::vector<std::vector<int>>> nullspace_vector_supports(Mat m) {
    const int n = m.n;
    const double tol = 1e-8 * n;
    std::vector<int> pivot_cols;
    int rank = 0;
    for (int col = 0; col < n && rank < n; ++col) {
        int piv = -1;
        double best = tol;
        for (int r = rank; r < n; ++r) {
            const double v = std::abs(m.at(r, col));
            if (v > best) {
                best = v;
                piv = r;
            }
        }
        if (piv < 0) continue;
        if (piv != rank)
            for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(rank, j));
        const double inv = 1.0 / m.at(rank, col);
        for (int j = col; j < n; ++j) m.at(rank, j) *= inv;
        for (int r = 0; r < n; ++r) {
            if (r == rank) continue;
            const double f = m.at(r, col);
            if (f == 0.0) continue;
            for (int j = col; j < n; ++j) m.at(r, j) -= f * m.at(rank, j);
        }
        pivot_cols.push_back(col);
        ++rank;
    }
    std::vector<char> is_pivot(static_cast<std::size_t>(n), 0);
    for (int col : pivot_cols) is_pivot[static_cast<std::size_t>(col)] = 1;
    std::vector<std::vector<int>> supports;
    for (int f = 0; f < n; ++f) {
        if (is_pivot[static_cast<std::size_t>(f)]) continue;
        std::vector<int> support;
        for (int i = 0; i < rank; ++i)
            if (std::abs(m.at(i, f)) > 1e-6)
                support.push_back(pivot_cols[static_cast<std::size_t>(i)]);
        support.push_back(f);
        std::sort(support.begin(), support.end());
        supports.push_back(std::move(support));
    }
    return {rank, std::move(supports)};
}

} // namespace detail

inline int matrix_rank(const Mat& m) { return detail::echelon_rank(m).first; }

/// Solves M x = rhs by LU with partial pivoting; M must be invertible.
inline std::vector<double> solve_linear(Mat m, std::vector<double> rhs) {
    const int n = m.n;
    std::vector<int> perm(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) perm[static_cast<std::size_t>(i)] = i;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        for (int r = col + 1; r < n; ++r)
            if (std::abs(m.at(r, col)) > std::abs(m.at(piv, col))) piv = r;
        if (std::abs(m.at(piv, col)) < 1e-12)
            throw std::runtime_error("solve_linear: singular matrix");
        if (piv != col) {
            for (int j = 0; j < n; ++j) std::swap(m.at(piv, j), m.at(col, j));
            std::swap(rhs[static_cast<std::size_t>(piv)], rhs[static_cast<std::size_t>(col)]);
        }
        for (int r = col + 1; r < n; ++r) {
            const double f = m.at(r, col) / m.at(col, col);
            if (f == 0.0) continue;
            m.at(r, col) = 0.0;
            for (int j = col + 1; j < n; ++j) m.at(r, j) -= f * m.at(col, j);
            rhs[static_cast<std::size_t>(r)] -= f * rhs[static_cast<std::size_t>(col)];
        }
    }
    std::vector<double> x(static_cast<std::size_t>(n), 0.0);
    for (int i = n - 1; i >= 0; --i) {
        double s = rhs[static_cast<std::size_t>(i)];
        for (int j = i + 1; j < n; ++j) s -= m.at(i, j) * x[static_cast<std::size_t>(j)];
        x[static_cast<std::size_t>(i)] = s / m.at(i, i);
    }
    return x;
}

/// A rank-restoring correction: the rotation at Gray column `column` is
/// conjugated with a GCX pair controlled on (wire, value), which flips the
/// signs of that column for every control word whose digit matches.
struct Correction {
    int column = 0;
    int wire = 0;
    int value = 0;
};

inline void apply_correction(Mat& m, const Correction& c, const std::vector<Word>& physical_rows) {
    for (int i = 0; i < m.n; ++i)
        if (physical_rows[static_cast<std::size_t>(i)][static_cast<std::size_t>(c.wire)] == c.value)
            m.at(i, c.column) = -m.at(i, c.column);
}

/// Search-based repair of a singular M (App.-E style): starting from the
/// lowest-indexed column in the nullspace, brute-force over control wire and
/// control value, keeping the first flip that increases the rank; repeat
/// until M has full rank. Row flips follow the physical control words, not
/// the relabeled d-ary proxies, because the inserted GCX pairs fire on the
/// physical digits.
inline std::vector<Correction> correct_singular_M(Mat& m, const std::vector<Word>& physical_rows,
                                                  const std::vector<int>& dims) {
    std::vector<Correction> out;
    while (true) {
        auto [rank, supports] = detail::nullspace_vector_supports(m);
        if (rank == m.n) break;
        bool applied = false;
        for (const auto& support : supports) {
            for (int col : support) {
                for (int w = 0; w < static_cast<int>(dims.size()) && !applied; ++w) {
                    for (int v = 0; v < dims[static_cast<std::size_t>(w)] && !applied; ++v) {
                        const Correction cand{col, w, v};
                        apply_correction(m, cand, physical_rows);
                        if (matrix_rank(m) > rank) {
                            out.push_back(cand);
                            applied = true;
                        } else {
                            apply_correction(m, cand, physical_rows); // undo
                        }
                    }
                }
                if (applied) break;
            }
            if (applied) break;
        }
        if (!applied) throw std::runtime_error("correct_singular_M: search exhausted");
    }
    return out;
}

} // namespace qlgt
