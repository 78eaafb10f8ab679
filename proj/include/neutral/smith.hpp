#pragma once

#include <cstdlib>
#include <optional>
#include <utility>

#include "neutral/integer.hpp"
#include "neutral/matrix.hpp"

namespace neutral {

using IntMatrix = Matrix<Int>;

/// Result of a Smith normal form computation: left * input * right == diagonal.
struct SmithForm {
    IntMatrix left;      // unimodular, rows x rows
    IntMatrix diagonal;  // same shape as the input
    IntMatrix right;     // unimodular, cols x cols

    /// Nonzero-or-zero diagonal entries d_1 | d_2 | ... (min(rows, cols) of them).
    std::vector<Int> invariants() const {
        std::vector<Int> out;
        for (std::size_t i = 0; i < std::min(diagonal.rows(), diagonal.cols()); ++i)
            out.push_back(diagonal(i, i));
        return out;
    }
};

namespace detail {

struct SmithWork {
    IntMatrix a, u, w;

    // row_dst += factor * row_src, mirrored on u.
    void add_row(std::size_t dst, std::size_t src, Int factor) {
        for (std::size_t j = 0; j < a.cols(); ++j)
            a(dst, j) = checked_add(a(dst, j), checked_mul(factor, a(src, j)));
        for (std::size_t j = 0; j < u.cols(); ++j)
            u(dst, j) = checked_add(u(dst, j), checked_mul(factor, u(src, j)));
    }
    // col_dst += factor * col_src, mirrored on w.
    void add_col(std::size_t dst, std::size_t src, Int factor) {
        for (std::size_t i = 0; i < a.rows(); ++i)
            a(i, dst) = checked_add(a(i, dst), checked_mul(factor, a(i, src)));
        for (std::size_t i = 0; i < w.rows(); ++i)
            w(i, dst) = checked_add(w(i, dst), checked_mul(factor, w(i, src)));
    }
    void swap_rows(std::size_t x, std::size_t y) { a.swap_rows(x, y); u.swap_rows(x, y); }
    void swap_cols(std::size_t x, std::size_t y) { a.swap_cols(x, y); w.swap_cols(x, y); }
    void negate_row(std::size_t r) {
        for (std::size_t j = 0; j < a.cols(); ++j) a(r, j) = -a(r, j);
        for (std::size_t j = 0; j < u.cols(); ++j) u(r, j) = -u(r, j);
    }

    // Smallest |entry| in the trailing block starting at (t, t); row-major scan,
    // first hit wins on ties.
    std::optional<std::pair<std::size_t, std::size_t>> smallest_pivot(std::size_t t) const {
        std::optional<std::pair<std::size_t, std::size_t>> best;
        Int best_abs = 0;
        for (std::size_t i = t; i < a.rows(); ++i)
            for (std::size_t j = t; j < a.cols(); ++j) {
                Int v = a(i, j);
                if (v == 0) continue;
                Int av = v < 0 ? -v : v;
                if (!best || av < best_abs) {
                    best = {i, j};
                    best_abs = av;
                }
            }
        return best;
    }
};

} // namespace detail

/// Smith normal form with smallest-absolute-value pivoting. Deterministic: the
/// same input always produces the same transforms.
inline SmithForm smith_normal_form(const IntMatrix& m) {
    detail::SmithWork s{m, IntMatrix::identity(m.rows()), IntMatrix::identity(m.cols())};
    const std::size_t steps = std::min(m.rows(), m.cols());

    for (std::size_t t = 0; t < steps; ++t) {
        for (;;) {
            auto piv = s.smallest_pivot(t);
            if (!piv) break;  // trailing block is zero
            s.swap_rows(t, piv->first);
            s.swap_cols(t, piv->second);

            const Int p = s.a(t, t);
            bool residue = false;
            for (std::size_t i = t + 1; i < s.a.rows(); ++i) {
                if (Int q = s.a(i, t) / p; q != 0) s.add_row(i, t, -q);
                residue |= s.a(i, t) != 0;
            }
            for (std::size_t j = t + 1; j < s.a.cols(); ++j) {
                if (Int q = s.a(t, j) / p; q != 0) s.add_col(j, t, -q);
                residue |= s.a(t, j) != 0;
            }
            if (residue) continue;

            // Row and column are clear; enforce p | every trailing entry.
            std::optional<std::size_t> bad_row;
            for (std::size_t i = t + 1; i < s.a.rows() && !bad_row; ++i)
                for (std::size_t j = t + 1; j < s.a.cols(); ++j)
                    if (s.a(i, j) % p != 0) {
                        bad_row = i;
                        break;
                    }
            if (!bad_row) break;
            s.add_row(t, *bad_row, 1);
        }
        if (s.a(t, t) < 0) s.negate_row(t);
    }
    return SmithForm{std::move(s.u), std::move(s.a), std::move(s.w)};
}

} // namespace neutral
