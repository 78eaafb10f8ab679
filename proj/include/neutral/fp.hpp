#pragma once

#include <vector>

#include "neutral/integer.hpp"
#include "neutral/matrix.hpp"

namespace neutral {

using FpVector = std::vector<Int>;

/// Rank over F_p of a list of equal-length vectors (row reduction).
inline std::size_t rank_mod_p(std::vector<FpVector> rows, Int p) {
    if (rows.empty()) return 0;
    const std::size_t n = rows.front().size();
    for (auto& r : rows)
        for (auto& x : r) x = mod(x, p);
    std::size_t rank = 0;
    for (std::size_t col = 0; col < n && rank < rows.size(); ++col) {
        std::size_t piv = rank;
        while (piv < rows.size() && rows[piv][col] == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[rank], rows[piv]);
        const Int inv = inverse_mod(rows[rank][col], p);
        for (auto& x : rows[rank]) x = mulmod(x, inv, p);
        for (std::size_t i = 0; i < rows.size(); ++i) {
            if (i == rank || rows[i][col] == 0) continue;
            const Int f = rows[i][col];
            for (std::size_t j = col; j < n; ++j)
                rows[i][j] = mod(rows[i][j] - mulmod(f, rows[rank][j], p), p);
        }
        ++rank;
    }
    return rank;
}

/// True iff the square matrix is c * I mod p for some c. A linear map fixing
/// every line of F_p^r is exactly such a scalar.
inline bool is_scalar_mod_p(const Matrix<Int>& m, Int p) {
    if (m.rows() != m.cols()) return false;
    if (m.rows() == 0) return true;
    const Int c = mod(m(0, 0), p);
    for (std::size_t i = 0; i < m.rows(); ++i)
        for (std::size_t j = 0; j < m.cols(); ++j)
            if (mod(m(i, j), p) != (i == j ? c : 0)) return false;
    return true;
}

} // namespace neutral
