#pragma once

// Integer row reduction: Hermite normal form and left kernels of integer
// matrices. Used for exponent-vector relations in the multiplicative group.

#include <cstddef>
#include <stdexcept>
#include <vector>

#include "mwlab/numth.hpp"

namespace mwlab {

using IntRow = std::vector<BigInt>;
using IntMatrix = std::vector<IntRow>;

namespace detail {

inline BigInt floor_div(const BigInt& a, const BigInt& b) {
    BigInt q = a / b;
    if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
    return q;
}

inline void axpy_row(IntRow& dst, const BigInt& q, const IntRow& src) {
    for (std::size_t c = 0; c < dst.size(); ++c) dst[c] -= q * src[c];
}

inline bool row_is_zero(const IntRow& r) {
    for (const auto& x : r) {
        if (x != 0) return false;
    }
    return true;
}

}  // namespace detail

/// Row-style Hermite normal form: nonzero rows only, pivots positive and
/// strictly moving right, entries above each pivot reduced into [0, pivot).
/// The row lattice is preserved.
inline IntMatrix hermite_normal_form(IntMatrix m) {
    if (m.empty()) return m;
    const std::size_t cols = m.front().size();
    for (const auto& r : m) {
        if (r.size() != cols) throw std::invalid_argument("hermite_normal_form: ragged matrix");
    }
    std::size_t pivot_row = 0;
    for (std::size_t c = 0; c < cols && pivot_row < m.size(); ++c) {
        for (;;) {
            std::size_t best = m.size();
            for (std::size_t i = pivot_row; i < m.size(); ++i) {
                if (m[i][c] == 0) continue;
                if (best == m.size() || boost::multiprecision::abs(m[i][c]) < boost::multiprecision::abs(m[best][c])) best = i;
            }
            if (best == m.size()) break;
            std::swap(m[pivot_row], m[best]);
            bool cleared = true;
            for (std::size_t i = pivot_row + 1; i < m.size(); ++i) {
                if (m[i][c] == 0) continue;
                detail::axpy_row(m[i], detail::floor_div(m[i][c], m[pivot_row][c]), m[pivot_row]);
                if (m[i][c] != 0) cleared = false;
            }
            if (cleared) break;
        }
        if (m[pivot_row][c] == 0) continue;
        if (m[pivot_row][c] < 0) {
            for (auto& x : m[pivot_row]) x = -x;
        }
        for (std::size_t i = 0; i < pivot_row; ++i) {
            detail::axpy_row(m[i], detail::floor_div(m[i][c], m[pivot_row][c]), m[pivot_row]);
        }
        ++pivot_row;
    }
    IntMatrix out;
    for (auto& r : m) {
        if (!detail::row_is_zero(r)) out.push_back(std::move(r));
    }
    return out;
}

/// Basis (in Hermite normal form) of { e in Z^rows : sum_i e_i * a[i] = 0 }.
inline IntMatrix integer_left_kernel(const IntMatrix& a) {
    if (a.empty()) return {};
    const std::size_t rows = a.size();
    const std::size_t cols = a.front().size();
    IntMatrix aug(rows, IntRow(cols + rows, 0));
    for (std::size_t i = 0; i < rows; ++i) {
        if (a[i].size() != cols) throw std::invalid_argument("integer_left_kernel: ragged matrix");
        for (std::size_t c = 0; c < cols; ++c) aug[i][c] = a[i][c];
        aug[i][cols + i] = 1;
    }
    IntMatrix h = hermite_normal_form(std::move(aug));
    IntMatrix kernel;
    for (const auto& r : h) {
        bool zero_head = true;
        for (std::size_t c = 0; c < cols; ++c) {
            if (r[c] != 0) {
                zero_head = false;
                break;
            }
        }
        if (zero_head) kernel.emplace_back(r.begin() + static_cast<std::ptrdiff_t>(cols), r.end());
    }
    return kernel;
}

}  // namespace mwlab
