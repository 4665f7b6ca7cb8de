#pragma once

// Rank computation over GF(q) on matrices of digit codes (row-major).

#include <cstdint>
#include <vector>

#include "twoweight/field_tower.hpp"

namespace twoweight {

inline int gfq_rank(std::vector<int32_t> m, int rows, int cols, const FieldTables& f) {
    int rank = 0;
    for (int col = 0; col < cols && rank < rows; ++col) {
        int piv = -1;
        for (int r = rank; r < rows; ++r)
            if (m[static_cast<size_t>(r) * cols + col] != 0) { piv = r; break; }
        if (piv < 0) continue;
        if (piv != rank)
            for (int c = 0; c < cols; ++c)
                std::swap(m[static_cast<size_t>(piv) * cols + c], m[static_cast<size_t>(rank) * cols + c]);
        const int32_t s = f.digit_inv(m[static_cast<size_t>(rank) * cols + col]);
        for (int c = 0; c < cols; ++c)
            m[static_cast<size_t>(rank) * cols + c] =
                f.digit_mul(m[static_cast<size_t>(rank) * cols + c], s);
        for (int r = rank + 1; r < rows; ++r) {
            const int32_t v = m[static_cast<size_t>(r) * cols + col];
            if (v == 0) continue;
            const int32_t nv = f.digit_neg(v);
            for (int c = 0; c < cols; ++c)
                m[static_cast<size_t>(r) * cols + c] = f.digit_add(
                    m[static_cast<size_t>(r) * cols + c],
                    f.digit_mul(nv, m[static_cast<size_t>(rank) * cols + c]));
        }
        ++rank;
    }
    return rank;
}

}  // namespace twoweight
