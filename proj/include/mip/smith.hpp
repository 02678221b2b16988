#pragma once

// Smith normal form over the integers, for the small relation matrices that
// describe abelian quotients.

#include <cstdint>
#include <cstdlib>
#include <vector>

namespace mip {

using imat = std::vector<std::vector<std::int64_t>>;

// Diagonal of the Smith normal form of a (rows x cols) integer matrix.
// Entries d_1 | d_2 | ... ; zeros trimmed.
inline std::vector<std::int64_t> smith_diagonal(imat a) {
    const std::size_t rows = a.size();
    const std::size_t cols = rows ? a[0].size() : 0;
    std::vector<std::int64_t> diag;
    std::size_t r0 = 0, c0 = 0;
    while (r0 < rows && c0 < cols) {
        // find a nonzero pivot in the remaining block
        std::size_t pr = r0, pc = c0;
        bool found = false;
        for (std::size_t i = r0; i < rows && !found; ++i)
            for (std::size_t j = c0; j < cols && !found; ++j)
                if (a[i][j] != 0) { pr = i; pc = j; found = true; }
        if (!found) break;
        std::swap(a[r0], a[pr]);
        for (std::size_t i = 0; i < rows; ++i) std::swap(a[i][c0], a[i][pc]);

        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (std::size_t i = r0 + 1; i < rows; ++i) {
                while (a[i][c0] != 0) {
                    std::int64_t f = a[r0][c0] == 0 ? 0 : a[i][c0] / a[r0][c0];
                    for (std::size_t j = c0; j < cols; ++j) a[i][j] -= f * a[r0][j];
                    if (a[i][c0] != 0) {
                        std::swap(a[i], a[r0]);
                        dirty = true;
                    }
                }
            }
            for (std::size_t j = c0 + 1; j < cols; ++j) {
                while (a[r0][j] != 0) {
                    std::int64_t f = a[r0][c0] == 0 ? 0 : a[r0][j] / a[r0][c0];
                    for (std::size_t i = r0; i < rows; ++i) a[i][j] -= f * a[i][c0];
                    if (a[r0][j] != 0) {
                        for (std::size_t i = r0; i < rows; ++i) std::swap(a[i][j], a[i][c0]);
                        dirty = true;
                    }
                }
            }
        }
        diag.push_back(std::llabs(a[r0][c0]));
        ++r0;
        ++c0;
    }
    // enforce divisibility d_i | d_{i+1}
    for (std::size_t i = 0; i + 1 < diag.size(); ++i)
        for (std::size_t j = i + 1; j < diag.size(); ++j) {
            std::int64_t x = diag[i], y = diag[j];
            if (x == 0) { std::swap(diag[i], diag[j]); continue; }
            auto g = [](std::int64_t u, std::int64_t v) {
                while (v) { auto t = u % v; u = v; v = t; }
                return u;
            };
            std::int64_t gg = g(x, y);
            diag[i] = gg;
            diag[j] = gg == 0 ? 0 : x / gg * y;
        }
    std::vector<std::int64_t> out;
    for (auto d : diag)
        if (d != 0) out.push_back(d);
    return out;
}

} // namespace mip
