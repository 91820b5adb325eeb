#pragma once

#include <cstdlib>
#include <stdexcept>
#include <vector>

namespace knotsurf {

struct SmithResult {
    int rank = 0;
    std::vector<long long> divisors;  // invariant factors > 1
};

inline SmithResult smith_normal_form(std::vector<std::vector<long long>> m) {
    int rows = (int)m.size();
    int cols = rows ? (int)m[0].size() : 0;
    SmithResult out;
    auto overflow_check = [](long long v) {
        if (v > (long long)1 << 62 || v < -((long long)1 << 62))
            throw std::overflow_error("smith overflow");
    };
    int r = 0, c = 0;
    while (r < rows && c < cols) {
        int pr = -1, pc = -1;
        long long best = 0;
        for (int i = r; i < rows; ++i)
            for (int j = c; j < cols; ++j)
                if (m[i][j] != 0 && (pr == -1 || std::llabs(m[i][j]) < best)) {
                    pr = i;
                    pc = j;
                    best = std::llabs(m[i][j]);
                }
        if (pr == -1) break;
        std::swap(m[r], m[pr]);
        for (int i = 0; i < rows; ++i) std::swap(m[i][c], m[i][pc]);
        bool again = true;
        while (again) {
            again = false;
            for (int i = r + 1; i < rows; ++i) {
                long long q = m[i][c] / m[r][c];
                if (q != 0)
                    for (int j = c; j < cols; ++j) {
                        m[i][j] -= q * m[r][j];
                        overflow_check(m[i][j]);
                    }
                if (m[i][c] != 0) {
                    std::swap(m[r], m[i]);
                    again = true;
                }
            }
            for (int j = c + 1; j < cols; ++j) {
                long long q = m[r][j] / m[r][c];
                if (q != 0)
                    for (int i = r; i < rows; ++i) {
                        m[i][j] -= q * m[i][c];
                        overflow_check(m[i][j]);
                    }
                if (m[r][j] != 0) {
                    for (int i = 0; i < rows; ++i) std::swap(m[i][c], m[i][j]);
                    again = true;
                }
            }
        }
        if (std::llabs(m[r][c]) > 1) out.divisors.push_back(std::llabs(m[r][c]));
        out.rank++;
        ++r;
        ++c;
    }
    return out;
}

}  // namespace knotsurf
