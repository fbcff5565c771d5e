#include "linalg.hpp"

#include <utility>

namespace flipcycles::linalg {

Int dot(const Vec& a, const Vec& b) {
    Int s = 0;
    for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

Int det(Mat m) {
    const std::size_t n = m.size();
    if (n == 0) return 1;
    int sign = 1;
    Int prev = 1;
    for (std::size_t k = 0; k + 1 < n; ++k) {
        if (m[k][k] == 0) {
            std::size_t swap_row = k + 1;
            while (swap_row < n && m[swap_row][k] == 0) ++swap_row;
            if (swap_row == n) return 0;
            std::swap(m[k], m[swap_row]);
            sign = -sign;
        }
        for (std::size_t i = k + 1; i < n; ++i)
            for (std::size_t j = k + 1; j < n; ++j) m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) / prev;
        prev = m[k][k];
    }
    return sign * m[n - 1][n - 1];
}

int rank(Mat m) {
    if (m.empty()) return 0;
    const std::size_t rows = m.size(), cols = m[0].size();
    std::size_t r = 0;
    for (std::size_t c = 0; c < cols && r < rows; ++c) {
        std::size_t p = r;
        while (p < rows && m[p][c] == 0) ++p;
        if (p == rows) continue;
        std::swap(m[r], m[p]);
        for (std::size_t i = r + 1; i < rows; ++i) {
            if (m[i][c] == 0) continue;
            Int a = m[r][c], b = m[i][c];
            for (std::size_t j = c; j < cols; ++j) m[i][j] = m[i][j] * a - m[r][j] * b;
        }
        ++r;
    }
    return static_cast<int>(r);
}

Vec cofactor_null(const Mat& m) {
    const std::size_t cols = m.empty() ? 1 : m[0].size();
    Vec out(cols);
    for (std::size_t j = 0; j < cols; ++j) {
        Mat minor;
        for (const auto& row : m) {
            Vec r;
            for (std::size_t c = 0; c < cols; ++c)
                if (c != j) r.push_back(row[c]);
            minor.push_back(std::move(r));
        }
        Int v = det(std::move(minor));
        out[j] = (j % 2 == 0) ? v : Int(-v);
    }
    return out;
}

}  // namespace flipcycles::linalg
