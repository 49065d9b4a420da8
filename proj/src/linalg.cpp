#include "nilwalk/linalg.hpp"

#include <algorithm>
#include <stdexcept>

namespace nilwalk {

QVec RowSpace::reduce(QVec v) const {
    if (v.size() != ambient_) throw std::invalid_argument("vector dimension mismatch");
    for (size_t r = 0; r < rows_.size(); ++r) {
        const Rat& c = v[pivots_[r]];
        if (c != 0) {
            Rat f = c;  // basis rows have pivot 1
            for (size_t j = 0; j < ambient_; ++j) v[j] -= f * rows_[r][j];
        }
    }
    return v;
}

bool RowSpace::contains(const QVec& v) const {
    QVec r = reduce(v);
    return std::all_of(r.begin(), r.end(), [](const Rat& x) { return x == 0; });
}

bool RowSpace::add(const QVec& v) {
    QVec r = reduce(v);
    size_t p = 0;
    while (p < ambient_ && r[p] == 0) ++p;
    if (p == ambient_) return false;
    Rat inv = Rat(1) / r[p];
    for (auto& x : r) x *= inv;
    // clear the new pivot column in existing rows to keep the basis reduced
    for (size_t i = 0; i < rows_.size(); ++i) {
        Rat f = rows_[i][p];
        if (f != 0)
            for (size_t j = 0; j < ambient_; ++j) rows_[i][j] -= f * r[j];
    }
    rows_.push_back(std::move(r));
    pivots_.push_back(p);
    // keep rows sorted by pivot for determinism
    for (size_t i = rows_.size(); i > 1 && pivots_[i - 1] < pivots_[i - 2]; --i) {
        std::swap(rows_[i - 1], rows_[i - 2]);
        std::swap(pivots_[i - 1], pivots_[i - 2]);
    }
    return true;
}

std::optional<QVec> RowSpace::coordinates_in_basis(const QVec& v) const {
    if (!contains(v)) return std::nullopt;
    return express_in_rows(rows_, v);
}

size_t rank_of(const std::vector<QVec>& rows) {
    if (rows.empty()) return 0;
    RowSpace rs(rows[0].size());
    for (const auto& r : rows) rs.add(r);
    return rs.dim();
}

std::optional<QVec> express_in_rows(const std::vector<QVec>& rows, const QVec& b) {
    // Gaussian elimination on the transposed system with augmentation.
    size_t n = rows.size();
    if (n == 0) {
        for (const auto& x : b)
            if (x != 0) return std::nullopt;
        return QVec{};
    }
    size_t m = rows[0].size();
    // aug[i] = column i of A joined with b_i
    std::vector<QVec> aug(m, QVec(n + 1));
    for (size_t i = 0; i < m; ++i) {
        for (size_t j = 0; j < n; ++j) aug[i][j] = rows[j][i];
        aug[i][n] = b[i];
    }
    std::vector<int> pivot_row_of_col(n, -1);
    size_t row = 0;
    for (size_t col = 0; col < n && row < m; ++col) {
        size_t sel = row;
        while (sel < m && aug[sel][col] == 0) ++sel;
        if (sel == m) continue;
        std::swap(aug[sel], aug[row]);
        Rat inv = Rat(1) / aug[row][col];
        for (auto& x : aug[row]) x *= inv;
        for (size_t i = 0; i < m; ++i)
            if (i != row && aug[i][col] != 0) {
                Rat f = aug[i][col];
                for (size_t j = 0; j <= n; ++j) aug[i][j] -= f * aug[row][j];
            }
        pivot_row_of_col[col] = (int)row;
        ++row;
    }
    for (size_t i = row; i < m; ++i)
        if (aug[i][n] != 0) return std::nullopt;
    QVec x(n, Rat(0));
    for (size_t col = 0; col < n; ++col)
        if (pivot_row_of_col[col] >= 0) x[col] = aug[pivot_row_of_col[col]][n];
    return x;
}

std::vector<Int> smith_normal_form(std::vector<std::vector<Int>> m) {
    std::vector<Int> factors;
    size_t rows = m.size();
    if (rows == 0) return factors;
    size_t cols = m[0].size();
    size_t top = 0;
    while (top < rows && top < cols) {
        // find a nonzero pivot in the submatrix
        size_t pi = top, pj = top;
        bool found = false;
        for (size_t i = top; i < rows && !found; ++i)
            for (size_t j = top; j < cols && !found; ++j)
                if (m[i][j] != 0) {
                    pi = i;
                    pj = j;
                    found = true;
                }
        if (!found) break;
        std::swap(m[top], m[pi]);
        for (size_t i = 0; i < rows; ++i) std::swap(m[i][top], m[i][pj]);
        // reduce until the pivot divides its row and column
        bool dirty = true;
        while (dirty) {
            dirty = false;
            for (size_t i = top + 1; i < rows; ++i)
                while (m[i][top] != 0) {
                    Int q = m[i][top] / m[top][top];
                    for (size_t j = top; j < cols; ++j) m[i][j] -= q * m[top][j];
                    if (m[i][top] != 0) {
                        std::swap(m[i], m[top]);
                        dirty = true;
                    }
                }
            for (size_t j = top + 1; j < cols; ++j)
                while (m[top][j] != 0) {
                    Int q = m[top][j] / m[top][top];
                    for (size_t i = top; i < rows; ++i) m[i][j] -= q * m[i][top];
                    if (m[top][j] != 0) {
                        for (size_t i = top; i < rows; ++i) std::swap(m[i][j], m[i][top]);
                        dirty = true;
                    }
                }
        }
        factors.push_back(abs(m[top][top]));
        ++top;
    }
    // enforce the divisibility chain d1 | d2 | ...
    for (size_t i = 0; i + 1 < factors.size(); ++i)
        for (size_t j = i + 1; j < factors.size(); ++j) {
            Int g, l;
            mpz_gcd(g.get_mpz_t(), factors[i].get_mpz_t(), factors[j].get_mpz_t());
            l = factors[i] / g * factors[j];
            factors[i] = g;
            factors[j] = l;
        }
    return factors;
}

}  // namespace nilwalk
