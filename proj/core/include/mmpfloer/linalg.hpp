#ifndef MMPFLOER_LINALG_HPP
#define MMPFLOER_LINALG_HPP

#include <mmpfloer/rational.hpp>

#include <cmath>
#include <complex>
#include <cstddef>
#include <vector>

// Small dense exact-rational and complex linear algebra, sized for the
// handful-of-facets systems in this project.

namespace mmpfloer::linalg {

using QMatrix = std::vector<QVector>;
using CVector = std::vector<std::complex<double>>;
using CMatrix = std::vector<CVector>;

struct QSolve {
    bool consistent = false;
    QVector particular;             // one solution when consistent
    std::vector<QVector> nullspace; // basis of the homogeneous solutions
};

/// Gauss-Jordan over the rationals; A is m x n, b length m.
inline QSolve solve_rational(QMatrix A, QVector b) {
    const size_t m = A.size();
    const size_t n = m ? A[0].size() : 0;
    std::vector<long> pivot_col_of_row;
    std::vector<bool> is_pivot_col(n, false);
    size_t row = 0;
    for (size_t col = 0; col < n && row < m; ++col) {
        size_t sel = row;
        while (sel < m && A[sel][col] == 0) ++sel;
        if (sel == m) continue;
        std::swap(A[sel], A[row]);
        std::swap(b[sel], b[row]);
        Rational p = A[row][col];
        for (size_t j = col; j < n; ++j) A[row][j] /= p;
        b[row] /= p;
        for (size_t i = 0; i < m; ++i) {
            if (i == row || A[i][col] == 0) continue;
            Rational f = A[i][col];
            for (size_t j = col; j < n; ++j) A[i][j] -= f * A[row][j];
            b[i] -= f * b[row];
        }
        pivot_col_of_row.push_back(long(col));
        is_pivot_col[col] = true;
        ++row;
    }
    QSolve out;
    for (size_t i = row; i < m; ++i)
        if (b[i] != 0) return out;  // inconsistent
    out.consistent = true;
    out.particular.assign(n, Rational(0));
    for (size_t r = 0; r < pivot_col_of_row.size(); ++r)
        out.particular[pivot_col_of_row[r]] = b[r];
    for (size_t col = 0; col < n; ++col) {
        if (is_pivot_col[col]) continue;
        QVector v(n, Rational(0));
        v[col] = 1;
        for (size_t r = 0; r < pivot_col_of_row.size(); ++r)
            v[pivot_col_of_row[r]] = -A[r][col];
        out.nullspace.push_back(std::move(v));
    }
    return out;
}

inline size_t rank(QMatrix A) {
    const size_t m = A.size();
    const size_t n = m ? A[0].size() : 0;
    size_t row = 0;
    for (size_t col = 0; col < n && row < m; ++col) {
        size_t sel = row;
        while (sel < m && A[sel][col] == 0) ++sel;
        if (sel == m) continue;
        std::swap(A[sel], A[row]);
        for (size_t i = row + 1; i < m; ++i) {
            if (A[i][col] == 0) continue;
            Rational f = A[i][col] / A[row][col];
            for (size_t j = col; j < n; ++j) A[i][j] -= f * A[row][j];
        }
        ++row;
    }
    return row;
}

inline Rational det(QMatrix A) {
    const size_t n = A.size();
    Rational d(1);
    for (size_t col = 0; col < n; ++col) {
        size_t sel = col;
        while (sel < n && A[sel][col] == 0) ++sel;
        if (sel == n) return Rational(0);
        if (sel != col) {
            std::swap(A[sel], A[col]);
            d = -d;
        }
        d *= A[col][col];
        for (size_t i = col + 1; i < n; ++i) {
            if (A[i][col] == 0) continue;
            Rational f = A[i][col] / A[col][col];
            for (size_t j = col; j < n; ++j) A[i][j] -= f * A[col][j];
        }
    }
    return d;
}

inline Rational dot(const QVector& a, const QVector& b) {
    Rational s(0);
    for (size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
    return s;
}

inline QVector int_to_rational(const ZVector& v) {
    QVector out;
    out.reserve(v.size());
    for (long x : v) out.emplace_back(x);
    return out;
}

/// Partial-pivot solve; returns false when numerically singular.
inline bool solve_complex(CMatrix A, CVector b, CVector& x, double pivot_tol = 1e-12) {
    const size_t n = A.size();
    for (size_t col = 0; col < n; ++col) {
        size_t sel = col;
        for (size_t i = col + 1; i < n; ++i)
            if (std::abs(A[i][col]) > std::abs(A[sel][col])) sel = i;
        if (std::abs(A[sel][col]) < pivot_tol) return false;
        std::swap(A[sel], A[col]);
        std::swap(b[sel], b[col]);
        for (size_t i = col + 1; i < n; ++i) {
            auto f = A[i][col] / A[col][col];
            for (size_t j = col; j < n; ++j) A[i][j] -= f * A[col][j];
            b[i] -= f * b[col];
        }
    }
    x.assign(n, {});
    for (size_t ii = n; ii-- > 0;) {
        auto s = b[ii];
        for (size_t j = ii + 1; j < n; ++j) s -= A[ii][j] * x[j];
        x[ii] = s / A[ii][ii];
    }
    return true;
}

inline std::complex<double> det_complex(CMatrix A) {
    const size_t n = A.size();
    std::complex<double> d = 1.0;
    for (size_t col = 0; col < n; ++col) {
        size_t sel = col;
        for (size_t i = col + 1; i < n; ++i)
            if (std::abs(A[i][col]) > std::abs(A[sel][col])) sel = i;
        if (std::abs(A[sel][col]) == 0.0) return 0.0;
        if (sel != col) {
            std::swap(A[sel], A[col]);
            d = -d;
        }
        d *= A[col][col];
        for (size_t i = col + 1; i < n; ++i) {
            auto f = A[i][col] / A[col][col];
            for (size_t j = col; j < n; ++j) A[i][j] -= f * A[col][j];
        }
    }
    return d;
}

/// All roots of c_0 + c_1 z + ... + c_d z^d (c_d != 0), Durand-Kerner.
inline CVector poly_roots(CVector coeffs, double tol = 1e-13, int max_iter = 2000) {
    while (coeffs.size() > 1 && std::abs(coeffs.back()) == 0.0) coeffs.pop_back();
    const size_t d = coeffs.size() - 1;
    if (d == 0) return {};
    const std::complex<double> lead = coeffs[d];
    for (auto& c : coeffs) c /= lead;
    CVector z(d);
    std::complex<double> seed(0.4, 0.9);
    std::complex<double> p = 1.0;
    for (size_t i = 0; i < d; ++i) {
        p *= seed;
        z[i] = p;
    }
    auto eval = [&](std::complex<double> x) {
        std::complex<double> v = 1.0;
        for (size_t k = d; k-- > 0;) v = v * x + coeffs[k];
        return v;
    };
    for (int it = 0; it < max_iter; ++it) {
        double worst = 0.0;
        for (size_t i = 0; i < d; ++i) {
            std::complex<double> denom = 1.0;
            for (size_t j = 0; j < d; ++j)
                if (j != i) denom *= z[i] - z[j];
            auto delta = eval(z[i]) / denom;
            z[i] -= delta;
            worst = std::max(worst, std::abs(delta));
        }
        if (worst < tol) break;
    }
    return z;
}

}  // namespace mmpfloer::linalg

#endif
