#pragma once

#include <vector>

#include "qwiener/series.hpp"

namespace qwiener {

// Finite section of a square-summable quaternion sequence.
struct QVec {
    std::vector<Quaternion> entries;

    double norm() const {
        double s = 0.0;
        for (const Quaternion& q : entries) s += q.norm_sq();
        return std::sqrt(s);
    }
};

enum class Part { Plus, Minus };

// Degree filter: Plus keeps u >= 0, Minus keeps u <= -1; the two parts add
// back to the input exactly.
QSeries project(const QSeries& f, Part part);

// n-by-n section of the operator with constant diagonals phi_(r-c); the
// symbol multiplies on the left, arguments scale on the right.
struct ToeplitzSection {
    QSeries symbol;
    int n = 0;
};

// Row-major n*n matrix of the section entries.
std::vector<Quaternion> toeplitz_matrix(const ToeplitzSection& t);

// (T xi)_r = sum_c phi_(r-c) xi_c. SizeError on length mismatch.
QVec toeplitz_apply(const ToeplitzSection& t, const QVec& xi);

struct ProductReport {
    bool is_toeplitz = false;
    bool equals_t_star = false;
    double defect_norm = 0.0;
};

// Multiplies the two n-by-n sections and compares against the section of the
// product symbol. Entries polluted by the finite truncation (the corner where
// both row and column run past the bandwidths) are excluded; everything else,
// including the top-left corner where the genuine operator defect lives, is
// compared. SizeError when n is too small for the supports.
ProductReport toeplitz_product_test(const QSeries& phi, const QSeries& psi, int n,
                                    double tol = 1e-12);

// True when the product section vanishes on the compared region.
bool zero_product_probe(const QSeries& phi, const QSeries& psi, int n, double tol = 1e-12);

} // namespace qwiener
