#pragma once

#include <vector>

#include "qwiener/quaternion.hpp"

namespace qwiener {

// Finitely supported Laurent series over the complex numbers.
// coeffs[k] is the coefficient of z^(min_deg + k).
struct CLaurent {
    int min_deg = 0;
    std::vector<cplx> coeffs;

    CLaurent() = default;
    CLaurent(int m, std::vector<cplx> c) : min_deg(m), coeffs(std::move(c)) {}

    static CLaurent constant(cplx v) { return {0, {v}}; }

    int max_deg() const { return min_deg + int(coeffs.size()) - 1; }
    bool empty() const { return coeffs.empty(); }

    cplx at(int deg) const {
        const int k = deg - min_deg;
        if (k < 0 || k >= int(coeffs.size())) return 0.0;
        return coeffs[std::size_t(k)];
    }

    double norm() const {
        double s = 0.0;
        for (const cplx& c : coeffs) s += std::abs(c);
        return s;
    }

    // Drop leading and trailing coefficients of magnitude <= tol.
    CLaurent trimmed(double tol = 0.0) const {
        std::size_t lo = 0, hi = coeffs.size();
        while (lo < hi && std::abs(coeffs[lo]) <= tol) ++lo;
        while (hi > lo && std::abs(coeffs[hi - 1]) <= tol) --hi;
        if (lo == hi) return {};
        return {min_deg + int(lo), std::vector<cplx>(coeffs.begin() + long(lo), coeffs.begin() + long(hi))};
    }
};

CLaurent cl_add(const CLaurent& f, const CLaurent& g);
CLaurent cl_sub(const CLaurent& f, const CLaurent& g);
CLaurent cl_scale(const CLaurent& f, cplx s);
CLaurent cl_mul(const CLaurent& f, const CLaurent& g);
cplx cl_eval(const CLaurent& f, cplx z);

// Samples at the n-th roots of unity (n a power of two), index k holds
// f(exp(2 pi i k / n)).
std::vector<cplx> circle_sample(const CLaurent& f, int n);

// Recover coefficients on [min_deg, max_deg] from circle samples;
// AliasError if more than tau_alias of the sampled mass lies outside the window.
CLaurent circle_interp(const std::vector<cplx>& samples, int min_deg, int max_deg,
                       double tau_alias = 1e-8);

struct ScalarInverse {
    CLaurent series;
    double residual = 0.0;     // |N * R - 1| in the coefficient-sum norm
    double grid_min = 0.0;     // min |N| over the oversampled circle grid
    double witness_theta = 0.0;
};

// Reciprocal of a real-coefficient Laurent series on the circle, truncated to
// [-out_window, out_window]. NotInvertibleError when |N| dips to tol on the
// circle; ConvergenceError when the window cannot hold the reciprocal.
ScalarInverse scalar_invert_real(const CLaurent& n_series, int out_window, double tol = 1e-9,
                                 double eps_inv = 1e-9);

// Taylor reciprocal of a real-coefficient polynomial with nonvanishing
// constant term; the window grows until the residual target is met.
ScalarInverse scalar_plus_reciprocal(const CLaurent& n_series, double eps_inv = 1e-9,
                                     int max_window = (1 << 16));

// 2x2-matrix valued Laurent series, same layout as CLaurent.
struct Mat2Laurent {
    int min_deg = 0;
    std::vector<Mat2C> coeffs;

    Mat2Laurent() = default;
    Mat2Laurent(int m, std::vector<Mat2C> c) : min_deg(m), coeffs(std::move(c)) {}

    static Mat2Laurent constant(const Mat2C& v) { return {0, {v}}; }

    int max_deg() const { return min_deg + int(coeffs.size()) - 1; }
    bool empty() const { return coeffs.empty(); }

    Mat2C at(int deg) const {
        const int k = deg - min_deg;
        if (k < 0 || k >= int(coeffs.size())) return Mat2C::zero();
        return coeffs[std::size_t(k)];
    }

    double norm() const {
        double s = 0.0;
        for (const Mat2C& c : coeffs) s += c.op_norm();
        return s;
    }

    Mat2Laurent trimmed(double tol = 0.0) const;

    // Coefficient (A_u)^* moved to degree -u; on the circle this is the
    // pointwise conjugate transpose.
    Mat2Laurent tilde() const;

    CLaurent entry(int r, int c) const;
};

Mat2Laurent mat_add(const Mat2Laurent& a, const Mat2Laurent& b);
Mat2Laurent mat_sub(const Mat2Laurent& a, const Mat2Laurent& b);
Mat2Laurent mat_mul(const Mat2Laurent& a, const Mat2Laurent& b);
Mat2C mat_eval(const Mat2Laurent& a, cplx z);
CLaurent mat_det(const Mat2Laurent& a);
Mat2Laurent mat_from_entries(const CLaurent& e11, const CLaurent& e12, const CLaurent& e21,
                             const CLaurent& e22);

struct MatInverse {
    Mat2Laurent series;
    double residual = 0.0;
    double grid_min_det = 0.0;
    double witness_theta = 0.0;
};

MatInverse mat_invert(const Mat2Laurent& a, int out_window, double tol = 1e-9,
                      double eps_inv = 1e-9);

struct CircleMinimum {
    double grid_min = 0.0;      // minimum over the sampled grid
    double certificate = 0.0;   // grid_min minus the Lipschitz slack, valid on the whole circle
    double witness_theta = 0.0;
    int grid_size = 0;
};

// Minimum modulus of a scalar symbol on the circle with derivative-bound slack.
CircleMinimum circle_min_abs(const CLaurent& f, int min_grid = 512);

// Minimum eigenvalue of a Hermitian-symmetric matrix symbol on the circle.
CircleMinimum circle_min_eig(const Mat2Laurent& a, int min_grid = 512);

// Net winding of f around 0 along the circle; DomainError if a sample
// vanishes or consecutive phase steps are unresolved.
int winding_number(const std::vector<cplx>& samples);

struct FactorOptions {
    double eps_fact = 1e-6;
    int max_section = 4096;
    double pos_tol = 1e-9;
};

struct MatFactor {
    Mat2Laurent factor;        // analytic, value at 1 Hermitian positive definite
    double residual = 0.0;     // |W - factor * factor~| in the coefficient norm
    int section = 0;           // block rows used by the final Cholesky pass
    double grid_min_eig = 0.0;
};

// Spectral factorization W = A A~ of a strictly positive Hermitian-symmetric
// symbol via Cholesky of its block Toeplitz sections (last-row readout,
// section size doubled until the residual target is met).
MatFactor mat_spectral_factorize(const Mat2Laurent& w, const FactorOptions& opt = {});

} // namespace qwiener
