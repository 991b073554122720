#pragma once

#include <vector>

#include "qwiener/laurent.hpp"
#include "qwiener/quaternion.hpp"

namespace qwiener {

// Finitely supported power series with quaternion coefficients; coeffs[k] is
// the coefficient of p^(min_deg + k). Multiplication is coefficient
// convolution (the star product), which keeps left and right factors in the
// stated order.
struct QSeries {
    int min_deg = 0;
    std::vector<Quaternion> coeffs;

    QSeries() = default;
    QSeries(int m, std::vector<Quaternion> c) : min_deg(m), coeffs(std::move(c)) {}

    static QSeries constant(const Quaternion& v) { return {0, {v}}; }

    int max_deg() const { return min_deg + int(coeffs.size()) - 1; }
    bool empty() const { return coeffs.empty(); }

    Quaternion at(int deg) const {
        const int k = deg - min_deg;
        if (k < 0 || k >= int(coeffs.size())) return Quaternion{};
        return coeffs[std::size_t(k)];
    }

    double norm() const {
        double s = 0.0;
        for (const Quaternion& c : coeffs) s += c.norm();
        return s;
    }

    QSeries trimmed(double tol = 0.0) const;

    // Support entirely at degrees >= 0 (resp. <= 0) after trimming.
    bool is_plus() const { return trimmed().min_deg >= 0; }
    bool is_minus() const {
        const QSeries t = trimmed();
        return t.empty() || t.max_deg() <= 0;
    }
};

QSeries qs_add(const QSeries& f, const QSeries& g);
QSeries qs_sub(const QSeries& f, const QSeries& g);
QSeries qs_scale(const QSeries& f, double s);
QSeries qs_scale_left(const QSeries& f, const Quaternion& a);
QSeries qs_scale_right(const QSeries& f, const Quaternion& a);

// Star product: coefficient convolution, (f*g)_u = sum_k f_(u-k) g_k.
QSeries star(const QSeries& f, const QSeries& g);

// Integer power of a quaternion; negative exponents invert first.
Quaternion qpow(const Quaternion& p, int n);

// f(p) = sum_u p^u f_u with powers on the left of the coefficients.
Quaternion eval_at(const QSeries& f, const Quaternion& p);

// Both sides of the product evaluation rule: the left side evaluates f*g at
// p, the right side is f(p) g(f(p)^-1 p f(p)), or zero when f(p) = 0.
struct StarIdentity {
    Quaternion lhs;
    Quaternion rhs;
};
StarIdentity pointwise_star_identity(const QSeries& f, const QSeries& g, const Quaternion& p);

// Coefficients conjugated in place; an involution.
QSeries conj_series(const QSeries& f);

// Coefficients conjugated and the support mirrored, conj(f_u) at degree -u;
// the series of the adjoint symbol on the circle.
QSeries adjoint_series(const QSeries& f);

// f * conj_series(f); the result has real coefficients, which are checked and
// then forced exactly real. StructureError if the imaginary residue exceeds
// 1e-13 * |f|^2, which would indicate an arithmetic fault.
QSeries symmetrize(const QSeries& f);

// Coefficientwise chi; turns star products into coefficient-convolution
// matrix products.
Mat2Laurent omega(const QSeries& f, const SliceBasis& basis);

// Coefficientwise chi_inv; StructureError names the first offending degree.
QSeries omega_inv(const Mat2Laurent& a, const SliceBasis& basis, double tau_struct = 1e-9);

// Determinant of omega(f), computed both as a matrix determinant and as the
// complex restriction of symmetrize(f); the two must agree to 1e-12 of scale.
// Returns the restriction, which is exactly real.
CLaurent det_omega(const QSeries& f, const SliceBasis& basis);

struct InvertibilityVerdict {
    bool invertible = false;
    double min_abs_det = 0.0;   // grid minimum of |det omega(f)| on the circle
    double certificate = 0.0;   // grid minimum less the Lipschitz slack
    double witness_theta = 0.0; // argmin over the grid
};

// Grid verdict on invertibility; basis independent because the determinant
// coefficients equal the symmetrization coefficients.
InvertibilityVerdict is_invertible(const QSeries& f, const SliceBasis& basis = SliceBasis::standard(),
                                   double tol = 1e-9);

// Two-sided inverse with |f*g - 1| and |g*f - 1| at most eps_inv, computed as
// conj_series(f) times the scalar reciprocal of the symmetrization.
// out_window <= 0 picks a window from the support and widens it on demand.
QSeries invert(const QSeries& f, const SliceBasis& basis = SliceBasis::standard(),
               int out_window = 0, double tol = 1e-9, double eps_inv = 1e-9);

enum class ZeroKind { Spherical, Isolated };

struct ZeroEntry {
    double theta = 0.0; // in [0, pi]
    ZeroKind kind = ZeroKind::Spherical;
    Quaternion unit;    // the imaginary unit of an isolated zero
    double residual = 0.0;
};
using ZeroReport = std::vector<ZeroEntry>;

// Zeros of f on the unit sphere of quaternions, located through the circle
// roots of det omega(f) and classified as whole conjugation spheres or
// isolated points with their imaginary unit.
ZeroReport classify_zeros(const QSeries& f, const SliceBasis& basis = SliceBasis::standard(),
                          double tol = 1e-7);

struct PlusVerdict {
    bool invertible = false;
    double min_root_modulus = 0.0; // smallest |root| of det omega(f)
    double root_theta = 0.0;       // argument of that root
};

// Invertibility inside the nonnegative-degree subalgebra: every root of the
// determinant polynomial must lie strictly outside the closed unit disc.
// NotPlusError when f has negative support.
PlusVerdict is_invertible_plus(const QSeries& f, const SliceBasis& basis = SliceBasis::standard(),
                               double tol = 1e-7);

// Inverse within the nonnegative-degree subalgebra, |f*g - 1| <= eps_inv,
// support of g at degrees >= 0 exactly.
QSeries invert_plus(const QSeries& f, const SliceBasis& basis = SliceBasis::standard(),
                    int out_window = 0, double tol = 1e-7, double eps_inv = 1e-9);

struct PositivityVerdict {
    bool positive = false;
    bool hermitian = false;     // f_(-u) = conj(f_u) within tolerance
    double min_eig = 0.0;       // grid minimum eigenvalue of omega(f) on the circle
    double certificate = 0.0;   // grid minimum less the Lipschitz slack
    double witness_theta = 0.0;
};

// Strict positivity of omega(f) on the circle; requires conjugate-symmetric
// coefficients and a positive eigenvalue certificate.
PositivityVerdict is_strictly_positive(const QSeries& f, const SliceBasis& basis = SliceBasis::standard(),
                                       double tol = 1e-9);

struct SpectralOptions {
    double eps_fact = 1e-6;
    int max_section = 4096;
    double pos_tol = 1e-9;
    double struct_tol = 1e-3; // allowed relative structure defect of the raw factor
};

// Spectral factor f_plus with nonnegative support, invertible there, value
// at 1 Hermitian positive definite after normalization, and
// |f - f_plus * adjoint_series(f_plus)| <= eps_fact.
QSeries spectral_factorize(const QSeries& f, const SliceBasis& basis = SliceBasis::standard(),
                           const SpectralOptions& opt = {});

} // namespace qwiener
