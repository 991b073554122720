#pragma once

#include <vector>

#include "qwiener/quaternion.hpp"

namespace qwiener {

// Constant plus a compactly supported kernel on a uniform grid; represents
// c + integral of e^(pu) f(u) du over the support. The left endpoint u0 must
// sit on the du lattice so that convolutions land on the same grid.
struct CElement {
    Quaternion c;
    double u0 = 0.0;
    double du = 0.0;
    std::vector<Quaternion> samples;

    static CElement constant(const Quaternion& v) { return {v, 0.0, 0.0, {}}; }

    bool kernel_empty() const { return samples.empty(); }
    double u_end() const { return u0 + du * double(samples.empty() ? 0 : samples.size() - 1); }

    // trapezoid mass of |f|; the element norm adds |c|
    double kernel_mass() const;
    double norm() const { return c.norm() + kernel_mass(); }
};

// Uniform evaluation grid t in [-t_max, t_max].
struct TGrid {
    double t_max = 8.0;
    int n_t = 129;
};

std::vector<double> grid_points(const TGrid& g);

// cos(a) + i sin(a) as a quaternion on the slice of i.
Quaternion slice_exp(const ImaginaryUnit& i, double a);

// Index of u0 on the du lattice; GridError when u0 is off-lattice or du is
// not positive while samples exist.
long lattice_index(const CElement& f);

// c1 c2 plus the kernel c1 f2 + f1 c2 + (f1 o f2), where the convolution is
// the plain du-weighted sum; supports add. GridError on mismatched steps.
CElement cstar(const CElement& f1, const CElement& f2);

// c + sum of e^(i t u_k) f(u_k) with trapezoid weights, exponential on the
// left of the kernel value.
Quaternion ceval(const CElement& f, const ImaginaryUnit& i, double t);

// Symbol matrices chi(c) + sum of e^(itu) chi(f(u)) w(u) along the grid, with
// the exponential acting as a complex scalar; the second row carries the
// coefficient-conjugated transform, so the determinant is genuinely complex
// and vanishes exactly where the element has a zero on some slice.
std::vector<Mat2C> omega_c(const CElement& f, const SliceBasis& basis, const TGrid& grid);

enum class CertMode { NeumannCertificate, GridEvidence };

struct CVerdict {
    bool invertible = false;
    CertMode mode = CertMode::GridEvidence;
    double min_abs_det = 0.0;  // certified lower bound (Neumann) or grid minimum
    double tail_abs_det = 0.0; // limit |c|^2 of the determinant at large |t|
    double witness_t = 0.0;
};

// Neumann certificate (kernel mass below |c|) when it is conclusive,
// otherwise grid evidence from the determinant of the boundary values.
CVerdict is_invertible_c(const CElement& f, const SliceBasis& basis, const TGrid& grid,
                         double tol = 1e-9);

// Inverse element: the symbol is inverted pointwise on an internal
// conjugate-paired grid, the kernel recovered by inverse discrete Fourier
// transform on a window that starts at four times the input support and
// doubles until the product defect over the evaluation grid stays within tol.
// The pointwise quaternionic structure of the kernel is checked and enforced
// by averaging.
CElement invert_c(const CElement& f, const SliceBasis& basis, const TGrid& grid,
                  double tol = 1e-6);

struct Membership {
    bool plus = false;
    bool minus = false;
};

// Kernel support sign: plus when all samples at u < 0 are below 1e-14 in
// modulus, minus symmetrically.
Membership membership_pm(const CElement& f);

// Inverse within the nonnegative-support subalgebra. Requires the Neumann
// certificate or a zero winding count of the determinant continuation along
// a line just inside the support half-plane; the computed inverse kernel is
// truncated to u >= 0 and the discarded mass must stay within tol.
CElement invert_plus_c(const CElement& f, const SliceBasis& basis, const TGrid& grid,
                       double tol = 1e-6);

struct SlicePositivity {
    bool positive = false;
    bool hermitian = false;
    double min_eig = 0.0;
    double witness_t = 0.0;
};

// Hermitian-ness and minimum eigenvalue of the boundary values on one slice;
// genuinely basis dependent.
SlicePositivity is_strictly_positive_on_slice(const CElement& f, const SliceBasis& basis,
                                              const TGrid& grid, double tol = 1e-9);

} // namespace qwiener
