#pragma once

#include <vector>

#include "qwiener/continuous.hpp"
#include "qwiener/quaternion.hpp"

namespace qwiener {

// Element of the Hardy space over the right half-plane, stored through its
// Fourier kernel pair on the lattice u = 0, du, ..., so that
// f(x+iy) = int e^{i(x+iy)u} k1(u) du + (int e^{i(x+iy)u} k2(u) du) j.
struct HardyElement {
    SliceBasis basis;
    double du = 0.0;
    std::vector<cplx> samples1, samples2;

    double window() const { return samples1.empty() ? 0.0 : du * double(samples1.size() - 1); }
};

// Fourier kernel pair on a full-line window starting at u_min (on the du
// lattice); the support split at u = 0 realizes the orthogonal decomposition
// of the boundary space.
struct LineElement {
    SliceBasis basis;
    double du = 0.0;
    double u_min = 0.0;
    std::vector<cplx> samples1, samples2;
};

// Parseval norm: ||F||^2 = 2 pi sum(|k1|^2 + |k2|^2) du.
double hardy_norm(const HardyElement& f);

// Support projections: P keeps u >= 0 (re-indexed from 0), Q keeps u < 0.
// P + Q reconstructs the input exactly.
HardyElement project_P(const LineElement& g);
LineElement project_Q(const LineElement& g);

// Wiener-Hopf operator: the symbol acts by left star multiplication on the
// quaternion kernel k1 + k2 j, and the result is truncated back to the
// window (the P projection). GridError on mismatched lattices.
HardyElement wh_apply(const CElement& phi, const HardyElement& f);

struct WhReport {
    bool is_wh = false;
    double defect = 0.0;
};

// Dual path for the product theorem: applies the two operators in sequence
// and the operator of the star product, comparing kernels away from the far
// end of the window; the margin equals the combined reach of the kernels
// below zero, the depth to which the truncated intermediate window is pulled
// back into the comparison region. SizeError when the window cannot absorb
// that margin.
WhReport wh_product_test(const CElement& phi, const CElement& psi, const HardyElement& f,
                         double tol = 1e-8);

} // namespace qwiener
