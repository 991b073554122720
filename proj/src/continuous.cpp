#include "qwiener/continuous.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "qwiener/errors.hpp"
#include "qwiener/fft.hpp"
#include "qwiener/laurent.hpp"

namespace qwiener {

namespace {

constexpr double kPi = 3.14159265358979323846;

double trap_weight(std::size_t k, std::size_t n, double du) {
    if (n == 1) return du;
    return (k == 0 || k + 1 == n) ? 0.5 * du : du;
}

// Symbol matrix chi(c) + sum of e^(itu) chi(f(u)) with the exponential as a
// complex scalar; the second row therefore carries the coefficient-conjugated
// transform, pairing t with -t.
Mat2C symbol_at(const CElement& f, const SliceBasis& basis, double t, bool flat) {
    Mat2C acc = chi(f.c, basis);
    for (std::size_t k = 0; k < f.samples.size(); ++k) {
        const double u = f.u0 + f.du * double(k);
        const double w = flat ? f.du : trap_weight(k, f.samples.size(), f.du);
        acc = acc + chi(f.samples[k], basis) * (std::polar(w, t * u));
    }
    return acc;
}

double flat_mass(const std::vector<Quaternion>& s, double du) {
    double m = 0.0;
    for (const Quaternion& q : s) m += q.norm();
    return m * du;
}

} // namespace

double CElement::kernel_mass() const {
    double m = 0.0;
    for (std::size_t k = 0; k < samples.size(); ++k) m += trap_weight(k, samples.size(), du) * samples[k].norm();
    return m;
}

std::vector<double> grid_points(const TGrid& g) {
    if (g.n_t < 2 || !(g.t_max > 0.0)) throw DomainError("grid_points: need n_t >= 2 and t_max > 0");
    std::vector<double> ts(std::size_t(g.n_t));
    const double step = 2.0 * g.t_max / double(g.n_t - 1);
    for (int k = 0; k < g.n_t; ++k) ts[std::size_t(k)] = -g.t_max + step * double(k);
    return ts;
}

Quaternion slice_exp(const ImaginaryUnit& i, double a) {
    const double c = std::cos(a), s = std::sin(a);
    return Quaternion{c, i.q.x1 * s, i.q.x2 * s, i.q.x3 * s};
}

long lattice_index(const CElement& f) {
    if (f.samples.empty()) return 0;
    if (!(f.du > 0.0)) throw GridError("lattice_index: kernel requires du > 0");
    const long k0 = std::lround(f.u0 / f.du);
    if (std::abs(f.u0 - double(k0) * f.du) > 1e-9 * f.du)
        throw GridError("lattice_index: u0 is not on the du lattice");
    return k0;
}

CElement cstar(const CElement& f1, const CElement& f2) {
    const Quaternion cc = qmul(f1.c, f2.c);
    if (f1.kernel_empty() && f2.kernel_empty())
        return {cc, 0.0, std::max(f1.du, f2.du), {}};
    if (f1.kernel_empty()) {
        CElement out{cc, f2.u0, f2.du, f2.samples};
        for (Quaternion& q : out.samples) q = qmul(f1.c, q);
        return out;
    }
    if (f2.kernel_empty()) {
        CElement out{cc, f1.u0, f1.du, f1.samples};
        for (Quaternion& q : out.samples) q = qmul(q, f2.c);
        return out;
    }
    if (std::abs(f1.du - f2.du) > 1e-12 * f1.du)
        throw GridError("cstar: kernels live on different grids");
    const double du = f1.du;
    const long k1 = lattice_index(f1);
    const long k2 = lattice_index(f2);
    const long n1 = long(f1.samples.size());
    const long n2 = long(f2.samples.size());
    const long lo = std::min({k1, k2, k1 + k2});
    const long hi = std::max({k1 + n1 - 1, k2 + n2 - 1, k1 + k2 + n1 + n2 - 2});
    CElement out{cc, double(lo) * du, du, std::vector<Quaternion>(std::size_t(hi - lo + 1))};
    for (long a = 0; a < n2; ++a)
        out.samples[std::size_t(k2 + a - lo)] += qmul(f1.c, f2.samples[std::size_t(a)]);
    for (long a = 0; a < n1; ++a)
        out.samples[std::size_t(k1 + a - lo)] += qmul(f1.samples[std::size_t(a)], f2.c);
    for (long a = 0; a < n1; ++a)
        for (long b = 0; b < n2; ++b)
            out.samples[std::size_t(k1 + k2 + a + b - lo)] +=
                qmul(f1.samples[std::size_t(a)], f2.samples[std::size_t(b)]) * du;
    return out;
}

Quaternion ceval(const CElement& f, const ImaginaryUnit& i, double t) {
    Quaternion acc = f.c;
    for (std::size_t k = 0; k < f.samples.size(); ++k) {
        const double u = f.u0 + f.du * double(k);
        acc += qmul(slice_exp(i, t * u), f.samples[k]) * trap_weight(k, f.samples.size(), f.du);
    }
    return acc;
}

std::vector<Mat2C> omega_c(const CElement& f, const SliceBasis& basis, const TGrid& grid) {
    const std::vector<double> ts = grid_points(grid);
    std::vector<Mat2C> out;
    out.reserve(ts.size());
    for (double t : ts) out.push_back(symbol_at(f, basis, t, false));
    return out;
}

CVerdict is_invertible_c(const CElement& f, const SliceBasis& basis, const TGrid& grid, double tol) {
    CVerdict v;
    const double cn = f.c.norm();
    v.tail_abs_det = cn * cn;
    const double mass = f.kernel_mass();
    if (mass < cn) {
        const double bound = (cn - mass) * (cn - mass);
        if (bound > tol) {
            v.mode = CertMode::NeumannCertificate;
            v.min_abs_det = bound;
            v.witness_t = 0.0;
            v.invertible = true;
            return v;
        }
    }
    v.mode = CertMode::GridEvidence;
    double best = std::numeric_limits<double>::infinity();
    double arg = 0.0;
    for (double t : grid_points(grid)) {
        const double d = std::abs(symbol_at(f, basis, t, false).det());
        if (d < best) {
            best = d;
            arg = t;
        }
    }
    v.min_abs_det = best;
    v.witness_t = arg;
    v.invertible = std::min(best, v.tail_abs_det) > tol;
    return v;
}

CElement invert_c(const CElement& f, const SliceBasis& basis, const TGrid& grid, double tol) {
    if (f.c.is_zero())
        throw NotInvertibleError("invert_c: constant term vanishes", 0.0, 0.0);
    const CVerdict verdict = is_invertible_c(f, basis, grid);
    if (!verdict.invertible)
        throw NotInvertibleError("invert_c: boundary determinant reaches zero",
                                 verdict.min_abs_det, verdict.witness_t);
    const Quaternion cinv = qinv(f.c);
    if (f.kernel_empty()) return {cinv, 0.0, f.du, {}};

    const long k0 = lattice_index(f);
    const long k1 = k0 + long(f.samples.size()) - 1;
    const double du = f.du;
    const std::vector<double> ts = grid_points(grid);
    const long extent = std::max({std::abs(k0), std::abs(k1), k1 - k0 + 1});
    std::size_t M = next_pow2(std::size_t(std::max(8L * extent, 32L)));
    const Mat2C chic_inv = chi(cinv, basis);

    double defect = std::numeric_limits<double>::infinity();
    for (; M <= (std::size_t(1) << 20); M <<= 1) {
        const long half = long(M) / 2;
        std::vector<cplx> e11(M), e12(M), e21(M), e22(M);
        bool singular = false;
        double sing_t = 0.0, sing_det = 0.0;
        for (long j = -half; j < half; ++j) {
            const double t = 2.0 * kPi * double(j) / (double(M) * du);
            const Mat2C sym = symbol_at(f, basis, t, true);
            const double dmag = std::abs(sym.det());
            if (dmag < 1e-14) {
                singular = true;
                sing_t = t;
                sing_det = dmag;
                break;
            }
            const Mat2C h = sym.inverse() - chic_inv;
            const std::size_t jj = std::size_t((j + long(M)) % long(M));
            e11[jj] = h.m11;
            e12[jj] = h.m12;
            e21[jj] = h.m21;
            e22[jj] = h.m22;
        }
        if (singular)
            throw NotInvertibleError("invert_c: symbol determinant reaches zero", sing_det, sing_t);
        fft_pow2(e11, false);
        fft_pow2(e12, false);
        fft_pow2(e21, false);
        fft_pow2(e22, false);
        const double scale = 1.0 / (double(M) * du);

        // The matrix kernel of an inverse symbol is pointwise chi-structured;
        // the defect measures how far the grid is from resolving that.
        double jd = 0.0, kmax = 0.0;
        std::vector<Quaternion> ker(M);
        for (long m = -half; m < half; ++m) {
            const std::size_t mm = std::size_t((m + long(M)) % long(M));
            const Mat2C km{e11[mm] * scale, e12[mm] * scale, e21[mm] * scale, e22[mm] * scale};
            const Mat2C refl = j1_reflect(km);
            jd = std::max(jd, (km - refl).op_norm());
            kmax = std::max(kmax, km.op_norm());
            const cplx z = 0.5 * (km.m11 + refl.m11);
            const cplx w = 0.5 * (km.m12 + refl.m12);
            ker[std::size_t(m + half)] = unsplit(z, w, basis);
        }
        if (jd > 1e-3 * std::max(1.0, kmax))
            throw StructureError("invert_c: reconstructed kernel violates the quaternionic structure", jd);

        const double trim_tol = 1e-2 * tol / (double(M) * du);
        std::size_t lo = 0, hi = M;
        while (lo < hi && ker[lo].norm() <= trim_tol) ++lo;
        while (hi > lo && ker[hi - 1].norm() <= trim_tol) --hi;
        CElement g{cinv, double(long(lo) - half) * du, du,
                   std::vector<Quaternion>(ker.begin() + long(lo), ker.begin() + long(hi))};
        if (g.samples.empty()) {
            g.u0 = 0.0;
        } else {
            // zero edge samples make the trapezoid and flat transforms of the
            // inverse agree, so the public symbol inherits the certified product
            g.samples.insert(g.samples.begin(), Quaternion{});
            g.samples.push_back(Quaternion{});
            g.u0 -= du;
        }

        defect = 0.0;
        for (double t : ts) {
            const Mat2C prod = symbol_at(f, basis, t, true) * symbol_at(g, basis, t, true);
            defect = std::max(defect, (prod - Mat2C::identity()).op_norm());
        }
        if (defect <= tol) return g;
    }
    throw ConvergenceError("invert_c: product defect does not reach tolerance", defect);
}

Membership membership_pm(const CElement& f) {
    Membership m{true, true};
    if (f.kernel_empty()) return m;
    const long k0 = lattice_index(f);
    for (std::size_t k = 0; k < f.samples.size(); ++k) {
        if (f.samples[k].norm() <= 1e-14) continue;
        const long idx = k0 + long(k);
        if (idx < 0) m.plus = false;
        if (idx > 0) m.minus = false;
    }
    return m;
}

namespace {

// Analytic continuation of the symbol determinant to Re z = x: the entries of
// the second row are the coefficient-conjugated transforms, so the value is
// A(z) conj(A(conj z)) + B(z) conj(B(conj z)).
std::vector<cplx> det_line_samples(const CElement& f, const SliceBasis& basis, double x,
                                   double t_max, std::size_t n) {
    const SplitPair cs = split(f.c, basis);
    std::vector<SplitPair> ks(f.samples.size());
    for (std::size_t k = 0; k < f.samples.size(); ++k) ks[k] = split(f.samples[k], basis);
    std::vector<cplx> out(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double t = -t_max + 2.0 * t_max * double(j) / double(n - 1);
        cplx a1 = cs.z, b1 = cs.w, a2 = cs.z, b2 = cs.w;
        for (std::size_t k = 0; k < f.samples.size(); ++k) {
            const double u = f.u0 + f.du * double(k);
            const cplx ep = std::exp(cplx(x * u, t * u)) * f.du;
            const cplx em = std::exp(cplx(x * u, -t * u)) * f.du;
            a1 += ep * ks[k].z;
            b1 += ep * ks[k].w;
            a2 += em * ks[k].z;
            b2 += em * ks[k].w;
        }
        out[j] = a1 * std::conj(a2) + b1 * std::conj(b2);
    }
    return out;
}

} // namespace

CElement invert_plus_c(const CElement& f, const SliceBasis& basis, const TGrid& grid, double tol) {
    const Membership mem = membership_pm(f);
    if (!mem.plus)
        throw NotPlusError("invert_plus_c: kernel carries mass at negative arguments");
    const double cn = f.c.norm();
    const bool neumann = f.kernel_mass() < cn && (cn - f.kernel_mass()) * (cn - f.kernel_mass()) > 1e-12;
    if (!neumann && !f.kernel_empty()) {
        const double width = std::max(f.u_end() - f.u0, f.du);
        const double t_max = std::max(grid.t_max, 64.0 / width);
        const std::vector<cplx> line = det_line_samples(f, basis, -f.du, t_max, 8192);
        int wind = 0;
        try {
            wind = winding_number(line);
        } catch (const DomainError&) {
            throw NotInvertibleError("invert_plus_c: determinant continuation vanishes on the test line",
                                     0.0, 0.0);
        }
        if (wind != 0)
            throw NotInvertibleError("invert_plus_c: determinant continuation winds in the support half-plane",
                                     0.0, double(wind));
    }
    CElement g = invert_c(f, basis, grid, tol);
    if (g.kernel_empty()) return g;
    const long k0 = lattice_index(g);
    if (k0 >= 0) return g;
    const std::size_t cut = std::min(g.samples.size(), std::size_t(-k0));
    const double dropped =
        flat_mass(std::vector<Quaternion>(g.samples.begin(), g.samples.begin() + long(cut)), g.du);
    if (dropped > tol)
        throw StructureError("invert_plus_c: inverse carries kernel mass at negative arguments", dropped);
    g.samples.erase(g.samples.begin(), g.samples.begin() + long(cut));
    g.u0 = 0.0;
    return g;
}

SlicePositivity is_strictly_positive_on_slice(const CElement& f, const SliceBasis& basis,
                                              const TGrid& grid, double tol) {
    SlicePositivity out;
    out.hermitian = true;
    out.min_eig = std::numeric_limits<double>::infinity();
    const double scale = std::max(1.0, f.norm());
    for (double t : grid_points(grid)) {
        const Mat2C v = chi(ceval(f, basis.i, t), basis);
        if (v.hermitian_defect() > 1e-9 * scale) {
            out.hermitian = false;
            out.positive = false;
            out.min_eig = 0.0;
            out.witness_t = t;
            return out;
        }
        double lo = 0.0, hi = 0.0;
        v.hermitian_eigenvalues(lo, hi);
        if (lo < out.min_eig) {
            out.min_eig = lo;
            out.witness_t = t;
        }
    }
    out.positive = out.min_eig > tol;
    return out;
}

} // namespace qwiener
