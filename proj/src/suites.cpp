#include "qwiener/suites.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <string>
#include <vector>

#include "qwiener/continuous.hpp"
#include "qwiener/errors.hpp"
#include "qwiener/random.hpp"
#include "qwiener/series.hpp"
#include "qwiener/toeplitz.hpp"
#include "qwiener/wiener_hopf.hpp"

namespace qwiener {

namespace {

constexpr double kPi = 3.14159265358979323846;

struct Tally {
    long checks = 0;
    long failures = 0;
    std::string first;

    void expect(bool ok, const std::string& what) {
        ++checks;
        if (!ok) {
            ++failures;
            if (first.empty()) first = what;
        }
    }
};

std::string fnum(double v) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.3g", v);
    return buf;
}

int scaled(int fallback, int ov) { return ov > 0 ? ov : fallback; }

QSeries random_series(Rng& rng, int min_lo, int min_hi, int w_lo, int w_hi, double scale) {
    const int w = rng.uniform_int(w_lo, w_hi);
    const int m = rng.uniform_int(min_lo, min_hi);
    std::vector<Quaternion> c(static_cast<std::size_t>(w));
    for (Quaternion& q : c) q = rng.quaternion_box(scale);
    return {m, std::move(c)};
}

// Rewrites the degree-zero coefficient so it exceeds twice the remaining mass.
void dominate_at_zero(Rng& rng, QSeries& f) {
    double tail = 0.0;
    for (int u = f.min_deg; u <= f.max_deg(); ++u)
        if (u != 0) tail += f.at(u).norm();
    f.coeffs[std::size_t(-f.min_deg)] =
        rng.quaternion_unit() * (tail * (2.0 + rng.uniform(0.1, 1.0)) + rng.uniform(0.05, 0.25));
}

QSeries dyadic_series(Rng& rng) {
    const int w = rng.uniform_int(1, 16);
    const int m = rng.uniform_int(-8, 8);
    std::vector<Quaternion> c(static_cast<std::size_t>(w));
    for (Quaternion& q : c)
        q = {0.5 * rng.uniform_int(-2, 2), 0.5 * rng.uniform_int(-2, 2),
             0.5 * rng.uniform_int(-2, 2), 0.5 * rng.uniform_int(-2, 2)};
    return {m, std::move(c)};
}

double coeff_defect(const Mat2Laurent& a, const Mat2Laurent& b) {
    const Mat2Laurent d = mat_sub(a, b);
    double out = 0.0;
    for (const Mat2C& c : d.coeffs) out = std::max(out, c.op_norm());
    return out;
}

bool coeffs_exact_zero(const Mat2Laurent& a, const Mat2Laurent& b) {
    const Mat2Laurent d = mat_sub(a, b);
    for (const Mat2C& c : d.coeffs)
        if (!(c.m11 == cplx(0.0) && c.m12 == cplx(0.0) && c.m21 == cplx(0.0) &&
              c.m22 == cplx(0.0)))
            return false;
    return true;
}

std::string suite_homomorphism(Rng& rng, Tally& t, int ov) {
    const int pairs = scaled(500, ov);
    const int exact_pairs = ov > 0 ? std::max(1, ov / 5) : 100;
    double worst = 0.0;
    for (int k = 0; k < pairs; ++k) {
        const SliceBasis B = rng.slice_basis();
        const QSeries f = random_series(rng, -8, 8, 1, 16, 0.5);
        const QSeries g = random_series(rng, -8, 8, 1, 16, 0.5);
        const double d =
            coeff_defect(omega(star(f, g), B), mat_mul(omega(f, B), omega(g, B)));
        worst = std::max(worst, d);
        t.expect(d <= 1e-12, "coefficientwise defect above 1e-12");
    }
    for (int k = 0; k < exact_pairs; ++k) {
        const SliceBasis B = SliceBasis::standard();
        const QSeries f = dyadic_series(rng);
        const QSeries g = dyadic_series(rng);
        t.expect(coeffs_exact_zero(omega(star(f, g), B), mat_mul(omega(f, B), omega(g, B))),
                 "half-integer pair defect not exactly zero");
    }
    return "max defect " + fnum(worst) + " over " + std::to_string(pairs) + " pairs; " +
           std::to_string(exact_pairs) + " half-integer pairs bitwise zero";
}

std::string suite_det_identity(Rng& rng, Tally& t, int ov) {
    const int bases = 10;
    const int per_basis = ov > 0 ? std::max(1, ov / bases) : 20;
    double worst = 0.0;
    for (int b = 0; b < bases; ++b) {
        const SliceBasis B = rng.slice_basis();
        for (int k = 0; k < per_basis; ++k) {
            const QSeries f = random_series(rng, -8, 8, 1, 16, 0.5);
            const CLaurent direct = mat_det(omega(f, B));
            const QSeries sym = symmetrize(f);
            double d = 0.0;
            for (int u = 2 * f.min_deg - 1; u <= 2 * f.max_deg() + 1; ++u)
                d = std::max(d, std::abs(direct.at(u) - cplx(sym.at(u).x0, 0.0)));
            worst = std::max(worst, d);
            t.expect(d <= 1e-12, "coefficient gap above 1e-12");
        }
    }
    return "max coefficient gap " + fnum(worst) + " over " + std::to_string(bases) + " bases x " +
           std::to_string(per_basis) + " series";
}

std::string suite_wiener_levy(Rng& rng, Tally& t, int ov) {
    const int n_inv = scaled(200, ov);
    const int n_ref = ov > 0 ? std::max(1, ov / 2) : 100;
    const QSeries one = QSeries::constant(Quaternion(1.0));
    double worst = 0.0;
    for (int k = 0; k < n_inv; ++k) {
        const SliceBasis B = (k % 2 == 0) ? SliceBasis::standard() : rng.slice_basis();
        const int m = rng.uniform_int(-7, -1);
        QSeries f = random_series(rng, m, m, -m + 1, 14, 0.5);
        dominate_at_zero(rng, f);
        try {
            const QSeries g = invert(f, B);
            const double res = qs_sub(star(f, g), one).norm();
            worst = std::max(worst, res);
            t.expect(res <= 1e-8, "residual above 1e-8");
        } catch (const Error& e) {
            t.expect(false, std::string("dominant-constant input refused: ") + e.what());
        }
    }
    int refused = 0;
    double worst_wit = 0.0;
    for (int k = 0; k < n_ref; ++k) {
        const Quaternion q = rng.quaternion_unit();
        const QSeries f(0, {-q, Quaternion(1.0)});
        try {
            (void)invert(f);
            t.expect(false, "unit-sphere pole accepted");
        } catch (const NotInvertibleError& e) {
            ++refused;
            const double at_witness =
                std::abs(cl_eval(det_omega(f, SliceBasis::standard()), std::polar(1.0, e.witness)));
            worst_wit = std::max(worst_wit, at_witness);
            t.expect(at_witness <= 5e-2, "witness does not sit near a circle zero");
        }
    }
    return "max residual " + fnum(worst) + " over " + std::to_string(n_inv) + " inversions; " +
           std::to_string(refused) + " refusals, |det| at witness <= " + fnum(worst_wit);
}

std::string suite_plus_algebra(Rng& rng, Tally& t, int ov) {
    const QSeries shift(1, {Quaternion(1.0)});
    t.expect(!is_invertible_plus(shift).invertible, "shift accepted as plus-invertible");
    bool refused = false;
    try {
        (void)invert_plus(shift);
    } catch (const NotInvertibleError&) {
        refused = true;
    }
    t.expect(refused, "invert_plus did not refuse the shift");

    const int n = scaled(100, ov);
    const QSeries one = QSeries::constant(Quaternion(1.0));
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
        const SliceBasis B = (k % 2 == 0) ? SliceBasis::standard() : rng.slice_basis();
        QSeries f = random_series(rng, 0, 0, 2, 15, 0.5);
        dominate_at_zero(rng, f);
        try {
            const QSeries g = invert_plus(f, B);
            t.expect(g.min_deg >= 0, "negative-degree leakage in the plus inverse");
            const double res = qs_sub(star(f, g), one).norm();
            worst = std::max(worst, res);
            t.expect(res <= 1e-8, "plus residual above 1e-8");
        } catch (const Error& e) {
            t.expect(false, std::string("plus-dominant input refused: ") + e.what());
        }
    }
    return "max residual " + fnum(worst) + " over " + std::to_string(n) +
           " plus inversions; shift refused";
}

std::string suite_factorization(Rng& rng, Tally& t, int ov) {
    const int n = scaled(50, ov);
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
        const SliceBasis B = (k % 5 == 0) ? rng.slice_basis() : SliceBasis::standard();
        QSeries h = random_series(rng, 0, 0, 2, 8, 0.5);
        dominate_at_zero(rng, h);
        try {
            t.expect(is_invertible_plus(h, B).invertible, "seed factor not plus-invertible");
            const QSeries f = star(h, adjoint_series(h));
            SpectralOptions opt;
            opt.max_section = 512;
            const QSeries fp = spectral_factorize(f, B, opt);
            const double res = qs_sub(f, star(fp, adjoint_series(fp))).norm();
            worst = std::max(worst, res);
            t.expect(res <= 1e-6, "factorization residual above 1e-6");
            t.expect(is_invertible_plus(fp, B).invertible, "factor not plus-invertible");
            const QSeries fp2 = spectral_factorize(f, B, opt);
            bool bit = fp2.min_deg == fp.min_deg && fp2.coeffs.size() == fp.coeffs.size();
            for (std::size_t i = 0; bit && i < fp.coeffs.size(); ++i)
                bit = fp.coeffs[i] == fp2.coeffs[i];
            t.expect(bit, "two factorization runs differ bitwise");
        } catch (const Error& e) {
            t.expect(false, std::string("factorization threw: ") + e.what());
        }
    }
    return "max residual " + fnum(worst) + " over " + std::to_string(n) +
           " factorizations, section cap 512, repeat runs bitwise equal";
}

std::string suite_zero_classification(Rng& rng, Tally& t, int ov) {
    const QSeries sq(0, {Quaternion(1.0), Quaternion(0.0), Quaternion(1.0)});
    const ZeroReport r1 = classify_zeros(sq);
    t.expect(r1.size() == 1, "square-plus-one: expected one entry");
    if (!r1.empty()) {
        t.expect(r1[0].kind == ZeroKind::Spherical, "square-plus-one: not spherical");
        t.expect(std::abs(r1[0].theta - kPi / 2) <= 1e-6, "square-plus-one: theta off");
    }

    const QSeries lin(0, {-Quaternion::e2(), Quaternion(1.0)});
    const ZeroReport r2 = classify_zeros(lin);
    t.expect(r2.size() == 1, "linear: expected one entry");
    double val = 1.0;
    if (!r2.empty()) {
        t.expect(r2[0].kind == ZeroKind::Isolated, "linear: not isolated");
        t.expect((r2[0].unit - Quaternion::e2()).norm() <= 1e-6, "linear: wrong unit");
        val = eval_at(lin, r2[0].unit).norm();
        t.expect(val <= 1e-10, "linear: value at the reported unit above 1e-10");
    }

    const int n = scaled(50, ov);
    for (int k = 0; k < n; ++k) {
        const double th = rng.uniform(0.15, kPi - 0.15);
        const Quaternion q0 = slice_exp(rng.imaginary_unit(), th);
        const QSeries prod =
            star(QSeries(0, {-q0, Quaternion(1.0)}), QSeries(0, {-qconj(q0), Quaternion(1.0)}));
        const ZeroReport r = classify_zeros(prod);
        const bool good = r.size() == 1 && r[0].kind == ZeroKind::Spherical &&
                          std::abs(r[0].theta - th) <= 1e-6;
        t.expect(good, "conjugate-pair product not classified as one sphere");
    }
    return "sphere and point examples verified, " + std::to_string(n) +
           " conjugate-pair products spherical, value at unit " + fnum(val);
}

std::string suite_toeplitz(Rng& rng, Tally& t, int ov) {
    const int n_ok = scaled(200, ov);
    const int n_bad = scaled(200, ov);
    const int n_probe = scaled(200, ov);
    const int section = 64;
    double worst = 0.0;
    for (int k = 0; k < n_ok; ++k) {
        QSeries phi, psi;
        if (k % 2 == 0) {
            const int w = rng.uniform_int(1, 7);
            phi = random_series(rng, 1 - w - 1, 1 - w, w, w, 0.5);
            psi = random_series(rng, -3, 0, 1, 7, 0.5);
        } else {
            phi = random_series(rng, -6, 0, 1, 7, 0.5);
            const int w = rng.uniform_int(1, 7);
            psi = random_series(rng, 0, 7 - w, w, w, 0.5);
        }
        const ProductReport r = toeplitz_product_test(phi, psi, section);
        worst = std::max(worst, r.defect_norm);
        t.expect(r.is_toeplitz && r.equals_t_star, "if-branch product flagged");
        t.expect(r.defect_norm <= 1e-12, "if-branch defect above 1e-12");
    }
    double least = 1e300;
    for (int k = 0; k < n_bad; ++k) {
        const int ml = -rng.uniform_int(2, 5);
        QSeries phi(ml, std::vector<Quaternion>(std::size_t(2 - ml)));
        for (Quaternion& q : phi.coeffs) q = rng.quaternion_box(0.5);
        phi.coeffs.back() = rng.quaternion_unit() * rng.uniform(0.3, 1.0);
        const int mh = rng.uniform_int(2, 5);
        QSeries psi(-1, std::vector<Quaternion>(std::size_t(mh + 2)));
        for (Quaternion& q : psi.coeffs) q = rng.quaternion_box(0.5);
        psi.coeffs.front() = rng.quaternion_unit() * rng.uniform(0.3, 1.0);
        const ProductReport r = toeplitz_product_test(phi, psi, section);
        least = std::min(least, r.defect_norm);
        t.expect(!r.is_toeplitz, "both-violating product still Toeplitz");
    }
    for (int k = 0; k < n_probe; ++k) {
        QSeries phi = random_series(rng, -3, 0, 1, 7, 0.5);
        phi.coeffs.back() = rng.quaternion_unit() * rng.uniform(0.3, 1.0);
        const int w = rng.uniform_int(1, 7);
        QSeries psi = random_series(rng, 0, 7 - w, w, w, 0.5);
        psi.coeffs.back() = rng.quaternion_unit() * rng.uniform(0.3, 1.0);
        t.expect(!zero_product_probe(phi, psi, section),
                 "zero section product with a nonzero plus factor");
    }
    return "if-branch max defect " + fnum(worst) + ", violating-pair min defect " + fnum(least) +
           ", " + std::to_string(n_probe) + " nonzero-product probes at n=" +
           std::to_string(section);
}

struct SmoothKernel {
    Quaternion qa, qb;
    double beta = 0.0, gamma = 0.0;

    Quaternion at(double u) const {
        return (qa + qb * std::cos(beta * u)) * std::exp(-gamma * u * u);
    }
};

CElement sample_kernel(const SmoothKernel& ker, const Quaternion& c, long k0, long k1, double du) {
    CElement f;
    f.c = c;
    f.du = du;
    f.u0 = double(k0) * du;
    f.samples.resize(std::size_t(k1 - k0 + 1));
    for (long k = k0; k <= k1; ++k) f.samples[std::size_t(k - k0)] = ker.at(double(k) * du);
    return f;
}

double mult_defect(const SmoothKernel& k1, const Quaternion& c1, long a1, long b1,
                   const SmoothKernel& k2, const Quaternion& c2, long a2, long b2, double du,
                   const TGrid& grid) {
    const SliceBasis B = SliceBasis::standard();
    const CElement f1 = sample_kernel(k1, c1, a1, b1, du);
    const CElement f2 = sample_kernel(k2, c2, a2, b2, du);
    const std::vector<Mat2C> wp = omega_c(cstar(f1, f2), B, grid);
    const std::vector<Mat2C> w1 = omega_c(f1, B, grid);
    const std::vector<Mat2C> w2 = omega_c(f2, B, grid);
    double d = 0.0;
    for (std::size_t i = 0; i < wp.size(); ++i)
        d = std::max(d, (wp[i] - w1[i] * w2[i]).op_norm());
    return d;
}

std::string suite_c_multiplicativity(Rng& rng, Tally& t, int ov) {
    const int n = scaled(10, ov);
    const TGrid grid{};
    const double coarse = 1.0 / 64.0;
    double cfit = 0.0, rlo = 1e300, rhi = 0.0;
    for (int k = 0; k < n; ++k) {
        SmoothKernel k1{rng.quaternion_box(0.7), rng.quaternion_box(0.7), rng.uniform(1.0, 4.0),
                        rng.uniform(0.2, 1.2)};
        SmoothKernel k2{rng.quaternion_box(0.7), rng.quaternion_box(0.7), rng.uniform(1.0, 4.0),
                        rng.uniform(0.2, 1.2)};
        const Quaternion c1 = rng.quaternion_box(0.7);
        const Quaternion c2 = rng.quaternion_box(0.7);
        const long a1 = -rng.uniform_int(0, 32), b1 = a1 + rng.uniform_int(48, 96);
        const long a2 = -rng.uniform_int(0, 32), b2 = a2 + rng.uniform_int(48, 96);
        const double d1 = mult_defect(k1, c1, a1, b1, k2, c2, a2, b2, coarse, grid);
        const double d2 =
            mult_defect(k1, c1, 2 * a1, 2 * b1, k2, c2, 2 * a2, 2 * b2, coarse / 2.0, grid);
        t.expect(d1 > 1e-12, "quadrature defect lost in roundoff");
        cfit = std::max(cfit, std::max(d1 / coarse, d2 / (coarse / 2.0)));
        const double ratio = d1 / d2;
        rlo = std::min(rlo, ratio);
        rhi = std::max(rhi, ratio);
        t.expect(ratio >= 1.6 && ratio <= 2.4, "halving the step did not halve the defect");
    }
    return "fitted C = " + fnum(cfit) + " (grid defect <= C du at du = 1/64 and 1/128); " +
           "halving ratios in [" + fnum(rlo) + ", " + fnum(rhi) + "]";
}

std::string suite_c_inversion(Rng& rng, Tally& t, int ov) {
    const int n = scaled(50, ov);
    const TGrid grid{};
    const double du = 1.0 / 32.0;
    double worst_sym = 0.0, worst_mass = 0.0;
    for (int k = 0; k < n; ++k) {
        const SliceBasis B = (k % 2 == 0) ? SliceBasis::standard() : rng.slice_basis();
        const int ns = rng.uniform_int(33, 97);
        const long k0 = rng.uniform_int(-48, 16);
        const Quaternion c = rng.quaternion_unit() * rng.uniform(0.9, 1.4);
        const Quaternion qa = rng.quaternion_box(1.0);
        const Quaternion qb = rng.quaternion_box(1.0);
        const int m = rng.uniform_int(1, 3);
        CElement f;
        f.c = c;
        f.du = du;
        f.u0 = double(k0) * du;
        f.samples.resize(std::size_t(ns));
        double mass = 0.0;
        for (int i = 0; i < ns; ++i) {
            const double s = std::sin(kPi * double(i) / double(ns - 1));
            const double w = s * s;
            f.samples[std::size_t(i)] =
                (qa + qb * std::cos(2.0 * kPi * double(m * i) / double(ns - 1))) * w;
            mass += f.samples[std::size_t(i)].norm() * du;
        }
        const double target = rng.uniform(0.25, 0.55) * c.norm();
        for (Quaternion& q : f.samples) q = q * (target / mass);

        try {
            const CVerdict v = is_invertible_c(f, B, grid);
            t.expect(v.invertible && v.mode == CertMode::NeumannCertificate,
                     "small-kernel element missed the Neumann certificate");
            const CElement g = invert_c(f, B, grid, 1e-7);
            const std::vector<Mat2C> wf = omega_c(f, B, grid);
            const std::vector<Mat2C> wg = omega_c(g, B, grid);
            double sd = 0.0;
            for (std::size_t i = 0; i < wf.size(); ++i)
                sd = std::max(sd, (wf[i] * wg[i] - Mat2C::identity()).op_norm());
            worst_sym = std::max(worst_sym, sd);
            t.expect(sd <= 1e-6, "symbol product defect above 1e-6");

            const CElement r = cstar(f, g);
            double rmass = (r.c - Quaternion(1.0)).norm();
            for (const Quaternion& q : r.samples) rmass += q.norm() * r.du;
            worst_mass = std::max(worst_mass, rmass);
            t.expect(rmass <= 1e-6, "star residual mass above 1e-6");

            bool same = true;
            double gap = 0.0;
            for (int b = 0; b < 5; ++b) {
                const CVerdict vb = is_invertible_c(f, rng.slice_basis(), grid);
                same = same && vb.invertible == v.invertible && vb.mode == v.mode;
                gap = std::max(gap, std::abs(vb.min_abs_det - v.min_abs_det));
            }
            t.expect(same, "verdict changes across slice bases");
            t.expect(gap <= 1e-9 * std::max(1.0, v.min_abs_det),
                     "certified bound changes across slice bases");
        } catch (const Error& e) {
            t.expect(false, std::string("continuous inversion threw: ") + e.what());
        }
    }
    return "max symbol defect " + fnum(worst_sym) + ", max star residual mass " +
           fnum(worst_mass) + " over " + std::to_string(n) + " certified inversions, 5 bases each";
}

std::string suite_slice_positivity(Tally& t) {
    const double du = 1.0 / 64.0;
    CElement f;
    f.c = Quaternion(2.0);
    f.du = du;
    f.u0 = -8.0;
    f.samples.resize(1025);
    for (std::size_t k = 0; k < f.samples.size(); ++k) {
        const double u = -8.0 + du * double(k);
        const double sgn = (u > 0.0) ? 1.0 : (u < 0.0 ? -1.0 : 0.0);
        f.samples[k] = Quaternion::e1() * (sgn * std::exp(-std::abs(u)));
    }
    const TGrid grid{};
    const SlicePositivity pos = is_strictly_positive_on_slice(f, SliceBasis::standard(), grid);
    t.expect(pos.hermitian, "e1/e2 slice: boundary values not Hermitian");
    t.expect(pos.positive, "e1/e2 slice: not strictly positive");
    const SliceBasis other(ImaginaryUnit(Quaternion::e2()), ImaginaryUnit(Quaternion::e3()));
    const SlicePositivity off = is_strictly_positive_on_slice(f, other, grid);
    t.expect(!off.hermitian, "e2/e3 slice: Hermitian defect missed");
    return "odd exponential kernel: positive on e1/e2 (min eig " + fnum(pos.min_eig) +
           "), Hermitian-ness fails on e2/e3";
}

CElement random_symbol_kernel(Rng& rng, double du, long k0, int ns, double cs, double ks) {
    CElement f;
    f.c = rng.quaternion_box(cs);
    f.du = du;
    f.u0 = double(k0) * du;
    f.samples.resize(std::size_t(ns));
    for (Quaternion& q : f.samples) q = rng.quaternion_box(ks);
    return f;
}

std::string suite_wiener_hopf(Rng& rng, Tally& t, int ov) {
    const int n = scaled(100, ov);
    const double du = 1.0 / 16.0;
    const int nf = 161;
    double worst = 0.0;
    for (int k = 0; k < n; ++k) {
        const SliceBasis B = (k % 2 == 0) ? SliceBasis::standard() : rng.slice_basis();
        CElement phi, psi;
        if (k % 2 == 0) {
            phi = random_symbol_kernel(rng, du, -rng.uniform_int(4, 24),
                                       rng.uniform_int(8, 40), 0.7, 0.4);
            const int np = rng.uniform_int(8, 40);
            psi = random_symbol_kernel(rng, du, 0, np, 0.7, 0.4);
        } else {
            const int nm = rng.uniform_int(8, 40);
            phi = random_symbol_kernel(rng, du, -(nm - 1), nm, 0.7, 0.4);
            psi = random_symbol_kernel(rng, du, -rng.uniform_int(0, 8),
                                       rng.uniform_int(8, 40), 0.7, 0.4);
        }
        HardyElement f{B, du, std::vector<cplx>(std::size_t(nf)),
                       std::vector<cplx>(std::size_t(nf))};
        for (cplx& z : f.samples1) z = rng.complex_box(0.7);
        for (cplx& z : f.samples2) z = rng.complex_box(0.7);
        try {
            const WhReport r = wh_product_test(phi, psi, f);
            worst = std::max(worst, r.defect);
            t.expect(r.is_wh, "if-branch operator product flagged");
            t.expect(r.defect <= 1e-8, "if-branch defect above 1e-8");
        } catch (const Error& e) {
            t.expect(false, std::string("operator product test threw: ") + e.what());
        }
    }

    const double step = 1.0 / 32.0;
    const std::size_t nb = 32;
    CElement cphi{Quaternion{}, 0.0, step, std::vector<Quaternion>(nb, Quaternion(1.0))};
    CElement cpsi{Quaternion{}, -double(nb) * step, step,
                  std::vector<Quaternion>(nb, Quaternion(1.0))};
    HardyElement cf{SliceBasis::standard(), step, std::vector<cplx>(160), std::vector<cplx>(160)};
    for (std::size_t k = 0; k < nb; ++k) cf.samples1[k] = cplx(1.0, 0.0);
    const WhReport cross = wh_product_test(cphi, cpsi, cf);
    t.expect(!cross.is_wh, "plus-times-minus counterexample flagged as exact");
    t.expect(cross.defect > 1e-2, "counterexample defect not visible");
    return "if-branch max defect " + fnum(worst) + " over " + std::to_string(n) +
           " instances; counterexample defect " + fnum(cross.defect);
}

} // namespace

SuiteResult run_suite(int index, std::uint64_t seed, int cases_override) {
    SuiteResult r;
    r.index = index;
    Rng rng(seed * 0x9e3779b97f4a7c15ull + std::uint64_t(index) * 0x100000001b3ull);
    Tally t;
    std::string detail;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        switch (index) {
            case 1:
                r.name = "discrete symbol multiplicativity";
                detail = suite_homomorphism(rng, t, cases_override);
                break;
            case 2:
                r.name = "determinant matches symmetrization";
                detail = suite_det_identity(rng, t, cases_override);
                break;
            case 3:
                r.name = "dominant-constant inversion and circle refusal";
                detail = suite_wiener_levy(rng, t, cases_override);
                break;
            case 4:
                r.name = "plus-subalgebra inversion";
                detail = suite_plus_algebra(rng, t, cases_override);
                break;
            case 5:
                r.name = "spectral factorization round trip";
                detail = suite_factorization(rng, t, cases_override);
                break;
            case 6:
                r.name = "zero classification";
                detail = suite_zero_classification(rng, t, cases_override);
                break;
            case 7:
                r.name = "toeplitz section products";
                detail = suite_toeplitz(rng, t, cases_override);
                break;
            case 8:
                r.name = "continuous symbol multiplicativity";
                detail = suite_c_multiplicativity(rng, t, cases_override);
                break;
            case 9:
                r.name = "continuous inversion certificates";
                detail = suite_c_inversion(rng, t, cases_override);
                break;
            case 10:
                r.name = "slice-dependent positivity";
                detail = suite_slice_positivity(t);
                break;
            case 11:
                r.name = "half-line operator products";
                detail = suite_wiener_hopf(rng, t, cases_override);
                break;
            default:
                throw DomainError("run_suite: index out of range");
        }
    } catch (const std::exception& e) {
        t.expect(false, std::string("unhandled exception: ") + e.what());
    }
    r.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();

    double budget = 0.0;
    if (index == 1 || index == 2) budget = 5.0;
    if (index == 3) budget = 30.0;
    if (index == 5) budget = 60.0;
    if (budget > 0.0 && cases_override == 0)
        t.expect(r.seconds < budget, "runtime budget of " + fnum(budget) + "s exceeded");

    r.checks = t.checks;
    r.failures = t.failures;
    r.passed = t.failures == 0;
    r.detail = detail;
    if (!t.first.empty()) r.detail += "; first failure: " + t.first;
    return r;
}

std::vector<SuiteResult> run_all_suites(std::uint64_t seed, int cases_override) {
    std::vector<SuiteResult> out;
    out.reserve(suite_count);
    for (int i = 1; i <= suite_count; ++i) out.push_back(run_suite(i, seed, cases_override));
    return out;
}

} // namespace qwiener
