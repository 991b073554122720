#include "qwiener/series.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "qwiener/errors.hpp"

namespace qwiener {

namespace {
constexpr double kPi = 3.14159265358979323846;
} // namespace

QSeries QSeries::trimmed(double tol) const {
    std::size_t lo = 0, hi = coeffs.size();
    while (lo < hi && coeffs[lo].norm() <= tol) ++lo;
    while (hi > lo && coeffs[hi - 1].norm() <= tol) --hi;
    if (lo == hi) return {};
    return {min_deg + int(lo),
            std::vector<Quaternion>(coeffs.begin() + long(lo), coeffs.begin() + long(hi))};
}

QSeries qs_add(const QSeries& f, const QSeries& g) {
    if (f.empty()) return g;
    if (g.empty()) return f;
    const int lo = std::min(f.min_deg, g.min_deg);
    const int hi = std::max(f.max_deg(), g.max_deg());
    QSeries out(lo, std::vector<Quaternion>(std::size_t(hi - lo + 1)));
    for (int u = lo; u <= hi; ++u) out.coeffs[std::size_t(u - lo)] = f.at(u) + g.at(u);
    return out;
}

QSeries qs_sub(const QSeries& f, const QSeries& g) { return qs_add(f, qs_scale(g, -1.0)); }

QSeries qs_scale(const QSeries& f, double s) {
    QSeries out = f;
    for (Quaternion& c : out.coeffs) c = c * s;
    return out;
}

QSeries qs_scale_left(const QSeries& f, const Quaternion& a) {
    QSeries out = f;
    for (Quaternion& c : out.coeffs) c = qmul(a, c);
    return out;
}

QSeries qs_scale_right(const QSeries& f, const Quaternion& a) {
    QSeries out = f;
    for (Quaternion& c : out.coeffs) c = qmul(c, a);
    return out;
}

QSeries star(const QSeries& f, const QSeries& g) {
    const QSeries a = f.trimmed();
    const QSeries b = g.trimmed();
    if (a.empty() || b.empty()) return {};
    QSeries out(a.min_deg + b.min_deg,
                std::vector<Quaternion>(a.coeffs.size() + b.coeffs.size() - 1));
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t k = 0; k < b.coeffs.size(); ++k)
            out.coeffs[i + k] += qmul(a.coeffs[i], b.coeffs[k]);
    return out;
}

Quaternion qpow(const Quaternion& p, int n) {
    if (n < 0) return qpow(qinv(p), -n);
    Quaternion base = p;
    Quaternion acc{1.0, 0.0, 0.0, 0.0};
    while (n > 0) {
        if (n & 1) acc = qmul(acc, base);
        base = qmul(base, base);
        n >>= 1;
    }
    return acc;
}

Quaternion eval_at(const QSeries& f, const Quaternion& p) {
    const QSeries t = f.trimmed();
    if (t.empty()) return {};
    if (t.min_deg < 0 && p.is_zero())
        throw DomainError("eval_at: zero point with negative powers present");
    Quaternion acc{};
    Quaternion pw{1.0, 0.0, 0.0, 0.0};
    for (int u = 0; u <= t.max_deg(); ++u) {
        if (u > 0) pw = qmul(pw, p);
        if (u >= t.min_deg) acc += qmul(pw, t.at(u));
    }
    if (t.min_deg < 0) {
        const Quaternion pi = qinv(p);
        Quaternion pwn{1.0, 0.0, 0.0, 0.0};
        for (int u = -1; u >= t.min_deg; --u) {
            pwn = qmul(pwn, pi);
            if (u <= t.max_deg()) acc += qmul(pwn, t.at(u));
        }
    }
    return acc;
}

StarIdentity pointwise_star_identity(const QSeries& f, const QSeries& g, const Quaternion& p) {
    StarIdentity out;
    out.lhs = eval_at(star(f, g), p);
    const Quaternion fp = eval_at(f, p);
    if (fp.is_zero()) {
        out.rhs = Quaternion{};
        return out;
    }
    const Quaternion moved = qmul(qmul(qinv(fp), p), fp);
    out.rhs = qmul(fp, eval_at(g, moved));
    return out;
}

QSeries conj_series(const QSeries& f) {
    QSeries out = f;
    for (Quaternion& c : out.coeffs) c = qconj(c);
    return out;
}

QSeries adjoint_series(const QSeries& f) {
    if (f.empty()) return {};
    QSeries out(-f.max_deg(), std::vector<Quaternion>(f.coeffs.size()));
    for (std::size_t k = 0; k < f.coeffs.size(); ++k)
        out.coeffs[f.coeffs.size() - 1 - k] = qconj(f.coeffs[k]);
    return out;
}

QSeries symmetrize(const QSeries& f) {
    QSeries n = star(f, conj_series(f));
    double residue = 0.0;
    for (const Quaternion& c : n.coeffs) residue = std::max(residue, c.vec_norm());
    const double fn = f.norm();
    if (residue > 1e-13 * fn * fn)
        throw StructureError("symmetrize: imaginary residue in a product that must be real",
                             residue);
    for (Quaternion& c : n.coeffs) {
        c.x1 = 0.0;
        c.x2 = 0.0;
        c.x3 = 0.0;
    }
    return n;
}

Mat2Laurent omega(const QSeries& f, const SliceBasis& basis) {
    Mat2Laurent out(f.min_deg, std::vector<Mat2C>(f.coeffs.size()));
    for (std::size_t k = 0; k < f.coeffs.size(); ++k) out.coeffs[k] = chi(f.coeffs[k], basis);
    return out;
}

QSeries omega_inv(const Mat2Laurent& a, const SliceBasis& basis, double tau_struct) {
    QSeries out(a.min_deg, std::vector<Quaternion>(a.coeffs.size()));
    for (std::size_t k = 0; k < a.coeffs.size(); ++k) {
        try {
            out.coeffs[k] = chi_inv(a.coeffs[k], basis, tau_struct);
        } catch (const StructureError& e) {
            throw StructureError("coefficient at degree " +
                                     std::to_string(a.min_deg + int(k)) +
                                     " lacks the quaternionic block structure",
                                 e.defect);
        }
    }
    return out.trimmed();
}

CLaurent det_omega(const QSeries& f, const SliceBasis& basis) {
    const QSeries n = symmetrize(f);
    CLaurent restricted(n.min_deg, std::vector<cplx>(n.coeffs.size()));
    for (std::size_t k = 0; k < n.coeffs.size(); ++k)
        restricted.coeffs[k] = cplx(n.coeffs[k].x0, 0.0);
    const CLaurent direct = mat_det(omega(f, basis));
    const CLaurent diff = cl_sub(direct, restricted);
    double defect = 0.0;
    for (const cplx& c : diff.coeffs) defect = std::max(defect, std::abs(c));
    const double fn = f.norm();
    if (defect > 1e-12 * std::max(1.0, fn * fn))
        throw StructureError("det_omega: determinant disagrees with the symmetrization", defect);
    return restricted.trimmed();
}

InvertibilityVerdict is_invertible(const QSeries& f, const SliceBasis& basis, double tol) {
    const CircleMinimum cm = circle_min_abs(det_omega(f, basis));
    InvertibilityVerdict out;
    out.invertible = cm.certificate > tol;
    out.min_abs_det = cm.grid_min;
    out.certificate = cm.certificate;
    out.witness_theta = cm.witness_theta;
    return out;
}

namespace {

QSeries lift_real(const CLaurent& r) {
    QSeries out(r.min_deg, std::vector<Quaternion>(r.coeffs.size()));
    for (std::size_t k = 0; k < r.coeffs.size(); ++k)
        out.coeffs[k] = Quaternion{r.coeffs[k].real(), 0.0, 0.0, 0.0};
    return out;
}

// Roots of a real-coefficient polynomial sum a_k z^k via the companion
// matrix; a must be trimmed so the leading coefficient is nonzero.
std::vector<cplx> real_poly_roots(const std::vector<double>& a) {
    const int d = int(a.size()) - 1;
    std::vector<cplx> roots;
    if (d < 1) return roots;
    Eigen::MatrixXd comp = Eigen::MatrixXd::Zero(d, d);
    for (int r = 1; r < d; ++r) comp(r, r - 1) = 1.0;
    for (int r = 0; r < d; ++r) comp(r, d - 1) = -a[std::size_t(r)] / a[std::size_t(d)];
    Eigen::EigenSolver<Eigen::MatrixXd> es(comp, false);
    roots.reserve(std::size_t(d));
    for (int k = 0; k < d; ++k)
        roots.push_back(cplx(es.eigenvalues()[k].real(), es.eigenvalues()[k].imag()));
    return roots;
}

std::vector<double> real_poly_of(const CLaurent& d) {
    const int hi = d.max_deg();
    const int lo = std::min(d.min_deg, 0);
    std::vector<double> a(std::size_t(hi - lo + 1), 0.0);
    double amax = 0.0;
    for (int u = lo; u <= hi; ++u) {
        a[std::size_t(u - lo)] = d.at(u).real();
        amax = std::max(amax, std::abs(a[std::size_t(u - lo)]));
    }
    while (a.size() > 1 && std::abs(a.back()) <= 1e-14 * amax) a.pop_back();
    return a;
}

} // namespace

QSeries invert(const QSeries& f, const SliceBasis& basis, int out_window, double tol,
               double eps_inv) {
    const QSeries t = f.trimmed();
    if (t.empty()) throw NotInvertibleError("invert: zero series", 0.0, 0.0);
    const CLaurent d = det_omega(t, basis);
    const CircleMinimum cm = circle_min_abs(d);
    if (!(cm.certificate > tol))
        throw NotInvertibleError("invert: determinant reaches zero on the circle", cm.grid_min,
                                 cm.witness_theta);
    const QSeries fc = conj_series(t);
    const QSeries one = QSeries::constant({1.0, 0.0, 0.0, 0.0});
    int w = out_window > 0 ? out_window
                           : 4 * std::max({std::abs(d.min_deg), std::abs(d.max_deg()), 1});
    const int cap = out_window > 0 ? out_window : (1 << 14);
    double res = std::numeric_limits<double>::infinity();
    while (true) {
        bool windowed = false;
        try {
            const ScalarInverse r = scalar_invert_real(d, w, tol, eps_inv);
            QSeries g = star(fc, lift_real(r.series));
            double gmax = 0.0;
            for (const Quaternion& c : g.coeffs) gmax = std::max(gmax, c.norm());
            g = g.trimmed(1e-13 * gmax);
            res = qs_sub(star(t, g), one).norm();
            if (res <= eps_inv) return g;
        } catch (const ConvergenceError& e) {
            windowed = true;
            res = e.residual;
        }
        if (w >= cap)
            throw ConvergenceError(windowed ? "invert: window exhausted before the target"
                                            : "invert: residual above target at the window cap",
                                   res);
        w = std::min(cap, 2 * w);
    }
}

ZeroReport classify_zeros(const QSeries& f, const SliceBasis& basis, double tol) {
    const QSeries t = f.trimmed();
    if (t.empty()) throw ClassificationError("classify_zeros: zero series vanishes everywhere");
    const CLaurent d = det_omega(t, basis);
    const std::vector<cplx> roots = real_poly_roots(real_poly_of(d));

    struct Cand {
        double theta;
        double r;
    };
    std::vector<Cand> cands;
    for (const cplx& z : roots) {
        const double r = std::abs(z);
        if (std::abs(r - 1.0) > 1e-4) continue;
        cands.push_back({std::atan2(std::abs(z.imag()), z.real()), r});
    }
    std::sort(cands.begin(), cands.end(),
              [](const Cand& x, const Cand& y) { return x.theta < y.theta; });

    ZeroReport report;
    const double fn = t.norm();
    std::size_t i = 0;
    while (i < cands.size()) {
        std::size_t j = i + 1;
        double ts = cands[i].theta, rs = cands[i].r;
        while (j < cands.size() && cands[j].theta - cands[j - 1].theta <= 5e-5) {
            ts += cands[j].theta;
            rs += cands[j].r;
            ++j;
        }
        const double theta = ts / double(j - i);
        const double radius = rs / double(j - i);
        i = j;
        if (std::abs(radius - 1.0) > tol) continue;

        Quaternion s{}, tq{};
        for (int u = t.min_deg; u <= t.max_deg(); ++u) {
            s += t.at(u) * std::cos(double(u) * theta);
            tq += t.at(u) * std::sin(double(u) * theta);
        }
        ZeroEntry entry;
        entry.theta = theta;
        if (s.norm() <= tol * fn && tq.norm() <= tol * fn) {
            entry.kind = ZeroKind::Spherical;
            entry.residual = std::max(s.norm(), tq.norm());
        } else if (tq.norm() > tol * fn) {
            const Quaternion unit_raw = qmul(-s, qinv(tq));
            const double defect = (qmul(unit_raw, unit_raw) + Quaternion{1, 0, 0, 0}).norm();
            if (defect > tol)
                throw ClassificationError(
                    "classify_zeros: candidate unit fails the square test, defect " +
                    std::to_string(defect));
            Quaternion unit{0.0, unit_raw.x1, unit_raw.x2, unit_raw.x3};
            unit = unit / unit.vec_norm();
            entry.kind = ZeroKind::Isolated;
            entry.unit = unit;
            const Quaternion point =
                Quaternion{std::cos(theta), 0, 0, 0} + unit * std::sin(theta);
            entry.residual = eval_at(t, point).norm();
        } else {
            throw ClassificationError(
                "classify_zeros: determinant vanishes but the sine part is degenerate");
        }
        report.push_back(entry);
    }
    return report;
}

PlusVerdict is_invertible_plus(const QSeries& f, const SliceBasis& basis, double tol) {
    const QSeries t = f.trimmed();
    if (t.empty()) return {};
    if (t.min_deg < 0) throw NotPlusError("is_invertible_plus: negative-degree support");
    const CLaurent d = det_omega(t, basis);
    const std::vector<double> a = real_poly_of(d);
    PlusVerdict out;
    if (a.size() <= 1) {
        out.invertible = std::abs(a.empty() ? 0.0 : a[0]) > 0.0;
        out.min_root_modulus = std::numeric_limits<double>::infinity();
        return out;
    }
    const std::vector<cplx> roots = real_poly_roots(a);
    double mn = std::numeric_limits<double>::infinity();
    double th = 0.0;
    for (const cplx& z : roots) {
        const double r = std::abs(z);
        if (r < mn) {
            mn = r;
            th = std::atan2(std::abs(z.imag()), z.real());
        }
    }
    out.min_root_modulus = mn;
    out.root_theta = th;
    out.invertible = mn > 1.0 + tol;
    return out;
}

QSeries invert_plus(const QSeries& f, const SliceBasis& basis, int out_window, double tol,
                    double eps_inv) {
    const QSeries t = f.trimmed();
    if (t.empty()) throw NotInvertibleError("invert_plus: zero series", 0.0, 0.0);
    if (t.min_deg < 0) throw NotPlusError("invert_plus: negative-degree support");
    const PlusVerdict v = is_invertible_plus(t, basis, tol);
    if (!v.invertible)
        throw NotInvertibleError("invert_plus: determinant root inside the closed disc",
                                 v.min_root_modulus, v.root_theta);
    const CLaurent d = det_omega(t, basis);
    const int cap = out_window > 0 ? out_window : (1 << 16);
    const ScalarInverse r = scalar_plus_reciprocal(d, eps_inv, cap);
    QSeries g = star(conj_series(t), lift_real(r.series));
    double gmax = 0.0;
    for (const Quaternion& c : g.coeffs) gmax = std::max(gmax, c.norm());
    g = g.trimmed(1e-13 * gmax);
    const QSeries one = QSeries::constant({1.0, 0.0, 0.0, 0.0});
    const double res = qs_sub(star(t, g), one).norm();
    if (res > eps_inv) throw ConvergenceError("invert_plus: residual above target", res);
    return g;
}

PositivityVerdict is_strictly_positive(const QSeries& f, const SliceBasis& basis, double tol) {
    PositivityVerdict out;
    const QSeries t = f.trimmed();
    if (t.empty()) {
        out.hermitian = true;
        return out;
    }
    double hd = 0.0;
    for (int u = t.min_deg; u <= t.max_deg(); ++u)
        hd = std::max(hd, (t.at(-u) - qconj(t.at(u))).norm());
    out.hermitian = hd <= 1e-12 * std::max(1.0, t.norm());
    if (!out.hermitian) return out;
    const CircleMinimum cm = circle_min_eig(omega(t, basis));
    out.min_eig = cm.grid_min;
    out.certificate = cm.certificate;
    out.witness_theta = cm.witness_theta;
    out.positive = cm.certificate > tol;
    return out;
}

QSeries spectral_factorize(const QSeries& f, const SliceBasis& basis, const SpectralOptions& opt) {
    const QSeries t = f.trimmed();
    const PositivityVerdict v = is_strictly_positive(t, basis, opt.pos_tol);
    if (!v.positive)
        throw NotPositiveError(v.hermitian
                                   ? "spectral_factorize: symbol not positive on the circle"
                                   : "spectral_factorize: coefficients not conjugate-symmetric",
                               v.min_eig, v.witness_theta);
    FactorOptions fo;
    fo.eps_fact = opt.eps_fact / 4.0;
    fo.max_section = opt.max_section;
    fo.pos_tol = opt.pos_tol;
    const MatFactor mf = mat_spectral_factorize(omega(t, basis), fo);

    double jd = 0.0;
    for (const Mat2C& c : mf.factor.coeffs) jd = std::max(jd, j1_defect(c));
    if (jd > opt.struct_tol * std::max(1.0, mf.factor.norm()))
        throw StructureError("spectral_factorize: factor strays from the quaternionic structure",
                             jd);
    Mat2Laurent avg = mf.factor;
    for (Mat2C& c : avg.coeffs) c = (c + j1_reflect(c)) * 0.5;

    const QSeries fp = omega_inv(avg, basis, 1e-9);
    const double res = qs_sub(t, star(fp, adjoint_series(fp))).norm();
    if (res > opt.eps_fact)
        throw ConvergenceError("spectral_factorize: residual above target", res);
    return fp;
}

} // namespace qwiener
