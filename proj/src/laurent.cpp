#include "qwiener/laurent.hpp"

#include <algorithm>
#include <cmath>

#include "qwiener/fft.hpp"

namespace qwiener {

namespace {

constexpr double kPi = 3.14159265358979323846;

cplx ipow(cplx z, int k) {
    if (k < 0) {
        if (z == cplx(0.0)) throw DomainError("ipow: negative power of zero");
        return ipow(cplx(1.0) / z, -k);
    }
    cplx r(1.0);
    while (k > 0) {
        if (k & 1) r *= z;
        z *= z;
        k >>= 1;
    }
    return r;
}

std::size_t wrap_mod(int u, int n) {
    int r = u % n;
    if (r < 0) r += n;
    return std::size_t(r);
}

} // namespace

CLaurent cl_add(const CLaurent& f, const CLaurent& g) {
    if (f.empty()) return g;
    if (g.empty()) return f;
    const int lo = std::min(f.min_deg, g.min_deg);
    const int hi = std::max(f.max_deg(), g.max_deg());
    CLaurent out{lo, std::vector<cplx>(std::size_t(hi - lo + 1), cplx(0.0))};
    for (int u = lo; u <= hi; ++u) out.coeffs[std::size_t(u - lo)] = f.at(u) + g.at(u);
    return out;
}

CLaurent cl_sub(const CLaurent& f, const CLaurent& g) { return cl_add(f, cl_scale(g, -1.0)); }

CLaurent cl_scale(const CLaurent& f, cplx s) {
    CLaurent out = f;
    for (cplx& c : out.coeffs) c *= s;
    return out;
}

CLaurent cl_mul(const CLaurent& f, const CLaurent& g) {
    if (f.empty() || g.empty()) return {};
    CLaurent out{f.min_deg + g.min_deg,
                 std::vector<cplx>(f.coeffs.size() + g.coeffs.size() - 1, cplx(0.0))};
    for (std::size_t a = 0; a < f.coeffs.size(); ++a)
        for (std::size_t b = 0; b < g.coeffs.size(); ++b) out.coeffs[a + b] += f.coeffs[a] * g.coeffs[b];
    return out;
}

cplx cl_eval(const CLaurent& f, cplx z) {
    if (f.empty()) return 0.0;
    cplx acc(0.0);
    for (std::size_t k = f.coeffs.size(); k-- > 0;) acc = acc * z + f.coeffs[k];
    return acc * ipow(z, f.min_deg);
}

std::vector<cplx> circle_sample(const CLaurent& f, int n) {
    if (n <= 0 || !is_pow2(std::size_t(n))) throw DomainError("circle_sample: n must be a power of two");
    std::vector<cplx> bins(std::size_t(n), cplx(0.0));
    for (std::size_t k = 0; k < f.coeffs.size(); ++k)
        bins[wrap_mod(f.min_deg + int(k), n)] += f.coeffs[k];
    fft_pow2(bins, true);
    return bins;
}

CLaurent circle_interp(const std::vector<cplx>& samples, int min_deg, int max_deg,
                       double tau_alias) {
    const int n = int(samples.size());
    if (n <= 0 || !is_pow2(std::size_t(n))) throw DomainError("circle_interp: size must be a power of two");
    if (max_deg < min_deg) throw DomainError("circle_interp: empty window");
    if (max_deg - min_deg + 1 > n) throw SizeError("circle_interp: window wider than sample grid");
    std::vector<cplx> bins = samples;
    fft_pow2(bins, false);
    for (cplx& b : bins) b /= double(n);

    double total = 0.0;
    for (const cplx& b : bins) total += std::abs(b);
    CLaurent out{min_deg, std::vector<cplx>(std::size_t(max_deg - min_deg + 1), cplx(0.0))};
    double used = 0.0;
    for (int u = min_deg; u <= max_deg; ++u) {
        const cplx c = bins[wrap_mod(u, n)];
        out.coeffs[std::size_t(u - min_deg)] = c;
        used += std::abs(c);
    }
    const double leaked = total - used;
    if (leaked > tau_alias * (total + 1e-300))
        throw AliasError("circle_interp: sampled mass outside the requested window", leaked / (total + 1e-300));
    return out;
}

CircleMinimum circle_min_abs(const CLaurent& f, int min_grid) {
    const CLaurent t = f.trimmed();
    CircleMinimum out;
    if (t.empty()) return out;
    const int m = std::max(std::abs(t.min_deg), std::abs(t.max_deg()));
    const int n = int(next_pow2(std::size_t(std::max(min_grid, 16 * (2 * m + 1)))));
    const std::vector<cplx> s = circle_sample(t, n);
    double mn = std::abs(s[0]);
    int arg = 0;
    for (int k = 1; k < n; ++k) {
        const double v = std::abs(s[std::size_t(k)]);
        if (v < mn) {
            mn = v;
            arg = k;
        }
    }
    double lip = 0.0;
    for (int u = t.min_deg; u <= t.max_deg(); ++u) lip += std::abs(u) * std::abs(t.at(u));
    out.grid_min = mn;
    out.certificate = mn - lip * kPi / double(n);
    out.witness_theta = 2.0 * kPi * double(arg) / double(n);
    out.grid_size = n;
    return out;
}

ScalarInverse scalar_invert_real(const CLaurent& n_series, int out_window, double tol,
                                 double eps_inv) {
    const CLaurent f = n_series.trimmed();
    if (f.empty()) throw NotInvertibleError("scalar_invert_real: zero series", 0.0, 0.0);
    if (out_window < 0) throw DomainError("scalar_invert_real: negative window");
    double im = 0.0;
    for (const cplx& c : f.coeffs) im = std::max(im, std::abs(c.imag()));
    if (im > 1e-12 * (1.0 + f.norm()))
        throw DomainError("scalar_invert_real: coefficients are not real");

    const CircleMinimum cm = circle_min_abs(f);
    if (cm.grid_min <= tol)
        throw NotInvertibleError("scalar_invert_real: symbol vanishes on the circle", cm.grid_min,
                                 cm.witness_theta);

    const int m = std::max(std::abs(f.min_deg), std::abs(f.max_deg()));
    const CLaurent one = CLaurent::constant(1.0);
    int n = int(next_pow2(std::size_t(std::max({cm.grid_size, 4 * (2 * out_window + 1), 4 * (2 * m + 1)}))));
    double best = -1.0, prev = -1.0;
    ScalarInverse result;
    while (n <= (1 << 20)) {
        std::vector<cplx> s = circle_sample(f, n);
        for (cplx& v : s) v = cplx(1.0) / v;
        std::vector<cplx> bins = s;
        fft_pow2(bins, false);
        CLaurent r{-out_window, std::vector<cplx>(std::size_t(2 * out_window + 1), cplx(0.0))};
        for (int u = -out_window; u <= out_window; ++u)
            r.coeffs[std::size_t(u + out_window)] = bins[wrap_mod(u, n)] / double(n);
        for (cplx& c : r.coeffs) c = cplx(c.real(), 0.0);
        const double residual = cl_sub(cl_mul(f, r), one).norm();
        if (best < 0.0 || residual < best) {
            best = residual;
            result = {r.trimmed(), residual, cm.grid_min, cm.witness_theta};
        }
        if (residual <= eps_inv) return result;
        // refining the grid no longer helps: the window itself is the floor
        if (prev >= 0.0 && residual > 0.5 * prev) break;
        prev = residual;
        n *= 2;
    }
    throw ConvergenceError("scalar_invert_real: window too narrow for the reciprocal", best);
}

ScalarInverse scalar_plus_reciprocal(const CLaurent& n_series, double eps_inv, int max_window) {
    const CLaurent f = n_series.trimmed();
    if (f.empty() || f.min_deg != 0)
        throw DomainError("scalar_plus_reciprocal: series must start at degree zero");
    double im = 0.0;
    for (const cplx& c : f.coeffs) im = std::max(im, std::abs(c.imag()));
    if (im > 1e-12 * (1.0 + f.norm()))
        throw DomainError("scalar_plus_reciprocal: coefficients are not real");
    const double n0 = f.coeffs[0].real();
    if (std::abs(n0) <= 1e-300)
        throw NotInvertibleError("scalar_plus_reciprocal: zero constant term", 0.0, 0.0);

    const int deg = f.max_deg();
    const CLaurent one = CLaurent::constant(1.0);
    int window = std::max(4 * std::max(deg, 1), 16);
    double best = -1.0;
    ScalarInverse result;
    while (window <= max_window) {
        std::vector<cplx> r(std::size_t(window + 1), cplx(0.0));
        r[0] = 1.0 / n0;
        for (int k = 1; k <= window; ++k) {
            cplx acc(0.0);
            for (int j = 1; j <= std::min(k, deg); ++j) acc += f.at(j) * r[std::size_t(k - j)];
            r[std::size_t(k)] = -acc / n0;
        }
        CLaurent rr{0, std::move(r)};
        const double residual = cl_sub(cl_mul(f, rr), one).norm();
        if (best < 0.0 || residual < best) {
            best = residual;
            result = {rr.trimmed(), residual, std::abs(n0), 0.0};
        }
        if (residual <= eps_inv) return result;
        window *= 2;
    }
    throw ConvergenceError("scalar_plus_reciprocal: reciprocal tail does not decay", best);
}

Mat2Laurent Mat2Laurent::trimmed(double tol) const {
    std::size_t lo = 0, hi = coeffs.size();
    while (lo < hi && coeffs[lo].op_norm() <= tol) ++lo;
    while (hi > lo && coeffs[hi - 1].op_norm() <= tol) --hi;
    if (lo == hi) return {};
    return {min_deg + int(lo), std::vector<Mat2C>(coeffs.begin() + long(lo), coeffs.begin() + long(hi))};
}

Mat2Laurent Mat2Laurent::tilde() const {
    Mat2Laurent out{-max_deg(), std::vector<Mat2C>(coeffs.size())};
    for (std::size_t k = 0; k < coeffs.size(); ++k)
        out.coeffs[coeffs.size() - 1 - k] = coeffs[k].adjoint();
    return out;
}

CLaurent Mat2Laurent::entry(int r, int c) const {
    CLaurent out{min_deg, std::vector<cplx>(coeffs.size())};
    for (std::size_t k = 0; k < coeffs.size(); ++k) {
        const Mat2C& v = coeffs[k];
        out.coeffs[k] = (r == 1 && c == 1) ? v.m11 : (r == 1 && c == 2) ? v.m12
                        : (r == 2 && c == 1) ? v.m21 : v.m22;
    }
    return out;
}

Mat2Laurent mat_add(const Mat2Laurent& a, const Mat2Laurent& b) {
    if (a.empty()) return b;
    if (b.empty()) return a;
    const int lo = std::min(a.min_deg, b.min_deg);
    const int hi = std::max(a.max_deg(), b.max_deg());
    Mat2Laurent out{lo, std::vector<Mat2C>(std::size_t(hi - lo + 1))};
    for (int u = lo; u <= hi; ++u) out.coeffs[std::size_t(u - lo)] = a.at(u) + b.at(u);
    return out;
}

Mat2Laurent mat_sub(const Mat2Laurent& a, const Mat2Laurent& b) {
    if (b.empty()) return a;
    Mat2Laurent nb = b;
    for (Mat2C& c : nb.coeffs) c = -c;
    return mat_add(a, nb);
}

Mat2Laurent mat_mul(const Mat2Laurent& a, const Mat2Laurent& b) {
    if (a.empty() || b.empty()) return {};
    Mat2Laurent out{a.min_deg + b.min_deg, std::vector<Mat2C>(a.coeffs.size() + b.coeffs.size() - 1)};
    for (std::size_t i = 0; i < a.coeffs.size(); ++i)
        for (std::size_t j = 0; j < b.coeffs.size(); ++j) out.coeffs[i + j] += a.coeffs[i] * b.coeffs[j];
    return out;
}

Mat2C mat_eval(const Mat2Laurent& a, cplx z) {
    Mat2C acc = Mat2C::zero();
    for (std::size_t k = a.coeffs.size(); k-- > 0;) acc = acc * z + a.coeffs[k];
    return acc * ipow(z, a.min_deg);
}

CLaurent mat_det(const Mat2Laurent& a) {
    return cl_sub(cl_mul(a.entry(1, 1), a.entry(2, 2)), cl_mul(a.entry(1, 2), a.entry(2, 1)));
}

Mat2Laurent mat_from_entries(const CLaurent& e11, const CLaurent& e12, const CLaurent& e21,
                             const CLaurent& e22) {
    int lo = 0, hi = -1;
    bool any = false;
    for (const CLaurent* e : {&e11, &e12, &e21, &e22}) {
        if (e->empty()) continue;
        if (!any) {
            lo = e->min_deg;
            hi = e->max_deg();
            any = true;
        } else {
            lo = std::min(lo, e->min_deg);
            hi = std::max(hi, e->max_deg());
        }
    }
    if (!any) return {};
    Mat2Laurent out{lo, std::vector<Mat2C>(std::size_t(hi - lo + 1))};
    for (int u = lo; u <= hi; ++u)
        out.coeffs[std::size_t(u - lo)] = Mat2C{e11.at(u), e12.at(u), e21.at(u), e22.at(u)};
    return out;
}

CircleMinimum circle_min_eig(const Mat2Laurent& a, int min_grid) {
    const Mat2Laurent t = a.trimmed();
    CircleMinimum out;
    if (t.empty()) return out;
    const int m = std::max(std::abs(t.min_deg), std::abs(t.max_deg()));
    const int n = int(next_pow2(std::size_t(std::max(min_grid, 16 * (2 * m + 1)))));
    std::vector<std::vector<cplx>> s;
    s.reserve(4);
    for (int r = 1; r <= 2; ++r)
        for (int c = 1; c <= 2; ++c) s.push_back(circle_sample(t.entry(r, c), n));
    double mn = 0.0;
    int arg = 0;
    for (int k = 0; k < n; ++k) {
        const Mat2C v{s[0][std::size_t(k)], s[1][std::size_t(k)], s[2][std::size_t(k)], s[3][std::size_t(k)]};
        double lo, hi;
        v.hermitian_eigenvalues(lo, hi);
        if (k == 0 || lo < mn) {
            mn = lo;
            arg = k;
        }
    }
    double lip = 0.0;
    for (int u = t.min_deg; u <= t.max_deg(); ++u) lip += std::abs(u) * t.at(u).op_norm();
    out.grid_min = mn;
    out.certificate = mn - lip * kPi / double(n);
    out.witness_theta = 2.0 * kPi * double(arg) / double(n);
    out.grid_size = n;
    return out;
}

int winding_number(const std::vector<cplx>& samples) {
    const std::size_t n = samples.size();
    if (n < 8) throw DomainError("winding_number: too few samples");
    double total = 0.0;
    for (std::size_t k = 0; k < n; ++k) {
        const cplx z1 = samples[k];
        const cplx z2 = samples[(k + 1) % n];
        if (std::abs(z1) == 0.0 || std::abs(z2) == 0.0)
            throw DomainError("winding_number: sample hits zero");
        const double step = std::arg(z2 / z1);
        if (std::abs(step) > 2.8) throw DomainError("winding_number: phase step unresolved");
        total += step;
    }
    return int(std::lround(total / (2.0 * kPi)));
}

MatInverse mat_invert(const Mat2Laurent& a, int out_window, double tol, double eps_inv) {
    const Mat2Laurent f = a.trimmed();
    if (f.empty()) throw NotInvertibleError("mat_invert: zero symbol", 0.0, 0.0);
    const CLaurent det = mat_det(f).trimmed();
    const CircleMinimum cm = circle_min_abs(det);
    if (cm.grid_min <= tol)
        throw NotInvertibleError("mat_invert: determinant vanishes on the circle", cm.grid_min,
                                 cm.witness_theta);
    const int m = std::max(std::abs(f.min_deg), std::abs(f.max_deg()));
    const Mat2Laurent ident = Mat2Laurent::constant(Mat2C::identity());

    double im = 0.0;
    for (const cplx& c : det.coeffs) im = std::max(im, std::abs(c.imag()));
    if (im <= 1e-11 * (1.0 + det.norm())) {
        CLaurent det_real = det;
        for (cplx& c : det_real.coeffs) c = cplx(c.real(), 0.0);
        int w = std::max(out_window, 4 * std::max(2 * m, 1));
        while (true) {
            ScalarInverse r;
            try {
                r = scalar_invert_real(det_real, w, tol, eps_inv);
            } catch (const ConvergenceError&) {
                if (w > (1 << 14)) throw;
                w *= 2;
                continue;
            }
            // adj(f) entries convolved with the reciprocal of the determinant
            const Mat2Laurent adj = mat_from_entries(f.entry(2, 2), cl_scale(f.entry(1, 2), -1.0),
                                                     cl_scale(f.entry(2, 1), -1.0), f.entry(1, 1));
            Mat2Laurent g{adj.min_deg + r.series.min_deg,
                          std::vector<Mat2C>(adj.coeffs.size() + r.series.coeffs.size() - 1)};
            for (std::size_t i = 0; i < adj.coeffs.size(); ++i)
                for (std::size_t j = 0; j < r.series.coeffs.size(); ++j)
                    g.coeffs[i + j] += adj.coeffs[i] * r.series.coeffs[j];
            const double residual = mat_sub(mat_mul(f, g), ident).norm();
            if (residual <= eps_inv || w > (1 << 14))
                return {g.trimmed(1e-300), residual, cm.grid_min, cm.witness_theta};
            w *= 2;
        }
    }

    // complex determinant: samplewise inversion, then interpolation
    int w = std::max(out_window, 4 * std::max(2 * m, 1));
    int n = int(next_pow2(std::size_t(std::max(cm.grid_size, 4 * (2 * w + 1)))));
    double best = -1.0;
    MatInverse result;
    for (int iter = 0; iter < 24; ++iter) {
        std::vector<std::vector<cplx>> s;
        for (int r = 1; r <= 2; ++r)
            for (int c = 1; c <= 2; ++c) s.push_back(circle_sample(f.entry(r, c), n));
        std::vector<std::vector<cplx>> inv(4, std::vector<cplx>(std::size_t(n)));
        for (int k = 0; k < n; ++k) {
            const Mat2C v{s[0][std::size_t(k)], s[1][std::size_t(k)], s[2][std::size_t(k)],
                          s[3][std::size_t(k)]};
            const Mat2C vi = v.inverse();
            inv[0][std::size_t(k)] = vi.m11;
            inv[1][std::size_t(k)] = vi.m12;
            inv[2][std::size_t(k)] = vi.m21;
            inv[3][std::size_t(k)] = vi.m22;
        }
        std::vector<CLaurent> e;
        for (int q = 0; q < 4; ++q) {
            fft_pow2(inv[std::size_t(q)], false);
            CLaurent ce{-w, std::vector<cplx>(std::size_t(2 * w + 1))};
            for (int u = -w; u <= w; ++u)
                ce.coeffs[std::size_t(u + w)] = inv[std::size_t(q)][wrap_mod(u, n)] / double(n);
            e.push_back(ce);
        }
        const Mat2Laurent g = mat_from_entries(e[0], e[1], e[2], e[3]);
        const double residual = mat_sub(mat_mul(f, g), ident).norm();
        if (best < 0.0 || residual < best) {
            best = residual;
            result = {g.trimmed(1e-300), residual, cm.grid_min, cm.witness_theta};
        }
        if (residual <= eps_inv) return result;
        if (iter % 2 == 0 && n < (1 << 18))
            n *= 2;
        else if (w < (1 << 14)) {
            w *= 2;
            n = std::max(n, int(next_pow2(std::size_t(4 * (2 * w + 1)))));
        }
    }
    throw ConvergenceError("mat_invert: residual target not reached", best);
}

namespace {

// Lower-triangular Cholesky factor of a Hermitian positive definite 2x2 block.
Mat2C chol2(const Mat2C& s) {
    const double a2 = s.m11.real();
    if (!(a2 > 0.0)) throw ConvergenceError("block Cholesky breakdown", a2);
    const double a = std::sqrt(a2);
    const cplx l21 = s.m21 / a;
    const double d2 = s.m22.real() - std::norm(l21);
    if (!(d2 > 0.0)) throw ConvergenceError("block Cholesky breakdown", d2);
    return {cplx(a), cplx(0.0), l21, cplx(std::sqrt(d2))};
}

Mat2C inv_upper(const Mat2C& u) {
    return {cplx(1.0) / u.m11, -u.m12 / (u.m11 * u.m22), cplx(0.0), cplx(1.0) / u.m22};
}

} // namespace

MatFactor mat_spectral_factorize(const Mat2Laurent& w, const FactorOptions& opt) {
    const Mat2Laurent t = w.trimmed();
    if (t.empty()) throw NotPositiveError("mat_spectral_factorize: zero symbol", 0.0, 0.0);
    const int m = std::max(std::abs(t.min_deg), std::abs(t.max_deg()));
    double herm_defect = 0.0;
    for (int u = 0; u <= m; ++u)
        herm_defect = std::max(herm_defect, (t.at(-u) - t.at(u).adjoint()).op_norm());
    if (herm_defect > 1e-10 * (1.0 + t.norm()))
        throw NotPositiveError("mat_spectral_factorize: symbol is not Hermitian-symmetric",
                               herm_defect, 0.0);
    std::vector<Mat2C> c(std::size_t(m + 1));
    for (int u = 0; u <= m; ++u) c[std::size_t(u)] = (t.at(u) + t.at(-u).adjoint()) * 0.5;

    Mat2Laurent sym{-m, std::vector<Mat2C>(std::size_t(2 * m + 1))};
    for (int u = -m; u <= m; ++u)
        sym.coeffs[std::size_t(u + m)] = u >= 0 ? c[std::size_t(u)] : c[std::size_t(-u)].adjoint();
    const CircleMinimum cm = circle_min_eig(sym);
    if (cm.grid_min <= opt.pos_tol)
        throw NotPositiveError("mat_spectral_factorize: symbol is not strictly positive",
                               cm.grid_min, cm.witness_theta);

    int n = int(next_pow2(std::size_t(std::max(64, 8 * (m + 1)))));
    double best = -1.0;
    MatFactor result;
    while (n <= opt.max_section) {
        // banded block Cholesky, rolling window of m+1 rows
        std::vector<std::vector<Mat2C>> rows(std::size_t(m + 1),
                                             std::vector<Mat2C>(std::size_t(m + 1)));
        auto slot = [&](int r) -> std::vector<Mat2C>& { return rows[std::size_t(r % (m + 1))]; };
        auto lblock = [&](int r, int col) -> const Mat2C& {
            return slot(r)[std::size_t(col - (r - m))];
        };
        for (int r = 0; r < n; ++r) {
            std::vector<Mat2C>& row = slot(r);
            std::fill(row.begin(), row.end(), Mat2C::zero());
            for (int col = std::max(0, r - m); col <= r; ++col) {
                Mat2C s = c[std::size_t(r - col)];
                for (int k = std::max(0, r - m); k < col; ++k)
                    s = s - lblock(r, k) * lblock(col, k).adjoint();
                if (col < r)
                    row[std::size_t(col - (r - m))] = s * inv_upper(lblock(col, col).adjoint());
                else
                    row[std::size_t(m)] = chol2(s);
            }
        }
        Mat2Laurent factor{0, std::vector<Mat2C>(std::size_t(m + 1))};
        for (int k = 0; k <= m && k <= n - 1; ++k)
            factor.coeffs[std::size_t(k)] = lblock(n - 1, n - 1 - k);

        // right unitary picked so the value at 1 is Hermitian positive definite
        Mat2C at_one = mat_eval(factor, 1.0);
        const Mat2C v = at_one.adjoint() * hpd_inv_sqrt(at_one * at_one.adjoint());
        for (Mat2C& fk : factor.coeffs) fk = fk * v;

        const double residual = mat_sub(sym, mat_mul(factor, factor.tilde())).norm();
        if (best < 0.0 || residual < best) {
            best = residual;
            result = {factor, residual, n, cm.grid_min};
        }
        if (residual <= opt.eps_fact) {
            const CLaurent fdet = mat_det(result.factor);
            const CircleMinimum dm = circle_min_abs(fdet);
            if (dm.grid_min > 0.0 &&
                winding_number(circle_sample(fdet, dm.grid_size)) == 0)
                return result;
        }
        n *= 2;
    }
    throw ConvergenceError("mat_spectral_factorize: residual target not met at the section cap",
                           best);
}

} // namespace qwiener
