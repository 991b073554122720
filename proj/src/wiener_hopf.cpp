#include "qwiener/wiener_hopf.hpp"

#include <algorithm>
#include <cmath>

#include "qwiener/errors.hpp"

namespace qwiener {

namespace {

constexpr double kTwoPi = 6.28318530717958647692;

void check_pair(const std::vector<cplx>& s1, const std::vector<cplx>& s2, double du) {
    if (s1.size() != s2.size())
        throw GridError("kernel components must share one lattice");
    if (!s1.empty() && !(du > 0.0))
        throw GridError("kernel requires du > 0");
}

long line_index(const LineElement& g) {
    if (g.samples1.empty()) return 0;
    const long k0 = std::lround(g.u_min / g.du);
    if (std::abs(g.u_min - double(k0) * g.du) > 1e-9 * g.du)
        throw GridError("u_min is not on the du lattice");
    return k0;
}

} // namespace

double hardy_norm(const HardyElement& f) {
    check_pair(f.samples1, f.samples2, f.du);
    double s = 0.0;
    for (std::size_t k = 0; k < f.samples1.size(); ++k)
        s += std::norm(f.samples1[k]) + std::norm(f.samples2[k]);
    return std::sqrt(kTwoPi * s * f.du);
}

HardyElement project_P(const LineElement& g) {
    check_pair(g.samples1, g.samples2, g.du);
    HardyElement out{g.basis, g.du, {}, {}};
    if (g.samples1.empty()) return out;
    const long k0 = line_index(g);
    const long n = long(g.samples1.size());
    if (k0 + n <= 0) return out;
    const std::size_t len = std::size_t(k0 + n);
    out.samples1.assign(len, cplx{});
    out.samples2.assign(len, cplx{});
    for (long k = std::max(0L, -k0); k < n; ++k) {
        out.samples1[std::size_t(k0 + k)] = g.samples1[std::size_t(k)];
        out.samples2[std::size_t(k0 + k)] = g.samples2[std::size_t(k)];
    }
    return out;
}

LineElement project_Q(const LineElement& g) {
    check_pair(g.samples1, g.samples2, g.du);
    LineElement out{g.basis, g.du, 0.0, {}, {}};
    if (g.samples1.empty()) return out;
    const long k0 = line_index(g);
    if (k0 >= 0) return out;
    const std::size_t len = std::min(g.samples1.size(), std::size_t(-k0));
    out.u_min = g.u_min;
    out.samples1.assign(g.samples1.begin(), g.samples1.begin() + long(len));
    out.samples2.assign(g.samples2.begin(), g.samples2.begin() + long(len));
    return out;
}

HardyElement wh_apply(const CElement& phi, const HardyElement& f) {
    check_pair(f.samples1, f.samples2, f.du);
    const std::size_t n = f.samples1.size();
    HardyElement out{f.basis, f.du, std::vector<cplx>(n), std::vector<cplx>(n)};
    if (n == 0) return out;

    std::vector<Quaternion> ker(n);
    for (std::size_t k = 0; k < n; ++k) ker[k] = unsplit(f.samples1[k], f.samples2[k], f.basis);

    std::vector<Quaternion> res(n);
    for (std::size_t k = 0; k < n; ++k) res[k] = qmul(phi.c, ker[k]);

    if (!phi.kernel_empty()) {
        if (std::abs(phi.du - f.du) > 1e-12 * f.du)
            throw GridError("wh_apply: symbol kernel lives on a different grid");
        const long p0 = lattice_index(phi);
        const long pn = long(phi.samples.size());
        for (long k = 0; k < long(n); ++k) {
            for (long v = 0; v < long(n); ++v) {
                const long s = k - v - p0;
                if (s < 0 || s >= pn) continue;
                res[std::size_t(k)] +=
                    qmul(phi.samples[std::size_t(s)], ker[std::size_t(v)]) * phi.du;
            }
        }
    }
    for (std::size_t k = 0; k < n; ++k) {
        const SplitPair sp = split(res[k], f.basis);
        out.samples1[k] = sp.z;
        out.samples2[k] = sp.w;
    }
    return out;
}

WhReport wh_product_test(const CElement& phi, const CElement& psi, const HardyElement& f,
                         double tol) {
    check_pair(f.samples1, f.samples2, f.du);
    const std::size_t n = f.samples1.size();
    const double reach_phi = phi.kernel_empty() ? 0.0 : std::max(0.0, -phi.u0);
    const double reach_psi = psi.kernel_empty() ? 0.0 : std::max(0.0, -psi.u0);
    const double combined = reach_phi + reach_psi;
    const double window = (n == 0) ? 0.0 : f.du * double(n - 1);
    if (window <= combined + 2.0 * f.du)
        throw SizeError("wh_product_test: window too small for the interior margin");

    const HardyElement lhs = wh_apply(phi, wh_apply(psi, f));
    const HardyElement rhs = wh_apply(cstar(phi, psi), f);
    const std::size_t last = n - 1 - std::size_t(std::ceil(combined / f.du));
    double defect = 0.0;
    for (std::size_t k = 0; k <= last; ++k) {
        const double d = std::hypot(std::abs(lhs.samples1[k] - rhs.samples1[k]),
                                    std::abs(lhs.samples2[k] - rhs.samples2[k]));
        defect = std::max(defect, d);
    }
    WhReport rep;
    rep.defect = defect;
    rep.is_wh = defect <= tol * std::max(1.0, phi.norm() * psi.norm());
    return rep;
}

} // namespace qwiener
