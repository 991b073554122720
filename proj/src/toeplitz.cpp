#include "qwiener/toeplitz.hpp"

#include <algorithm>

#include "qwiener/errors.hpp"

namespace qwiener {

QSeries project(const QSeries& f, Part part) {
    if (f.empty()) return {};
    const int lo = part == Part::Plus ? std::max(f.min_deg, 0) : f.min_deg;
    const int hi = part == Part::Plus ? f.max_deg() : std::min(f.max_deg(), -1);
    if (lo > hi) return {};
    QSeries out(lo, std::vector<Quaternion>(std::size_t(hi - lo + 1)));
    for (int u = lo; u <= hi; ++u) out.coeffs[std::size_t(u - lo)] = f.at(u);
    return out.trimmed();
}

std::vector<Quaternion> toeplitz_matrix(const ToeplitzSection& t) {
    if (t.n <= 0) throw SizeError("toeplitz_matrix: section size must be positive");
    const std::size_t n = std::size_t(t.n);
    std::vector<Quaternion> m(n * n);
    for (int r = 0; r < t.n; ++r)
        for (int c = 0; c < t.n; ++c) m[std::size_t(r) * n + std::size_t(c)] = t.symbol.at(r - c);
    return m;
}

QVec toeplitz_apply(const ToeplitzSection& t, const QVec& xi) {
    if (int(xi.entries.size()) != t.n)
        throw SizeError("toeplitz_apply: vector length does not match the section");
    QVec out;
    out.entries.assign(xi.entries.size(), Quaternion{});
    // columns run downward so the symbol degree ascends, matching the
    // summation order of the coefficient convolution bit for bit
    for (int r = 0; r < t.n; ++r)
        for (int c = t.n - 1; c >= 0; --c)
            out.entries[std::size_t(r)] +=
                qmul(t.symbol.at(r - c), xi.entries[std::size_t(c)]);
    return out;
}

namespace {

int support_width(const QSeries& f) {
    const QSeries t = f.trimmed();
    return t.empty() ? 0 : t.max_deg() - t.min_deg + 1;
}

struct ProductScan {
    double diag_defect = 0.0;
    double star_defect = 0.0;
    double max_entry = 0.0;
};

// Entry (r,c) of the section product is polluted by the finite truncation
// exactly when the sum over k >= n can reach nonzero coefficients, which
// confines it to rows past n - |min phi| and columns past n - max psi.
ProductScan scan_product(const QSeries& phi, const QSeries& psi, int n) {
    const QSeries a = phi.trimmed();
    const QSeries b = psi.trimmed();
    if (n <= 4 * support_width(a) + 4 * support_width(b))
        throw SizeError("toeplitz product: section too small for the supports");

    const std::vector<Quaternion> ma = toeplitz_matrix({a, n});
    const std::vector<Quaternion> mb = toeplitz_matrix({b, n});
    const std::size_t un = std::size_t(n);
    std::vector<Quaternion> prod(un * un);
    for (std::size_t r = 0; r < un; ++r)
        for (std::size_t k = 0; k < un; ++k) {
            const Quaternion& ark = ma[r * un + k];
            if (ark.is_zero()) continue;
            for (std::size_t c = 0; c < un; ++c)
                prod[r * un + c] += qmul(ark, mb[k * un + c]);
        }

    const int corner_rows = a.empty() ? 0 : std::max(0, -a.min_deg);
    const int corner_cols = b.empty() ? 0 : std::max(0, b.max_deg());
    const auto valid = [&](int r, int c) {
        return r < n - corner_rows || c < n - corner_cols;
    };

    const QSeries ab = star(a, b);
    ProductScan out;
    for (int d = -(n - 1); d <= n - 1; ++d) {
        // reference entry: the one deepest along the diagonal, where the
        // section agrees with the semi-infinite operator
        int rr = -1;
        for (int r = std::max(0, d); r < n && r - d < n; ++r)
            if (valid(r, r - d)) rr = r;
        if (rr < 0) continue;
        const Quaternion ref = prod[std::size_t(rr) * un + std::size_t(rr - d)];
        for (int r = std::max(0, d); r < n && r - d < n; ++r) {
            if (!valid(r, r - d)) continue;
            const Quaternion& e = prod[std::size_t(r) * un + std::size_t(r - d)];
            out.diag_defect = std::max(out.diag_defect, (e - ref).norm());
            out.star_defect = std::max(out.star_defect, (e - ab.at(d)).norm());
            out.max_entry = std::max(out.max_entry, e.norm());
        }
    }
    return out;
}

} // namespace

ProductReport toeplitz_product_test(const QSeries& phi, const QSeries& psi, int n, double tol) {
    const ProductScan s = scan_product(phi, psi, n);
    const double scale = std::max(1.0, phi.norm() * psi.norm());
    ProductReport out;
    out.defect_norm = std::max(s.diag_defect, s.star_defect);
    out.is_toeplitz = s.diag_defect <= tol * scale;
    out.equals_t_star = s.star_defect <= tol * scale;
    return out;
}

bool zero_product_probe(const QSeries& phi, const QSeries& psi, int n, double tol) {
    const ProductScan s = scan_product(phi, psi, n);
    const double scale = std::max(1.0, phi.norm() * psi.norm());
    return s.max_entry <= tol * scale;
}

} // namespace qwiener
