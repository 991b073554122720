#pragma once

#include <cmath>
#include <complex>
#include <ostream>

#include "qwiener/errors.hpp"

namespace qwiener {

using cplx = std::complex<double>;

// p = x0 + x1 e1 + x2 e2 + x3 e3 with e1^2 = e2^2 = e3^2 = e1 e2 e3 = -1.
struct Quaternion {
    double x0 = 0.0;
    double x1 = 0.0;
    double x2 = 0.0;
    double x3 = 0.0;

    constexpr Quaternion() = default;
    constexpr Quaternion(double a, double b, double c, double d) : x0(a), x1(b), x2(c), x3(d) {}
    constexpr Quaternion(double real) : x0(real) {}

    static constexpr Quaternion e1() { return {0, 1, 0, 0}; }
    static constexpr Quaternion e2() { return {0, 0, 1, 0}; }
    static constexpr Quaternion e3() { return {0, 0, 0, 1}; }

    constexpr Quaternion operator+(const Quaternion& o) const {
        return {x0 + o.x0, x1 + o.x1, x2 + o.x2, x3 + o.x3};
    }
    constexpr Quaternion operator-(const Quaternion& o) const {
        return {x0 - o.x0, x1 - o.x1, x2 - o.x2, x3 - o.x3};
    }
    constexpr Quaternion operator-() const { return {-x0, -x1, -x2, -x3}; }
    constexpr Quaternion operator*(double s) const { return {x0 * s, x1 * s, x2 * s, x3 * s}; }
    constexpr Quaternion operator/(double s) const { return {x0 / s, x1 / s, x2 / s, x3 / s}; }

    Quaternion& operator+=(const Quaternion& o) { return *this = *this + o; }
    Quaternion& operator-=(const Quaternion& o) { return *this = *this - o; }

    constexpr bool operator==(const Quaternion& o) const {
        return x0 == o.x0 && x1 == o.x1 && x2 == o.x2 && x3 == o.x3;
    }

    double norm_sq() const { return x0 * x0 + x1 * x1 + x2 * x2 + x3 * x3; }
    double norm() const { return std::sqrt(norm_sq()); }
    double vec_norm() const { return std::sqrt(x1 * x1 + x2 * x2 + x3 * x3); }
    constexpr bool is_zero() const { return x0 == 0.0 && x1 == 0.0 && x2 == 0.0 && x3 == 0.0; }
};

constexpr Quaternion operator*(double s, const Quaternion& p) { return p * s; }

constexpr Quaternion qmul(const Quaternion& p, const Quaternion& q) {
    return {p.x0 * q.x0 - p.x1 * q.x1 - p.x2 * q.x2 - p.x3 * q.x3,
            p.x0 * q.x1 + p.x1 * q.x0 + p.x2 * q.x3 - p.x3 * q.x2,
            p.x0 * q.x2 - p.x1 * q.x3 + p.x2 * q.x0 + p.x3 * q.x1,
            p.x0 * q.x3 + p.x1 * q.x2 - p.x2 * q.x1 + p.x3 * q.x0};
}

constexpr Quaternion operator*(const Quaternion& p, const Quaternion& q) { return qmul(p, q); }

constexpr Quaternion qconj(const Quaternion& p) { return {p.x0, -p.x1, -p.x2, -p.x3}; }

inline Quaternion qinv(const Quaternion& p) {
    const double n2 = p.norm_sq();
    if (n2 == 0.0) throw DomainError("qinv: zero quaternion");
    return qconj(p) / n2;
}

// q^-1 p0 q, a point of the conjugation sphere [p0].
inline Quaternion sphere_conjugate(const Quaternion& p0, const Quaternion& q) {
    return qinv(q) * p0 * q;
}

inline std::ostream& operator<<(std::ostream& os, const Quaternion& p) {
    return os << "(" << p.x0 << ", " << p.x1 << ", " << p.x2 << ", " << p.x3 << ")";
}

// Unit quaternion with zero real part; squares to -1.
struct ImaginaryUnit {
    Quaternion q;

    explicit ImaginaryUnit(const Quaternion& v, double tol = 1e-12) : q(v) {
        if (std::abs(v.x0) > tol || std::abs(v.norm() - 1.0) > tol)
            throw DomainError("ImaginaryUnit: not a unit imaginary quaternion");
    }

    static ImaginaryUnit normalized(double a, double b, double c) {
        const double n = std::sqrt(a * a + b * b + c * c);
        if (n == 0.0) throw DomainError("ImaginaryUnit: zero vector");
        return ImaginaryUnit(Quaternion{0, a / n, b / n, c / n});
    }
};

inline double vec_dot(const Quaternion& a, const Quaternion& b) {
    return a.x1 * b.x1 + a.x2 * b.x2 + a.x3 * b.x3;
}

// Orthogonal pair (i, j) of imaginary units; i j is a third unit completing
// the frame, so {1, i, j, ij} is an orthonormal real basis of the algebra.
struct SliceBasis {
    ImaginaryUnit i;
    ImaginaryUnit j;

    SliceBasis(const ImaginaryUnit& a, const ImaginaryUnit& b, double tol = 1e-12) : i(a), j(b) {
        if (std::abs(vec_dot(a.q, b.q)) > tol)
            throw DomainError("SliceBasis: units are not orthogonal");
    }

    static SliceBasis standard() {
        return SliceBasis(ImaginaryUnit(Quaternion::e1()), ImaginaryUnit(Quaternion::e2()));
    }

    // i j as the cross product of the vector parts; exactly imaginary, which
    // keeps the split/unsplit round trip from leaking into the real slot.
    Quaternion k() const {
        const Quaternion& a = i.q;
        const Quaternion& b = j.q;
        return {0.0, a.x2 * b.x3 - a.x3 * b.x2, a.x3 * b.x1 - a.x1 * b.x3,
                a.x1 * b.x2 - a.x2 * b.x1};
    }
};

// p = z + w j with z, w in the complex plane spanned by {1, i}.
struct SplitPair {
    cplx z;
    cplx w;
};

inline SplitPair split(const Quaternion& p, const SliceBasis& basis) {
    const Quaternion& i = basis.i.q;
    const Quaternion& j = basis.j.q;
    const Quaternion k = basis.k();
    // One Newton correction of the adjoint solve against the stored frame, so
    // that reassembly inverts the split even though the frame is orthonormal
    // only to rounding.
    const long double q1 = p.x1, q2 = p.x2, q3 = p.x3;
    const auto dotv = [](const Quaternion& b, long double a1, long double a2, long double a3) {
        return b.x1 * a1 + b.x2 * a2 + b.x3 * a3;
    };
    const long double s1 = dotv(i, q1, q2, q3);
    const long double s2 = dotv(j, q1, q2, q3);
    const long double s3 = dotv(k, q1, q2, q3);
    const long double u1 = i.x1 * s1 + j.x1 * s2 + k.x1 * s3;
    const long double u2 = i.x2 * s1 + j.x2 * s2 + k.x2 * s3;
    const long double u3 = i.x3 * s1 + j.x3 * s2 + k.x3 * s3;
    const long double v1 = 2.0L * q1 - u1, v2 = 2.0L * q2 - u2, v3 = 2.0L * q3 - u3;
    return {cplx(p.x0, double(dotv(i, v1, v2, v3))),
            cplx(double(dotv(j, v1, v2, v3)), double(dotv(k, v1, v2, v3)))};
}

inline Quaternion unsplit(const cplx& z, const cplx& w, const SliceBasis& basis) {
    const Quaternion& i = basis.i.q;
    const Quaternion& j = basis.j.q;
    const Quaternion k = basis.k();
    const long double b = z.imag(), c = w.real(), d = w.imag();
    return {z.real(), double(b * i.x1 + c * j.x1 + d * k.x1),
            double(b * i.x2 + c * j.x2 + d * k.x2), double(b * i.x3 + c * j.x3 + d * k.x3)};
}

struct Mat2C;
Mat2C chi(const Quaternion& p, const SliceBasis& basis);

// 2x2 complex matrix, row major.
struct Mat2C {
    cplx m11, m12, m21, m22;

    constexpr Mat2C() = default;
    constexpr Mat2C(cplx a, cplx b, cplx c, cplx d) : m11(a), m12(b), m21(c), m22(d) {}

    static constexpr Mat2C identity() { return {1.0, 0.0, 0.0, 1.0}; }
    static constexpr Mat2C zero() { return {0.0, 0.0, 0.0, 0.0}; }

    Mat2C operator+(const Mat2C& o) const {
        return {m11 + o.m11, m12 + o.m12, m21 + o.m21, m22 + o.m22};
    }
    Mat2C operator-(const Mat2C& o) const {
        return {m11 - o.m11, m12 - o.m12, m21 - o.m21, m22 - o.m22};
    }
    Mat2C operator-() const { return {-m11, -m12, -m21, -m22}; }
    Mat2C operator*(const Mat2C& o) const {
        return {m11 * o.m11 + m12 * o.m21, m11 * o.m12 + m12 * o.m22,
                m21 * o.m11 + m22 * o.m21, m21 * o.m12 + m22 * o.m22};
    }
    Mat2C operator*(const cplx& s) const { return {m11 * s, m12 * s, m21 * s, m22 * s}; }
    Mat2C operator*(double s) const { return {m11 * s, m12 * s, m21 * s, m22 * s}; }
    Mat2C& operator+=(const Mat2C& o) { return *this = *this + o; }

    Mat2C adjoint() const {
        return {std::conj(m11), std::conj(m21), std::conj(m12), std::conj(m22)};
    }
    cplx det() const { return m11 * m22 - m12 * m21; }
    cplx trace() const { return m11 + m22; }

    double frobenius() const {
        return std::sqrt(std::norm(m11) + std::norm(m12) + std::norm(m21) + std::norm(m22));
    }

    // Largest singular value.
    double op_norm() const {
        const double s = std::norm(m11) + std::norm(m12) + std::norm(m21) + std::norm(m22);
        const double d = std::abs(det());
        const double h = s * 0.5;
        const double disc = std::sqrt(std::max(h * h - d * d, 0.0));
        return std::sqrt(h + disc);
    }

    Mat2C inverse() const {
        const cplx d = det();
        if (d == cplx(0.0)) throw NotInvertibleError("Mat2C::inverse: singular matrix", 0.0, 0.0);
        return Mat2C{m22, -m12, -m21, m11} * (cplx(1.0) / d);
    }

    // Eigenvalues of the Hermitian part are not used; these assume *this is
    // Hermitian up to roundoff and work on the symmetrized entries.
    void hermitian_eigenvalues(double& lo, double& hi) const {
        const double a = m11.real();
        const double d = m22.real();
        const cplx b = 0.5 * (m12 + std::conj(m21));
        const double mid = 0.5 * (a + d);
        const double rad = std::sqrt(0.25 * (a - d) * (a - d) + std::norm(b));
        lo = mid - rad;
        hi = mid + rad;
    }

    double hermitian_defect() const {
        return (*this - this->adjoint()).op_norm();
    }
};

inline Mat2C operator*(const cplx& s, const Mat2C& m) { return m * s; }
inline Mat2C operator*(double s, const Mat2C& m) { return m * s; }

// J1 = [[0, 1], [-1, 0]]; M carries quaternionic structure iff J1 conj(M) J1* = M.
inline Mat2C j1_reflect(const Mat2C& m) {
    return {std::conj(m.m22), -std::conj(m.m21), -std::conj(m.m12), std::conj(m.m11)};
}

inline double j1_defect(const Mat2C& m) { return (m - j1_reflect(m)).op_norm(); }

inline Mat2C chi(const Quaternion& p, const SliceBasis& basis) {
    const SplitPair s = split(p, basis);
    return {s.z, s.w, -std::conj(s.w), std::conj(s.z)};
}

inline Quaternion chi_inv(const Mat2C& m, const SliceBasis& basis, double tau_struct = 1e-9) {
    const double defect =
        std::max(std::abs(m.m22 - std::conj(m.m11)), std::abs(m.m21 + std::conj(m.m12)));
    if (defect > tau_struct)
        throw StructureError("chi_inv: matrix lacks quaternionic structure", defect);
    const cplx z = 0.5 * (m.m11 + std::conj(m.m22));
    const cplx w = 0.5 * (m.m12 - std::conj(m.m21));
    return unsplit(z, w, basis);
}

// Square root and inverse square root of a Hermitian positive definite matrix.
inline Mat2C hpd_sqrt(const Mat2C& h) {
    const cplx d = h.det();
    const cplx t = h.trace();
    const cplx s = std::sqrt(d);
    const cplx g = std::sqrt(t + 2.0 * s);
    if (std::abs(g) == 0.0) throw DomainError("hpd_sqrt: singular matrix");
    return (h + Mat2C::identity() * s) * (cplx(1.0) / g);
}

inline Mat2C hpd_inv_sqrt(const Mat2C& h) { return hpd_sqrt(h).inverse(); }

} // namespace qwiener
