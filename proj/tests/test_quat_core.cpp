#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>

#include "qwiener/quaternion.hpp"
#include "qwiener/random.hpp"

using namespace qwiener;

namespace {

// Table-driven product, independent of the component formulas in qmul.
Quaternion qmul_oracle(const Quaternion& p, const Quaternion& q) {
    // basis products e[a] e[b] -> (sign, index), basis order {1, e1, e2, e3}
    static const int idx[4][4] = {{0, 1, 2, 3}, {1, 0, 3, 2}, {2, 3, 0, 1}, {3, 2, 1, 0}};
    static const double sgn[4][4] = {
        {1, 1, 1, 1}, {1, -1, 1, -1}, {1, -1, -1, 1}, {1, 1, -1, -1}};
    const std::array<double, 4> a{p.x0, p.x1, p.x2, p.x3};
    const std::array<double, 4> b{q.x0, q.x1, q.x2, q.x3};
    std::array<double, 4> out{0, 0, 0, 0};
    for (int r = 0; r < 4; ++r)
        for (int c = 0; c < 4; ++c) out[idx[r][c]] += sgn[r][c] * a[r] * b[c];
    return {out[0], out[1], out[2], out[3]};
}

Mat2C matmul_oracle(const Mat2C& a, const Mat2C& b) {
    return {a.m11 * b.m11 + a.m12 * b.m21, a.m11 * b.m12 + a.m12 * b.m22,
            a.m21 * b.m11 + a.m22 * b.m21, a.m21 * b.m12 + a.m22 * b.m22};
}

double dist(const Quaternion& a, const Quaternion& b) { return (a - b).norm(); }

} // namespace

TEST_CASE("product matches table-driven oracle and frozen values") {
    const Quaternion p{1, 2, 3, 4}, q{5, 6, 7, 8};
    const Quaternion r = p * q;
    CHECK(r == Quaternion{-60, 12, 30, 24});
    CHECK(dist(r, qmul_oracle(p, q)) == 0.0);

    CHECK(Quaternion::e1() * Quaternion::e2() == Quaternion::e3());
    CHECK(Quaternion::e2() * Quaternion::e1() == -Quaternion::e3());
    CHECK(Quaternion::e1() * Quaternion::e1() == Quaternion(-1.0));

    Rng rng(12345);
    for (int k = 0; k < 1000; ++k) {
        const Quaternion a = rng.quaternion_box(2.0), b = rng.quaternion_box(2.0);
        CHECK(dist(a * b, qmul_oracle(a, b)) <= 1e-14 * (1.0 + a.norm() * b.norm()));
    }
}

TEST_CASE("norm is multiplicative") {
    Rng rng(7);
    for (int k = 0; k < 10000; ++k) {
        const Quaternion a = rng.quaternion_box(3.0), b = rng.quaternion_box(3.0);
        CHECK(std::abs((a * b).norm() - a.norm() * b.norm()) <=
              1e-12 * (1.0 + a.norm() * b.norm()));
    }
}

TEST_CASE("conjugation and inverse") {
    const Quaternion p{1, 1, 0, 0};
    CHECK(dist(qinv(p), Quaternion{0.5, -0.5, 0, 0}) == 0.0);

    Rng rng(42);
    for (int k = 0; k < 1000; ++k) {
        const Quaternion a = rng.quaternion_box(2.0);
        if (a.norm() < 1e-3) continue;
        CHECK(dist(a * qinv(a), Quaternion(1.0)) <= 1e-13);
        CHECK(dist(qinv(a) * a, Quaternion(1.0)) <= 1e-13);
        const Quaternion b = rng.quaternion_box(2.0);
        CHECK(dist(qconj(a * b), qconj(b) * qconj(a)) <= 1e-13 * (1.0 + a.norm() * b.norm()));
    }
    CHECK_THROWS_AS(qinv(Quaternion{}), DomainError);
}

TEST_CASE("imaginary units square to -1 and bases are orthonormal") {
    CHECK_THROWS_AS(ImaginaryUnit(Quaternion{0.5, 1, 0, 0}), DomainError);
    CHECK_THROWS_AS(SliceBasis(ImaginaryUnit(Quaternion::e1()), ImaginaryUnit(Quaternion::e1())),
                    DomainError);

    Rng rng(99);
    for (int k = 0; k < 200; ++k) {
        const SliceBasis b = rng.slice_basis();
        CHECK(dist(b.i.q * b.i.q, Quaternion(-1.0)) <= 1e-12);
        CHECK(dist(b.j.q * b.j.q, Quaternion(-1.0)) <= 1e-12);
        CHECK(dist(b.i.q * b.j.q + b.j.q * b.i.q, Quaternion{}) <= 1e-12);
        const Quaternion kq = b.k();
        CHECK(std::abs(kq.norm() - 1.0) <= 1e-12);
        CHECK(std::abs(kq.x0) <= 1e-12);
    }
}

TEST_CASE("split reassembles within 4 machine epsilons") {
    Rng rng(2024);
    double worst = 0.0;
    for (int kb = 0; kb < 100; ++kb) {
        const SliceBasis b = rng.slice_basis();
        for (int kp = 0; kp < 100; ++kp) {
            const Quaternion p = rng.quaternion_box(1.0);
            const SplitPair s = split(p, b);
            worst = std::max(worst, dist(unsplit(s.z, s.w, b), p) / (1.0 + p.norm()));
        }
    }
    CHECK(worst <= 4.0 * std::numeric_limits<double>::epsilon());
}

TEST_CASE("chi frozen value, determinant, and multiplicativity") {
    const SliceBasis std_basis = SliceBasis::standard();
    const Quaternion p{1, 2, 3, 4};
    const Mat2C m = chi(p, std_basis);
    CHECK(m.m11 == cplx(1, 2));
    CHECK(m.m12 == cplx(3, 4));
    CHECK(m.m21 == cplx(-3, 4));
    CHECK(m.m22 == cplx(1, -2));
    CHECK(std::abs(m.det() - cplx(30.0)) <= 1e-13);

    Rng rng(5150);
    for (int kb = 0; kb < 10; ++kb) {
        const SliceBasis b = rng.slice_basis();
        for (int k = 0; k < 300; ++k) {
            const Quaternion a = rng.quaternion_box(1.5), c = rng.quaternion_box(1.5);
            const Mat2C lhs = chi(a * c, b);
            const Mat2C rhs = matmul_oracle(chi(a, b), chi(c, b));
            CHECK((lhs - rhs).op_norm() <= 1e-12 * (1.0 + a.norm() * c.norm()));
            CHECK(std::abs(chi(a, b).det() - cplx(a.norm_sq())) <= 1e-12 * (1.0 + a.norm_sq()));
            CHECK((chi(qconj(a), b) - chi(a, b).adjoint()).op_norm() <= 1e-13 * (1.0 + a.norm()));
        }
    }
}

TEST_CASE("chi_inv round trips and rejects unstructured matrices") {
    Rng rng(31337);
    for (int k = 0; k < 1000; ++k) {
        const SliceBasis b = rng.slice_basis();
        const Quaternion p = rng.quaternion_box(2.0);
        CHECK(dist(chi_inv(chi(p, b), b), p) <= 1e-14 * (1.0 + p.norm()));
    }
    const Mat2C bad{cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(2, 0)};
    CHECK_THROWS_AS(chi_inv(bad, SliceBasis::standard()), StructureError);
    // defect exactly at threshold passes
    const Mat2C edge{cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(1 + 1e-10, 0)};
    CHECK_NOTHROW(chi_inv(edge, SliceBasis::standard()));
}

TEST_CASE("sphere conjugation preserves real part and modulus") {
    const Quaternion q0 = (Quaternion(1.0) + Quaternion::e2()) / std::sqrt(2.0);
    CHECK(dist(sphere_conjugate(Quaternion::e1(), q0), Quaternion::e3()) <= 1e-15);

    Rng rng(8);
    for (int k = 0; k < 2000; ++k) {
        const Quaternion p0 = rng.quaternion_box(2.0);
        Quaternion q = rng.quaternion_box(2.0);
        if (q.norm() < 1e-3) q = Quaternion(1.0);
        const Quaternion c = sphere_conjugate(p0, q);
        CHECK(std::abs(c.x0 - p0.x0) <= 1e-12 * (1.0 + p0.norm()));
        CHECK(std::abs(c.norm() - p0.norm()) <= 1e-12 * (1.0 + p0.norm()));
    }
    // real points conjugate to themselves
    const Quaternion r(2.5);
    CHECK(dist(sphere_conjugate(r, Quaternion{1, 2, 3, 4}), r) <= 1e-15);
}

TEST_CASE("j1 reflection characterizes quaternionic structure") {
    Rng rng(64);
    for (int k = 0; k < 500; ++k) {
        const SliceBasis b = rng.slice_basis();
        const Quaternion p = rng.quaternion_box(2.0);
        CHECK(j1_defect(chi(p, b)) <= 1e-13 * (1.0 + p.norm()));
    }
    CHECK(j1_defect(Mat2C{cplx(1, 0), cplx(0, 0), cplx(0, 0), cplx(2, 0)}) > 0.5);
}

TEST_CASE("hpd square root") {
    Rng rng(1010);
    for (int k = 0; k < 500; ++k) {
        // random HPD matrix g g* + I
        const Mat2C g{rng.complex_box(), rng.complex_box(), rng.complex_box(), rng.complex_box()};
        const Mat2C h = g * g.adjoint() + Mat2C::identity();
        const Mat2C s = hpd_sqrt(h);
        CHECK((s * s - h).op_norm() <= 1e-12 * h.op_norm());
        CHECK(s.hermitian_defect() <= 1e-12 * h.op_norm());
        const Mat2C si = hpd_inv_sqrt(h);
        CHECK((si * h * si - Mat2C::identity()).op_norm() <= 1e-12);
    }
}
