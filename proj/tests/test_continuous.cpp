#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qwiener/continuous.hpp"
#include "qwiener/errors.hpp"
#include "qwiener/random.hpp"

using namespace qwiener;

namespace {

const Quaternion kOne{1, 0, 0, 0};
constexpr double kPi = 3.14159265358979323846;

CElement box(const Quaternion& c, double u0, double du, std::size_t n, const Quaternion& value) {
    return {c, u0, du, std::vector<Quaternion>(n, value)};
}

CElement random_element(Rng& rng, double du, double cscale, double kscale) {
    const long k0 = rng.uniform_int(-6, 2);
    const std::size_t n = std::size_t(rng.uniform_int(3, 12));
    CElement f{rng.quaternion_box(cscale), double(k0) * du, du, {}};
    f.samples.resize(n);
    for (Quaternion& q : f.samples) q = rng.quaternion_box(kscale);
    return f;
}

// pointwise sum of elements on the same lattice
CElement cadd(const CElement& a, const CElement& b) {
    if (a.kernel_empty()) {
        CElement out = b;
        out.c += a.c;
        return out;
    }
    if (b.kernel_empty()) {
        CElement out = a;
        out.c += b.c;
        return out;
    }
    REQUIRE(a.du == doctest::Approx(b.du).epsilon(1e-14));
    const long ka = lattice_index(a), kb = lattice_index(b);
    const long lo = std::min(ka, kb);
    const long hi = std::max(ka + long(a.samples.size()), kb + long(b.samples.size())) - 1;
    CElement out{a.c + b.c, double(lo) * a.du, a.du,
                 std::vector<Quaternion>(std::size_t(hi - lo + 1))};
    for (std::size_t k = 0; k < a.samples.size(); ++k)
        out.samples[std::size_t(ka + long(k) - lo)] += a.samples[k];
    for (std::size_t k = 0; k < b.samples.size(); ++k)
        out.samples[std::size_t(kb + long(k) - lo)] += b.samples[k];
    return out;
}

double flat_kernel_mass(const CElement& f) {
    double m = 0.0;
    for (const Quaternion& q : f.samples) m += q.norm();
    return m * f.du;
}

// largest pointwise kernel difference on the union lattice
double kernel_sup_diff(const CElement& a, const CElement& b) {
    const CElement d = cadd(a, CElement{-b.c, b.u0, b.du,
                                        [&] {
                                            std::vector<Quaternion> s = b.samples;
                                            for (Quaternion& q : s) q = -q;
                                            return s;
                                        }()});
    double worst = 0.0;
    for (const Quaternion& q : d.samples) worst = std::max(worst, q.norm());
    return worst;
}

CElement smooth_plus_kernel(double s, double du, std::size_t n) {
    CElement f{kOne, 0.0, du, std::vector<Quaternion>(n)};
    for (std::size_t k = 0; k < n; ++k) {
        const double u = du * double(k) / (du * double(n - 1));
        const double v = std::sin(kPi * u);
        f.samples[k] = Quaternion{s * v * v, 0, 0, 0};
    }
    return f;
}

} // namespace

TEST_CASE("lattice and grid validation") {
    const CElement f{kOne, 0.25, 0.125, {kOne, kOne}};
    CHECK(lattice_index(f) == 2);
    CHECK_THROWS_AS(lattice_index(CElement{kOne, 0.3, 0.25, {kOne}}), GridError);
    CHECK_THROWS_AS(lattice_index(CElement{kOne, 0.0, 0.0, {kOne}}), GridError);
    CHECK_THROWS_AS(grid_points(TGrid{8.0, 1}), DomainError);
    CHECK_THROWS_AS(grid_points(TGrid{0.0, 64}), DomainError);
    const std::vector<double> ts = grid_points(TGrid{4.0, 5});
    CHECK(ts.front() == doctest::Approx(-4.0));
    CHECK(ts.back() == doctest::Approx(4.0));
    CHECK(ts[2] == doctest::Approx(0.0));
}

TEST_CASE("cstar constants, identity, and grid mismatch") {
    Rng rng(101);
    for (int rep = 0; rep < 20; ++rep) {
        const Quaternion q1 = rng.quaternion_box(2.0);
        const Quaternion q2 = rng.quaternion_box(2.0);
        const CElement p = cstar(CElement::constant(q1), CElement::constant(q2));
        CHECK(p.kernel_empty());
        CHECK((p.c - qmul(q1, q2)).norm() == 0.0);
    }
    const CElement f = random_element(rng, 0.125, 1.0, 1.0);
    const CElement lhs = cstar(f, CElement::constant(kOne));
    CHECK(lhs.c == f.c);
    REQUIRE(lhs.samples.size() == f.samples.size());
    for (std::size_t k = 0; k < f.samples.size(); ++k) CHECK(lhs.samples[k] == f.samples[k]);

    const CElement g1{kOne, 0.0, 0.125, {kOne, kOne}};
    const CElement g2{kOne, 0.0, 0.25, {kOne, kOne}};
    CHECK_THROWS_AS(cstar(g1, g2), GridError);
}

TEST_CASE("cstar convolution of two boxes is a triangle to first order") {
    Rng rng(102);
    const double du = 1.0 / 64.0;
    const std::size_t n = 65;
    for (int rep = 0; rep < 5; ++rep) {
        const Quaternion a = rng.quaternion_box(1.5);
        const Quaternion b = rng.quaternion_box(1.5);
        const CElement fa = box(Quaternion{}, 0.0, du, n, a);
        const CElement fb = box(Quaternion{}, 0.0, du, n, b);
        const CElement prod = cstar(fa, fb);
        REQUIRE(prod.samples.size() == 2 * n - 1);
        const Quaternion ab = qmul(a, b);
        for (std::size_t m = 0; m < prod.samples.size(); ++m) {
            const double u = prod.u0 + du * double(m);
            const double tri = std::min(u, 2.0 - u);
            CHECK((prod.samples[m] - ab * tri).norm() <= 1.5 * du * ab.norm() + 1e-12);
        }
    }
}

TEST_CASE("cstar norm bound and associativity") {
    Rng rng(103);
    const double du = 1.0 / 32.0;
    for (int rep = 0; rep < 200; ++rep) {
        const CElement f1 = random_element(rng, du, 1.5, 1.2);
        const CElement f2 = random_element(rng, du, 1.5, 1.2);
        const double lhs = cstar(f1, f2).norm();
        const double rhs = f1.norm() * f2.norm();
        CHECK(lhs <= rhs + 10.0 * du * std::max(1.0, rhs));
    }
    for (int rep = 0; rep < 40; ++rep) {
        CElement f1 = random_element(rng, du, 1.0, 1.0);
        CElement f2 = random_element(rng, du, 1.0, 1.0);
        CElement f3 = random_element(rng, du, 1.0, 1.0);
        f1.u0 = f2.u0 = f3.u0 = 0.0;
        const CElement l = cstar(cstar(f1, f2), f3);
        const CElement r = cstar(f1, cstar(f2, f3));
        const double scale = std::max(1.0, f1.norm() * f2.norm() * f3.norm());
        CHECK((l.c - r.c).norm() <= 1e-12 * scale);
        CHECK(kernel_sup_diff(l, r) <= 1e-12 * scale);
    }
}

TEST_CASE("ceval frozen values") {
    Rng rng(104);
    const Quaternion c = rng.quaternion_box(1.0);
    CHECK((ceval(CElement::constant(c), ImaginaryUnit::normalized(1, 0, 0), 3.7) - c).norm() == 0.0);

    const double du = 1.0 / 256.0;
    const std::size_t n = 257;
    const CElement f = box(c, 0.0, du, n, kOne);
    const Quaternion at0 = ceval(f, ImaginaryUnit::normalized(1, 0, 0), 0.0);
    CHECK((at0 - (c + kOne * 1.0)).norm() <= 1e-13);

    // integral of e^(e1 pi u) over [0,1] is (e^(e1 pi) - 1)/(e1 pi) = (2/pi) e1
    const Quaternion atpi = ceval(f, ImaginaryUnit::normalized(1, 0, 0), kPi);
    const Quaternion expect = c + Quaternion::e1() * (2.0 / kPi);
    CHECK((atpi - expect).norm() <= 1e-4);
}

TEST_CASE("omega_c frozen matrices and pairing structure") {
    const TGrid grid{6.0, 33};
    const SliceBasis basis = SliceBasis::standard();
    for (const Mat2C& m : omega_c(CElement::constant(kOne), basis, grid))
        CHECK((m - Mat2C::identity()).op_norm() <= 1e-15);
    for (const Mat2C& m : omega_c(CElement::constant(Quaternion::e2()), basis, grid)) {
        CHECK(std::abs(m.m11) <= 1e-15);
        CHECK(std::abs(m.m12 - cplx(1.0, 0.0)) <= 1e-15);
        CHECK(std::abs(m.m21 - cplx(-1.0, 0.0)) <= 1e-15);
        CHECK(std::abs(m.m22) <= 1e-15);
    }

    Rng rng(105);
    const CElement f = random_element(rng, 1.0 / 32.0, 1.0, 1.0);
    const std::vector<Mat2C> om = omega_c(f, basis, grid);
    const std::size_t n = om.size();
    for (std::size_t k = 0; k < n; ++k) {
        const Mat2C& here = om[k];
        const Mat2C& mirror = om[n - 1 - k];
        CHECK(std::abs(here.m22 - std::conj(mirror.m11)) <= 1e-13);
        CHECK(std::abs(here.m21 + std::conj(mirror.m12)) <= 1e-13);
    }
}

TEST_CASE("omega_c is multiplicative up to first order in du") {
    Rng rng(106);
    const SliceBasis basis = SliceBasis::standard();
    const TGrid grid{5.0, 41};
    const double du = 1.0 / 64.0;
    for (int rep = 0; rep < 20; ++rep) {
        const CElement f1 = random_element(rng, du, 1.2, 1.0);
        const CElement f2 = random_element(rng, du, 1.2, 1.0);
        const std::vector<Mat2C> o1 = omega_c(f1, basis, grid);
        const std::vector<Mat2C> o2 = omega_c(f2, basis, grid);
        const std::vector<Mat2C> o12 = omega_c(cstar(f1, f2), basis, grid);
        double defect = 0.0;
        for (std::size_t k = 0; k < o1.size(); ++k)
            defect = std::max(defect, (o12[k] - o1[k] * o2[k]).op_norm());
        CHECK(defect <= 20.0 * du * std::max(1.0, (1.0 + f1.norm()) * (1.0 + f2.norm())));
    }

    // halving the step roughly halves the product defect for a fixed kernel
    const SliceBasis b = SliceBasis::standard();
    auto defect_at = [&](double step) {
        const std::size_t n = std::size_t(std::lround(1.0 / step)) + 1;
        CElement g{kOne, 0.0, step, std::vector<Quaternion>(n)};
        for (std::size_t k = 0; k < n; ++k)
            g.samples[k] = Quaternion{std::exp(-step * double(k)), 0.2, 0.0, 0.1};
        const std::vector<Mat2C> o = omega_c(g, b, grid);
        const std::vector<Mat2C> oo = omega_c(cstar(g, g), b, grid);
        double d = 0.0;
        for (std::size_t k = 0; k < o.size(); ++k)
            d = std::max(d, (oo[k] - o[k] * o[k]).op_norm());
        return d;
    };
    const double coarse = defect_at(1.0 / 64.0);
    const double fine = defect_at(1.0 / 128.0);
    CHECK(coarse / fine >= 1.5);
    CHECK(coarse / fine <= 2.7);
}

TEST_CASE("is_invertible_c certificates") {
    const SliceBasis basis = SliceBasis::standard();
    const TGrid grid{8.0, 129};
    const double du = 1.0 / 64.0;

    const CElement neumann = box(kOne, 0.0, du, 65, Quaternion{0.5, 0, 0, 0});
    const CVerdict v1 = is_invertible_c(neumann, basis, grid);
    CHECK(v1.invertible);
    CHECK(v1.mode == CertMode::NeumannCertificate);
    CHECK(v1.min_abs_det == doctest::Approx(0.25).epsilon(1e-12));

    const CVerdict v2 = is_invertible_c(CElement::constant(Quaternion::e1() * 3.0), basis, grid);
    CHECK(v2.invertible);
    CHECK(v2.min_abs_det == doctest::Approx(9.0).epsilon(1e-12));
    CHECK(v2.tail_abs_det == doctest::Approx(9.0).epsilon(1e-12));

    const std::size_t n = 9;
    const double h = -1.0 / (du * double(n - 1));
    const CElement critical = box(kOne, 0.0, du, n, Quaternion{h, 0, 0, 0});
    const CVerdict v3 = is_invertible_c(critical, basis, grid);
    CHECK_FALSE(v3.invertible);
    CHECK(v3.mode == CertMode::GridEvidence);
    CHECK(v3.min_abs_det <= 1e-12);
    CHECK(std::abs(v3.witness_t) <= grid.t_max / double(grid.n_t - 1) + 1e-12);
}

TEST_CASE("is_invertible_c verdict does not depend on the slice basis") {
    Rng rng(107);
    const TGrid grid{6.0, 65};
    for (int rep = 0; rep < 30; ++rep) {
        const CElement f = random_element(rng, 1.0 / 16.0, 1.5, 0.8);
        const CVerdict ref = is_invertible_c(f, SliceBasis::standard(), grid);
        const double scale = std::max(1.0, f.norm() * f.norm());
        for (int b = 0; b < 5; ++b) {
            const CVerdict other = is_invertible_c(f, rng.slice_basis(), grid);
            CHECK(other.invertible == ref.invertible);
            CHECK(std::abs(other.min_abs_det - ref.min_abs_det) <= 1e-8 * scale);
        }
    }
}

TEST_CASE("invert_c on constants and against the Neumann series") {
    const SliceBasis basis = SliceBasis::standard();
    const TGrid grid{8.0, 129};

    const CElement half = invert_c(CElement::constant(Quaternion{2, 0, 0, 0}), basis, grid);
    CHECK(half.kernel_empty());
    CHECK((half.c - Quaternion{0.5, 0, 0, 0}).norm() <= 1e-15);

    const double du = 1.0 / 128.0;
    const CElement f = smooth_plus_kernel(0.6, du, 129);
    const CElement g = invert_c(f, basis, grid);
    CHECK((g.c - kOne).norm() <= 1e-15);

    CElement minus_kernel{Quaternion{}, f.u0, f.du, f.samples};
    for (Quaternion& q : minus_kernel.samples) q = -q;
    CElement series = CElement::constant(kOne);
    CElement power = CElement::constant(kOne);
    for (int k = 1; k <= 14; ++k) {
        power = cstar(power, minus_kernel);
        series = cadd(series, power);
    }
    CHECK(kernel_sup_diff(g, series) <= 1e-5);

    for (const CElement* lhs : {&f, &g}) {
        const CElement* rhs = (lhs == &f) ? &g : &f;
        const CElement prod = cstar(*lhs, *rhs);
        CHECK((prod.c - kOne).norm() <= 1e-14);
        CHECK(flat_kernel_mass(prod) <= 1e-6);
    }

    const std::size_t n = 9;
    const double step = 1.0 / 64.0;
    const double h = -1.0 / (step * double(n - 1));
    const CElement critical = box(kOne, 0.0, step, n, Quaternion{h, 0, 0, 0});
    CHECK_THROWS_AS(invert_c(critical, basis, grid), NotInvertibleError);
    CHECK_THROWS_AS(invert_c(CElement::constant(Quaternion{}), basis, grid), NotInvertibleError);
}

TEST_CASE("membership_pm reads kernel support") {
    const double du = 0.25;
    CHECK(membership_pm(CElement::constant(kOne)).plus);
    CHECK(membership_pm(CElement::constant(kOne)).minus);
    const CElement plus{kOne, 0.0, du, {kOne, kOne}};
    CHECK(membership_pm(plus).plus);
    CHECK_FALSE(membership_pm(plus).minus);
    const CElement minus{kOne, -0.5, du, {kOne, kOne, kOne}};
    CHECK(membership_pm(minus).minus);
    CHECK_FALSE(membership_pm(minus).plus);
    const CElement both{kOne, -0.25, du, {kOne, kOne, kOne}};
    CHECK_FALSE(membership_pm(both).plus);
    CHECK_FALSE(membership_pm(both).minus);
}

TEST_CASE("invert_plus_c inverts within the plus subalgebra") {
    const SliceBasis basis = SliceBasis::standard();
    const TGrid grid{8.0, 129};
    const double du = 1.0 / 128.0;

    const CElement one = invert_plus_c(CElement::constant(kOne), basis, grid);
    CHECK(one.kernel_empty());
    CHECK((one.c - kOne).norm() == 0.0);

    const CElement f = smooth_plus_kernel(0.8, du, 129);
    const CElement g = invert_plus_c(f, basis, grid);
    CHECK(membership_pm(g).plus);
    const CElement prod = cstar(f, g);
    CHECK((prod.c - kOne).norm() <= 1e-14);
    CHECK(flat_kernel_mass(prod) <= 1e-5);

    // beyond the Neumann regime but plus-invertible by construction
    const CElement f1 = smooth_plus_kernel(1.2, du, 129);
    const CElement f2 = smooth_plus_kernel(1.2, du, 193);
    const CElement big = cstar(f1, f2);
    CHECK(big.kernel_mass() > big.c.norm());
    const CElement ginv = invert_plus_c(big, basis, grid);
    CHECK(membership_pm(ginv).plus);
    const CElement check = cstar(big, ginv);
    CHECK((check.c - kOne).norm() <= 1e-13);
    CHECK(flat_kernel_mass(check) <= 1e-4);

    const CElement refused = box(kOne, 0.0, 1.0 / 64.0, 65, Quaternion{-2.0, 0, 0, 0});
    CHECK_THROWS_AS(invert_plus_c(refused, basis, grid), NotInvertibleError);

    const CElement wrong_side{kOne, -1.0, 1.0 / 64.0, {kOne, kOne}};
    CHECK_THROWS_AS(invert_plus_c(wrong_side, basis, grid), NotPlusError);
}

TEST_CASE("slice positivity depends on the slice") {
    const TGrid grid{8.0, 129};
    const double du = 1.0 / 64.0;
    const long half = 512;
    CElement f{Quaternion{2, 0, 0, 0}, -double(half) * du, du, {}};
    f.samples.resize(std::size_t(2 * half + 1));
    for (long m = -half; m <= half; ++m) {
        const double u = double(m) * du;
        const double sgn = (m > 0) ? 1.0 : (m < 0 ? -1.0 : 0.0);
        f.samples[std::size_t(m + half)] = Quaternion::e1() * (sgn * std::exp(-std::abs(u)));
    }

    const SlicePositivity on12 = is_strictly_positive_on_slice(f, SliceBasis::standard(), grid);
    CHECK(on12.hermitian);
    CHECK(on12.positive);
    CHECK(on12.min_eig == doctest::Approx(1.0).epsilon(0.01));
    CHECK(std::abs(std::abs(on12.witness_t) - 1.0) <= 0.05);

    const SliceBasis b23(ImaginaryUnit(Quaternion::e2()), ImaginaryUnit(Quaternion::e3()));
    const SlicePositivity on23 = is_strictly_positive_on_slice(f, b23, grid);
    CHECK_FALSE(on23.hermitian);
    CHECK_FALSE(on23.positive);

    const SlicePositivity never =
        is_strictly_positive_on_slice(CElement::constant(Quaternion::e1()), SliceBasis::standard(), grid);
    CHECK_FALSE(never.hermitian);

    Rng rng(108);
    CElement even{Quaternion{2, 0, 0, 0}, -2.0, 1.0 / 32.0, {}};
    const long m2 = 64;
    even.samples.resize(std::size_t(2 * m2 + 1));
    for (long m = -m2; m <= m2; ++m) {
        const double u = double(m) / 32.0;
        even.samples[std::size_t(m + m2)] = Quaternion{0.3 * std::exp(-u * u), 0, 0, 0};
    }
    const SlicePositivity ref = is_strictly_positive_on_slice(even, SliceBasis::standard(), grid);
    CHECK(ref.hermitian);
    CHECK(ref.positive);
    for (int rep = 0; rep < 3; ++rep) {
        const SlicePositivity other = is_strictly_positive_on_slice(even, rng.slice_basis(), grid);
        CHECK(other.hermitian);
        CHECK(other.positive);
        CHECK(other.min_eig == doctest::Approx(ref.min_eig).epsilon(1e-9));
    }
}
