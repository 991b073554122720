#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "qwiener/errors.hpp"
#include "qwiener/random.hpp"
#include "qwiener/wiener_hopf.hpp"

using namespace qwiener;

namespace {

const Quaternion kOne{1, 0, 0, 0};
constexpr double kTwoPi = 6.28318530717958647692;

HardyElement random_hardy(Rng& rng, const SliceBasis& basis, double du, std::size_t n) {
    HardyElement f{basis, du, std::vector<cplx>(n), std::vector<cplx>(n)};
    for (std::size_t k = 0; k < n; ++k) {
        f.samples1[k] = rng.complex_box(1.0);
        f.samples2[k] = rng.complex_box(1.0);
    }
    return f;
}

LineElement random_line(Rng& rng, const SliceBasis& basis, double du, long k0, std::size_t n) {
    LineElement g{basis, du, double(k0) * du, std::vector<cplx>(n), std::vector<cplx>(n)};
    for (std::size_t k = 0; k < n; ++k) {
        g.samples1[k] = rng.complex_box(1.0);
        g.samples2[k] = rng.complex_box(1.0);
    }
    return g;
}

CElement random_symbol(Rng& rng, double du, long k0, std::size_t n, double cscale, double kscale) {
    CElement phi{rng.quaternion_box(cscale), double(k0) * du, du, std::vector<Quaternion>(n)};
    for (Quaternion& q : phi.samples) q = rng.quaternion_box(kscale);
    return phi;
}

HardyElement right_scale(const HardyElement& f, const cplx& lambda) {
    HardyElement out = f;
    for (cplx& z : out.samples1) z *= lambda;
    for (cplx& z : out.samples2) z *= std::conj(lambda);
    return out;
}

double hardy_diff(const HardyElement& a, const HardyElement& b) {
    REQUIRE(a.samples1.size() == b.samples1.size());
    double worst = 0.0;
    for (std::size_t k = 0; k < a.samples1.size(); ++k)
        worst = std::max(worst, std::hypot(std::abs(a.samples1[k] - b.samples1[k]),
                                           std::abs(a.samples2[k] - b.samples2[k])));
    return worst;
}

} // namespace

TEST_CASE("hardy_norm frozen values") {
    const SliceBasis basis = SliceBasis::standard();
    CHECK(hardy_norm(HardyElement{basis, 0.25, {}, {}}) == 0.0);
    CHECK(hardy_norm(HardyElement{basis, 0.25, {cplx{}, cplx{}}, {cplx{}, cplx{}}}) == 0.0);

    const double du = 1.0 / 64.0;
    HardyElement box{basis, du, std::vector<cplx>(64, cplx{1.0, 0.0}), std::vector<cplx>(64, cplx{})};
    CHECK(hardy_norm(box) == doctest::Approx(std::sqrt(kTwoPi)).epsilon(1e-12));

    HardyElement swapped{basis, du, box.samples2, box.samples1};
    CHECK(hardy_norm(swapped) == hardy_norm(box));

    CHECK_THROWS_AS(hardy_norm(HardyElement{basis, du, {cplx{1, 0}}, {}}), GridError);
}

TEST_CASE("projections split the line exactly") {
    Rng rng(201);
    const SliceBasis basis = SliceBasis::standard();
    const double du = 1.0 / 32.0;

    for (int rep = 0; rep < 50; ++rep) {
        const long k0 = rng.uniform_int(-20, 4);
        const std::size_t n = std::size_t(rng.uniform_int(1, 30));
        const LineElement g = random_line(rng, basis, du, k0, n);
        const HardyElement p = project_P(g);
        const LineElement q = project_Q(g);

        double inner = 0.0;
        for (std::size_t k = 0; k < g.samples1.size(); ++k) {
            const long idx = k0 + long(k);
            const cplx p1 = idx >= 0 ? p.samples1[std::size_t(idx)] : cplx{};
            const cplx p2 = idx >= 0 ? p.samples2[std::size_t(idx)] : cplx{};
            const cplx q1 = idx < 0 ? q.samples1[k] : cplx{};
            const cplx q2 = idx < 0 ? q.samples2[k] : cplx{};
            CHECK(p1 + q1 == g.samples1[k]);
            CHECK(p2 + q2 == g.samples2[k]);
            inner += std::abs(std::conj(p1) * q1 + std::conj(p2) * q2);
        }
        CHECK(inner == 0.0);

        // P is idempotent against its own output viewed on the line
        const LineElement back{basis, du, 0.0, p.samples1, p.samples2};
        const HardyElement pp = project_P(back);
        CHECK(hardy_diff(pp, p) == 0.0);
    }

    const LineElement plus = random_line(rng, basis, du, 0, 8);
    const HardyElement pplus = project_P(plus);
    CHECK(pplus.samples1 == plus.samples1);
    CHECK(project_Q(plus).samples1.empty());

    const LineElement minus = random_line(rng, basis, du, -8, 8);
    CHECK(project_P(minus).samples1.empty());
    CHECK(project_Q(minus).samples1 == minus.samples1);

    CHECK_THROWS_AS(project_P(LineElement{basis, 0.25, 0.3, {cplx{1, 0}}, {cplx{}}}), GridError);
}

TEST_CASE("wh_apply identities and constant symbols") {
    Rng rng(202);
    const SliceBasis basis = SliceBasis::standard();
    const double du = 1.0 / 64.0;
    const HardyElement f = random_hardy(rng, basis, du, 96);

    const HardyElement same = wh_apply(CElement::constant(kOne), f);
    CHECK(hardy_diff(same, f) == 0.0);

    for (int rep = 0; rep < 20; ++rep) {
        const Quaternion q = rng.quaternion_box(2.0);
        const HardyElement qf = wh_apply(CElement::constant(q), f);
        double worst = 0.0;
        for (std::size_t k = 0; k < f.samples1.size(); ++k) {
            const Quaternion expect = qmul(q, unsplit(f.samples1[k], f.samples2[k], basis));
            worst = std::max(worst,
                             (unsplit(qf.samples1[k], qf.samples2[k], basis) - expect).norm());
        }
        CHECK(worst <= 1e-13);
        CHECK(hardy_norm(qf) == doctest::Approx(q.norm() * hardy_norm(f)).epsilon(1e-12));
    }

    // right multiplication by a slice scalar commutes with the operator
    const CElement phi = random_symbol(rng, du, -8, 24, 1.0, 1.0);
    for (int rep = 0; rep < 10; ++rep) {
        const cplx lambda = rng.complex_box(1.5);
        const HardyElement a = wh_apply(phi, right_scale(f, lambda));
        const HardyElement b = right_scale(wh_apply(phi, f), lambda);
        CHECK(hardy_diff(a, b) <= 1e-13);
    }

    const CElement wrong{kOne, 0.0, du * 2.0, {kOne}};
    CHECK_THROWS_AS(wh_apply(wrong, f), GridError);
}

TEST_CASE("wh_apply with plus symbol matches the dense convolution") {
    Rng rng(203);
    const SliceBasis basis = SliceBasis::standard();
    const double du = 1.0 / 64.0;
    HardyElement f{basis, du, std::vector<cplx>(97), std::vector<cplx>(97)};
    for (std::size_t k = 0; k < 33; ++k) {
        f.samples1[k] = cplx{1.0, 0.0};
        f.samples2[k] = cplx{0.25, -0.5};
    }
    const CElement phi = random_symbol(rng, du, 0, 17, 1.2, 1.0);

    CElement lifted{Quaternion{}, 0.0, du, std::vector<Quaternion>(f.samples1.size())};
    for (std::size_t k = 0; k < f.samples1.size(); ++k)
        lifted.samples[k] = unsplit(f.samples1[k], f.samples2[k], basis);
    const CElement dense = cstar(phi, lifted);

    const HardyElement out = wh_apply(phi, f);
    REQUIRE(lattice_index(dense) == 0);
    double worst = 0.0;
    for (std::size_t k = 0; k < out.samples1.size(); ++k) {
        const Quaternion got = unsplit(out.samples1[k], out.samples2[k], basis);
        worst = std::max(worst, (got - dense.samples[k]).norm());
    }
    CHECK(worst <= 1e-10);
}

TEST_CASE("wh_product_test honours the product theorem branches") {
    Rng rng(204);
    const SliceBasis basis = SliceBasis::standard();
    const double du = 1.0 / 32.0;

    for (int rep = 0; rep < 30; ++rep) {
        const HardyElement f = random_hardy(rng, basis, du, 140);
        const CElement phi = random_symbol(rng, du, rng.uniform_int(-10, -2), 12, 1.0, 1.0);
        const CElement psi = random_symbol(rng, du, 0, std::size_t(rng.uniform_int(4, 12)), 1.0, 1.0);
        const WhReport byPsi = wh_product_test(phi, psi, f);
        CHECK(byPsi.is_wh);
        CHECK(byPsi.defect <= 1e-8 * std::max(1.0, phi.norm() * psi.norm()));
    }
    for (int rep = 0; rep < 30; ++rep) {
        const HardyElement f = random_hardy(rng, basis, du, 140);
        const std::size_t n = std::size_t(rng.uniform_int(4, 12));
        const CElement phi = random_symbol(rng, du, -long(n) + 1, n, 1.0, 1.0);
        const CElement psi = random_symbol(rng, du, rng.uniform_int(-4, 0), 10, 1.0, 1.0);
        const WhReport byPhi = wh_product_test(phi, psi, f);
        CHECK(byPhi.is_wh);
        CHECK(byPhi.defect <= 1e-8 * std::max(1.0, phi.norm() * psi.norm()));
    }

    // plus times minus with unit masses leaves a visible truncation term
    const std::size_t nb = 32;
    const double step = 1.0 / 32.0;
    CElement phi{Quaternion{}, 0.0, step, std::vector<Quaternion>(nb, kOne)};
    CElement psi{Quaternion{}, -double(nb) * step, step, std::vector<Quaternion>(nb, kOne)};
    HardyElement f{SliceBasis::standard(), step, std::vector<cplx>(160), std::vector<cplx>(160)};
    for (std::size_t k = 0; k < nb; ++k) f.samples1[k] = cplx{1.0, 0.0};
    const WhReport cross = wh_product_test(phi, psi, f);
    CHECK_FALSE(cross.is_wh);
    CHECK(cross.defect > 0.01);

    CHECK_THROWS_AS(
        wh_product_test(phi, psi, HardyElement{basis, step, std::vector<cplx>(30), std::vector<cplx>(30)}),
        SizeError);
}
