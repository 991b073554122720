#pragma once

#include <vector>

#include "qwiener/random.hpp"
#include "qwiener/serialize.hpp"

namespace qwiener {

// Random document of any kind, with a random slice basis half the time.
inline SeriesDocument random_document(Rng& rng) {
    const int kind = rng.uniform_int(0, 3);
    const bool with_basis = rng.uniform_int(0, 1) == 1;
    SeriesDocument doc;
    if (kind == 0) {
        const int w = rng.uniform_int(1, 10);
        QSeries f(rng.uniform_int(-6, 6), std::vector<Quaternion>(std::size_t(w)));
        for (Quaternion& q : f.coeffs) q = rng.quaternion_box(1.0);
        doc = SeriesDocument::of(f);
    } else if (kind == 1) {
        CElement f;
        f.c = rng.quaternion_box(1.0);
        f.du = 1.0 / double(1 << rng.uniform_int(2, 6));
        f.u0 = double(rng.uniform_int(-20, 20)) * f.du;
        f.samples.resize(std::size_t(rng.uniform_int(1, 40)));
        for (Quaternion& q : f.samples) q = rng.quaternion_box(1.0);
        doc = SeriesDocument::of(f);
    } else if (kind == 2) {
        const std::size_t n = std::size_t(rng.uniform_int(1, 30));
        HardyElement f{with_basis ? rng.slice_basis() : SliceBasis::standard(),
                       rng.uniform(0.01, 0.2), std::vector<cplx>(n), std::vector<cplx>(n)};
        for (cplx& z : f.samples1) z = rng.complex_box(1.0);
        for (cplx& z : f.samples2) z = rng.complex_box(1.0);
        return SeriesDocument::of(f);
    } else {
        QVec v;
        v.entries.resize(std::size_t(rng.uniform_int(1, 30)));
        for (Quaternion& q : v.entries) q = rng.quaternion_box(1.0);
        doc = SeriesDocument::of(v);
    }
    if (with_basis) {
        const SliceBasis B = rng.slice_basis();
        doc.has_basis = true;
        doc.basis_i = B.i.q;
        doc.basis_j = B.j.q;
    }
    return doc;
}

} // namespace qwiener
