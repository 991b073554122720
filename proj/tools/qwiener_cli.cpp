#include <cstdint>
#include <cstdio>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qwiener/continuous.hpp"
#include "qwiener/errors.hpp"
#include "qwiener/serialize.hpp"
#include "qwiener/series.hpp"
#include "qwiener/suites.hpp"
#include "qwiener/toeplitz.hpp"
#include "qwiener/wiener_hopf.hpp"

namespace {

using namespace qwiener;
using nlohmann::json;

SliceBasis basis_from_flag(const std::string& s) {
    double v[6];
    if (std::sscanf(s.c_str(), "%lf,%lf,%lf;%lf,%lf,%lf", &v[0], &v[1], &v[2], &v[3], &v[4],
                    &v[5]) != 6)
        throw DomainError("--basis expects two imaginary directions 'a,b,c;d,e,f'");
    const ImaginaryUnit i = ImaginaryUnit::normalized(v[0], v[1], v[2]);
    Quaternion raw{0.0, v[3], v[4], v[5]};
    raw -= i.q * vec_dot(i.q, raw);
    const double n = raw.norm();
    if (n < 1e-9) throw DomainError("--basis: second direction is parallel to the first");
    return SliceBasis(i, ImaginaryUnit(raw / n));
}

SliceBasis pick_basis(const std::string& flag, const SeriesDocument& doc) {
    return flag.empty() ? doc.basis() : basis_from_flag(flag);
}

bool is_standard(const SliceBasis& b) {
    const SliceBasis s = SliceBasis::standard();
    return b.i.q == s.i.q && b.j.q == s.j.q;
}

void attach_basis(SeriesDocument& doc, const SliceBasis& b) {
    if (is_standard(b)) return;
    doc.has_basis = true;
    doc.basis_i = b.i.q;
    doc.basis_j = b.j.q;
}

json quat_json(const Quaternion& q) { return json::array({q.x0, q.x1, q.x2, q.x3}); }

int cmd_invert(const std::string& in, const std::string& out, int window, double tol,
               const std::string& basis_flag, bool continuous) {
    const SeriesDocument doc = load_document(in);
    const SliceBasis B = pick_basis(basis_flag, doc);
    if (continuous) {
        if (doc.kind != DocKind::CElementDoc)
            throw DomainError("invert --continuous expects a celement document");
        const TGrid grid{};
        const CVerdict v = is_invertible_c(doc.ce, B, grid);
        if (!v.invertible) {
            std::printf("not invertible: determinant minimum %.6g at t=%.4f\n", v.min_abs_det,
                        v.witness_t);
            return 2;
        }
        const CElement g = invert_c(doc.ce, B, grid, tol > 0.0 ? tol : 1e-6);
        const CElement r = cstar(doc.ce, g);
        double residual = (r.c - Quaternion(1.0)).norm();
        for (const Quaternion& q : r.samples) residual += q.norm() * r.du;
        std::printf("residual %.6g\n", residual);
        std::printf("certificate: %s, determinant bound %.6g\n",
                    v.mode == CertMode::NeumannCertificate ? "neumann series" : "grid evidence",
                    v.min_abs_det);
        SeriesDocument od = SeriesDocument::of(g);
        attach_basis(od, B);
        save_document(out, od);
        return 0;
    }
    if (doc.kind != DocKind::QSeriesDoc)
        throw DomainError("invert expects a qseries document (pass --continuous for celement)");
    const InvertibilityVerdict v = is_invertible(doc.qs, B);
    if (!v.invertible) {
        std::printf("not invertible: circle minimum %.6g at theta=%.4f\n", v.min_abs_det,
                    v.witness_theta);
        return 2;
    }
    const QSeries g = invert(doc.qs, B, window, 1e-9, tol > 0.0 ? tol : 1e-9);
    const double residual = qs_sub(star(doc.qs, g), QSeries::constant(Quaternion(1.0))).norm();
    std::printf("residual %.6g\n", residual);
    std::printf("certificate: circle margin %.6g\n", v.certificate);
    SeriesDocument od = SeriesDocument::of(g);
    attach_basis(od, B);
    save_document(out, od);
    return 0;
}

int cmd_factor(const std::string& in, const std::string& out, double tol,
               const std::string& basis_flag) {
    const SeriesDocument doc = load_document(in);
    if (doc.kind != DocKind::QSeriesDoc) throw DomainError("factor expects a qseries document");
    const SliceBasis B = pick_basis(basis_flag, doc);
    SpectralOptions opt;
    if (tol > 0.0) opt.eps_fact = tol;
    const QSeries fp = spectral_factorize(doc.qs, B, opt);
    const double residual = qs_sub(doc.qs, star(fp, adjoint_series(fp))).norm();
    std::printf("residual %.6g\n", residual);
    SeriesDocument od = SeriesDocument::of(fp);
    attach_basis(od, B);
    save_document(out, od);
    return 0;
}

int cmd_zeros(const std::string& in, const std::string& basis_flag, bool json_out) {
    const SeriesDocument doc = load_document(in);
    if (doc.kind != DocKind::QSeriesDoc) throw DomainError("zeros expects a qseries document");
    const SliceBasis B = pick_basis(basis_flag, doc);
    const ZeroReport rep = classify_zeros(doc.qs, B);
    if (json_out) {
        json arr = json::array();
        for (const ZeroEntry& e : rep)
            arr.push_back({{"theta", e.theta},
                           {"kind", e.kind == ZeroKind::Spherical ? "Spherical" : "Isolated"},
                           {"unit", quat_json(e.unit)},
                           {"residual", e.residual}});
        const json obj = {{"zeros", arr}};
        std::printf("%s\n", obj.dump().c_str());
        return 0;
    }
    if (rep.empty()) {
        std::printf("no zeros on the unit sphere\n");
        return 0;
    }
    for (const ZeroEntry& e : rep) {
        if (e.kind == ZeroKind::Spherical) {
            std::printf("θ=%.4f Spherical\n", e.theta);
        } else {
            std::printf("θ=%.4f Isolated unit=(%.10g, %.10g, %.10g, %.10g) residual=%.3g\n",
                        e.theta, e.unit.x0, e.unit.x1, e.unit.x2, e.unit.x3, e.residual);
        }
    }
    return 0;
}

int cmd_toeplitz(const std::string& symbol_path, const std::string& vec_path, int n,
                 bool json_out) {
    const SeriesDocument sdoc = load_document(symbol_path);
    const SeriesDocument vdoc = load_document(vec_path);
    if (sdoc.kind != DocKind::QSeriesDoc || vdoc.kind != DocKind::QVecDoc)
        throw DomainError("toeplitz expects a qseries symbol and a qvec vector");
    const int nn = n > 0 ? n : int(vdoc.vec.entries.size());
    const QVec out = toeplitz_apply(ToeplitzSection{sdoc.qs, nn}, vdoc.vec);
    if (json_out) {
        json arr = json::array();
        for (const Quaternion& q : out.entries) arr.push_back(quat_json(q));
        const json obj = {{"entries", arr}};
        std::printf("%s\n", obj.dump().c_str());
        return 0;
    }
    for (const Quaternion& q : out.entries)
        std::printf("(%.10g, %.10g, %.10g, %.10g)\n", q.x0, q.x1, q.x2, q.x3);
    return 0;
}

int cmd_wh(const std::string& phi_path, const std::string& hardy_path, int window_len,
           const std::string& basis_flag, bool json_out) {
    const SeriesDocument pdoc = load_document(phi_path);
    const SeriesDocument fdoc = load_document(hardy_path);
    if (pdoc.kind != DocKind::CElementDoc || fdoc.kind != DocKind::HardyDoc)
        throw DomainError("wh expects a celement symbol and a hardy document");
    HardyElement f = fdoc.hardy();
    if (!basis_flag.empty()) f.basis = basis_from_flag(basis_flag);
    if (window_len > 0) {
        f.samples1.resize(std::size_t(window_len));
        f.samples2.resize(std::size_t(window_len));
    }
    const HardyElement g = wh_apply(pdoc.ce, f);
    if (json_out) {
        json a1 = json::array(), a2 = json::array();
        for (const cplx& z : g.samples1) a1.push_back(json::array({z.real(), z.imag()}));
        for (const cplx& z : g.samples2) a2.push_back(json::array({z.real(), z.imag()}));
        const json obj = {{"du", g.du},
                          {"norm", hardy_norm(g)},
                          {"samples1", a1},
                          {"samples2", a2}};
        std::printf("%s\n", obj.dump().c_str());
        return 0;
    }
    std::printf("window %.6g with %zu samples\n", g.window(), g.samples1.size());
    std::printf("input norm %.6g, output norm %.6g\n", hardy_norm(f), hardy_norm(g));
    return 0;
}

int cmd_check(std::uint64_t seed, int cases, bool json_out) {
    const std::vector<SuiteResult> results = run_all_suites(seed, cases);
    bool all = true;
    int passed = 0;
    for (const SuiteResult& r : results) {
        all = all && r.passed;
        passed += r.passed ? 1 : 0;
    }
    if (json_out) {
        json arr = json::array();
        for (const SuiteResult& r : results)
            arr.push_back({{"index", r.index},
                           {"name", r.name},
                           {"passed", r.passed},
                           {"checks", r.checks},
                           {"failures", r.failures},
                           {"seconds", r.seconds},
                           {"detail", r.detail}});
        const json obj = {{"seed", seed}, {"cases", cases}, {"all_passed", all}, {"suites", arr}};
        std::printf("%s\n", obj.dump().c_str());
    } else {
        for (const SuiteResult& r : results)
            std::printf("suite %2d %s %s (%ld checks, %.2fs) %s\n", r.index,
                        r.passed ? "PASS" : "FAIL", r.name.c_str(), r.checks, r.seconds,
                        r.detail.c_str());
        std::printf("%d/%d suites passed, seed %llu\n", passed, suite_count,
                    static_cast<unsigned long long>(seed));
    }
    return all ? 0 : 1;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"quaternionic Wiener algebra toolkit"};
    app.require_subcommand(1);

    std::string inv_in, inv_out, inv_basis;
    int inv_window = 0;
    double inv_tol = 0.0;
    bool inv_continuous = false;
    CLI::App* inv = app.add_subcommand("invert", "invert an element and report the residual");
    inv->add_option("input", inv_in, "input document")->required();
    inv->add_option("output", inv_out, "destination for the inverse document")->required();
    inv->add_option("--window", inv_window, "output support window, 0 picks one automatically");
    inv->add_option("--tol", inv_tol, "target residual, 0 picks the mode default");
    inv->add_option("--basis", inv_basis, "slice basis as 'a,b,c;d,e,f'");
    inv->add_flag("--continuous", inv_continuous, "treat the input as a continuous element");

    std::string fac_in, fac_out, fac_basis;
    double fac_tol = 0.0;
    CLI::App* fac = app.add_subcommand("factor", "spectral factorization of a positive symbol");
    fac->add_option("input", fac_in, "input document")->required();
    fac->add_option("output", fac_out, "destination for the plus factor")->required();
    fac->add_option("--tol", fac_tol, "factorization residual target, 0 picks the default");
    fac->add_option("--basis", fac_basis, "slice basis as 'a,b,c;d,e,f'");

    std::string zer_in, zer_basis;
    bool zer_json = false;
    CLI::App* zer = app.add_subcommand("zeros", "classify zeros on the unit sphere");
    zer->add_option("input", zer_in, "input document")->required();
    zer->add_option("--basis", zer_basis, "slice basis as 'a,b,c;d,e,f'");
    zer->add_flag("--json", zer_json, "machine-readable report");

    std::string toe_symbol, toe_vec;
    int toe_n = 0;
    bool toe_json = false;
    CLI::App* toe = app.add_subcommand("toeplitz", "apply a finite Toeplitz section");
    toe->add_option("symbol", toe_symbol, "qseries document with the symbol")->required();
    toe->add_option("vector", toe_vec, "qvec document with the input vector")->required();
    toe->add_option("--n", toe_n, "section size, 0 uses the vector length");
    toe->add_flag("--json", toe_json, "machine-readable report");

    std::string wh_phi, wh_hardy, wh_basis;
    int wh_len = 0;
    bool wh_json = false;
    CLI::App* wh = app.add_subcommand("wh", "apply a half-line convolution operator");
    wh->add_option("symbol", wh_phi, "celement document with the symbol")->required();
    wh->add_option("input", wh_hardy, "hardy document with the input")->required();
    wh->add_option("--L", wh_len, "resize the sample window to this length");
    wh->add_option("--basis", wh_basis, "slice basis as 'a,b,c;d,e,f'");
    wh->add_flag("--json", wh_json, "machine-readable report");

    std::uint64_t chk_seed = 42;
    int chk_cases = 0;
    bool chk_json = false;
    CLI::App* chk = app.add_subcommand("check", "run the property suites of every module");
    chk->add_option("--seed", chk_seed, "suite seed")->envname("QWIENER_SEED");
    chk->add_option("--cases", chk_cases, "override the random case count per suite");
    chk->add_flag("--json", chk_json, "machine-readable report");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 1;
    }

    try {
        if (inv->parsed())
            return cmd_invert(inv_in, inv_out, inv_window, inv_tol, inv_basis, inv_continuous);
        if (fac->parsed()) return cmd_factor(fac_in, fac_out, fac_tol, fac_basis);
        if (zer->parsed()) return cmd_zeros(zer_in, zer_basis, zer_json);
        if (toe->parsed()) return cmd_toeplitz(toe_symbol, toe_vec, toe_n, toe_json);
        if (wh->parsed()) return cmd_wh(wh_phi, wh_hardy, wh_len, wh_basis, wh_json);
        if (chk->parsed()) return cmd_check(chk_seed, chk_cases, chk_json);
    } catch (const NotInvertibleError& e) {
        std::printf("not invertible: %s (bound %.6g, witness %.4f)\n", e.what(), e.min_abs_det,
                    e.witness);
        return 2;
    } catch (const NotPositiveError& e) {
        std::printf("not positive: %s (minimum eigenvalue %.6g at %.4f)\n", e.what(),
                    e.min_eigenvalue, e.witness);
        return 3;
    } catch (const StructureError& e) {
        std::fprintf(stderr, "structure error: %s (defect %.3g)\n", e.what(), e.defect);
        return 4;
    } catch (const AliasError& e) {
        std::fprintf(stderr, "structure error: %s (leaked %.3g)\n", e.what(), e.leaked);
        return 4;
    } catch (const ConvergenceError& e) {
        std::fprintf(stderr, "structure error: %s (residual %.3g)\n", e.what(), e.residual);
        return 4;
    } catch (const SizeError& e) {
        std::fprintf(stderr, "structure error: %s\n", e.what());
        return 4;
    } catch (const GridError& e) {
        std::fprintf(stderr, "structure error: %s\n", e.what());
        return 4;
    } catch (const ClassificationError& e) {
        std::fprintf(stderr, "structure error: %s\n", e.what());
        return 4;
    } catch (const NotPlusError& e) {
        std::fprintf(stderr, "structure error: %s\n", e.what());
        return 4;
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
    return 1;
}
