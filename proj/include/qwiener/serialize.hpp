#pragma once

#include <string>
#include <vector>

#include "qwiener/continuous.hpp"
#include "qwiener/series.hpp"
#include "qwiener/toeplitz.hpp"
#include "qwiener/wiener_hopf.hpp"

namespace qwiener {

enum class DocKind { QSeriesDoc, CElementDoc, HardyDoc, QVecDoc };

const char* kind_name(DocKind k);

// Self-described container for the four transferable value kinds, with an
// optional slice basis (standard e1/e2 when absent). The text form is one
// JSON header line followed by one JSON line per coefficient; every finite
// double survives render/parse bit for bit.
struct SeriesDocument {
    DocKind kind = DocKind::QSeriesDoc;
    bool has_basis = false;
    Quaternion basis_i = Quaternion::e1();
    Quaternion basis_j = Quaternion::e2();

    QSeries qs;              // QSeriesDoc
    CElement ce;             // CElementDoc
    double hardy_du = 0.0;   // HardyDoc
    std::vector<cplx> hardy1, hardy2;
    QVec vec;                // QVecDoc

    SliceBasis basis() const;
    HardyElement hardy() const;

    static SeriesDocument of(const QSeries& f);
    static SeriesDocument of(const CElement& f);
    static SeriesDocument of(const HardyElement& f);
    static SeriesDocument of(const QVec& v);
};

// Field-by-field bitwise equality, including the sign of zero.
bool documents_bit_equal(const SeriesDocument& a, const SeriesDocument& b);

std::string render_document(const SeriesDocument& doc);

// DomainError on malformed text (bad JSON, unknown kind, wrong arity,
// count mismatch, invalid basis).
SeriesDocument parse_document(const std::string& text);

// File transport; DomainError when the file cannot be read or written.
SeriesDocument load_document(const std::string& path);
void save_document(const std::string& path, const SeriesDocument& doc);

} // namespace qwiener
