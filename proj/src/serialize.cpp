#include "qwiener/serialize.hpp"

#include <cmath>
#include <fstream>
#include <sstream>

#include <json.hpp>

#include "qwiener/errors.hpp"

namespace qwiener {

using json = nlohmann::json;

const char* kind_name(DocKind k) {
    switch (k) {
        case DocKind::QSeriesDoc: return "qseries";
        case DocKind::CElementDoc: return "celement";
        case DocKind::HardyDoc: return "hardy";
        case DocKind::QVecDoc: return "qvec";
    }
    return "qseries";
}

SliceBasis SeriesDocument::basis() const {
    if (!has_basis) return SliceBasis::standard();
    return SliceBasis(ImaginaryUnit(basis_i), ImaginaryUnit(basis_j));
}

HardyElement SeriesDocument::hardy() const { return {basis(), hardy_du, hardy1, hardy2}; }

SeriesDocument SeriesDocument::of(const QSeries& f) {
    SeriesDocument d;
    d.kind = DocKind::QSeriesDoc;
    d.qs = f;
    return d;
}

SeriesDocument SeriesDocument::of(const CElement& f) {
    SeriesDocument d;
    d.kind = DocKind::CElementDoc;
    d.ce = f;
    return d;
}

SeriesDocument SeriesDocument::of(const HardyElement& f) {
    SeriesDocument d;
    d.kind = DocKind::HardyDoc;
    d.hardy_du = f.du;
    d.hardy1 = f.samples1;
    d.hardy2 = f.samples2;
    const SliceBasis std_basis = SliceBasis::standard();
    if (!(f.basis.i.q == std_basis.i.q) || !(f.basis.j.q == std_basis.j.q)) {
        d.has_basis = true;
        d.basis_i = f.basis.i.q;
        d.basis_j = f.basis.j.q;
    }
    return d;
}

SeriesDocument SeriesDocument::of(const QVec& v) {
    SeriesDocument d;
    d.kind = DocKind::QVecDoc;
    d.vec = v;
    return d;
}

namespace {

bool quat_bits(const Quaternion& a, const Quaternion& b) {
    const auto same = [](double x, double y) {
        return x == y && std::signbit(x) == std::signbit(y);
    };
    return same(a.x0, b.x0) && same(a.x1, b.x1) && same(a.x2, b.x2) && same(a.x3, b.x3);
}

bool cplx_bits(const cplx& a, const cplx& b) {
    return a.real() == b.real() && std::signbit(a.real()) == std::signbit(b.real()) &&
           a.imag() == b.imag() && std::signbit(a.imag()) == std::signbit(b.imag());
}

bool dbl_bits(double a, double b) { return a == b && std::signbit(a) == std::signbit(b); }

json quat_arr(const Quaternion& q) { return json::array({q.x0, q.x1, q.x2, q.x3}); }

json cplx_arr(const cplx& z) { return json::array({z.real(), z.imag()}); }

double num_of(const json& j, const char* what) {
    if (!j.is_number()) throw DomainError(std::string("document: ") + what + " is not a number");
    return j.get<double>();
}

Quaternion quat_of(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 4)
        throw DomainError(std::string("document: ") + what + " must be an array of 4 numbers");
    return {num_of(j[0], what), num_of(j[1], what), num_of(j[2], what), num_of(j[3], what)};
}

cplx cplx_of(const json& j, const char* what) {
    if (!j.is_array() || j.size() != 2)
        throw DomainError(std::string("document: ") + what + " must be an array of 2 numbers");
    return {num_of(j[0], what), num_of(j[1], what)};
}

std::size_t count_of(const json& head) {
    if (!head.contains("count") || !head["count"].is_number_unsigned())
        throw DomainError("document: header lacks a nonnegative count");
    return head["count"].get<std::size_t>();
}

} // namespace

bool documents_bit_equal(const SeriesDocument& a, const SeriesDocument& b) {
    if (a.kind != b.kind || a.has_basis != b.has_basis) return false;
    if (a.has_basis && (!quat_bits(a.basis_i, b.basis_i) || !quat_bits(a.basis_j, b.basis_j)))
        return false;
    switch (a.kind) {
        case DocKind::QSeriesDoc: {
            if (a.qs.min_deg != b.qs.min_deg || a.qs.coeffs.size() != b.qs.coeffs.size())
                return false;
            for (std::size_t k = 0; k < a.qs.coeffs.size(); ++k)
                if (!quat_bits(a.qs.coeffs[k], b.qs.coeffs[k])) return false;
            return true;
        }
        case DocKind::CElementDoc: {
            if (!quat_bits(a.ce.c, b.ce.c) || !dbl_bits(a.ce.u0, b.ce.u0) ||
                !dbl_bits(a.ce.du, b.ce.du) || a.ce.samples.size() != b.ce.samples.size())
                return false;
            for (std::size_t k = 0; k < a.ce.samples.size(); ++k)
                if (!quat_bits(a.ce.samples[k], b.ce.samples[k])) return false;
            return true;
        }
        case DocKind::HardyDoc: {
            if (!dbl_bits(a.hardy_du, b.hardy_du) || a.hardy1.size() != b.hardy1.size() ||
                a.hardy2.size() != b.hardy2.size())
                return false;
            for (std::size_t k = 0; k < a.hardy1.size(); ++k)
                if (!cplx_bits(a.hardy1[k], b.hardy1[k])) return false;
            for (std::size_t k = 0; k < a.hardy2.size(); ++k)
                if (!cplx_bits(a.hardy2[k], b.hardy2[k])) return false;
            return true;
        }
        case DocKind::QVecDoc: {
            if (a.vec.entries.size() != b.vec.entries.size()) return false;
            for (std::size_t k = 0; k < a.vec.entries.size(); ++k)
                if (!quat_bits(a.vec.entries[k], b.vec.entries[k])) return false;
            return true;
        }
    }
    return false;
}

std::string render_document(const SeriesDocument& doc) {
    json head;
    head["kind"] = kind_name(doc.kind);
    if (doc.has_basis)
        head["basis"] = {{"i", quat_arr(doc.basis_i)}, {"j", quat_arr(doc.basis_j)}};
    std::vector<json> lines;
    switch (doc.kind) {
        case DocKind::QSeriesDoc: {
            head["min_deg"] = doc.qs.min_deg;
            head["count"] = doc.qs.coeffs.size();
            for (const Quaternion& q : doc.qs.coeffs) lines.push_back(quat_arr(q));
            break;
        }
        case DocKind::CElementDoc: {
            head["c"] = quat_arr(doc.ce.c);
            head["u0"] = doc.ce.u0;
            head["du"] = doc.ce.du;
            head["count"] = doc.ce.samples.size();
            for (const Quaternion& q : doc.ce.samples) lines.push_back(quat_arr(q));
            break;
        }
        case DocKind::HardyDoc: {
            if (doc.hardy1.size() != doc.hardy2.size())
                throw DomainError("document: hardy arrays must pair one to one");
            head["du"] = doc.hardy_du;
            head["count"] = doc.hardy1.size();
            for (std::size_t k = 0; k < doc.hardy1.size(); ++k)
                lines.push_back(json::array({cplx_arr(doc.hardy1[k]), cplx_arr(doc.hardy2[k])}));
            break;
        }
        case DocKind::QVecDoc: {
            head["count"] = doc.vec.entries.size();
            for (const Quaternion& q : doc.vec.entries) lines.push_back(quat_arr(q));
            break;
        }
    }
    std::ostringstream out;
    out << head.dump() << "\n";
    for (const json& l : lines) out << l.dump() << "\n";
    return out.str();
}

SeriesDocument parse_document(const std::string& text) {
    std::istringstream in(text);
    std::string line;
    const auto next_json = [&](json& j) -> bool {
        while (std::getline(in, line)) {
            bool blank = true;
            for (char c : line)
                if (!std::isspace(static_cast<unsigned char>(c))) blank = false;
            if (blank) continue;
            try {
                j = json::parse(line);
            } catch (const json::exception& e) {
                throw DomainError(std::string("document: invalid JSON line: ") + e.what());
            }
            return true;
        }
        return false;
    };

    json head;
    if (!next_json(head) || !head.is_object())
        throw DomainError("document: missing header object");
    if (!head.contains("kind") || !head["kind"].is_string())
        throw DomainError("document: header lacks a kind string");
    const std::string kind = head["kind"].get<std::string>();

    SeriesDocument doc;
    if (head.contains("basis")) {
        const json& b = head["basis"];
        if (!b.is_object() || !b.contains("i") || !b.contains("j"))
            throw DomainError("document: basis must hold arrays i and j");
        doc.has_basis = true;
        doc.basis_i = quat_of(b["i"], "basis i");
        doc.basis_j = quat_of(b["j"], "basis j");
        doc.basis(); // validates unit length and orthogonality
    }

    const auto read_lines = [&](std::size_t n, auto&& take) {
        for (std::size_t k = 0; k < n; ++k) {
            json j;
            if (!next_json(j))
                throw DomainError("document: fewer coefficient lines than the count");
            take(j);
        }
    };

    if (kind == "qseries") {
        doc.kind = DocKind::QSeriesDoc;
        if (!head.contains("min_deg") || !head["min_deg"].is_number_integer())
            throw DomainError("document: qseries header lacks an integer min_deg");
        doc.qs.min_deg = head["min_deg"].get<int>();
        read_lines(count_of(head),
                   [&](const json& j) { doc.qs.coeffs.push_back(quat_of(j, "coefficient")); });
    } else if (kind == "celement") {
        doc.kind = DocKind::CElementDoc;
        if (!head.contains("c") || !head.contains("u0") || !head.contains("du"))
            throw DomainError("document: celement header lacks c, u0, or du");
        doc.ce.c = quat_of(head["c"], "constant");
        doc.ce.u0 = num_of(head["u0"], "u0");
        doc.ce.du = num_of(head["du"], "du");
        read_lines(count_of(head),
                   [&](const json& j) { doc.ce.samples.push_back(quat_of(j, "sample")); });
    } else if (kind == "hardy") {
        doc.kind = DocKind::HardyDoc;
        if (!head.contains("du")) throw DomainError("document: hardy header lacks du");
        doc.hardy_du = num_of(head["du"], "du");
        read_lines(count_of(head), [&](const json& j) {
            if (!j.is_array() || j.size() != 2)
                throw DomainError("document: hardy sample must pair two complex values");
            doc.hardy1.push_back(cplx_of(j[0], "hardy sample"));
            doc.hardy2.push_back(cplx_of(j[1], "hardy sample"));
        });
    } else if (kind == "qvec") {
        doc.kind = DocKind::QVecDoc;
        read_lines(count_of(head),
                   [&](const json& j) { doc.vec.entries.push_back(quat_of(j, "entry")); });
    } else {
        throw DomainError("document: unknown kind '" + kind + "'");
    }
    return doc;
}

SeriesDocument load_document(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw DomainError("cannot open '" + path + "' for reading");
    std::ostringstream buf;
    buf << in.rdbuf();
    if (in.bad()) throw DomainError("read failure on '" + path + "'");
    return parse_document(buf.str());
}

void save_document(const std::string& path, const SeriesDocument& doc) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw DomainError("cannot open '" + path + "' for writing");
    out << render_document(doc);
    out.flush();
    if (!out.good()) throw DomainError("write failure on '" + path + "'");
}

} // namespace qwiener
