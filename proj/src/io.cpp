#include "densfact/io.hpp"

#include <cmath>
#include <utility>

#include <json.hpp>

namespace densfact {

namespace {

using json = nlohmann::ordered_json;

DocumentKind kind_from_string(const std::string& s) {
    if (s == "ensemble") return DocumentKind::ensemble;
    if (s == "density") return DocumentKind::density;
    if (s == "factor") return DocumentKind::factor;
    if (s == "coisometry") return DocumentKind::coisometry;
    throw SchemaError("kind: unknown value \"" + s + "\"");
}

double number_field(const json& j, const std::string& where) {
    if (!j.is_number()) throw SchemaError(where + ": expected a number");
    const double v = j.get<double>();
    if (!std::isfinite(v)) throw InvariantError(where + ": value is not finite");
    return v;
}

Complex pair_field(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2)
        throw SchemaError(where + ": expected a [re, im] pair");
    return Complex(number_field(j[0], where + "[0]"), number_field(j[1], where + "[1]"));
}

// rows x cols from an array of row arrays of [re, im] pairs.
CMatrix matrix_field(const json& j, const std::string& where) {
    if (!j.is_array() || j.empty()) throw SchemaError(where + ": expected a non-empty array of rows");
    const std::size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty())
        throw SchemaError(where + "[0]: expected a non-empty row array");
    const std::size_t cols = j[0].size();
    CMatrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const json& row = j[i];
        if (!row.is_array() || row.size() != cols)
            throw SchemaError(where + "[" + std::to_string(i) + "]: expected a row of length " +
                              std::to_string(cols));
        for (std::size_t c = 0; c < cols; ++c)
            m(i, c) = pair_field(row[c], where + "[" + std::to_string(i) + "][" +
                                              std::to_string(c) + "]");
    }
    return m;
}

json matrix_to_json(const CMatrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j)
            row.push_back(json::array({m(i, j).real(), m(i, j).imag()}));
        rows.push_back(std::move(row));
    }
    return rows;
}

void require_fields(const json& j, std::initializer_list<const char*> required) {
    for (const char* f : required)
        if (!j.contains(f)) throw SchemaError(std::string(f) + ": required field missing");
}

std::size_t dim_field(const json& j, const char* name) {
    if (!j.contains(name)) throw SchemaError(std::string(name) + ": required field missing");
    if (!j[name].is_number_integer() || j[name].get<long long>() < 1)
        throw SchemaError(std::string(name) + ": expected a positive integer");
    return j[name].get<std::size_t>();
}

// Re-raises domain validation failures as InvariantError so callers see one
// error family for "the document is well-formed but not a valid object".
template <typename Fn>
void check_invariants(Fn&& fn) {
    try {
        fn();
    } catch (const ParseError&) {
        throw;
    } catch (const SchemaError&) {
        throw;
    } catch (const InvariantError&) {
        throw;
    } catch (const Error& e) {
        throw InvariantError(e.what());
    }
}

} // namespace

std::string_view to_string(DocumentKind kind) {
    switch (kind) {
        case DocumentKind::ensemble: return "ensemble";
        case DocumentKind::density: return "density";
        case DocumentKind::factor: return "factor";
        case DocumentKind::coisometry: return "coisometry";
    }
    return "unknown";
}

MatrixDocument parse_document(std::string_view text, double tol) {
    json j;
    try {
        j = json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError("parse error at byte " + std::to_string(e.byte) + ": " + e.what());
    }
    if (!j.is_object()) throw SchemaError("document: expected a JSON object");
    if (!j.contains("kind") || !j["kind"].is_string())
        throw SchemaError("kind: required string field missing");

    MatrixDocument doc;
    doc.kind = kind_from_string(j["kind"].get<std::string>());

    switch (doc.kind) {
        case DocumentKind::ensemble: {
            require_fields(j, {"n", "states", "probs"});
            const std::size_t n = dim_field(j, "n");
            const json& states = j["states"];
            if (!states.is_array() || states.empty())
                throw SchemaError("states: expected a non-empty array of state vectors");
            const std::size_t k = states.size();
            doc.matrix = CMatrix(n, k);
            for (std::size_t s = 0; s < k; ++s) {
                const json& vec = states[s];
                if (!vec.is_array() || vec.size() != n)
                    throw SchemaError("states[" + std::to_string(s) + "]: expected " +
                                      std::to_string(n) + " [re, im] pairs");
                for (std::size_t i = 0; i < n; ++i)
                    doc.matrix(i, s) =
                        pair_field(vec[i], "states[" + std::to_string(s) + "][" +
                                               std::to_string(i) + "]");
            }
            const json& probs = j["probs"];
            if (!probs.is_array() || probs.size() != k)
                throw SchemaError("probs: expected " + std::to_string(k) + " numbers");
            doc.probs.resize(k);
            for (std::size_t s = 0; s < k; ++s)
                doc.probs[s] = number_field(probs[s], "probs[" + std::to_string(s) + "]");
            break;
        }
        case DocumentKind::density: {
            require_fields(j, {"n", "matrix"});
            const std::size_t n = dim_field(j, "n");
            doc.matrix = matrix_field(j["matrix"], "matrix");
            if (doc.matrix.rows() != n || doc.matrix.cols() != n)
                throw SchemaError("matrix: expected shape " + std::to_string(n) + "x" +
                                  std::to_string(n));
            break;
        }
        case DocumentKind::factor: {
            require_fields(j, {"n", "matrix"});
            const std::size_t n = dim_field(j, "n");
            doc.matrix = matrix_field(j["matrix"], "matrix");
            if (doc.matrix.rows() != n)
                throw SchemaError("matrix: expected " + std::to_string(n) + " rows");
            break;
        }
        case DocumentKind::coisometry: {
            require_fields(j, {"k", "p", "matrix"});
            const std::size_t k = dim_field(j, "k");
            const std::size_t p = dim_field(j, "p");
            doc.matrix = matrix_field(j["matrix"], "matrix");
            if (doc.matrix.rows() != k || doc.matrix.cols() != p)
                throw SchemaError("matrix: expected shape " + std::to_string(k) + "x" +
                                  std::to_string(p));
            break;
        }
    }

    if (j.contains("meta")) {
        const json& meta = j["meta"];
        if (!meta.is_object()) throw SchemaError("meta: expected a string map");
        for (const auto& [key, value] : meta.items()) {
            if (!value.is_string()) throw SchemaError("meta." + key + ": expected a string");
            doc.meta[key] = value.get<std::string>();
        }
    }

    // Eager domain validation: a parsed document is always a valid object.
    switch (doc.kind) {
        case DocumentKind::ensemble:
            check_invariants([&] { to_ensemble(doc, tol); });
            break;
        case DocumentKind::density:
            check_invariants([&] { to_density(doc, tol); });
            break;
        case DocumentKind::factor:
            check_invariants([&] { to_factor(doc, tol); });
            break;
        case DocumentKind::coisometry:
            check_invariants([&] { to_coisometry(doc, tol); });
            break;
    }
    return doc;
}

std::string serialize_document(const MatrixDocument& doc) {
    if (!all_finite(doc.matrix)) throw InvariantError("matrix: non-finite entry");
    for (double p : doc.probs)
        if (!std::isfinite(p)) throw InvariantError("probs: non-finite entry");

    json j;
    j["kind"] = std::string(to_string(doc.kind));
    switch (doc.kind) {
        case DocumentKind::ensemble: {
            j["n"] = doc.matrix.rows();
            json states = json::array();
            for (std::size_t s = 0; s < doc.matrix.cols(); ++s) {
                json vec = json::array();
                for (std::size_t i = 0; i < doc.matrix.rows(); ++i)
                    vec.push_back(json::array({doc.matrix(i, s).real(), doc.matrix(i, s).imag()}));
                states.push_back(std::move(vec));
            }
            j["states"] = std::move(states);
            j["probs"] = doc.probs;
            break;
        }
        case DocumentKind::density:
        case DocumentKind::factor:
            j["n"] = doc.matrix.rows();
            j["matrix"] = matrix_to_json(doc.matrix);
            break;
        case DocumentKind::coisometry:
            j["k"] = doc.matrix.rows();
            j["p"] = doc.matrix.cols();
            j["matrix"] = matrix_to_json(doc.matrix);
            break;
    }
    if (!doc.meta.empty()) {
        json meta = json::object();
        for (const auto& [key, value] : doc.meta) meta[key] = value;
        j["meta"] = std::move(meta);
    }
    return j.dump(2) + "\n";
}

Ensemble to_ensemble(const MatrixDocument& doc, double tol) {
    if (doc.kind != DocumentKind::ensemble)
        throw SchemaError("kind: expected \"ensemble\", got \"" +
                          std::string(to_string(doc.kind)) + "\"");
    return make_ensemble(doc.matrix, doc.probs, tol);
}

DensityOperator to_density(const MatrixDocument& doc, double tol) {
    if (doc.kind != DocumentKind::density)
        throw SchemaError("kind: expected \"density\", got \"" +
                          std::string(to_string(doc.kind)) + "\"");
    return make_density_operator(doc.matrix, tol);
}

DensityFactor to_factor(const MatrixDocument& doc, double tol) {
    if (doc.kind != DocumentKind::factor)
        throw SchemaError("kind: expected \"factor\", got \"" +
                          std::string(to_string(doc.kind)) + "\"");
    return make_density_factor(doc.matrix, tol);
}

CoIsometry to_coisometry(const MatrixDocument& doc, double tol) {
    if (doc.kind != DocumentKind::coisometry)
        throw SchemaError("kind: expected \"coisometry\", got \"" +
                          std::string(to_string(doc.kind)) + "\"");
    return make_coisometry(doc.matrix, tol);
}

MatrixDocument document_from(const Ensemble& e) {
    MatrixDocument doc;
    doc.kind = DocumentKind::ensemble;
    doc.matrix = e.states;
    doc.probs = e.probs;
    return doc;
}

MatrixDocument document_from(const DensityOperator& d) {
    MatrixDocument doc;
    doc.kind = DocumentKind::density;
    doc.matrix = d.matrix;
    return doc;
}

MatrixDocument document_from(const DensityFactor& f) {
    MatrixDocument doc;
    doc.kind = DocumentKind::factor;
    doc.matrix = f.matrix;
    return doc;
}

MatrixDocument document_from(const CoIsometry& a) {
    MatrixDocument doc;
    doc.kind = DocumentKind::coisometry;
    doc.matrix = a.matrix;
    return doc;
}

} // namespace densfact
