#pragma once

#include <map>
#include <string>
#include <string_view>

#include "densfact/density.hpp"
#include "densfact/equivalence.hpp"

namespace densfact {

enum class DocumentKind { ensemble, density, factor, coisometry };

std::string_view to_string(DocumentKind kind);

// One matrix object per document, kind-tagged. Complex entries travel as
// [re, im] pairs. For an ensemble document `matrix` holds the normalized
// states as columns and `probs` the distribution; the other kinds carry the
// matrix alone. `meta` is a free-form string map preserved on round trips.
struct MatrixDocument {
    DocumentKind kind = DocumentKind::density;
    CMatrix matrix;
    std::vector<double> probs; // ensemble only
    std::map<std::string, std::string> meta;
};

// Parses and fully validates a document: malformed text raises ParseError
// (with position), structural problems raise SchemaError (naming the field),
// and violations of the domain type's invariants raise InvariantError.
MatrixDocument parse_document(std::string_view text, double tol = kDefaultTol);

// Deterministic serialization: fixed key order, two-space indent, shortest
// round-trip decimals. serialize(parse(serialize(d))) == serialize(d).
// Throws InvariantError if any entry is non-finite.
std::string serialize_document(const MatrixDocument& doc);

// Domain conversions (documents are validated on parse, these re-check).
Ensemble to_ensemble(const MatrixDocument& doc, double tol = kDefaultTol);
DensityOperator to_density(const MatrixDocument& doc, double tol = kDefaultTol);
DensityFactor to_factor(const MatrixDocument& doc, double tol = kDefaultTol);
CoIsometry to_coisometry(const MatrixDocument& doc, double tol = kDefaultTol);

MatrixDocument document_from(const Ensemble& e);
MatrixDocument document_from(const DensityOperator& d);
MatrixDocument document_from(const DensityFactor& f);
MatrixDocument document_from(const CoIsometry& a);

} // namespace densfact
