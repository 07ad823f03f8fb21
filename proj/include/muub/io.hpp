#pragma once

#include <cstdio>
#include <fstream>
#include <numeric>
#include <ostream>
#include <set>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "muub/choi.hpp"
#include "muub/monoid.hpp"
#include "muub/search.hpp"

namespace muub::io {

// Collection document, schema version "1". Unknown fields are rejected:
// these files are certificates, so silent schema drift must not parse.
//
// {
//   "schema_version": "1",
//   "dim": 3, "span_dim": 9,
//   "root_order": 3,            // optional; required by weyl_exponents
//   "constant_C": 1.0,          // optional
//   "bases": [ { "label": "...", "elements": [ {
//       "matrix": [[[re,im], ...], ...],          // optional if exponents given
//       "weyl_exponents": [{"r":0,"s":0,"g":0}],  // exact phase terms, optional
//       "z_coeffs": [[re,im], ...]                // clock-span docs, optional
//   } ] } ]
// }
//
// An element with m exponent terms materializes as
// (1/sqrt(m)) sum_j w_order^{g_j} X^{r_j} Z^{s_j}; when a matrix is stored
// alongside, the two must agree to the read tolerance.

inline constexpr const char* kSchemaVersion = "1";

namespace detail {

using nlohmann::json;

inline json complex_to_json(Complex z) { return json::array({z.real(), z.imag()}); }

inline json matrix_to_json(const OperatorMatrix& m) {
    json rows = json::array();
    for (int i = 0; i < m.dim(); ++i) {
        json row = json::array();
        for (int j = 0; j < m.dim(); ++j) row.push_back(complex_to_json(m.at(i, j)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline void require_keys(const json& obj, const std::set<std::string>& allowed,
                         const std::set<std::string>& required, const char* where) {
    if (!obj.is_object())
        throw DocumentError(std::string(where) + ": expected a JSON object");
    for (const auto& [key, value] : obj.items())
        if (!allowed.count(key))
            throw DocumentError(std::string(where) + ": unknown field '" + key + "'");
    for (const std::string& key : required)
        if (!obj.contains(key))
            throw DocumentError(std::string(where) + ": missing field '" + key + "'");
}

inline Complex complex_from_json(const json& j, const char* where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw DocumentError(std::string(where) + ": complex values are [re, im] pairs");
    const double re = j[0].get<double>();
    const double im = j[1].get<double>();
    if (!std::isfinite(re) || !std::isfinite(im))
        throw DocumentError(std::string(where) + ": non-finite entry");
    return {re, im};
}

inline OperatorMatrix matrix_from_json(const json& j, int d, const char* where) {
    if (!j.is_array() || static_cast<int>(j.size()) != d)
        throw DocumentError(std::string(where) + ": matrix must have d rows");
    OperatorMatrix m(d);
    for (int i = 0; i < d; ++i) {
        const json& row = j[i];
        if (!row.is_array() || static_cast<int>(row.size()) != d)
            throw DocumentError(std::string(where) + ": matrix row must have d entries");
        for (int c = 0; c < d; ++c) m.at(i, c) = complex_from_json(row[c], where);
    }
    return m;
}

inline int get_int(const json& obj, const char* key, const char* where) {
    const json& v = obj.at(key);
    if (!v.is_number_integer())
        throw DocumentError(std::string(where) + ": field '" + key + "' must be an integer");
    return v.get<int>();
}

}  // namespace detail

struct WriteOptions {
    // Exponent-only documents are exact and compact; dropping matrices is
    // only possible when every basis carries integer phase terms.
    bool include_matrices = true;
};

/// Serialize a collection. Exact exponent terms and clock-span coefficients
/// are included where available / applicable.
inline void write_collection(std::ostream& os, const MuubCollection& collection,
                             WriteOptions opts = {}) {
    using nlohmann::json;
    if (collection.bases.empty())
        throw std::invalid_argument("write_collection: collection has no bases");
    if (!opts.include_matrices)
        for (const OperatorBasis& b : collection.bases)
            if (!b.has_exponents())
                throw std::invalid_argument(
                    "write_collection: exponent-only output needs exponents on every basis");
    const int d = collection.dim;
    const int span = collection.bases.front().span_dim;
    for (const OperatorBasis& b : collection.bases)
        if (b.dim != d || b.span_dim != span)
            throw std::invalid_argument("write_collection: inconsistent basis shapes");

    int doc_order = 0;
    for (const OperatorBasis& b : collection.bases)
        if (b.has_exponents())
            doc_order = doc_order == 0 ? b.exponent_order : std::lcm(doc_order, b.exponent_order);

    json doc;
    doc["schema_version"] = kSchemaVersion;
    doc["dim"] = d;
    doc["span_dim"] = span;
    if (doc_order > 0) doc["root_order"] = doc_order;
    if (collection.constant_C > 0.0) doc["constant_C"] = collection.constant_C;

    json bases = json::array();
    for (const OperatorBasis& b : collection.bases) {
        json basis;
        basis["label"] = b.label;
        json elements = json::array();
        for (size_t ei = 0; ei < b.elements.size(); ++ei) {
            json element;
            if (opts.include_matrices) element["matrix"] = detail::matrix_to_json(b.elements[ei]);
            if (b.has_exponents()) {
                const int scale = doc_order / b.exponent_order;
                json terms = json::array();
                for (const WeylTerm& t : b.element_exponents[ei])
                    terms.push_back({{"r", t.r}, {"s", t.s}, {"g", t.g * scale}});
                element["weyl_exponents"] = std::move(terms);
            }
            if (span == d) {
                const std::vector<Complex> c = weyl_expand(b.elements[ei]);
                json zc = json::array();
                for (int s = 0; s < d; ++s) zc.push_back(detail::complex_to_json(c[s]));
                element["z_coeffs"] = std::move(zc);
            }
            elements.push_back(std::move(element));
        }
        basis["elements"] = std::move(elements);
        bases.push_back(std::move(basis));
    }
    doc["bases"] = std::move(bases);
    os << doc.dump(2) << '\n';
}

/// Parse and validate a collection document; exponent-only elements are
/// materialized, redundant representations are cross-checked against `tol`.
inline MuubCollection read_collection(std::istream& is, Tolerance tol = {}) {
    using nlohmann::json;
    json doc;
    try {
        doc = json::parse(is);
    } catch (const json::exception& e) {
        throw DocumentError(std::string("read_collection: malformed JSON: ") + e.what());
    }

    detail::require_keys(doc,
                         {"schema_version", "dim", "span_dim", "root_order", "constant_C", "bases"},
                         {"schema_version", "dim", "span_dim", "bases"}, "document");
    if (!doc["schema_version"].is_string() ||
        doc["schema_version"].get<std::string>() != kSchemaVersion)
        throw DocumentError("read_collection: unsupported schema_version");

    const int d = detail::get_int(doc, "dim", "document");
    if (d < 2) throw DocumentError("read_collection: dim must be >= 2");
    const int span = detail::get_int(doc, "span_dim", "document");
    if (span < 1 || span > d * d)
        throw DocumentError("read_collection: span_dim must lie in [1, d^2]");

    int root_order = 0;
    if (doc.contains("root_order")) {
        root_order = detail::get_int(doc, "root_order", "document");
        if (root_order < 1) throw DocumentError("read_collection: root_order must be positive");
    }

    MuubCollection collection;
    collection.dim = d;
    if (doc.contains("constant_C")) {
        if (!doc["constant_C"].is_number())
            throw DocumentError("read_collection: constant_C must be a number");
        collection.constant_C = doc["constant_C"].get<double>();
    }

    const json& bases = doc["bases"];
    if (!bases.is_array() || bases.empty())
        throw DocumentError("read_collection: 'bases' must be a non-empty array");

    for (const json& jb : bases) {
        detail::require_keys(jb, {"label", "elements"}, {"label", "elements"}, "basis");
        if (!jb["label"].is_string())
            throw DocumentError("read_collection: basis label must be a string");

        OperatorBasis basis;
        basis.dim = d;
        basis.span_dim = span;
        basis.label = jb["label"].get<std::string>();

        const json& elements = jb["elements"];
        if (!elements.is_array() || static_cast<int>(elements.size()) != span)
            throw DocumentError("read_collection: basis '" + basis.label + "' must have " +
                                std::to_string(span) + " elements");

        bool all_exponents = true;
        std::vector<std::vector<WeylTerm>> exponents;
        for (const json& je : elements) {
            detail::require_keys(je, {"matrix", "weyl_exponents", "z_coeffs"}, {}, "element");
            if (!je.contains("matrix") && !je.contains("weyl_exponents") &&
                !je.contains("z_coeffs"))
                throw DocumentError("read_collection: element carries no representation");

            std::vector<WeylTerm> terms;
            if (je.contains("weyl_exponents")) {
                if (root_order == 0)
                    throw DocumentError("read_collection: weyl_exponents require root_order");
                const json& jt = je["weyl_exponents"];
                if (!jt.is_array() || jt.empty())
                    throw DocumentError("read_collection: weyl_exponents must be a non-empty array");
                std::set<std::pair<int, int>> seen;
                for (const json& term : jt) {
                    detail::require_keys(term, {"r", "s", "g"}, {"r", "s", "g"}, "weyl term");
                    WeylTerm t{detail::get_int(term, "r", "weyl term"),
                               detail::get_int(term, "s", "weyl term"),
                               detail::get_int(term, "g", "weyl term")};
                    if (t.r < 0 || t.r >= d || t.s < 0 || t.s >= d)
                        throw DocumentError("read_collection: weyl term index out of [0, d)");
                    if (t.g < 0 || t.g >= root_order)
                        throw DocumentError("read_collection: exponent out of [0, root_order)");
                    if (!seen.insert({t.r, t.s}).second)
                        throw DocumentError("read_collection: duplicate weyl term index");
                    terms.push_back(t);
                }
            } else {
                all_exponents = false;
            }

            // Pick the authoritative representation, check the others against it.
            OperatorMatrix m(d);
            bool have = false;
            if (!terms.empty()) {
                m = matrix_from_weyl_terms(d, root_order, terms);
                have = true;
            }
            if (je.contains("matrix")) {
                OperatorMatrix stored = detail::matrix_from_json(je["matrix"], d, "element");
                if (have) {
                    if ((stored - m).max_abs() > tol.eps)
                        throw DocumentError(
                            "read_collection: matrix disagrees with its weyl_exponents");
                } else {
                    m = std::move(stored);
                    have = true;
                }
            }
            if (je.contains("z_coeffs")) {
                if (span != d)
                    throw DocumentError("read_collection: z_coeffs only apply when span_dim = dim");
                const json& jz = je["z_coeffs"];
                if (!jz.is_array() || static_cast<int>(jz.size()) != d)
                    throw DocumentError("read_collection: z_coeffs must have d entries");
                SubspaceOperator k{d, {}};
                for (const json& c : jz) k.z_coeffs.push_back(detail::complex_from_json(c, "z_coeffs"));
                OperatorMatrix zm = k.to_matrix();
                if (have) {
                    if ((zm - m).max_abs() > tol.eps)
                        throw DocumentError("read_collection: z_coeffs disagree with the element");
                } else {
                    m = std::move(zm);
                    have = true;
                }
            }

            basis.elements.push_back(std::move(m));
            exponents.push_back(std::move(terms));
        }

        if (all_exponents) {
            basis.exponent_order = root_order;
            basis.element_exponents = std::move(exponents);
        }
        collection.bases.push_back(std::move(basis));
    }
    return collection;
}

inline void save_collection(const std::string& path, const MuubCollection& collection,
                            WriteOptions opts = {}) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw std::runtime_error("save_collection: cannot open '" + path + "' for writing");
    write_collection(os, collection, opts);
}

inline MuubCollection load_collection(const std::string& path, Tolerance tol = {}) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw DocumentError("load_collection: cannot open '" + path + "'");
    return read_collection(is, tol);
}

/// CSV with header `d,R`; R carries 10 significant digits.
inline void write_ratio_csv(std::ostream& os, const std::vector<RatioRow>& rows) {
    os << "# R = (d+1)/d for the first " << rows.size()
       << " primes starting at 3; d = 2 is excluded from the count (counting it would end"
          " the window one prime earlier)\n";
    os << "d,R\n";
    char buf[48];
    for (const RatioRow& row : rows) {
        std::snprintf(buf, sizeof buf, "%.10g", row.R);
        os << row.d << ',' << buf << '\n';
    }
}

}  // namespace muub::io
