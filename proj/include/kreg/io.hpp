#pragma once

// JSON interchange: ChainDocument input (complex scalars as [re, im],
// matrices as row-major nested arrays, polynomial coefficients lowest degree
// first) and ReportDocument output with the tolerance profile embedded.

#include <string>
#include <vector>

#include <json.hpp>

#include "kreg/corpus.hpp"
#include "kreg/version.hpp"

namespace kreg {

using json = nlohmann::json;

enum class DocumentKind { operator_chain, commuting_tuple, analytic_chain };

inline std::string kind_name(DocumentKind kind) {
    switch (kind) {
        case DocumentKind::operator_chain: return "operator_chain";
        case DocumentKind::commuting_tuple: return "commuting_tuple";
        case DocumentKind::analytic_chain: return "analytic_chain";
    }
    return "unknown";
}

struct ChainDocument {
    DocumentKind kind = DocumentKind::operator_chain;
    std::vector<ComplexMatrix> matrices;                  // operator kinds
    std::vector<std::vector<ComplexMatrix>> polynomials;  // analytic kind
    ToleranceProfile tolerances;
};

namespace detail {

inline Complex complex_from_json(const json& j, const std::string& path) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        throw ParseError(path, "expected a complex scalar as [re, im]");
    return {j[0].get<double>(), j[1].get<double>()};
}

inline ComplexMatrix matrix_from_json(const json& j, const std::string& path) {
    if (!j.is_array() || j.empty()) throw ParseError(path, "expected a nonempty array of rows");
    const std::size_t rows = j.size();
    if (!j[0].is_array() || j[0].empty())
        throw ParseError(path + "[0]", "expected a nonempty row array");
    const std::size_t cols = j[0].size();
    ComplexMatrix m(static_cast<Index>(rows), static_cast<Index>(cols));
    for (std::size_t r = 0; r < rows; ++r) {
        const std::string row_path = path + "[" + std::to_string(r) + "]";
        if (!j[r].is_array() || j[r].size() != cols)
            throw ParseError(row_path, "expected a row of " + std::to_string(cols) + " entries");
        for (std::size_t c = 0; c < cols; ++c)
            m(static_cast<Index>(r), static_cast<Index>(c)) =
                complex_from_json(j[r][c], row_path + "[" + std::to_string(c) + "]");
    }
    if (!m.allFinite()) throw ParseError(path, "matrix entries must be finite");
    return m;
}

inline json complex_to_json(const Complex& z) { return json::array({z.real(), z.imag()}); }

inline json matrix_to_json(const ComplexMatrix& m) {
    json rows = json::array();
    for (Index r = 0; r < m.rows(); ++r) {
        json row = json::array();
        for (Index c = 0; c < m.cols(); ++c) row.push_back(complex_to_json(m(r, c)));
        rows.push_back(std::move(row));
    }
    return rows;
}

inline void apply_tolerances(const json& j, const std::string& path, ToleranceProfile& tol) {
    if (!j.is_object()) throw ParseError(path, "expected an object of tolerance overrides");
    for (const auto& [key, value] : j.items()) {
        if (!value.is_number())
            throw ParseError(path + "." + key, "tolerance must be a number");
        const double v = value.get<double>();
        if (key == "rank_tol") tol.rank_tol = v;
        else if (key == "unitary_tol") tol.unitary_tol = v;
        else if (key == "contraction_tol") tol.contraction_tol = v;
        else if (key == "commute_tol") tol.commute_tol = v;
        else throw ParseError(path + "." + key, "unknown tolerance name");
    }
    if (!tol.valid()) throw ParseError(path, "tolerances must lie strictly inside (0, 1)");
}

}  // namespace detail

inline json tolerances_to_json(const ToleranceProfile& tol) {
    return {{"rank_tol", tol.rank_tol},
            {"unitary_tol", tol.unitary_tol},
            {"contraction_tol", tol.contraction_tol},
            {"commute_tol", tol.commute_tol}};
}

inline ChainDocument chain_document_from_json(const json& j) {
    if (!j.is_object()) throw ParseError("$", "document must be a JSON object");
    ChainDocument doc;
    bool have_kind = false;
    for (const auto& [key, value] : j.items()) {
        if (key == "kind") {
            if (!value.is_string()) throw ParseError("$.kind", "kind must be a string");
            const std::string name = value.get<std::string>();
            if (name == "operator_chain") doc.kind = DocumentKind::operator_chain;
            else if (name == "commuting_tuple") doc.kind = DocumentKind::commuting_tuple;
            else if (name == "analytic_chain") doc.kind = DocumentKind::analytic_chain;
            else
                throw ParseError("$.kind", "expected operator_chain, commuting_tuple, or "
                                           "analytic_chain");
            have_kind = true;
        } else if (key == "matrices") {
            if (!value.is_array() || value.empty())
                throw ParseError("$.matrices", "expected a nonempty array of matrices");
            for (std::size_t i = 0; i < value.size(); ++i)
                doc.matrices.push_back(detail::matrix_from_json(
                    value[i], "$.matrices[" + std::to_string(i) + "]"));
        } else if (key == "polynomials") {
            if (!value.is_array() || value.empty())
                throw ParseError("$.polynomials", "expected a nonempty array of polynomials");
            for (std::size_t i = 0; i < value.size(); ++i) {
                const std::string p = "$.polynomials[" + std::to_string(i) + "]";
                if (!value[i].is_array() || value[i].empty())
                    throw ParseError(p, "expected a nonempty coefficient list, lowest degree "
                                        "first");
                std::vector<ComplexMatrix> coeffs;
                for (std::size_t d = 0; d < value[i].size(); ++d)
                    coeffs.push_back(detail::matrix_from_json(
                        value[i][d], p + "[" + std::to_string(d) + "]"));
                doc.polynomials.push_back(std::move(coeffs));
            }
        } else if (key == "tolerances") {
            detail::apply_tolerances(value, "$.tolerances", doc.tolerances);
        } else {
            throw ParseError("$." + key, "unknown document key");
        }
    }
    if (!have_kind) throw ParseError("$", "missing required key: kind");
    if (doc.kind == DocumentKind::analytic_chain) {
        if (doc.polynomials.empty())
            throw ParseError("$", "analytic_chain requires polynomials");
        if (!doc.matrices.empty())
            throw ParseError("$.matrices", "analytic_chain carries polynomials, not matrices");
    } else {
        if (doc.matrices.empty())
            throw ParseError("$", kind_name(doc.kind) + " requires matrices");
        if (!doc.polynomials.empty())
            throw ParseError("$.polynomials",
                             kind_name(doc.kind) + " carries matrices, not polynomials");
    }
    return doc;
}

inline ChainDocument parse_chain_document(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::parse_error& e) {
        throw ParseError("", e.what());
    }
    return chain_document_from_json(j);
}

inline json chain_document_to_json(const ChainDocument& doc) {
    json j;
    j["kind"] = kind_name(doc.kind);
    if (doc.kind == DocumentKind::analytic_chain) {
        json polys = json::array();
        for (const auto& coeffs : doc.polynomials) {
            json poly = json::array();
            for (const ComplexMatrix& c : coeffs) poly.push_back(detail::matrix_to_json(c));
            polys.push_back(std::move(poly));
        }
        j["polynomials"] = std::move(polys);
    } else {
        json mats = json::array();
        for (const ComplexMatrix& m : doc.matrices) mats.push_back(detail::matrix_to_json(m));
        j["matrices"] = std::move(mats);
    }
    j["tolerances"] = tolerances_to_json(doc.tolerances);
    return j;
}

// Corpus fixtures double as format documentation: every case serializes to a
// ChainDocument of the matching kind.
inline ChainDocument document_for_case(const CorpusCase& c) {
    ChainDocument doc;
    if (const auto* tuple = std::get_if<CommutingTuple>(&c.data)) {
        doc.kind = DocumentKind::commuting_tuple;
        for (const Contraction& op : tuple->operators) doc.matrices.push_back(op.matrix);
        doc.tolerances = tuple->tol;
    } else if (const auto* chain = std::get_if<FactorizationChain>(&c.data)) {
        doc.kind = DocumentKind::operator_chain;
        for (const Contraction& f : chain->factors) doc.matrices.push_back(f.matrix);
        doc.tolerances = chain->tol;
    } else if (const auto* analytic = std::get_if<AnalyticChain>(&c.data)) {
        doc.kind = DocumentKind::analytic_chain;
        for (const MatrixPolynomial& p : analytic->factors) doc.polynomials.push_back(p.coeffs);
        doc.tolerances = analytic->tol;
    }
    return doc;
}

enum ExitCode : int {
    exit_regular = 0,
    exit_not_regular = 1,
    exit_invalid_input = 2,
    exit_inconsistent = 3,
};

inline ExitCode exit_code_for(const RegularityReport& r) {
    if (!r.consistent) return exit_inconsistent;
    return r.regular() ? exit_regular : exit_not_regular;
}

inline std::vector<std::string> criteria_fired(const RegularityReport& r) {
    std::vector<std::string> fired;
    const bool v = r.regular();
    if (r.verdict_unitary == v) fired.push_back("unitary");
    if (r.verdict_dimension == v) fired.push_back("dimension");
    if (r.verdict_cascade == v) fired.push_back("cascade");
    if (r.verdict_intersection == v) fired.push_back("intersection");
    return fired;
}

inline json regularity_to_json(const RegularityReport& r) {
    json dims = json::array();
    for (Index d : r.factor_dims) dims.push_back(d);
    return {{"dim_product", r.dim_product},
            {"dim_sum", r.dim_sum},
            {"factor_defect_dims", std::move(dims)},
            {"isometry_defect", r.isometry_defect},
            {"unitarity_defect_left", r.unitarity_defect_left},
            {"unitarity_defect_right", r.unitarity_defect_right},
            {"verdict_unitary", r.verdict_unitary},
            {"verdict_dimension", r.verdict_dimension},
            {"verdict_cascade", r.verdict_cascade},
            {"verdict_intersection", r.verdict_intersection},
            {"consistent", r.consistent},
            {"criteria_fired", criteria_fired(r)},
            {"z_matrix", detail::matrix_to_json(r.z_matrix)}};
}

inline json report_skeleton(const std::string& command, const ToleranceProfile& tol) {
    return {{"tool", tool_name},
            {"version", tool_version},
            {"command", command},
            {"tolerances", tolerances_to_json(tol)}};
}

}  // namespace kreg
