#pragma once

// Command layer behind the CLI binary: load documents, run checks, build
// ReportDocuments, map verdicts to exit codes.  Exit codes are a total
// function of the verdict lattice: 0 regular, 1 not regular, 2 invalid
// input, 3 internal inconsistency between criteria.

#include <cmath>
#include <complex>
#include <fstream>
#include <numbers>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "kreg/io.hpp"

namespace kreg {

struct CommandResult {
    int exit_code = exit_invalid_input;
    json report;
    std::string csv;  // populated instead of a report when CSV output is selected
    std::vector<std::string> diagnostics;
};

struct CommonFlags {
    std::optional<double> tol_rank;
    std::optional<double> tol_unitary;
};

namespace detail {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ParseError(path, "cannot open file");
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline ToleranceProfile effective_tolerances(const ChainDocument& doc, const CommonFlags& flags) {
    ToleranceProfile tol = doc.tolerances;
    if (flags.tol_rank) tol.rank_tol = *flags.tol_rank;
    if (flags.tol_unitary) tol.unitary_tol = *flags.tol_unitary;
    if (!tol.valid()) throw InvalidArgument("tolerances must lie strictly inside (0, 1)");
    return tol;
}

inline CommandResult failure(int code, const std::string& message) {
    CommandResult result;
    result.exit_code = code;
    result.diagnostics.push_back(message);
    return result;
}

template <typename Fn>
inline CommandResult guarded(Fn&& fn) {
    try {
        return fn();
    } catch (const NumericalBreakdown& e) {
        return failure(exit_inconsistent, std::string("numerical breakdown: ") + e.what());
    } catch (const Error& e) {
        return failure(exit_invalid_input, e.what());
    }
}

}  // namespace detail

inline CommandResult cmd_check(const std::string& path, const CommonFlags& flags = {}) {
    return detail::guarded([&] {
        const ChainDocument doc = parse_chain_document(detail::read_file(path));
        if (doc.kind != DocumentKind::operator_chain)
            return detail::failure(exit_invalid_input, "check expects an operator_chain document");
        const ToleranceProfile tol = detail::effective_tolerances(doc, flags);
        const FactorizationChain chain = build_chain(doc.matrices, tol);
        const RegularityReport r = check_k_regular(chain);

        CommandResult result;
        result.exit_code = exit_code_for(r);
        result.report = report_skeleton("check", tol);
        result.report["kind"] = kind_name(doc.kind);
        result.report["k"] = chain.k;
        result.report["regularity"] = regularity_to_json(r);
        result.report["verdict"] =
            r.consistent ? (r.regular() ? "regular" : "not_regular") : "inconsistent";
        result.report["exit_code"] = result.exit_code;
        return result;
    });
}

struct SymmetricFlags : CommonFlags {
    bool no_shortcut = false;
    int max_k = 8;
};

inline CommandResult cmd_symmetric(const std::string& path, const SymmetricFlags& flags = {}) {
    return detail::guarded([&] {
        const ChainDocument doc = parse_chain_document(detail::read_file(path));
        if (doc.kind != DocumentKind::commuting_tuple)
            return detail::failure(exit_invalid_input,
                                   "symmetric expects a commuting_tuple document");
        const ToleranceProfile tol = detail::effective_tolerances(doc, flags);
        const CommutingTuple tuple = validate_tuple(doc.matrices, tol);
        const SymmetricReport r = symmetric_k_regular(tuple, !flags.no_shortcut, tol, flags.max_k);

        bool consistent = true;
        json table = json::array();
        for (const auto& [sigma, rr] : r.per_permutation) {
            consistent = consistent && rr.consistent;
            table.push_back({{"sigma", sigma},
                             {"regular", rr.regular()},
                             {"dim_product", rr.dim_product},
                             {"dim_sum", rr.dim_sum},
                             {"consistent", rr.consistent},
                             {"isometry_defect", rr.isometry_defect}});
        }

        CommandResult result;
        result.exit_code =
            consistent ? (r.verdict ? exit_regular : exit_not_regular) : exit_inconsistent;
        result.report = report_skeleton("symmetric", tol);
        result.report["kind"] = kind_name(doc.kind);
        result.report["k"] = tuple.k;
        json dims = json::array();
        for (Index d : r.per_factor_defect_dims) dims.push_back(d);
        result.report["symmetric"] = {{"verdict", r.verdict},
                                      {"shortcut_used", r.shortcut_used},
                                      {"product_defect_dim", r.product_defect_dim},
                                      {"factor_defect_dims", std::move(dims)},
                                      {"permutations", std::move(table)}};
        result.report["verdict"] = consistent ? (r.verdict ? "symmetric_regular"
                                                           : "not_symmetric_regular")
                                              : "inconsistent";
        result.report["exit_code"] = result.exit_code;
        return result;
    });
}

struct CharFnFlags : CommonFlags {
    std::optional<Complex> z;
    std::optional<int> grid;
    bool csv = false;
};

// Grid samples sit just inside the boundary, at radius 1 − 1e−9.
inline CommandResult cmd_charfn(const std::string& path, const CharFnFlags& flags) {
    return detail::guarded([&] {
        const ChainDocument doc = parse_chain_document(detail::read_file(path));
        if (doc.kind != DocumentKind::operator_chain || doc.matrices.size() != 1)
            return detail::failure(exit_invalid_input,
                                   "charfn expects an operator_chain document with one matrix");
        if (flags.z.has_value() == flags.grid.has_value())
            return detail::failure(exit_invalid_input, "choose exactly one of --z and --grid");
        const ToleranceProfile tol = detail::effective_tolerances(doc, flags);
        const Contraction t = make_contraction(doc.matrices.front(), tol);

        std::vector<Complex> points;
        if (flags.z) {
            points.push_back(*flags.z);
        } else {
            if (*flags.grid < 1)
                return detail::failure(exit_invalid_input, "--grid needs at least 1 point");
            const double radius = 1.0 - 1e-9;
            for (int j = 0; j < *flags.grid; ++j)
                points.push_back(std::polar(radius, 2.0 * std::numbers::pi * j / *flags.grid));
        }

        const DefectSpace dom = defect_space(t, Side::domain, tol);
        const DefectSpace codom = defect_space(t, Side::codomain, tol);
        std::vector<ComplexMatrix> values;
        for (const Complex& z : points) values.push_back(char_fn(t, z, tol));

        CommandResult result;
        result.exit_code = exit_regular;
        if (flags.csv) {
            std::ostringstream csv;
            csv << "z_re,z_im,row,col,value_re,value_im\n";
            for (std::size_t p = 0; p < points.size(); ++p)
                for (Index r = 0; r < values[p].rows(); ++r)
                    for (Index c = 0; c < values[p].cols(); ++c)
                        csv << points[p].real() << ',' << points[p].imag() << ',' << r << ',' << c
                            << ',' << values[p](r, c).real() << ',' << values[p](r, c).imag()
                            << '\n';
            result.csv = csv.str();
            if (dom.dim == 0 && codom.dim == 0)
                result.diagnostics.push_back("trivial defect spaces");
            return result;
        }
        result.report = report_skeleton("charfn", tol);
        result.report["defect_dims"] = {{"domain", dom.dim}, {"codomain", codom.dim}};
        json point_list = json::array();
        for (std::size_t p = 0; p < points.size(); ++p)
            point_list.push_back({{"z", detail::complex_to_json(points[p])},
                                  {"value", detail::matrix_to_json(values[p])}});
        result.report["points"] = std::move(point_list);
        if (dom.dim == 0 && codom.dim == 0)
            result.report["note"] = "trivial defect spaces";
        result.report["exit_code"] = result.exit_code;
        return result;
    });
}

struct CorpusFlags {
    std::optional<std::string> case_name;
    bool all = false;
};

inline CommandResult cmd_corpus(const CorpusFlags& flags) {
    return detail::guarded([&] {
        if (flags.all == flags.case_name.has_value())
            return detail::failure(exit_invalid_input, "choose exactly one of --case and --all");
        std::vector<std::string> names;
        if (flags.all)
            names = {"kaijser_varopoulos", "crabb_davie", "parrott", "shift_compression",
                     "diag_z3c"};
        else
            names = {*flags.case_name};

        CommandResult result;
        result.report = report_skeleton("corpus", ToleranceProfile{});
        json table = json::array();
        bool all_pass = true;
        for (const std::string& name : names) {
            CorpusCase c;
            if (name == "kaijser_varopoulos") c = kaijser_varopoulos();
            else if (name == "crabb_davie") c = crabb_davie();
            else if (name == "parrott") c = parrott();
            else if (name == "shift_compression") c = shift_compression(3);
            else if (name == "diag_z3c") c = diag_z3c(0.5);
            else
                return detail::failure(exit_invalid_input, "unknown corpus case: " + name);

            const std::vector<CorpusCheckRow> rows = run_case(c);
            const bool pass = case_passes(rows);
            all_pass = all_pass && pass;
            json row_list = json::array();
            for (const CorpusCheckRow& r : rows)
                row_list.push_back({{"field", r.field},
                                    {"expected", r.expected},
                                    {"computed", r.computed},
                                    {"pass", r.pass}});
            json entry = {{"name", c.name},
                          {"citation", c.expected.citation},
                          {"rows", std::move(row_list)},
                          {"pass", pass}};
            if (!c.warnings.empty()) entry["warnings"] = c.warnings;
            table.push_back(std::move(entry));
        }
        result.report["cases"] = std::move(table);
        result.report["all_pass"] = all_pass;
        result.exit_code = all_pass ? exit_regular : exit_not_regular;
        result.report["exit_code"] = result.exit_code;
        return result;
    });
}

struct BoundaryFlags : CommonFlags {
    int samples = 256;
};

inline CommandResult cmd_boundary(const std::string& path, const BoundaryFlags& flags = {}) {
    return detail::guarded([&] {
        const ChainDocument doc = parse_chain_document(detail::read_file(path));
        if (doc.kind != DocumentKind::analytic_chain)
            return detail::failure(exit_invalid_input,
                                   "boundary expects an analytic_chain document");
        const ToleranceProfile tol = detail::effective_tolerances(doc, flags);
        const BoundaryGrid grid = make_grid(flags.samples);
        std::vector<MatrixPolynomial> factors;
        for (const auto& coeffs : doc.polynomials)
            factors.push_back(make_polynomial(coeffs, tol));
        const AnalyticChain chain = make_analytic_chain(std::move(factors), tol);
        const SampledVerdict sv = sampled_regularity(chain, grid, tol);

        CommandResult result;
        result.exit_code = sv.verdict ? exit_regular : exit_not_regular;
        result.report = report_skeleton("boundary", tol);
        result.report["kind"] = kind_name(doc.kind);
        result.report["label"] = "SAMPLED";
        result.report["samples"] = grid.n_samples;
        result.report["verdict"] = sv.verdict ? "regular_sampled" : "not_regular_sampled";
        result.report["failures"] = sv.failures;
        result.report["exit_code"] = result.exit_code;
        return result;
    });
}

}  // namespace kreg
