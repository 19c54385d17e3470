// kreg: regularity checks for contractive factorizations.
//
// Subcommands: check, symmetric, charfn, corpus, boundary.  Reports go to
// stdout as JSON (CSV for charfn --csv); diagnostics go to stderr.  Exit
// codes: 0 regular / all pass, 1 not regular / mismatch, 2 invalid input,
// 3 internal criterion disagreement.

#include <iostream>
#include <string>

#include <CLI11.hpp>

#include <kreg/cli.hpp>

namespace {

int emit(const kreg::CommandResult& result) {
    for (const std::string& d : result.diagnostics) std::cerr << "kreg: " << d << '\n';
    if (!result.csv.empty())
        std::cout << result.csv;
    else if (!result.report.is_null())
        std::cout << result.report.dump(2) << '\n';
    return result.exit_code;
}

bool parse_complex(const std::string& text, kreg::Complex& z) {
    try {
        std::size_t used = 0;
        const double re = std::stod(text, &used);
        if (used == text.size()) {
            z = {re, 0.0};
            return true;
        }
        if (text[used] != ',') return false;
        std::size_t used_im = 0;
        const std::string rest = text.substr(used + 1);
        const double im = std::stod(rest, &used_im);
        if (used_im != rest.size()) return false;
        z = {re, im};
        return true;
    } catch (const std::exception&) {
        return false;
    }
}

void add_tolerance_flags(CLI::App* cmd, kreg::CommonFlags& flags) {
    cmd->add_option("--tol-rank", flags.tol_rank, "Rank cutoff tolerance (default 1e-10)");
    cmd->add_option("--tol-unitary", flags.tol_unitary,
                    "Unitarity/isometry defect tolerance (default 1e-8)");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Regularity checks for factorizations of contractions"};
    app.set_version_flag("--version", std::string(kreg::tool_name) + " " + kreg::tool_version);
    app.require_subcommand(1);

    std::string path;
    kreg::CommonFlags check_flags;
    CLI::App* check = app.add_subcommand("check", "Check k-regularity of an operator chain");
    check->add_option("path", path, "ChainDocument JSON file")->required();
    add_tolerance_flags(check, check_flags);

    kreg::SymmetricFlags sym_flags;
    CLI::App* symmetric =
        app.add_subcommand("symmetric", "Check symmetric k-regularity of a commuting tuple");
    symmetric->add_option("path", path, "ChainDocument JSON file")->required();
    add_tolerance_flags(symmetric, sym_flags);
    symmetric->add_flag("--no-shortcut", sym_flags.no_shortcut,
                        "Enumerate every permutation even when the identity order settles it");
    symmetric->add_option("--max-k", sym_flags.max_k,
                          "Largest tuple length whose k! permutations may be enumerated");

    kreg::CharFnFlags charfn_flags;
    std::string z_text;
    CLI::App* charfn =
        app.add_subcommand("charfn", "Evaluate the characteristic function of a contraction");
    charfn->add_option("path", path, "ChainDocument JSON file with one matrix")->required();
    CLI::Option* z_opt = charfn->add_option("--z", z_text, "Evaluation point re,im inside the disk");
    int grid_n = 0;
    CLI::Option* grid_opt =
        charfn->add_option("--grid", grid_n, "Sample n points at radius 1 - 1e-9");
    z_opt->excludes(grid_opt);
    add_tolerance_flags(charfn, charfn_flags);
    charfn->add_flag("--csv", charfn_flags.csv, "Emit CSV instead of JSON");

    kreg::CorpusFlags corpus_flags;
    std::string case_name;
    CLI::App* corpus = app.add_subcommand("corpus", "Reproduce published example values");
    CLI::Option* case_opt = corpus->add_option("--case", case_name, "Run a single named case");
    CLI::Option* all_opt = corpus->add_flag("--all", corpus_flags.all, "Run every corpus case");
    case_opt->excludes(all_opt);

    kreg::BoundaryFlags boundary_flags;
    CLI::App* boundary =
        app.add_subcommand("boundary", "Sampled boundary regularity of an analytic chain");
    boundary->add_option("path", path, "ChainDocument JSON file with polynomials")->required();
    boundary->add_option("--samples", boundary_flags.samples, "Boundary sample count");
    add_tolerance_flags(boundary, boundary_flags);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : kreg::exit_invalid_input;
    }

    if (check->parsed()) return emit(kreg::cmd_check(path, check_flags));
    if (symmetric->parsed()) return emit(kreg::cmd_symmetric(path, sym_flags));
    if (charfn->parsed()) {
        if (z_opt->count() > 0) {
            kreg::Complex z;
            if (!parse_complex(z_text, z)) {
                std::cerr << "kreg: --z expects re or re,im\n";
                return kreg::exit_invalid_input;
            }
            charfn_flags.z = z;
        }
        if (grid_opt->count() > 0) charfn_flags.grid = grid_n;
        return emit(kreg::cmd_charfn(path, charfn_flags));
    }
    if (corpus->parsed()) {
        if (case_opt->count() > 0) corpus_flags.case_name = case_name;
        return emit(kreg::cmd_corpus(corpus_flags));
    }
    if (boundary->parsed()) return emit(kreg::cmd_boundary(path, boundary_flags));
    return kreg::exit_invalid_input;
}
