// Emits corpus-derived JSON documents for the CLI end-to-end tests.  Keeping
// fixture generation inside the library exercises the same serialization path
// the corpus command documents, instead of hand-maintained JSON copies.

#include <cstdio>
#include <iostream>
#include <string>
#include <variant>

#include <kreg/corpus.hpp>
#include <kreg/io.hpp>

using namespace kreg;

int main(int argc, char** argv) {
    if (argc != 2) {
        std::fprintf(stderr, "usage: %s <kv_chain|kv_tuple|parrott_tuple|diag_chain>\n", argv[0]);
        return exit_invalid_input;
    }
    const std::string name = argv[1];
    ChainDocument doc;
    if (name == "kv_chain") {
        // The tuple's identity ordering as an operator chain: the factor
        // applied first is the chain's first entry.
        const CorpusCase c = kaijser_varopoulos();
        const auto& tuple = std::get<CommutingTuple>(c.data);
        doc.kind = DocumentKind::operator_chain;
        for (auto it = tuple.operators.rbegin(); it != tuple.operators.rend(); ++it)
            doc.matrices.push_back(it->matrix);
    } else if (name == "kv_tuple") {
        doc = document_for_case(kaijser_varopoulos());
    } else if (name == "parrott_tuple") {
        doc = document_for_case(parrott());
    } else if (name == "diag_chain") {
        doc = document_for_case(diag_z3c(Complex(0.5, 0.0)));
    } else {
        std::fprintf(stderr, "unknown fixture: %s\n", name.c_str());
        return exit_invalid_input;
    }
    std::cout << chain_document_to_json(doc).dump(2) << "\n";
    return 0;
}
