#pragma once

#include <iosfwd>
#include <string>

#include "symve/factor_graph.hpp"

namespace symve {

// A parsed FGSYM model. The format is line-oriented UTF-8 with `#`
// comments:
//
//   FGSYM 1
//   vars <n>
//   card <c_1> ... <c_n>            cardinality per variable id 0..n-1
//   factor <k> <v_1> ... <v_k>      scope by id, begins a factor block
//   sym { <ids> } { <ids> } ...     optional disjoint groups within the scope
//   table <values>                  dense, row-major, last scope var fastest
//   ctable <values>                 compact: free assignment outer, group
//                                   histograms inner, ascending-lex order
//
// Exactly one of table/ctable per factor; ctable requires sym. Values
// may continue onto following lines until the expected count is read.
struct ModelFile {
    FactorGraph graph;
};

// Parses and fully validates a model. With `validate_symmetry`,
// declared groups on dense tables are transposition-tested (strict
// mode); without it they are trusted.
ModelFile parse_model(std::istream& in, bool validate_symmetry = true);
ModelFile parse_model_text(const std::string& text, bool validate_symmetry = true);
ModelFile load_model(const std::string& path, bool validate_symmetry = true);

// Canonical FGSYM serialization; parse(print(m)) == m.
void print_model(const ModelFile& m, std::ostream& out);
std::string model_to_text(const ModelFile& m);
void save_model(const ModelFile& m, const std::string& path);

// Imports a plain UAI model (MARKOV or BAYES preamble) with
// all-singleton partitions.
ModelFile parse_uai(std::istream& in);
ModelFile load_uai(const std::string& path);

}  // namespace symve
