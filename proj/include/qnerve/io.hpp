#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "qnerve/analysis.hpp"
#include "qnerve/automata.hpp"
#include "qnerve/chain.hpp"
#include "qnerve/homology.hpp"
#include "qnerve/nerve.hpp"
#include "qnerve/vgraph.hpp"

namespace qnerve {

/// CSV distance matrix: a header row of vertex names (optionally preceded by
/// an empty cell, in which case every row starts with its vertex name).
/// "inf" marks an infinite distance; an empty cell is a missing entry.
DistanceTable parse_csv_table(std::string_view text);

/// {"vertices":[...], "edges":[{"from","to","dist"}], "default":"inf",
///  "symmetric":bool}. Unlisted off-diagonal pairs get the default.
DistanceTable parse_json_table(std::string_view text);

/// Dispatches on the first non-blank character ('{' means JSON) and
/// validates. Throws InputError naming the offending entity.
VGraph parse_graph(std::string_view text, double eps = kEps);
VGraph read_graph_file(const std::string& path, double eps = kEps);

/// {"states":[...], "alphabet":{"a":1.0}, "transitions":[{"from","to","label"}]}
Automaton parse_automaton(std::string_view text);
Automaton read_automaton_file(const std::string& path);

std::string read_text_file(const std::string& path);

std::string graph_to_csv(const VGraph& x);
std::string graph_to_json(const VGraph& x);

std::string complex_to_json(const FilteredComplex& fc);
std::string complex_to_csv(const FilteredComplex& fc);

std::string barcode_to_json(const Barcode& bc);
std::string barcode_to_csv(const Barcode& bc);
/// One row per bar on a linear grade axis; infinite bars run to `axis_max`
/// and end in an arrowhead.
std::string barcode_to_svg(const Barcode& bc, ExtScalar axis_max);

/// grade,degree,rank,torsion with torsion written as [d1;d2;...].
std::string homology_to_csv(const std::vector<HomologySummary>& rows);
std::string homology_to_json(const std::vector<HomologySummary>& rows);

/// {"rows","cols","entries":[[i,j,v],...]} with only nonzero entries.
std::string matrix_to_json(const IntMatrix& m);

}  // namespace qnerve
