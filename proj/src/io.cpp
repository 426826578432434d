#include "qnerve/io.hpp"

#include <json.hpp>

#include <cmath>
#include <fstream>
#include <sstream>

#include "qnerve/errors.hpp"

namespace qnerve {

namespace {

using json = nlohmann::ordered_json;

std::string trim(std::string_view s) {
  const auto b = s.find_first_not_of(" \t\r\n");
  if (b == std::string_view::npos) return {};
  const auto e = s.find_last_not_of(" \t\r\n");
  return std::string(s.substr(b, e - b + 1));
}

std::vector<std::string> split_csv_line(std::string_view line) {
  std::vector<std::string> cells;
  std::size_t start = 0;
  for (;;) {
    const auto comma = line.find(',', start);
    cells.push_back(trim(line.substr(start, comma == std::string_view::npos ? std::string_view::npos : comma - start)));
    if (comma == std::string_view::npos) break;
    start = comma + 1;
  }
  return cells;
}

std::optional<double> parse_cell(const std::string& cell, const std::string& where) {
  if (cell.empty()) return std::nullopt;
  try {
    const ExtScalar v = parse_ext_scalar(cell);
    return v.is_inf() ? std::numeric_limits<double>::infinity() : v.value();
  } catch (const InputError&) {
    // Negative values are reported by validation, not the parser.
    char* end = nullptr;
    const double d = std::strtod(cell.c_str(), &end);
    if (end && *end == '\0' && !std::isnan(d)) return d;
    throw InputError("cannot parse distance '" + cell + "' at " + where);
  }
}

std::optional<double> json_distance(const json& v, const std::string& where) {
  if (v.is_number()) return v.get<double>();
  if (v.is_string()) return parse_cell(v.get<std::string>(), where);
  throw InputError("distance at " + where + " must be a number or \"inf\"");
}

json parse_json(std::string_view text, const char* what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw InputError(std::string("malformed ") + what + " JSON: " + e.what());
  }
}

const json& member(const json& obj, const char* key, const std::string& where) {
  if (!obj.is_object() || !obj.contains(key)) throw InputError(where + " is missing \"" + key + "\"");
  return obj.at(key);
}

std::string string_field(const json& obj, const char* key, const std::string& where) {
  const json& v = member(obj, key, where);
  if (!v.is_string()) throw InputError(where + " field \"" + key + "\" must be a string");
  return v.get<std::string>();
}

json scalar_json(ExtScalar r) {
  if (r.is_inf()) return "inf";
  const double v = r.value();
  if (v == std::floor(v) && std::abs(v) < 9.0e15) return static_cast<std::int64_t>(v);
  return v;
}

json p_json(PExponent p) {
  if (p.is_inf()) return "inf";
  return scalar_json(ExtScalar(p.value()));
}

std::string csv_scalar(ExtScalar r) { return to_string(r); }

std::string torsion_text(const std::vector<std::int64_t>& t) {
  std::string s = "[";
  for (std::size_t i = 0; i < t.size(); ++i) {
    if (i) s += ';';
    s += std::to_string(t[i]);
  }
  return s + "]";
}

}  // namespace

DistanceTable parse_csv_table(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::istringstream in{std::string(text)};
  std::string line;
  while (std::getline(in, line)) {
    if (trim(line).empty()) continue;
    rows.push_back(split_csv_line(line));
  }
  if (rows.empty()) throw InputError("CSV input is empty");
  std::vector<std::string> header = rows.front();
  const bool labelled = !header.empty() && header.front().empty();
  if (labelled) header.erase(header.begin());
  const std::size_t n = header.size();
  if (rows.size() - 1 != n) {
    throw InputError("CSV has " + std::to_string(n) + " vertex names but " + std::to_string(rows.size() - 1) +
                     " data rows");
  }
  DistanceTable table;
  table.vertices = header;
  table.entries.reserve(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    auto cells = rows[i + 1];
    if (labelled) {
      if (cells.empty() || cells.front() != header[i]) {
        throw InputError("CSV row " + std::to_string(i + 1) + " is labelled '" + (cells.empty() ? "" : cells.front()) +
                         "', expected '" + header[i] + "'");
      }
      cells.erase(cells.begin());
    }
    if (cells.size() != n) {
      throw InputError("CSV row for '" + header[i] + "' has " + std::to_string(cells.size()) + " entries, expected " +
                       std::to_string(n));
    }
    for (std::size_t j = 0; j < n; ++j)
      table.entries.push_back(parse_cell(cells[j], "(" + header[i] + ", " + header[j] + ")"));
  }
  return table;
}

DistanceTable parse_json_table(std::string_view text) {
  const json doc = parse_json(text, "graph");
  const json& verts = member(doc, "vertices", "graph");
  if (!verts.is_array()) throw InputError("graph \"vertices\" must be an array");
  DistanceTable table;
  for (const auto& v : verts) {
    if (!v.is_string()) throw InputError("vertex names must be strings");
    table.vertices.push_back(v.get<std::string>());
  }
  const std::size_t n = table.vertices.size();
  std::unordered_map<std::string, std::size_t> index;
  for (std::size_t i = 0; i < n; ++i) index.emplace(table.vertices[i], i);
  std::optional<double> fallback = std::numeric_limits<double>::infinity();
  if (doc.contains("default")) fallback = json_distance(doc.at("default"), "\"default\"");
  const bool symmetric = doc.contains("symmetric") && doc.at("symmetric").get<bool>();
  table.entries.assign(n * n, fallback);
  for (std::size_t i = 0; i < n; ++i) table.entries[i * n + i] = 0.0;
  if (doc.contains("edges")) {
    for (const auto& e : doc.at("edges")) {
      const std::string from = string_field(e, "from", "edge");
      const std::string to = string_field(e, "to", "edge");
      auto fi = index.find(from);
      if (fi == index.end()) throw InputError("edge references unknown vertex '" + from + "'");
      auto ti = index.find(to);
      if (ti == index.end()) throw InputError("edge references unknown vertex '" + to + "'");
      const auto d = json_distance(member(e, "dist", "edge " + from + " -> " + to), "(" + from + ", " + to + ")");
      table.entries[fi->second * n + ti->second] = d;
      if (symmetric) table.entries[ti->second * n + fi->second] = d;
    }
  }
  return table;
}

VGraph parse_graph(std::string_view text, double eps) {
  const auto first = text.find_first_not_of(" \t\r\n");
  const bool is_json = first != std::string_view::npos && text[first] == '{';
  return to_vgraph(is_json ? parse_json_table(text) : parse_csv_table(text), eps);
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError("cannot read input file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

VGraph read_graph_file(const std::string& path, double eps) { return parse_graph(read_text_file(path), eps); }

Automaton parse_automaton(std::string_view text) {
  const json doc = parse_json(text, "automaton");
  Automaton a;
  for (const auto& s : member(doc, "states", "automaton")) {
    if (!s.is_string()) throw InputError("state names must be strings");
    a.states.push_back(s.get<std::string>());
  }
  const json& alpha = member(doc, "alphabet", "automaton");
  if (!alpha.is_object()) throw InputError("automaton \"alphabet\" must be an object");
  for (const auto& [letter, cost] : alpha.items()) {
    if (letter.size() != 1) throw InputError("letter '" + letter + "' must be a single character");
    const auto d = json_distance(cost, "letter '" + letter + "'");
    if (!d || *d < 0) throw InputError("letter '" + letter + "' needs a nonnegative cost");
    a.alphabet.emplace(letter.front(), ExtScalar(*d));
  }
  if (doc.contains("transitions")) {
    for (const auto& t : doc.at("transitions")) {
      a.transitions.push_back(
          {string_field(t, "from", "transition"), string_field(t, "to", "transition"), string_field(t, "label", "transition")});
    }
  }
  validate(a);
  return a;
}

Automaton read_automaton_file(const std::string& path) { return parse_automaton(read_text_file(path)); }

std::string graph_to_csv(const VGraph& x) {
  std::string out;
  for (const auto& v : x.vertices()) out += "," + v;
  out += '\n';
  for (std::size_t a = 0; a < x.size(); ++a) {
    out += x.name(a);
    for (std::size_t b = 0; b < x.size(); ++b) out += "," + csv_scalar(x(a, b));
    out += '\n';
  }
  return out;
}

std::string graph_to_json(const VGraph& x) {
  json edges = json::array();
  for (std::size_t a = 0; a < x.size(); ++a)
    for (std::size_t b = 0; b < x.size(); ++b)
      if (a != b && x(a, b).is_finite()) edges.push_back({{"from", x.name(a)}, {"to", x.name(b)}, {"dist", scalar_json(x(a, b))}});
  json doc = {{"vertices", x.vertices()}, {"edges", edges}, {"default", "inf"}, {"symmetric", false}};
  return doc.dump(2) + "\n";
}

std::string complex_to_json(const FilteredComplex& fc) {
  json grades = json::array();
  for (auto g : fc.grades()) grades.push_back(scalar_json(g));
  json tuples = json::array();
  for (std::size_t d = 0; d <= fc.max_dim(); ++d)
    for (std::size_t i = 0; i < fc.count(d); ++i) {
      const auto t = fc.tuple(d, i);
      json verts = json::array();
      for (auto v : t.verts) verts.push_back(fc.space().name(v));
      tuples.push_back({{"degree", d}, {"verts", verts}, {"birth", scalar_json(t.birth)}});
    }
  json doc = {{"p", p_json(fc.p())}, {"max_dim", fc.max_dim()}, {"grades", grades}, {"tuples", tuples}};
  return doc.dump(2) + "\n";
}

std::string complex_to_csv(const FilteredComplex& fc) {
  std::string out = "degree,verts,birth\n";
  for (std::size_t d = 0; d <= fc.max_dim(); ++d)
    for (std::size_t i = 0; i < fc.count(d); ++i) {
      const auto t = fc.tuple(d, i);
      std::string verts;
      for (std::size_t k = 0; k < t.verts.size(); ++k) verts += (k ? ";" : "") + fc.space().name(t.verts[k]);
      out += std::to_string(d) + "," + verts + "," + csv_scalar(t.birth) + "\n";
    }
  return out;
}

std::string barcode_to_json(const Barcode& bc) {
  json doc = json::array();
  for (const auto& b : bc.bars)
    doc.push_back({{"degree", b.degree}, {"birth", scalar_json(b.birth)}, {"death", scalar_json(b.death)}});
  return doc.dump() + "\n";
}

std::string barcode_to_csv(const Barcode& bc) {
  std::string out = "degree,birth,death\n";
  for (const auto& b : bc.bars) out += std::to_string(b.degree) + "," + csv_scalar(b.birth) + "," + csv_scalar(b.death) + "\n";
  return out;
}

std::string barcode_to_svg(const Barcode& bc, ExtScalar axis_max) {
  constexpr double left = 60.0;
  constexpr double width = 600.0;
  constexpr double row = 18.0;
  constexpr double top = 20.0;
  double hi = axis_max.is_finite() ? axis_max.value() : 0.0;
  for (const auto& b : bc.bars) {
    hi = std::max(hi, b.birth.value());
    if (b.death.is_finite()) hi = std::max(hi, b.death.value());
  }
  if (hi <= 0.0) hi = 1.0;
  const double axis_end = hi * 1.05;
  auto xpos = [&](double g) { return left + width * g / axis_end; };
  const double height = top + row * static_cast<double>(bc.bars.size()) + 40.0;
  std::ostringstream s;
  s << "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" << left + width + 20 << "\" height=\"" << height << "\">\n";
  s << "  <defs><marker id=\"arrow\" markerWidth=\"8\" markerHeight=\"8\" refX=\"6\" refY=\"4\" orient=\"auto\">"
       "<path d=\"M0,0 L8,4 L0,8 z\" fill=\"black\"/></marker></defs>\n";
  for (std::size_t i = 0; i < bc.bars.size(); ++i) {
    const auto& b = bc.bars[i];
    const double y = top + row * static_cast<double>(i) + row / 2;
    const double end = b.death.is_finite() ? b.death.value() : hi;
    s << "  <text x=\"4\" y=\"" << y + 4 << "\" font-size=\"11\">H" << b.degree << "</text>\n";
    s << "  <line x1=\"" << xpos(b.birth.value()) << "\" y1=\"" << y << "\" x2=\"" << xpos(end) << "\" y2=\"" << y
      << "\" stroke=\"black\" stroke-width=\"3\"" << (b.death.is_inf() ? " marker-end=\"url(#arrow)\"" : "") << "/>\n";
  }
  const double axis_y = top + row * static_cast<double>(bc.bars.size()) + 10;
  s << "  <line x1=\"" << left << "\" y1=\"" << axis_y << "\" x2=\"" << left + width << "\" y2=\"" << axis_y
    << "\" stroke=\"gray\"/>\n";
  s << "  <text x=\"" << left << "\" y=\"" << axis_y + 16 << "\" font-size=\"11\">0</text>\n";
  s << "  <text x=\"" << xpos(hi) << "\" y=\"" << axis_y + 16 << "\" font-size=\"11\">" << to_string(ExtScalar(hi))
    << "</text>\n";
  s << "</svg>\n";
  return s.str();
}

std::string homology_to_csv(const std::vector<HomologySummary>& rows) {
  std::string out = "grade,degree,rank,torsion\n";
  for (const auto& r : rows)
    out += csv_scalar(r.grade) + "," + std::to_string(r.degree) + "," + std::to_string(r.rank) + "," +
           torsion_text(r.torsion) + "\n";
  return out;
}

std::string homology_to_json(const std::vector<HomologySummary>& rows) {
  json doc = json::array();
  for (const auto& r : rows)
    doc.push_back({{"grade", scalar_json(r.grade)}, {"degree", r.degree}, {"rank", r.rank}, {"torsion", r.torsion}});
  return doc.dump() + "\n";
}

std::string matrix_to_json(const IntMatrix& m) {
  json entries = json::array();
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j)
      if (m(i, j) != 0) entries.push_back({i, j, m(i, j)});
  json doc = {{"rows", m.rows}, {"cols", m.cols}, {"entries", entries}};
  return doc.dump() + "\n";
}

}  // namespace qnerve
