#include "qnerve/cli.hpp"

#include <CLI11.hpp>
#include <json.hpp>

#include <cmath>
#include <optional>

#include "qnerve/analysis.hpp"
#include "qnerve/automata.hpp"
#include "qnerve/errors.hpp"
#include "qnerve/homology.hpp"
#include "qnerve/io.hpp"

namespace qnerve::cli {

namespace {

using json = nlohmann::ordered_json;

struct Options {
  std::string input;
  std::string p;
  std::optional<std::size_t> max_dim;
  std::string degrees;
  std::string sieve = "none";
  std::string coeff;
  std::uint32_t q = 2;
  double eps = kEps;
  std::string format = "json";
  double budget = 2e6;
  unsigned workers = 1;
  std::optional<std::string> grade;
  bool all_grades = false;
  double tol = 1e-6;
};

struct DegreeRange {
  std::size_t lo = 0;
  std::size_t hi = 0;
};

DegreeRange parse_degrees(const std::string& text, DegreeRange fallback) {
  if (text.empty()) return fallback;
  auto to_num = [&](const std::string& s) -> std::size_t {
    std::size_t pos = 0;
    unsigned long v = 0;
    try {
      v = std::stoul(s, &pos);
    } catch (const std::exception&) {
      pos = std::string::npos;
    }
    if (pos != s.size()) throw InputError("cannot parse degree range '" + text + "'");
    return v;
  };
  const auto dots = text.find("..");
  DegreeRange r;
  if (dots == std::string::npos) {
    r.lo = r.hi = to_num(text);
  } else {
    r.lo = to_num(text.substr(0, dots));
    r.hi = to_num(text.substr(dots + 2));
  }
  if (r.lo > r.hi) throw InputError("degree range '" + text + "' is empty");
  return r;
}

PExponent p_or(const std::string& text, PExponent fallback) {
  return text.empty() ? fallback : parse_p_exponent(text);
}

EnumerationOptions enumeration(const Options& o, std::ostream& err) {
  EnumerationOptions e;
  if (!(o.budget >= 1)) throw InputError("--budget must be at least 1");
  e.hard_limit = static_cast<std::size_t>(o.budget);
  e.on_warning = [&err](const std::string& msg) { err << "warning: " << msg << "\n"; };
  e.workers = std::max(1u, o.workers);
  e.eps = o.eps;
  return e;
}

std::size_t resolve_max_dim(const Options& o, std::size_t top_degree) {
  const std::size_t need = top_degree + 1;
  if (!o.max_dim) return need;
  if (*o.max_dim < need) {
    throw InputError("--max-dim " + std::to_string(*o.max_dim) + " is below the required " + std::to_string(need) +
                     " for degree " + std::to_string(top_degree));
  }
  return *o.max_dim;
}

Coefficients coefficients(const Options& o, const std::string& fallback) {
  const std::string c = o.coeff.empty() ? fallback : o.coeff;
  if (c == "z") return Coefficients::integers();
  if (c == "z2") return Coefficients::prime_field(2);
  if (c == "zq") return Coefficients::prime_field(o.q);
  throw InputError("unknown coefficient ring '" + c + "'");
}

SieveSpec sieve_of(const Options& o) {
  if (o.sieve == "none") return SieveSpec::empty();
  if (o.sieve == "strict") return SieveSpec::strict_predecessors();
  throw InputError("unknown sieve '" + o.sieve + "'");
}

void require_format(const Options& o, std::initializer_list<const char*> allowed) {
  for (const char* f : allowed)
    if (o.format == f) return;
  throw InputError("format '" + o.format + "' is not available for this command");
}

json scalar_json(ExtScalar r) {
  if (r.is_inf()) return "inf";
  const double v = r.value();
  if (v == std::floor(v) && std::abs(v) < 9.0e15) return static_cast<std::int64_t>(v);
  return v;
}

json p_json(PExponent p) { return p.is_inf() ? json("inf") : scalar_json(ExtScalar(p.value())); }

int cmd_nerve(const Options& o, std::ostream& out, std::ostream& err) {
  require_format(o, {"json", "csv"});
  const VGraph x = read_graph_file(o.input, o.eps);
  const auto fc = enumerate_complex(x, p_or(o.p, PExponent::one()), o.max_dim.value_or(2), enumeration(o, err));
  out << (o.format == "csv" ? complex_to_csv(fc) : complex_to_json(fc));
  return 0;
}

int cmd_ph(const Options& o, std::ostream& out, std::ostream& err) {
  require_format(o, {"json", "csv", "svg"});
  const VGraph x = read_graph_file(o.input, o.eps);
  const auto deg = parse_degrees(o.degrees, {0, 1});
  const Coefficients coeff = coefficients(o, "z2");
  if (coeff.kind() != Coefficients::Kind::PrimeField) throw InputError("persistence needs field coefficients (z2 or zq)");
  const auto fc = enumerate_complex(x, p_or(o.p, PExponent::infinity()), resolve_max_dim(o, deg.hi), enumeration(o, err));
  Barcode bc = persistence_barcode(fc, deg.hi, coeff.modulus());
  std::erase_if(bc.bars, [&](const Bar& b) { return b.degree < deg.lo; });
  if (o.format == "csv") {
    out << barcode_to_csv(bc);
  } else if (o.format == "svg") {
    out << barcode_to_svg(bc, fc.grades().empty() ? ExtScalar::zero() : fc.grades().back());
  } else {
    out << barcode_to_json(bc);
  }
  return 0;
}

void emit_homology(const Options& o, std::vector<HomologySummary> rows, std::ostream& out) {
  if (!o.all_grades) std::erase_if(rows, [](const HomologySummary& r) { return r.chain_rank == 0; });
  out << (o.format == "csv" ? homology_to_csv(rows) : homology_to_json(rows));
}

int cmd_mh(const Options& o, std::ostream& out, std::ostream& err) {
  require_format(o, {"json", "csv"});
  const VGraph x = read_graph_file(o.input, o.eps);
  const auto deg = parse_degrees(o.degrees, {0, 1});
  const auto rows = magnitude_homology(x, p_or(o.p, PExponent::one()), deg.lo, deg.hi, resolve_max_dim(o, deg.hi),
                                       enumeration(o, err));
  emit_homology(o, rows, out);
  return 0;
}

int cmd_homology(const Options& o, std::ostream& out, std::ostream& err) {
  require_format(o, {"json", "csv"});
  const VGraph x = read_graph_file(o.input, o.eps);
  const auto deg = parse_degrees(o.degrees, {0, 1});
  const auto fc = enumerate_complex(x, p_or(o.p, PExponent::one()), resolve_max_dim(o, deg.hi), enumeration(o, err));
  const SieveSpec sieve = sieve_of(o);
  const Coefficients coeff = coefficients(o, "z");
  std::vector<HomologySummary> rows;
  if (o.grade) {
    const ExtScalar r = parse_ext_scalar(*o.grade);
    for (std::size_t n = deg.lo; n <= deg.hi; ++n) rows.push_back(homology_at(fc, n, r, sieve, coeff));
    Options keep = o;
    keep.all_grades = true;
    emit_homology(keep, rows, out);
    return 0;
  }
  rows = graded_homology(fc, deg.lo, deg.hi, sieve, coeff, std::max(1u, o.workers));
  emit_homology(o, rows, out);
  return 0;
}

int cmd_free(const Options& o, std::ostream& out, std::ostream&) {
  require_format(o, {"json", "csv"});
  const VGraph x = read_graph_file(o.input, o.eps);
  const VGraph f = free_category(x, p_or(o.p, PExponent::one()));
  out << (o.format == "csv" ? graph_to_csv(f) : graph_to_json(f));
  return 0;
}

int cmd_analyze(const Options& o, std::ostream& out, std::ostream& err) {
  require_format(o, {"json", "csv"});
  const VGraph x = read_graph_file(o.input, o.eps);
  const PExponent p = p_or(o.p, PExponent::one());
  const auto table = p_critical_table(x, o.tol, o.eps);
  if (o.format == "csv") {
    out << "a,b,distance,p_critical\n";
    for (const auto& r : table) out << x.name(r.a) << "," << x.name(r.b) << "," << to_string(r.distance) << "," << to_string(r.p_crit) << "\n";
    return 0;
  }
  json doc;
  doc["ultrametric"] = is_ultrametric(x, o.eps);
  doc["symmetric"] = x.is_symmetric(o.eps);
  doc["strict"] = x.is_strict(o.eps);
  json rows = json::array();
  for (const auto& r : table)
    rows.push_back({{"a", x.name(r.a)}, {"b", x.name(r.b)}, {"distance", scalar_json(r.distance)}, {"p_critical", p_json(r.p_crit)}});
  doc["p_critical"] = rows;
  if (p.is_inf() || !x.is_strict(o.eps)) {
    err << "note: h1_generators skipped (needs a strict space and finite p)\n";
    doc["h1_generators"] = nullptr;
  } else {
    std::vector<ExtScalar> grades;
    for (std::size_t a = 0; a < x.size(); ++a)
      for (std::size_t b = 0; b < x.size(); ++b)
        if (a != b && x(a, b).is_finite()) grades.push_back(x(a, b));
    std::sort(grades.begin(), grades.end());
    std::vector<ExtScalar> uniq;
    for (auto g : grades)
      if (uniq.empty() || !approx_equal(uniq.back(), g, o.eps)) uniq.push_back(g);
    json h1 = json::array();
    for (auto g : uniq) {
      json pairs = json::array();
      for (const auto& [a, b] : h1_generators(x, p, g, o.eps)) pairs.push_back({x.name(a), x.name(b)});
      h1.push_back({{"grade", scalar_json(g)}, {"pairs", pairs}});
    }
    doc["p"] = p_json(p);
    doc["h1_generators"] = h1;
  }
  out << doc.dump(2) << "\n";
  return 0;
}

int cmd_automaton(const Options& o, std::ostream& out, std::ostream& err) {
  require_format(o, {"json"});
  const Automaton a = read_automaton_file(o.input);
  for (const auto& w : cost_warnings(a)) err << "warning: " << w << "\n";
  VGraph c = cost_space(a);
  if (!c.is_strict(o.eps)) {
    err << "note: cost space is not strict; collapsing mutually zero-cost states\n";
    c = strictify(c, o.eps).first;
  }
  const auto pairs = cost_primitive_pairs(c, o.eps);
  json doc;
  json matrix = json::array();
  for (std::size_t i = 0; i < c.size(); ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < c.size(); ++j) row.push_back(scalar_json(c(i, j)));
    matrix.push_back(row);
  }
  doc["cost_space"] = {{"states", c.vertices()}, {"matrix", matrix}};
  json prim = json::array();
  for (const auto& g : pairs) prim.push_back({{"from", c.name(g.a)}, {"to", c.name(g.b)}, {"grade", scalar_json(g.grade)}});
  doc["cost_primitive_pairs"] = prim;
  const auto fc = enumerate_complex(c, PExponent::one(), 2, enumeration(o, err));
  const auto sieve = SieveSpec::strict_predecessors();
  json mag = json::array();
  for (auto g : fc.grades()) {
    const auto h = homology_at(fc, 1, g, sieve, Coefficients::integers());
    if (h.chain_rank == 0) continue;
    json gens = json::array();
    for (auto idx : surviving_basis_generators(fc, 1, g, sieve)) {
      const auto t = fc.tuple(1, idx);
      gens.push_back({c.name(t.verts[0]), c.name(t.verts[1])});
    }
    mag.push_back({{"grade", scalar_json(g)}, {"rank", h.rank}, {"torsion", h.torsion}, {"generators", gens}});
  }
  doc["magnitude_degree1"] = mag;
  out << doc.dump(2) << "\n";
  return 0;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"quantale-parametrized nerves, persistent and magnitude homology"};
  app.require_subcommand(1);
  Options o;
  using Handler = int (*)(const Options&, std::ostream&, std::ostream&);
  std::vector<std::pair<CLI::App*, Handler>> commands;

  auto add = [&](const char* name, const char* help, Handler h, bool graph_flags) {
    CLI::App* sub = app.add_subcommand(name, help);
    sub->add_option("input", o.input, "input file")->required();
    sub->add_option("--p", o.p, "exponent p in [1, inf]");
    sub->add_option("--eps", o.eps, "comparison tolerance");
    sub->add_option("--format", o.format, "json, csv or svg");
    sub->add_option("--budget", o.budget, "maximum number of nerve tuples");
    sub->add_option("--workers", o.workers, "worker threads");
    if (graph_flags) {
      sub->add_option("--max-dim", o.max_dim, "largest tuple degree to enumerate");
      sub->add_option("--degrees", o.degrees, "homology degrees, a or a..b");
      sub->add_option("--sieve", o.sieve, "none or strict");
      sub->add_option("--coeff", o.coeff, "z, z2 or zq");
      sub->add_option("--q", o.q, "prime modulus for --coeff zq");
      sub->add_option("--grade", o.grade, "single grade for `homology`");
      sub->add_flag("--all-grades", o.all_grades, "also print grades with an empty chain group");
    }
    sub->add_option("--tol", o.tol, "bisection tolerance on p");
    commands.emplace_back(sub, h);
  };
  add("nerve", "dump the filtered tuple nerve", cmd_nerve, true);
  add("ph", "persistence barcode (default p = inf over Z/2)", cmd_ph, true);
  add("mh", "magnitude homology (default p = 1 over Z)", cmd_mh, true);
  add("homology", "homology at any p, sieve and grade", cmd_homology, true);
  add("free", "free category (path closure)", cmd_free, false);
  add("analyze", "ultrametric flag, critical exponents, H1 generators", cmd_analyze, false);
  add("automaton", "cost space, cost-primitive pairs, degree-1 magnitude table", cmd_automaton, false);

  std::vector<std::string> argv_store{"qnerve"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<const char*> argv;
  for (const auto& a : argv_store) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? 0 : 2;
  }

  try {
    for (const auto& [sub, handler] : commands)
      if (sub->parsed()) return handler(o, out, err);
  } catch (const BudgetExceeded& e) {
    err << "error: " << e.what() << "\n";
    return 3;
  } catch (const InputError& e) {
    err << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace qnerve::cli
