#include "orbitrep/cli.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <functional>
#include <sstream>

#include "orbitrep/errors.hpp"
#include "orbitrep/io.hpp"

namespace orbitrep {

namespace {

constexpr std::size_t kItineraryShown = 32;

struct Options {
  std::string map_path;
  std::string x;
  std::string y;
  std::string points;
  std::string V;
  std::size_t depth = kDefaultTreeDepth;
  std::size_t horizon = 0;
  std::size_t max_iter = kDefaultMaxIter;
  std::string dot_path;
  std::string a_path;
  std::string b_path;
  std::string mode;
  std::string output;
  std::string name;
  bool json = false;
  bool dot = false;
  bool block = false;
  bool check = false;
};

void print_matrix(std::ostream& out, const BoolMatrix& m, const std::string& indent = "  ") {
  for (std::size_t r = 0; r < m.rows(); ++r) {
    out << indent;
    for (std::size_t c = 0; c < m.cols(); ++c) out << (c ? " " : "") << (m(r, c) ? 1 : 0);
    out << "\n";
  }
}

std::string symbols_text(const std::vector<Symbol>& symbols) {
  std::string s;
  for (const auto& sym : symbols) s += (s.empty() ? "" : " ") + sym.label();
  return s;
}

std::string incidence_text(const std::vector<int>& c) {
  std::string s = "(";
  for (std::size_t i = 0; i < c.size(); ++i) s += (i ? "," : "") + std::to_string(c[i]);
  return s + ")";
}

Rational parse_point(const std::string& text) {
  try {
    return Rational::parse(text);
  } catch (const ParseError& e) {
    throw ParseError("bad point \"" + text + "\": " + e.what());
  }
}

OrbitTree tree_for(const MarkovMap& map, const Options& o, const Rational& x) {
  return build_orbit_tree(map, x, o.depth, TreeOptions{o.max_iter, o.horizon});
}

int cmd_validate(const Options& o, std::ostream& out) {
  const MapDocument doc = parse_map_document(read_json_file(o.map_path));
  const ValidationReport r = validate(doc.map);
  if (o.json) {
    out << validation_json(r).dump(2) << "\n";
    return r.valid() ? kExitOk : kExitCheckFailed;
  }
  auto show = [&](const char* name, const PropertyCheck& p) {
    out << name << ": " << (p.ok ? "ok" : "FAIL") << "\n";
    for (const auto& d : p.diagnostics) out << "  " << d << "\n";
  };
  show("P1 partition and full image", r.p1);
  show("P2 Markov property", r.p2);
  show("P3 expansion", r.p3);
  if (r.expansion_bound) out << "  b = " << *r.expansion_bound << "\n";
  show("P4 aperiodicity", r.p4);
  if (r.aperiodicity_exponent) out << "  A_f^" << *r.aperiodicity_exponent << " > 0\n";
  out << "escape coverage: " << (r.escape_coverage_ok() ? "full" : "partial") << "\n";
  for (const auto& c : r.escape_coverage) {
    if (c.meets && !c.covered) {
      out << "  f(I_" << c.interval + 1 << ") meets E_" << c.gap + 1 << " without covering it\n";
    }
  }
  out << (r.valid() ? "valid" : "invalid") << "\n";
  return r.valid() ? kExitOk : kExitCheckFailed;
}

int cmd_matrices(const Options& o, std::ostream& out) {
  const MapDocument doc = parse_map_document(read_json_file(o.map_path));
  const TransitionData td = transition_data(doc.map);
  const EscapeMatrix em = assemble_escape_matrix(td);
  std::vector<MatrixDiscrepancy> notes;
  if (doc.expected_A_hat) notes = escape_discrepancies(doc.map, em, *doc.expected_A_hat);
  std::vector<std::pair<std::size_t, std::size_t>> a_mismatch;
  if (doc.expected_A) {
    if (doc.expected_A->rows() != td.n || doc.expected_A->cols() != td.n) {
      throw InconsistentInputsError("expected.A does not have the size of A_f");
    }
    for (std::size_t i = 0; i < td.n; ++i)
      for (std::size_t j = 0; j < td.n; ++j)
        if ((*doc.expected_A)(i, j) != td.A(i, j)) a_mismatch.emplace_back(i, j);
  }
  if (o.json) {
    json j = matrices_json(td, em, notes);
    if (doc.expected_A) j["A_matches_reference"] = a_mismatch.empty();
    if (o.block) {
      const BlockForm bf = block_form(em);
      j["permutation"] = to_json(bf.P);
    }
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  out << "A_f:\n";
  print_matrix(out, td.A);
  if (doc.expected_A) {
    out << (a_mismatch.empty() ? "A_f matches the reference matrix\n" : "A_f differs from the reference matrix\n");
    for (const auto& [i, j] : a_mismatch) out << "  entry (" << i + 1 << ", " << j + 1 << ")\n";
  }
  std::vector<Symbol> escapes;
  for (auto k : td.escape_gaps) escapes.push_back(Symbol::escape(k));
  if (escapes.empty()) {
    out << "B: no escape intervals\n";
  } else {
    out << "B (columns " << symbols_text(escapes) << "):\n";
    print_matrix(out, td.B);
  }
  out << "escape matrix, symbol order " << symbols_text(em.symbol_order) << ":\n";
  print_matrix(out, em.full);
  if (o.block) {
    const BlockForm bf = block_form(em);
    out << "P with P A_hat P^T = [[A, B], [0, 0]]:\n";
    print_matrix(out, bf.P);
    out << "block form:\n";
    print_matrix(out, bf.P * em.full * bf.P.transpose());
  }
  if (doc.expected_A_hat) {
    if (notes.empty()) out << "escape matrix matches the reference matrix\n";
    for (const auto& d : notes) {
      out << "erratum: entry (" << d.row.label() << ", " << d.col.label() << ") is " << (d.computed ? 1 : 0)
          << ", reference has " << (d.expected ? 1 : 0) << ": " << d.explanation << "\n";
    }
  }
  return kExitOk;
}

int cmd_graph(const Options& o, std::ostream& out) {
  const MapDocument doc = parse_map_document(read_json_file(o.map_path));
  const GraphSpec g = build_graph(markov_matrix(doc.map));
  write_text_file(o.dot_path, dot_export(g));
  const Primitivity p = is_primitive(markov_matrix(doc.map));
  out << "vertices: " << g.vertices << ", edges: " << g.edges.size() << "\n";
  out << "primitive: " << (p.primitive ? "yes" : "no");
  if (p.exponent) out << " (exponent " << *p.exponent << ")";
  out << "\ncondition (L): " << (satisfies_condition_l(g) ? "holds" : "fails") << "\n";
  out << "wrote " << o.dot_path << "\n";
  return kExitOk;
}

int cmd_point(const Options& o, std::ostream& out) {
  const MapDocument doc = parse_map_document(read_json_file(o.map_path));
  const Rational x = parse_point(o.x);
  const PointClass pc = classify_point(doc.map, x, o.max_iter);
  const Itinerary it = itinerary(doc.map, x, std::min<std::size_t>(o.max_iter, kItineraryShown));
  if (o.json) {
    out << point_class_json(doc.map, x, pc, it).dump(2) << "\n";
    return kExitOk;
  }
  out << "x = " << x << "\n";
  if (const auto* e = std::get_if<Escaped>(&pc)) {
    out << "escape point: tau = " << e->escape_time << ", e(x) = " << e->final_point << " in E_" << e->escape_gap + 1
        << " = " << to_string(*doc.map.gap(e->escape_gap), true) << "\n";
    out << "escape incidence c = " << incidence_text(e->incidence) << "\n";
  } else if (const auto* b = std::get_if<BoundaryOrbit>(&pc)) {
    out << "boundary orbit: f^" << b->hit_step << "(x) = " << b->hit_point << " is a partition point\n";
  } else {
    const auto& r = std::get<UndeterminedRegular>(pc);
    if (r.period) {
      out << "regular: periodic with period " << *r.period << "\n";
    } else {
      out << "undetermined: no escape and no partition hit within " << r.checked_depth << " steps\n";
    }
  }
  out << "itinerary: " << it.str() << "\n";
  return kExitOk;
}

int cmd_tree(const Options& o, std::ostream& out) {
  const MapDocument doc = parse_map_document(read_json_file(o.map_path));
  const OrbitTree tree = tree_for(doc.map, o, parse_point(o.x));
  if (o.json) {
    out << tree_json(tree).dump(2) << "\n";
  } else if (o.dot) {
    out << tree_dot(tree);
  } else {
    out << (tree.is_escape_tree() ? "escape tree" : "regular window") << " rooted at " << tree.node(0).point
        << ", depth " << tree.max_depth() << ", " << tree.size() << " nodes\n";
    for (std::size_t id = 0; id < tree.size(); ++id) {
      const auto& n = tree.node(id);
      out << "  " << id << " " << n.point << " depth " << n.depth;
      if (n.parent) out << " branch " << *n.branch + 1 << " parent " << *n.parent;
      out << (n.interior ? "" : " (boundary of window)") << "\n";
    }
  }
  return kExitOk;
}

int cmd_rep(const Options& o, std::ostream& out) {
  const MapDocument doc = parse_map_document(read_json_file(o.map_path));
  const TransitionData td = transition_data(doc.map);
  const OrbitTree tree = tree_for(doc.map, o, parse_point(o.x));
  const Representation rep = realize(tree, td);
  const VertexSubset V = VertexSubset::parse(o.V, td.n);
  const RelationReport report = check_relations(rep, V);
  const LemmaCheck lemma = lemma_identity_check(rep);
  const bool ok = report.passed() && lemma.passed;
  if (o.json) {
    json j = relation_report_json(report, rep);
    j["lemma"] = lemma_json(lemma);
    out << j.dump(2) << "\n";
  } else {
    out << "V = " << V.str() << ", basis " << rep.basis_size() << ", interior " << rep.interior().size()
        << ", incidence " << incidence_text(rep.incidence) << "\n";
    out << report.summary(tree);
    out << "lemma identities: " << (lemma.passed ? "pass" : "FAIL") << "\n";
    for (const auto& f : lemma.failures) out << "  " << f << "\n";
  }
  return (o.check && !ok) ? kExitCheckFailed : kExitOk;
}

int cmd_certify(const Options& o, std::ostream& out, std::ostream& err) {
  const MapDocument doc = parse_map_document(read_json_file(o.map_path));
  const TransitionData td = transition_data(doc.map);
  const OrbitTree tree = tree_for(doc.map, o, parse_point(o.x));
  const Representation rep = realize(tree, td);
  const VertexSubset V = VertexSubset::parse(o.V, td.n);
  if (!admissible(rep, V)) {
    if (o.json) {
      out << json{{"certificate", "not_admissible"}, {"admissible", false}, {"incidence", rep.incidence}}.dump(2)
          << "\n";
    }
    err << "not admissible: escape incidence " << incidence_text(rep.incidence) << " is nonzero on " << V.str()
        << "\n";
    return kExitCheckFailed;
  }
  const Certificate cert = faithfulness_certificate(rep, V);
  if (o.json) {
    out << certificate_json(cert, rep).dump(2) << "\n";
  } else {
    out << "V = " << V.str() << ", incidence " << incidence_text(rep.incidence) << "\n";
    out << "admissible\n";
    out << "certificate: " << (cert.faithful ? "faithful" : "uncertified (admissible, not certified faithful)")
        << "\n";
    for (const auto& r : cert.reasons) out << "  " << r << "\n";
  }
  return cert.faithful ? kExitOk : kExitCheckFailed;
}

int cmd_equiv(const Options& o, std::ostream& out) {
  const MapDocument doc = parse_map_document(read_json_file(o.map_path));
  const Rational x = parse_point(o.x);
  const Rational y = parse_point(o.y);
  const EquivalenceVerdict verdict = classify_pair(doc.map, x, y, o.max_iter);
  json j = verdict_json(verdict);
  std::optional<std::variant<Intertwiner, NoLabelRespectingIso>> iso;
  std::optional<OrbitTree> tx;
  std::optional<OrbitTree> ty;
  if (std::holds_alternative<Equivalent>(verdict)) {
    tx.emplace(tree_for(doc.map, o, x));
    ty.emplace(tree_for(doc.map, o, y));
    iso = build_intertwiner(*tx, *ty, transition_data(doc.map), o.depth);
    j["intertwiner"] = intertwiner_json(*iso, *tx, *ty);
  }
  if (o.json) {
    out << j.dump(2) << "\n";
    return kExitOk;
  }
  if (const auto* e = std::get_if<Equivalent>(&verdict)) {
    out << "equivalent: roots share refinement class " << e->final_class << " after " << e->rounds << " rounds\n";
    if (const auto* u = std::get_if<Intertwiner>(&*iso)) {
      out << "label-respecting intertwiner on depth " << o.depth << ": " << u->pairs.size() << " pairs, "
          << (u->verified ? "verified" : "NOT verified") << "\n";
      for (const auto& f : u->failures) out << "  " << f << "\n";
    } else {
      out << "no label-respecting isomorphism: " << std::get<NoLabelRespectingIso>(*iso).reason << "\n";
    }
  } else if (const auto* d = std::get_if<Distinct>(&verdict)) {
    out << "distinct";
    if (d->separating_round) out << ": separated at refinement round " << *d->separating_round;
    out << " (" << d->signature_x << " vs " << d->signature_y << ")\n";
  } else {
    out << "distinct: one point escapes and the other does not\n";
  }
  return kExitOk;
}

int cmd_classify(const Options& o, std::ostream& out) {
  const MapDocument doc = parse_map_document(read_json_file(o.map_path));
  std::vector<Rational> pts;
  std::stringstream ss(o.points);
  for (std::string item; std::getline(ss, item, ',');) pts.push_back(parse_point(item));
  if (pts.empty()) throw ParseError("--points needs at least one point");
  const Classification c = classify_corpus(doc.map, pts, o.depth, o.max_iter);
  if (o.json) {
    out << classification_json(c).dump(2) << "\n";
    return kExitOk;
  }
  for (std::size_t k = 0; k < c.classes.size(); ++k) {
    out << "class " << k + 1 << ": {";
    for (std::size_t i = 0; i < c.classes[k].points.size(); ++i) out << (i ? ", " : "") << c.classes[k].points[i];
    out << "} incidence " << incidence_text(c.classes[k].incidence) << "\n";
  }
  out << "tree-shape cross-check at depth " << c.ahu_depth << ": " << (c.ahu_cross_check ? "agrees" : "DISAGREES")
      << "\n";
  return c.ahu_cross_check ? kExitOk : kExitCheckFailed;
}

int cmd_synth(const Options& o, std::ostream& out) {
  std::optional<CoverageMode> mode;
  if (!o.mode.empty()) mode = parse_coverage_mode(o.mode);
  const SynthesisSpec spec = parse_synthesis_spec(read_json_file(o.a_path), read_json_file(o.b_path), mode);
  const FeasibilityReport feas = feasibility_check(spec);
  if (!feas.feasible) {
    std::string why;
    for (const auto& r : feas.reasons) why += "\n  " + r;
    throw InfeasibleError("no " + to_string(spec.mode) + "-mode interval map realizes these matrices:" + why);
  }
  const MarkovMap map = synthesize(spec);
  const std::string text = to_json(map, o.name).dump(2) + "\n";
  if (o.output.empty() || o.output == "-") {
    out << text;
  } else {
    write_text_file(o.output, text);
    out << "wrote " << o.output << " (" << map.size() << " intervals, " << to_string(spec.mode) << " mode)\n";
  }
  return kExitOk;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Markov interval maps, escape matrices and orbit representations"};
  app.require_subcommand(1);
  Options o;

  auto add_map = [&](CLI::App* sub) { sub->add_option("map", o.map_path, "map-spec JSON file")->required(); };
  auto add_point = [&](CLI::App* sub, const char* name, std::string& target) {
    sub->add_option(name, target, "point as p/q")->required();
  };
  auto add_window = [&](CLI::App* sub, bool depth_required) {
    auto* d = sub->add_option("--depth", o.depth, "backward depth of the orbit window");
    if (depth_required) d->required();
    sub->add_option("--horizon", o.horizon, "regular points: root the window at f^T(x)");
    sub->add_option("--max-iter", o.max_iter, "forward iteration budget");
  };

  std::map<CLI::App*, std::function<int()>> handlers;

  auto* validate_cmd = app.add_subcommand("validate", "check the Markov map properties");
  add_map(validate_cmd);
  validate_cmd->add_flag("--json", o.json);
  handlers[validate_cmd] = [&] { return cmd_validate(o, out); };

  auto* matrices_cmd = app.add_subcommand("matrices", "transition and escape transition matrices");
  add_map(matrices_cmd);
  matrices_cmd->add_flag("--block", o.block, "show the block permutation");
  matrices_cmd->add_flag("--json", o.json);
  handlers[matrices_cmd] = [&] { return cmd_matrices(o, out); };

  auto* graph_cmd = app.add_subcommand("graph", "export the transition graph");
  add_map(graph_cmd);
  graph_cmd->add_option("--dot", o.dot_path, "output DOT file")->required();
  handlers[graph_cmd] = [&] { return cmd_graph(o, out); };

  auto* point_cmd = app.add_subcommand("point", "classify a point");
  add_map(point_cmd);
  add_point(point_cmd, "--x", o.x);
  point_cmd->add_option("--max-iter", o.max_iter, "forward iteration budget");
  point_cmd->add_flag("--json", o.json);
  handlers[point_cmd] = [&] { return cmd_point(o, out); };

  auto* tree_cmd = app.add_subcommand("tree", "orbit tree window of a point");
  add_map(tree_cmd);
  add_point(tree_cmd, "--x", o.x);
  add_window(tree_cmd, true);
  auto* tree_json_flag = tree_cmd->add_flag("--json", o.json);
  tree_cmd->add_flag("--dot", o.dot)->excludes(tree_json_flag);
  handlers[tree_cmd] = [&] { return cmd_tree(o, out); };

  auto* rep_cmd = app.add_subcommand("rep", "realize the operators and check the relations");
  add_map(rep_cmd);
  add_point(rep_cmd, "--x", o.x);
  rep_cmd->add_option("--V", o.V, "comma-separated vertices with the summation relation");
  add_window(rep_cmd, true);
  rep_cmd->add_flag("--check", o.check, "exit 1 if a relation fails");
  rep_cmd->add_flag("--json", o.json);
  handlers[rep_cmd] = [&] { return cmd_rep(o, out); };

  auto* certify_cmd = app.add_subcommand("certify", "faithfulness certificate");
  add_map(certify_cmd);
  add_point(certify_cmd, "--x", o.x);
  certify_cmd->add_option("--V", o.V, "comma-separated vertices with the summation relation")->required();
  add_window(certify_cmd, true);
  certify_cmd->add_flag("--json", o.json);
  handlers[certify_cmd] = [&] { return cmd_certify(o, out, err); };

  auto* equiv_cmd = app.add_subcommand("equiv", "unitary equivalence of two orbit representations");
  add_map(equiv_cmd);
  add_point(equiv_cmd, "--x", o.x);
  add_point(equiv_cmd, "--y", o.y);
  add_window(equiv_cmd, false);
  equiv_cmd->add_flag("--json", o.json);
  handlers[equiv_cmd] = [&] { return cmd_equiv(o, out); };

  auto* classify_cmd = app.add_subcommand("classify", "partition escape points into equivalence classes");
  add_map(classify_cmd);
  classify_cmd->add_option("--points", o.points, "comma-separated points")->required();
  classify_cmd->add_option("--depth", o.depth, "depth of the tree-shape cross-check");
  classify_cmd->add_option("--max-iter", o.max_iter, "forward iteration budget");
  classify_cmd->add_flag("--json", o.json);
  handlers[classify_cmd] = [&] { return cmd_classify(o, out); };

  auto* synth_cmd = app.add_subcommand("synth", "build an interval map with prescribed matrices");
  synth_cmd->add_option("--A", o.a_path, "JSON file with A")->required();
  synth_cmd->add_option("--B", o.b_path, "JSON file with B and escape_symbols")->required();
  synth_cmd->add_option("--mode", o.mode, "strict or partial (default: the B file's mode, else strict)");
  synth_cmd->add_option("-o,--output", o.output, "output map-spec file ('-' for stdout)");
  synth_cmd->add_option("--name", o.name, "name recorded in the output");
  handlers[synth_cmd] = [&] { return cmd_synth(o, out); };

  std::vector<const char*> argv;
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitMalformed;
  }

  try {
    for (auto* sub : app.get_subcommands()) return handlers.at(sub)();
    return kExitMalformed;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const InvalidMapError& e) {
    err << "invalid map: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const OutsideAmbientError& e) {
    err << "error: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const InconsistentInputsError& e) {
    err << "error: " << e.what() << "\n";
    return kExitMalformed;
  } catch (const Error& e) {
    err << "error: " << e.what() << "\n";
    return kExitCheckFailed;
  } catch (const std::out_of_range& e) {
    err << "error: " << e.what() << "\n";
    return kExitMalformed;
  }
}

}  // namespace orbitrep
