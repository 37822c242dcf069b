#include "circhandle/oracle.hpp"
#include "circhandle/report.hpp"

#include <CLI11.hpp>

#include <fstream>
#include <iostream>

using namespace circhandle;

namespace {

struct Rejection : std::runtime_error {
  using std::runtime_error::runtime_error;
};

void write_file(const std::string& path, const std::string& text) {
  std::ofstream f(path);
  if (!f) throw input_error("cannot write " + path);
  f << text;
}

void print_witness(const HandleReport& r, const Diagram* d) {
  if (!r.witness) return;
  const auto& w = *r.witness;
  std::cout << "witness " << w.kind;
  if (!w.curves.empty()) {
    std::cout << " curves";
    for (int c : w.curves) std::cout << " a" << c + 1;
  }
  std::cout << "\n";
  if (w.arc && d) {
    std::cout << "arc";
    for (const auto& x : w.arc->path) std::cout << " " << d->edges[x.edge].id << (x.sign > 0 ? "+" : "-");
    std::cout << "\n";
  }
  for (const auto& a : w.trace) std::cout << "  " << to_string(a) << "\n";
  std::cout << "basis";
  for (const auto& b : w.basis) std::cout << " [" << to_string(b) << "]";
  std::cout << (replay(w) ? " (replays)" : " (does not replay)") << "\n";
}

void print_arcs(const HandleReport& r) {
  for (const auto& v : r.per_arc) {
    std::cout << "arc " << v.arc.id << " faces " << v.arc.face_a << "," << v.arc.face_b << " length "
              << v.arc.length() << ": " << (v.witness ? "witness" : v.reason) << "; terminal";
    for (const auto& w : v.loop.words) std::cout << " [" << to_string(w) << "]";
    const auto& t = v.loop.terminal;
    std::cout << " simple " << t.simple.vertex_count << "v/" << t.simple.edges.size() << "e cut "
              << t.cut_vertices.size() << "\n";
  }
}

void emit(const HandleReport& r, const Diagram* d, const std::string& title, const std::vector<Word>& spine,
          bool as_json, bool per_arc) {
  if (as_json) {
    json j = report_json(r, d, per_arc);
    j["knot"] = title;
    j["spine"] = words_json(spine);
    std::cout << j.dump(2) << "\n";
    return;
  }
  std::cout << title << "\n";
  for (std::size_t i = 0; i < spine.size(); ++i) std::cout << "a" << i + 1 << " = " << to_string(spine[i]) << "\n";
  std::cout << report_line(r) << "\n";
  print_witness(r, d);
  for (const auto& a : r.assumptions) std::cout << "assuming " << a << "\n";
  if (per_arc) print_arcs(r);
}

int run_rational(const std::vector<int>& terms, bool as_json, bool per_arc, const std::string& export_path) {
  auto k = rational_from_terms(terms);
  auto r = rational_classify(k);
  std::string title = "rational [";
  for (std::size_t i = 0; i < terms.size(); ++i) title += (i ? "," : "") + std::to_string(terms[i]);
  title += "]";
  std::optional<Diagram> d;
  if (!export_path.empty() || per_arc) d = rational_diagram(k);
  if (d && per_arc && d->rank == 2) {
    Embedding m = embed(*d);
    for (const auto& c : enumerate_arcs(*d, m)) r.per_arc.push_back(test_arc(*d, m, c));
  }
  if (!export_path.empty()) write_file(export_path, write_diagram(*d));
  emit(r, d ? &*d : nullptr, title, rational_spine(k), as_json, per_arc);
  return 0;
}

int run_pretzel(const std::vector<int>& v, bool as_json, bool per_arc, const std::string& export_path) {
  auto k = pretzel_normalize(v.at(0), v.at(1), v.at(2));
  auto pr = pretzel_classify(k, per_arc);
  std::string title = "pretzel P(" + std::to_string(k.p) + "," + std::to_string(k.q) + "," + std::to_string(k.r) + ")";
  if (!export_path.empty()) write_file(export_path, write_diagram(pr.diagram));
  emit(pr.report, &pr.diagram, title, pretzel_spine(k), as_json, per_arc);
  return 0;
}

int run_torus(int p, int q, bool trace, std::optional<int> export_stage, bool as_json) {
  auto t = build_diagram(p, q, true);
  auto tr = euclid_slide(t);
  if (as_json) {
    std::cout << slide_trace_json(t, tr).dump(2) << "\n";
  } else {
    std::cout << "torus (" << p << "," << q << ")\nkappa";
    for (int k : t.cf.terms) std::cout << " " << k;
    std::cout << "\nbeta " << t.r << " " << t.s << "\n";
    if (trace)
      for (const auto& s : tr.slides) std::cout << format_slide(s) << "\n";
    for (const auto& pr : tr.problems) std::cout << "problem: " << pr << "\n";
    if (tr.terminal.size() == 2)
      std::cout << "terminal alpha:" << tr.terminal[0].size() << " beta:" << tr.terminal[1].size() << "\n";
  }
  if (export_stage) {
    if (*export_stage < 0 || *export_stage >= static_cast<int>(tr.stages.size()))
      throw input_error("no stage " + std::to_string(*export_stage));
    std::cout << write_diagram(stage_diagram(tr.stages[*export_stage]));
  }
  if (!tr.ok()) throw Rejection("slide trace failed");
  return 0;
}

int run_analyze(const std::string& path, bool as_json, bool per_arc, const std::string& graph_path,
                const Assumptions& as) {
  Diagram d = read_diagram_file(path);
  validate(d);
  const auto words = trace_based_words(d);
  DecideOptions opt;
  opt.assumptions = as;
  opt.keep_arcs = per_arc;
  HandleReport r;
  if (static_cast<int>(words.size()) == d.rank || d.rank == 2) r = decide(d, opt);
  else r = decide_words(words, d.rank, opt.assumptions);
  if (!graph_path.empty()) write_file(graph_path, export_graph(genuine_graph(trace_words(d), d.rank), d.curves));
  auto m = embed(d);
  if (!as_json) {
    auto e = euler_count(m);
    std::cout << "vertices " << e.vertices << " edges " << e.edges << " faces " << e.faces << "\n";
    auto a = analyze_graph(genuine_graph(trace_words(d), d.rank));
    std::cout << "graph " << (a.connected ? "connected" : "disconnected") << ", " << a.cut_vertices.size()
              << " cut vertices, complexity " << a.complexity << "\n";
  }
  emit(r, &d, "diagram " + path, words, as_json, per_arc);
  return 0;
}

int run_oracle_minimize(int rank, int len, unsigned seed, int samples) {
  if (rank < 2 || rank > 3 || len < 1 || len > 10) throw input_error("oracle caps: rank 2..3, length 1..10");
  std::mt19937 rng(seed);
  int agree = 0;
  for (int i = 0; i < samples; ++i) {
    auto s = oracle::random_set(rng, rank, len);
    std::vector<CyclicWord> cw;
    for (const auto& l : s) cw.push_back(cyclic(l, rank));
    auto g = whitehead_minimize(cw, rank);
    auto o = oracle::minimal_length(s, rank);
    if (o.hit_cap) throw Rejection("oracle state cap exceeded");
    if (total_length(g.words) == o.min_length) {
      ++agree;
    } else {
      std::cout << "disagree:";
      for (const auto& w : cw) std::cout << " [" << to_string(w) << "]";
      std::cout << " greedy " << total_length(g.words) << " oracle " << o.min_length << "\n";
    }
  }
  std::cout << agree << "/" << samples << " agree\n";
  return agree == samples ? 0 : 1;
}

int run_oracle_euclid(int max_p) {
  if (max_p < 2 || max_p > 30) throw input_error("oracle caps: max-p 2..30");
  int pass = 0, total = 0;
  for (int p = 2; p <= max_p; ++p)
    for (int q = 1; q < p; ++q) {
      if (std::gcd(p, q) != 1) continue;
      ++total;
      auto t = build_diagram(p, q, true);
      auto tr = euclid_slide(t);
      if (tr.ok() && remark_q_from_numbering(t) == q)
        ++pass;
      else
        std::cout << "fail (" << p << "," << q << ")\n";
    }
  std::cout << pass << "/" << total << " pairs pass\n";
  return pass == total ? 0 : 1;
}

int run_oracle_roundtrip(const std::vector<std::string>& what) {
  if (what.empty()) throw input_error("roundtrip needs a family");
  std::vector<int> v;
  for (std::size_t i = 1; i < what.size(); ++i) v.push_back(std::stoi(what[i]));
  Diagram d;
  if (what[0] == "pretzel") {
    if (v.size() != 3) throw input_error("pretzel needs three parameters");
    d = pretzel_diagram(pretzel_normalize(v[0], v[1], v[2]));
  } else if (what[0] == "rational") {
    d = rational_diagram(rational_from_terms(v));
  } else {
    throw input_error("unknown family " + what[0]);
  }
  const auto words = trace_based_words(d);
  Embedding m = embed(d);
  int pass = 0, total = 0;
  for (const auto& c : enumerate_arcs(d, m)) {
    ++total;
    if (fill(drill(d, m, c.path).based) == words) ++pass;
  }
  std::cout << pass << "/" << total << " face pairs pass\n";
  return pass == total ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"circular handle decompositions from Whitehead diagrams"};
  app.require_subcommand(1);
  bool as_json = false, per_arc = false;
  std::string export_path;

  auto* rational = app.add_subcommand("rational", "classify the rational knot [2b1, ..., 2bg]");
  std::vector<int> terms;
  rational->add_option("terms", terms, "even continued fraction terms")->required();
  rational->add_flag("--json", as_json);
  rational->add_flag("--per-arc", per_arc, "test every face-pair arc and print each verdict");
  rational->add_option("--export-diagram", export_path);

  auto* pretzel = app.add_subcommand("pretzel", "classify the pretzel knot P(p,q,r)");
  std::vector<int> params;
  pretzel->add_option("params", params, "odd parameters")->required()->expected(3);
  pretzel->add_flag("--json", as_json);
  pretzel->add_flag("--per-arc", per_arc);
  pretzel->add_option("--export-diagram", export_path);

  auto* torus = app.add_subcommand("torus-slide", "euclidean handle slides on the (p,q) diagram");
  int tp = 0, tq = 0;
  bool trace = false;
  std::optional<int> export_stage;
  torus->add_option("p", tp)->required();
  torus->add_option("q", tq)->required();
  torus->add_flag("--trace", trace);
  torus->add_option("--export-stage", export_stage, "print the diagram of stage i");
  torus->add_flag("--json", as_json);

  auto* analyze = app.add_subcommand("analyze", "analyze a diagram file");
  std::string path, graph_path;
  analyze->add_option("file", path)->required();
  analyze->add_flag("--json", as_json);
  analyze->add_flag("--per-arc", per_arc);
  analyze->add_option("--export-graph", graph_path);
  Assumptions as;
  analyze->add_flag("--assume-unique-surface", as.unique_surface, "the surface is the unique incompressible one");
  analyze->add_flag("--assume-non-fibered", as.non_fibered_external, "the knot is known not to be fibered");

  auto* orc = app.add_subcommand("oracle", "brute force cross-checks");
  bool minimize = false, euclid = false;
  int rank = 2, len = 8, samples = 200, max_p = 30;
  unsigned seed = 7;
  std::vector<std::string> roundtrip;
  orc->add_flag("--minimize", minimize);
  orc->add_option("--rank", rank);
  orc->add_option("--len", len);
  orc->add_option("--seed", seed);
  orc->add_option("--samples", samples)->check(CLI::PositiveNumber);
  orc->add_flag("--euclid", euclid);
  orc->add_option("--max-p", max_p);
  orc->add_option("--roundtrip", roundtrip)->expected(1, 8)->allow_extra_args();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  try {
    if (*rational) return run_rational(terms, as_json, per_arc, export_path);
    if (*pretzel) return run_pretzel(params, as_json, per_arc, export_path);
    if (*torus) return run_torus(tp, tq, trace, export_stage, as_json);
    if (*analyze) return run_analyze(path, as_json, per_arc, graph_path, as);
    if (*orc) {
      if (minimize) return run_oracle_minimize(rank, len, seed, samples);
      if (euclid) return run_oracle_euclid(max_p);
      if (!roundtrip.empty()) return run_oracle_roundtrip(roundtrip);
      throw input_error("oracle needs --minimize, --euclid or --roundtrip");
    }
  } catch (const input_error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const search_cap_exceeded& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    return 1;
  } catch (const Rejection& e) {
    std::cerr << "rejected: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "internal error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
