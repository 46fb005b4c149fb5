#include "tangency/cli.hpp"

#include <sstream>

#include "CLI11.hpp"
#include "tangency/charging_bipartite.hpp"
#include "tangency/charging_monotone.hpp"
#include "tangency/curve_io.hpp"
#include "tangency/generators.hpp"
#include "tangency/pipeline.hpp"
#include "tangency/transforms.hpp"

namespace tangency {

namespace {

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

Rational parse_alpha(const std::string& text) {
  Rational a;
  try {
    a = parse_rational(text);
  } catch (const std::invalid_argument& e) {
    throw UsageError(std::string("--alpha: ") + e.what());
  }
  if (a <= 1) throw UsageError("--alpha must be a rational greater than 1");
  return a;
}

std::vector<int> parse_levels(const std::string& text) {
  std::vector<int> levels;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      std::size_t used = 0;
      const int k = std::stoi(item, &used);
      if (used != item.size() || k < 1) throw std::invalid_argument(item);
      levels.push_back(k);
    } catch (const std::logic_error&) {
      throw UsageError("--levels expects positive integers separated by commas");
    }
  }
  if (levels.empty()) throw UsageError("--levels is empty");
  return levels;
}

std::vector<CurveRecord> load_curves(const std::string& path) { return curves_from_json(read_text_file(path)); }

void emit(const std::string& text, const std::string& path, std::ostream& out) {
  if (path.empty() || path == "-") {
    out << text;
  } else {
    write_text_file(path, text);
  }
}

// Without --audit only summary rows and failures are written; the fail list
// stays exhaustive either way.
AuditReport select_rows(const AuditReport& full, bool per_vertex) {
  if (per_vertex) return full;
  AuditReport out;
  out.summary = full.summary;
  for (const auto& r : full.rows) {
    if (r.vertex < 0 || r.status == AuditStatus::Fail) out.rows.push_back(r);
  }
  return out;
}

void print_outcome(const AuditReport& report, std::ostream& out) {
  out << "rows: " << report.rows.size() << ", pass: " << report.count(AuditStatus::Pass)
      << ", fail: " << report.count(AuditStatus::Fail) << ", skipped: " << report.count(AuditStatus::Skipped)
      << ", vacuous: " << report.count(AuditStatus::Vacuous) << "\n";
  for (const AuditRow* r : report.failures()) {
    out << "FAIL " << r->audit_kind << " vertex=" << r->vertex << " level=" << r->level << "\n";
  }
}

struct GenerateArgs {
  std::string family;
  int n = 0;
  int touches = 0;
  int m = 8;
  std::uint64_t seed = 1;
  std::string out;
};

int cmd_generate(const GenerateArgs& a, std::ostream& out) {
  std::vector<CurveRecord> curves;
  if (a.family == "comb") {
    curves = gen_comb(a.n, a.n, a.touches, a.seed);
  } else if (a.family == "convex") {
    curves = gen_convex_family(a.n, a.seed);
  } else if (a.family == "bipartite_closed_small") {
    curves = gen_bipartite_closed_small(a.n);
  } else if (a.family == "random_polylines") {
    curves = gen_random_polylines(a.n, a.m, a.seed);
  } else {
    throw UsageError("unknown family '" + a.family + "'");
  }
  write_text_file(a.out, curves_to_json(curves));
  out << "wrote " << curves.size() << " curves to " << a.out << "\n";
  return kExitOk;
}

int cmd_analyze(const std::string& input, std::ostream& out) {
  const auto curves = load_curves(input);
  const GeneralPositionReport gp = validate_general_position(curves);
  if (!gp.ok) {
    for (const auto& v : gp.violations) out << "violation " << to_string(v.kind) << ": " << v.details << "\n";
    return kExitPrecondition;
  }
  const Arrangement arr = build_arrangement(curves);
  const ArrangementStats s = stats_of(arr);
  out << "curves: " << curves.size() << "\n"
      << "n: " << s.n << "\n"
      << "t_eff: " << to_string(s.t_eff) << "\n"
      << "T: " << s.touchings << "\n"
      << "X1: " << s.x1 << "\n"
      << "X2: " << s.x2 << "\n"
      << "X_cross: " << s.x_cross << "\n"
      << "X_unclassed: " << s.x_unclassed << "\n";
  return kExitOk;
}

int cmd_oracle_check(const std::string& input, std::ostream& out) {
  const auto curves = load_curves(input);
  const auto fast = classified_hits(build_arrangement(curves));
  const auto slow = brute_force_intersections(curves);
  if (fast == slow) {
    out << "oracle agrees on " << fast.size() << " points\n";
    return kExitOk;
  }
  out << "oracle mismatch: arrangement " << fast.size() << " points, brute force " << slow.size() << " points\n";
  return kExitAuditFailure;
}

struct TransformArgs {
  std::string input;
  std::string op;
  std::string out;
  std::string descending = "S1";
  std::string eps;
  std::uint64_t seed = 1;
};

int cmd_transform(const TransformArgs& a, std::ostream& out) {
  const auto curves = load_curves(a.input);
  std::vector<CurveRecord> result;
  if (a.op == "decompose") {
    const ShearResult sheared = auto_shear(curves);
    for (const auto& rec : sheared.family) {
      if (rec.geometry.kind() != CurveKind::Closed) throw PreconditionError("decompose needs closed curves");
      for (auto& piece : decompose_closed(rec.geometry, rec.id).pieces) {
        result.push_back({static_cast<CurveId>(result.size()), rec.cls, std::move(piece.curve)});
      }
    }
  } else if (a.op == "extend") {
    CurveClass d = CurveClass::S1;
    if (a.descending == "S2") d = CurveClass::S2;
    else if (a.descending != "S1") throw UsageError("--descending must be S1 or S2");
    result = extend_biinfinite(curves, d);
  } else if (a.op == "normalize") {
    result = normalize_one_sided(build_arrangement(curves)).curves;
  } else if (a.op == "bipartition") {
    result = with_classes(curves, random_bipartition(build_arrangement(curves), a.seed).classes);
  } else if (a.op == "shear") {
    if (a.eps.empty()) {
      result = auto_shear(curves).family;
    } else {
      Rational eps;
      try {
        eps = parse_rational(a.eps);
      } catch (const std::invalid_argument& e) {
        throw UsageError(std::string("--eps: ") + e.what());
      }
      result = shear(curves, eps);
    }
  } else {
    throw UsageError("unknown --op '" + a.op + "'");
  }
  write_text_file(a.out, curves_to_json(result));
  out << "wrote " << result.size() << " curves to " << a.out << "\n";
  return kExitOk;
}

struct ChargeArgs {
  std::string input;
  std::string scheme = "monotone";
  std::string alpha = "2";
  bool audit = false;
  std::string out;
  std::string csv;
  std::string fault;
  std::string levels;
  std::string t;
};

int cmd_charge(const ChargeArgs& a, std::ostream& out) {
  const Rational alpha = parse_alpha(a.alpha);
  const Fault fault = [&] {
    try {
      return parse_fault(a.fault);
    } catch (const std::invalid_argument& e) {
      throw UsageError(e.what());
    }
  }();
  std::optional<std::vector<int>> levels;
  if (!a.levels.empty()) levels = parse_levels(a.levels);
  std::optional<Rational> t;
  if (!a.t.empty()) {
    try {
      t = parse_rational(a.t);
    } catch (const std::invalid_argument& e) {
      throw UsageError(std::string("--t: ") + e.what());
    }
  }

  const auto curves = load_curves(a.input);
  Arrangement arr = build_arrangement(curves);
  AuditReport full;
  if (a.scheme == "monotone") {
    require_normalized(arr);
    ChargingGraph graph = build_graph(arr, make_params(arr, alpha, t, levels));
    if (fault != Fault::None) graph = inject_fault(graph, arr, fault);
    full = run_monotone_audits(graph, arr);
  } else if (a.scheme == "bipartite") {
    if (t) throw UsageError("--t applies to the monotone scheme only");
    if (arr.is_monotone()) throw PreconditionError("the bipartite scheme needs closed curves");
    const bool unset = std::any_of(arr.curves().begin(), arr.curves().end(), [](const CurveRecord& r) {
      return r.geometry.orientation() == Orientation::Unset;
    });
    if (unset) arr = orient_closed_family(arr);
    require_oriented_bipartite(arr);
    ChargingGraph graph = build_graph_closed(arr, make_closed_params(arr, alpha, levels));
    if (fault != Fault::None) graph = inject_fault(graph, arr, fault);
    full = run_bipartite_audits(graph, arr);
  } else {
    throw UsageError("--scheme must be monotone or bipartite");
  }

  const AuditReport shown = select_rows(full, a.audit);
  ReportFile file{"charge", a.scheme, to_string(alpha), stats_of(arr), shown};
  emit(report_to_json(file), a.out, out);
  if (!a.csv.empty()) write_text_file(a.csv, report_to_csv(shown));
  if (!a.out.empty() && a.out != "-") print_outcome(shown, out);
  return full.ok() ? kExitOk : kExitAuditFailure;
}

struct PipelineArgs {
  std::string input;
  std::string alpha = "2";
  std::string out;
  long threshold = -1;
  std::uint64_t seed = 1;
};

int cmd_pipeline(const PipelineArgs& a, std::ostream& out) {
  PipelineOptions opt;
  opt.alpha = parse_alpha(a.alpha);
  opt.seed = a.seed;
  if (a.threshold >= 0) opt.touch_threshold = static_cast<std::size_t>(a.threshold);
  const auto curves = load_curves(a.input);
  const PipelineResult res = run_rt_pipeline(curves, opt);
  ReportFile file{"pipeline-rt", "monotone", to_string(opt.alpha), stats_of(build_arrangement(curves)), res.report};
  if (!a.out.empty()) write_text_file(a.out, report_to_json(file));
  out << "n: " << res.n << "\n"
      << "total intersections: " << res.total_intersections << "\n"
      << "T: " << res.touchings << "\n"
      << "bound 2*C(n,2)-|T|: " << res.bound << "\n"
      << "shear: " << to_string(res.shear_eps) << "\n"
      << "pieces: " << res.pieces << ", cuts: " << res.cut_count << "\n"
      << "charged: " << (res.charged ? "yes" : "no") << "\n";
  print_outcome(res.report, out);
  return res.report.ok() ? kExitOk : kExitAuditFailure;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Tangency/crossing arrangements and charging audits", "tangency_charge"};
  app.require_subcommand(1);

  GenerateArgs gen;
  auto* g = app.add_subcommand("generate", "Write a seeded curve family");
  g->add_option("--family", gen.family, "comb | convex | bipartite_closed_small | random_polylines")->required();
  g->add_option("--n", gen.n, "Curves per class (comb), curves (convex, random_polylines) or instance size")->required();
  g->add_option("--touches", gen.touches, "Touchings per comb");
  g->add_option("--m", gen.m, "Vertices per polyline");
  g->add_option("--seed", gen.seed, "Seed");
  g->add_option("--out", gen.out, "Output curve file")->required();

  std::string analyze_in;
  auto* an = app.add_subcommand("analyze", "Classify intersections and print counts");
  an->add_option("input", analyze_in, "Curve file")->required();

  std::string oracle_in;
  auto* oc = app.add_subcommand("oracle-check", "Compare the arrangement against the brute-force oracle");
  oc->add_option("input", oracle_in, "Curve file")->required();

  TransformArgs tr;
  auto* t = app.add_subcommand("transform", "Apply a family transformation");
  t->add_option("input", tr.input, "Curve file")->required();
  t->add_option("--op", tr.op, "decompose | extend | normalize | bipartition | shear")->required();
  t->add_option("--out", tr.out, "Output curve file")->required();
  t->add_option("--descending", tr.descending, "Class whose rays point down (extend)");
  t->add_option("--eps", tr.eps, "Shear factor p/q (shear; default: automatic)");
  t->add_option("--seed", tr.seed, "Seed (bipartition)");

  ChargeArgs ch;
  auto* c = app.add_subcommand("charge", "Build a charging graph and audit it");
  c->add_option("input", ch.input, "Curve file")->required();
  c->add_option("--scheme", ch.scheme, "monotone | bipartite");
  c->add_option("--alpha", ch.alpha, "Rational alpha > 1");
  c->add_flag("--audit", ch.audit, "Write every per-vertex audit row");
  c->add_option("--out", ch.out, "Report file (default: stdout)");
  c->add_option("--csv", ch.csv, "Also write audit rows as CSV");
  c->add_option("--inject-fault", ch.fault, "Test hook: weight | arc");
  c->add_option("--levels", ch.levels, "Comma-separated levels, overriding the default");
  c->add_option("--t", ch.t, "Override t (monotone)");

  PipelineArgs pl;
  auto* p = app.add_subcommand("pipeline-rt", "Intersection count and reduction chain for closed curves");
  p->add_option("input", pl.input, "Curve file")->required();
  p->add_option("--alpha", pl.alpha, "Rational alpha > 1");
  p->add_option("--out", pl.out, "Report file");
  p->add_option("--threshold", pl.threshold, "Run charging once |T| reaches this (default: n)");
  p->add_option("--seed", pl.seed, "Bipartition seed");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::CallForAllHelp&) {
    out << app.help("", CLI::AppFormatMode::All);
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kExitUsage;
  }

  try {
    if (*g) return cmd_generate(gen, out);
    if (*an) return cmd_analyze(analyze_in, out);
    if (*oc) return cmd_oracle_check(oracle_in, out);
    if (*t) return cmd_transform(tr, out);
    if (*c) return cmd_charge(ch, out);
    if (*p) return cmd_pipeline(pl, out);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const ParseError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const PreconditionError& e) {
    err << "precondition: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const GeneralPositionError& e) {
    err << "precondition: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const OrientationError& e) {
    err << "precondition: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const GeometryError& e) {
    err << "precondition: " << e.what() << "\n";
    return kExitPrecondition;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kExitPrecondition;
  }
  return kExitUsage;
}

}  // namespace tangency
