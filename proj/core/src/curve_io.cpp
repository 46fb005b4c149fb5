#include "tangency/curve_io.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

namespace tangency {

using Json = nlohmann::ordered_json;

namespace {

Rational rational_field(const Json& j, const char* what) {
  if (j.is_string()) {
    try {
      return parse_rational(j.get<std::string>());
    } catch (const std::invalid_argument& e) {
      throw ParseError(std::string(what) + ": " + e.what());
    }
  }
  if (j.is_number_integer()) return Rational(j.get<long>());
  throw ParseError(std::string(what) + ": expected a \"p/q\" string");
}

const Json& require(const Json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key)) throw ParseError(std::string("missing field '") + key + "'");
  return obj.at(key);
}

std::string relation_name(Relation r) { return r == Relation::Le ? "le" : "ge"; }

}  // namespace

std::string curves_to_json(const std::vector<CurveRecord>& curves) {
  Json root;
  root["version"] = 1;
  Json list = Json::array();
  for (const auto& rec : curves) {
    Json c;
    c["id"] = rec.id;
    c["class"] = rec.cls == CurveClass::Unassigned ? Json(nullptr) : Json(to_string(rec.cls));
    const Curve& g = rec.geometry;
    c["kind"] = g.kind() == CurveKind::Open ? "open" : g.kind() == CurveKind::BiInfinite ? "biinfinite" : "closed";
    Json vs = Json::array();
    for (const Point& p : g.vertices()) vs.push_back(Json::array({to_string(p.x), to_string(p.y)}));
    c["vertices"] = std::move(vs);
    if (g.kind() == CurveKind::BiInfinite) {
      c["left_ray_slope"] = to_string(g.left_slope());
      c["right_ray_slope"] = to_string(g.right_slope());
    }
    if (g.kind() == CurveKind::Closed && g.orientation() != Orientation::Unset) {
      c["orientation"] = g.orientation() == Orientation::Cw ? "cw" : "ccw";
    }
    list.push_back(std::move(c));
  }
  root["curves"] = std::move(list);
  return root.dump(2) + "\n";
}

std::vector<CurveRecord> curves_from_json(const std::string& text) {
  Json root;
  try {
    root = Json::parse(text);
  } catch (const Json::exception& e) {
    throw ParseError(std::string("invalid JSON: ") + e.what());
  }
  if (require(root, "version") != 1) throw ParseError("unsupported curve file version");
  const Json& list = require(root, "curves");
  if (!list.is_array()) throw ParseError("'curves' must be an array");

  std::vector<CurveRecord> out;
  try {
    for (const Json& c : list) {
      const int id = require(c, "id").get<int>();
      if (id != static_cast<int>(out.size())) throw ParseError("curve ids must be 0, 1, 2, ... in order");
      CurveClass cls = CurveClass::Unassigned;
      const Json& cls_field = require(c, "class");
      if (cls_field == "S1") {
        cls = CurveClass::S1;
      } else if (cls_field == "S2") {
        cls = CurveClass::S2;
      } else if (!cls_field.is_null()) {
        throw ParseError("class must be \"S1\", \"S2\" or null");
      }
      std::vector<Point> vs;
      for (const Json& v : require(c, "vertices")) {
        if (!v.is_array() || v.size() != 2) throw ParseError("vertex must be [x, y]");
        vs.push_back({rational_field(v[0], "vertex x"), rational_field(v[1], "vertex y")});
      }
      const std::string kind = require(c, "kind").get<std::string>();
      if (kind == "open") {
        out.push_back({id, cls, Curve::open(std::move(vs))});
      } else if (kind == "biinfinite") {
        out.push_back({id, cls,
                       Curve::bi_infinite(std::move(vs), rational_field(require(c, "left_ray_slope"), "left_ray_slope"),
                                          rational_field(require(c, "right_ray_slope"), "right_ray_slope"))});
      } else if (kind == "closed") {
        Orientation o = Orientation::Unset;
        if (c.contains("orientation") && !c.at("orientation").is_null()) {
          const std::string s = c.at("orientation").get<std::string>();
          if (s == "cw") o = Orientation::Cw;
          else if (s == "ccw") o = Orientation::Ccw;
          else throw ParseError("orientation must be \"cw\" or \"ccw\"");
        }
        out.push_back({id, cls, Curve::closed(std::move(vs), o)});
      } else {
        throw ParseError("unknown curve kind '" + kind + "'");
      }
    }
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed curve entry: ") + e.what());
  } catch (const GeometryError& e) {
    throw ParseError(std::string("invalid curve: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("invalid curve: ") + e.what());
  }
  return out;
}

ArrangementStats stats_of(const Arrangement& arr) {
  ArrangementStats s;
  s.n = arr.n();
  s.t_eff = arr.t_eff();
  s.touchings = arr.touchings().size();
  s.x1 = arr.x1().size();
  s.x2 = arr.x2().size();
  s.x_cross = arr.x_cross().size();
  for (const auto& p : arr.points()) {
    if (p.category == PointCategory::XUnclassed) ++s.x_unclassed;
  }
  return s;
}

std::string report_to_json(const ReportFile& report) {
  Json root;
  root["version"] = 1;
  root["command"] = report.command;
  root["scheme"] = report.scheme;
  root["alpha"] = report.alpha;
  const auto& st = report.stats;
  root["stats"] = {{"n", st.n},
                   {"t_eff", to_string(st.t_eff)},
                   {"T", st.touchings},
                   {"X1", st.x1},
                   {"X2", st.x2},
                   {"X_cross", st.x_cross},
                   {"X_unclassed", st.x_unclassed}};
  Json rows = Json::array();
  for (const auto& r : report.report.rows) {
    Json row;
    row["audit_kind"] = r.audit_kind;
    row["vertex_id"] = r.vertex;
    row["level"] = r.level;
    row["relation"] = relation_name(r.relation);
    row["exact"] = r.exact;
    if (r.exact) {
      row["computed"] = to_string(r.computed_exact);
      row["bound"] = to_string(r.bound_exact);
    } else {
      row["computed"] = r.computed;
      row["bound"] = r.bound;
    }
    row["status"] = to_string(r.status);
    if (!r.note.empty()) row["note"] = r.note;
    rows.push_back(std::move(row));
  }
  root["audits"] = std::move(rows);
  Json summary;
  summary["total_weights"] = Json::object();
  for (const auto& [k, v] : report.report.summary.total_weights) summary["total_weights"][k] = v;
  summary["formula_bounds"] = Json::object();
  for (const auto& [k, v] : report.report.summary.formula_bounds) summary["formula_bounds"][k] = v;
  summary["notices"] = report.report.summary.notices;
  summary["fail_count"] = report.report.count(AuditStatus::Fail);
  root["summary"] = std::move(summary);
  return root.dump(2) + "\n";
}

ReportFile report_from_json(const std::string& text) {
  ReportFile out;
  try {
    const Json root = Json::parse(text);
    if (require(root, "version") != 1) throw ParseError("unsupported report version");
    out.command = require(root, "command").get<std::string>();
    out.scheme = require(root, "scheme").get<std::string>();
    out.alpha = require(root, "alpha").get<std::string>();
    const Json& st = require(root, "stats");
    out.stats.n = require(st, "n").get<std::size_t>();
    out.stats.t_eff = rational_field(require(st, "t_eff"), "t_eff");
    out.stats.touchings = require(st, "T").get<std::size_t>();
    out.stats.x1 = require(st, "X1").get<std::size_t>();
    out.stats.x2 = require(st, "X2").get<std::size_t>();
    out.stats.x_cross = require(st, "X_cross").get<std::size_t>();
    out.stats.x_unclassed = require(st, "X_unclassed").get<std::size_t>();
    for (const Json& row : require(root, "audits")) {
      AuditRow r;
      r.audit_kind = require(row, "audit_kind").get<std::string>();
      r.vertex = require(row, "vertex_id").get<int>();
      r.level = require(row, "level").get<int>();
      const std::string rel = require(row, "relation").get<std::string>();
      if (rel != "le" && rel != "ge") throw ParseError("relation must be le or ge");
      r.relation = rel == "le" ? Relation::Le : Relation::Ge;
      r.exact = require(row, "exact").get<bool>();
      if (r.exact) {
        r.computed_exact = rational_field(require(row, "computed"), "computed");
        r.bound_exact = rational_field(require(row, "bound"), "bound");
        r.computed = to_double(r.computed_exact);
        r.bound = to_double(r.bound_exact);
      } else {
        r.computed = require(row, "computed").get<double>();
        r.bound = require(row, "bound").get<double>();
      }
      r.status = parse_audit_status(require(row, "status").get<std::string>());
      if (row.contains("note")) r.note = row.at("note").get<std::string>();
      out.report.rows.push_back(std::move(r));
    }
    const Json& summary = require(root, "summary");
    for (const auto& [k, v] : require(summary, "total_weights").items()) out.report.summary.total_weights[k] = v.get<std::string>();
    for (const auto& [k, v] : require(summary, "formula_bounds").items()) out.report.summary.formula_bounds[k] = v.get<double>();
    out.report.summary.notices = require(summary, "notices").get<std::vector<std::string>>();
  } catch (const Json::exception& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  } catch (const std::invalid_argument& e) {
    throw ParseError(std::string("malformed report: ") + e.what());
  }
  return out;
}

std::string report_to_csv(const AuditReport& report) {
  std::ostringstream os;
  os << "audit_kind,vertex_id,level,relation,computed,bound,status,note\n";
  os.precision(17);
  for (const auto& r : report.rows) {
    os << r.audit_kind << ',' << r.vertex << ',' << r.level << ',' << relation_name(r.relation) << ',';
    if (r.exact) {
      os << to_string(r.computed_exact) << ',' << to_string(r.bound_exact);
    } else {
      os << r.computed << ',' << r.bound;
    }
    os << ',' << to_string(r.status) << ',' << r.note << '\n';
  }
  return os.str();
}

std::string read_text_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ParseError("cannot read '" + path + "'");
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  out << text;
  if (!out) throw std::runtime_error("failed writing '" + path + "'");
}

}  // namespace tangency
