#include "tangency/charging.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace tangency {

const char* to_string(EdgeFamily f) {
  switch (f) {
    case EdgeFamily::A: return "A";
    case EdgeFamily::APrime: return "A'";
    case EdgeFamily::ADoublePrime: return "A''";
    case EdgeFamily::B: return "B";
    case EdgeFamily::C: return "C";
  }
  return "?";
}

const char* to_string(Scheme s) { return s == Scheme::Monotone ? "monotone" : "bipartite"; }

Rational Weight::value(const Rational& alpha) const {
  Rational v = coeff;
  if (alpha_exp >= 0) {
    for (int i = 0; i < alpha_exp; ++i) v *= alpha;
  } else {
    for (int i = 0; i < -alpha_exp; ++i) v /= alpha;
  }
  return v;
}

double Weight::numeric(double alpha) const { return to_double(coeff) * std::pow(alpha, alpha_exp); }

void WeightSum::add(const Weight& w) { terms_[w.alpha_exp] += w.coeff; }

void WeightSum::add(const WeightSum& other) {
  for (const auto& [e, c] : other.terms_) terms_[e] += c;
}

Rational WeightSum::value(const Rational& alpha) const {
  Rational v = 0;
  for (const auto& [e, c] : terms_) v += Weight{c, e}.value(alpha);
  return v;
}

double WeightSum::numeric(double alpha) const {
  double v = 0;
  for (const auto& [e, c] : terms_) v += Weight{c, e}.numeric(alpha);
  return v;
}

bool edge_less(const ChargingEdge& u, const ChargingEdge& v) {
  auto key = [](const ChargingEdge& e) {
    return std::tuple(e.touching, e.crossing, static_cast<int>(e.family), e.level, e.witness, e.carrier, e.partner,
                      e.arc_curve);
  };
  if (key(u) != key(v)) return key(u) < key(v);
  if (u.arc_lo != v.arc_lo) return u.arc_lo < v.arc_lo;
  return u.arc_hi < v.arc_hi;
}

Weight family_weight(EdgeFamily family, int k) {
  const Rational inv_k = make_rational(1, k);
  switch (family) {
    case EdgeFamily::A: return {inv_k, 0};
    case EdgeFamily::APrime: return {inv_k, 1};
    case EdgeFamily::ADoublePrime: return {inv_k, -1};
    case EdgeFamily::B: return {inv_k, 1};
    case EdgeFamily::C: return {inv_k, 2};
  }
  return {};
}

ChargingGraph::ChargingGraph(Scheme scheme, ChargingParams params, std::vector<ChargingEdge> edges)
    : scheme_(scheme), params_(std::move(params)), edges_(std::move(edges)) {
  reindex();
}

void ChargingGraph::replace_edges(std::vector<ChargingEdge> edges) {
  edges_ = std::move(edges);
  reindex();
}

void ChargingGraph::reindex() {
  std::sort(edges_.begin(), edges_.end(), edge_less);
  by_crossing_.clear();
  by_touching_.clear();
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    by_crossing_[edges_[i].crossing].push_back(i);
    by_touching_[edges_[i].touching].push_back(i);
  }
}

namespace {
const std::vector<std::size_t> kNoEdges;
}

const std::vector<std::size_t>& ChargingGraph::at_crossing(PointId q) const {
  auto it = by_crossing_.find(q);
  return it == by_crossing_.end() ? kNoEdges : it->second;
}

const std::vector<std::size_t>& ChargingGraph::at_touching(PointId p) const {
  auto it = by_touching_.find(p);
  return it == by_touching_.end() ? kNoEdges : it->second;
}

const char* to_string(AuditStatus s) {
  switch (s) {
    case AuditStatus::Pass: return "pass";
    case AuditStatus::Fail: return "fail";
    case AuditStatus::Skipped: return "skipped";
    case AuditStatus::Vacuous: return "vacuous";
  }
  return "?";
}

AuditStatus parse_audit_status(const std::string& s) {
  if (s == "pass") return AuditStatus::Pass;
  if (s == "fail") return AuditStatus::Fail;
  if (s == "skipped") return AuditStatus::Skipped;
  if (s == "vacuous") return AuditStatus::Vacuous;
  throw std::invalid_argument("unknown audit status '" + s + "'");
}

AuditStatus recompute_status(const AuditRow& row) {
  if (row.status == AuditStatus::Skipped) return AuditStatus::Skipped;
  bool holds = false;
  if (row.exact) {
    holds = row.relation == Relation::Le ? row.computed_exact <= row.bound_exact : row.computed_exact >= row.bound_exact;
  } else {
    holds = row.relation == Relation::Le ? row.computed <= row.bound + kNumericTolerance
                                         : row.computed >= row.bound - kNumericTolerance;
  }
  if (!holds) return AuditStatus::Fail;
  return row.status == AuditStatus::Vacuous ? AuditStatus::Vacuous : AuditStatus::Pass;
}

AuditRow exact_row(std::string kind, PointId vertex, int level, Relation rel, Rational computed, Rational bound) {
  AuditRow r;
  r.audit_kind = std::move(kind);
  r.vertex = vertex;
  r.level = level;
  r.relation = rel;
  r.exact = true;
  r.computed = to_double(computed);
  r.bound = to_double(bound);
  r.computed_exact = std::move(computed);
  r.bound_exact = std::move(bound);
  r.status = recompute_status(r);
  return r;
}

AuditRow numeric_row(std::string kind, PointId vertex, int level, Relation rel, double computed, double bound) {
  AuditRow r;
  r.audit_kind = std::move(kind);
  r.vertex = vertex;
  r.level = level;
  r.relation = rel;
  r.exact = false;
  r.computed = computed;
  r.bound = bound;
  r.status = recompute_status(r);
  return r;
}

AuditRow skipped_row(std::string kind, PointId vertex, int level, std::string note) {
  AuditRow r;
  r.audit_kind = std::move(kind);
  r.vertex = vertex;
  r.level = level;
  r.status = AuditStatus::Skipped;
  r.note = std::move(note);
  return r;
}

bool AuditReport::ok() const { return count(AuditStatus::Fail) == 0; }

std::size_t AuditReport::count(AuditStatus s) const {
  return static_cast<std::size_t>(std::count_if(rows.begin(), rows.end(), [&](const AuditRow& r) { return r.status == s; }));
}

std::vector<const AuditRow*> AuditReport::failures() const {
  std::vector<const AuditRow*> out;
  for (const auto& r : rows) {
    if (r.status == AuditStatus::Fail) out.push_back(&r);
  }
  return out;
}

void AuditReport::append(const AuditReport& other) {
  rows.insert(rows.end(), other.rows.begin(), other.rows.end());
  for (const auto& [k, v] : other.summary.total_weights) summary.total_weights[k] = v;
  for (const auto& [k, v] : other.summary.formula_bounds) summary.formula_bounds[k] = v;
  summary.notices.insert(summary.notices.end(), other.summary.notices.begin(), other.summary.notices.end());
}

double log2_of(const Rational& x) { return std::log2(to_double(x)); }

AuditRow audit_edge_weights(const ChargingGraph& graph) {
  int wrong = 0;
  for (const auto& e : graph.edges()) {
    Weight expected = family_weight(e.family, e.level);
    // Closed B edges weigh 1/(alpha k^2).
    if (graph.scheme() == Scheme::Bipartite && e.family == EdgeFamily::B) expected = {make_rational(1, e.level * e.level), -1};
    if (!(e.weight == expected)) ++wrong;
  }
  AuditRow r = exact_row("edge_weights", -1, 0, Relation::Le, wrong, 0);
  if (graph.edges().empty() && r.status == AuditStatus::Pass) r.status = AuditStatus::Vacuous;
  return r;
}

Fault parse_fault(const std::string& s) {
  if (s.empty() || s == "none") return Fault::None;
  if (s == "weight") return Fault::Weight;
  if (s == "arc") return Fault::Arc;
  throw std::invalid_argument("unknown fault '" + s + "' (expected weight or arc)");
}

ChargingGraph inject_fault(const ChargingGraph& graph, const Arrangement& arr, Fault fault) {
  std::vector<ChargingEdge> edges = graph.edges();
  if (fault == Fault::Weight && !edges.empty()) {
    edges.front().weight.coeff *= 2;
  } else if (fault == Fault::Arc) {
    // A second C edge at the same crossing whose arc lies on a different
    // curve and is empty, so the two arcs can neither coincide nor cross.
    for (const auto& e : edges) {
      if (e.family != EdgeFamily::C || e.arc_curve < 0) continue;
      ChargingEdge bad = e;
      for (const auto& rec : arr.curves()) {
        if (rec.id != e.arc_curve && rec.cls == arr.curve(e.arc_curve).cls) {
          bad.arc_curve = rec.id;
          break;
        }
      }
      bad.arc_hi = bad.arc_lo;
      edges.push_back(bad);
      break;
    }
  }
  ChargingGraph out = graph;
  out.replace_edges(std::move(edges));
  return out;
}

}  // namespace tangency
