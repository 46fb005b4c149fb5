#include "tangency/charging_bipartite.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "tangency/parallel.hpp"

namespace tangency {

namespace {

Rational ceil_q(const Rational& x) { return Rational(ceil(x)); }

}  // namespace

ChargingParams make_closed_params(const Arrangement& arr, const Rational& alpha, std::optional<std::vector<int>> levels) {
  if (alpha <= 1) throw std::invalid_argument("alpha must exceed 1");
  ChargingParams p;
  p.alpha = alpha;
  p.n = arr.n();
  p.t = Rational(static_cast<long>(p.n));
  if (levels) {
    p.levels = *levels;
    for (int k : p.levels) {
      if (k < 1 || !is_power_of_two(Rational(k))) throw std::invalid_argument("levels must be powers of two");
    }
    std::sort(p.levels.begin(), p.levels.end());
    p.levels.erase(std::unique(p.levels.begin(), p.levels.end()), p.levels.end());
  } else {
    for (std::size_t k = 1; k < p.n; k *= 2) p.levels.push_back(static_cast<int>(k));
  }
  return p;
}

void require_oriented_bipartite(const Arrangement& arr) {
  for (const auto& rec : arr.curves()) {
    if (rec.geometry.kind() != CurveKind::Closed) {
      throw PreconditionError("bipartite charging needs closed curves; curve " + std::to_string(rec.id) + " is " +
                              to_string(rec.geometry.kind()));
    }
    if (rec.geometry.orientation() == Orientation::Unset) {
      throw PreconditionError("curve " + std::to_string(rec.id) + " is not oriented");
    }
    if (rec.cls == CurveClass::Unassigned) {
      throw PreconditionError("bipartite charging needs S1/S2 classes; curve " + std::to_string(rec.id) + " has none");
    }
  }
  for (PointId id : arr.touchings()) {
    const auto& p = arr.point(id);
    if (arr.curve(p.curve_lo).cls == arr.curve(p.curve_hi).cls) {
      throw PreconditionError("touching " + std::to_string(id) + " joins two curves of the same class");
    }
    if (p.side_on_lo != Side::Left || p.side_on_hi != Side::Left) {
      throw PreconditionError("touching " + std::to_string(id) + " is not on the left of both curves; orient the family");
    }
  }
}

bool complete_bipartite(const Arrangement& arr) {
  for (const auto& u : arr.curves()) {
    if (u.cls != CurveClass::S1) continue;
    for (const auto& v : arr.curves()) {
      if (v.cls == CurveClass::S2 && !arr.touching_between(u.id, v.id)) return false;
    }
  }
  return arr.class_size(CurveClass::S1) > 0 && arr.class_size(CurveClass::S2) > 0;
}

bool on_arc(const Arrangement& arr, CurveId curve, PointId from, PointId to, PointId pt) {
  const int i = arr.point(from).position_on(curve);
  const int j = arr.point(to).position_on(curve);
  const auto& p = arr.point(pt);
  if (!p.on(curve)) return false;
  const int m = p.position_on(curve);
  if (i < j) return i < m && m < j;
  if (i > j) return m > i || m < j;
  return m != i;
}

ChargingGraph build_graph_closed(const Arrangement& arr, const ChargingParams& params) {
  require_oriented_bipartite(arr);
  const auto& touchings = arr.touchings();
  const Rational& alpha = params.alpha;
  const Rational alpha2 = alpha * alpha;
  std::vector<std::vector<ChargingEdge>> slots(touchings.size());

  parallel_for(touchings.size(), [&](std::size_t i) {
    const PointId pid = touchings[i];
    const auto& p = arr.point(pid);
    const CurveId a = arr.curve(p.curve_lo).cls == CurveClass::S1 ? p.curve_lo : p.curve_hi;
    const CurveId b = p.other(a);
    auto& out = slots[i];
    auto emit = [&](EdgeFamily f, int k, PointId q, Weight w, CurveId carrier, CurveId partner, PointId witness) {
      ChargingEdge e;
      e.touching = pid;
      e.crossing = q;
      e.family = f;
      e.level = k;
      e.weight = std::move(w);
      e.carrier = carrier;
      e.partner = partner;
      e.witness = witness;
      out.push_back(std::move(e));
    };
    auto touch_count = [&](CurveId c, PointId from, PointId to) {
      return count_on_arc_closed(arr, c, from, to, CountKind::Touching);
    };

    for (PointId qid : arr.sequence(a)) {
      const auto& q = arr.point(qid);
      if (q.category != PointCategory::X1) continue;
      const CurveId d = q.other(a);
      const int on_a = touch_count(a, pid, qid);
      for (int k : params.levels) {
        if (on_a < k) emit(EdgeFamily::A, k, qid, family_weight(EdgeFamily::A, k), a, d, -1);
      }
      const auto q2 = next_crossing_of_pair(arr, a, d, qid, NextMode::AlongCurve, d);
      if (!q2) continue;
      const int on_d = touch_count(d, qid, *q2);
      const auto bd = arr.touching_between(b, d);
      if (!bd || !on_arc(arr, d, qid, *q2, *bd)) continue;
      for (int k : params.levels) {
        if (on_a < k && Rational(on_d) < 3 * alpha2 * k) emit(EdgeFamily::C, k, qid, family_weight(EdgeFamily::C, k), a, d, *q2);
      }
    }

    for (PointId qid : arr.sequence(b)) {
      const auto& q = arr.point(qid);
      if (q.category != PointCategory::X2) continue;
      const int on_b = touch_count(b, qid, pid);
      for (int k : params.levels) {
        if (alpha * on_b < k) emit(EdgeFamily::APrime, k, qid, family_weight(EdgeFamily::APrime, k), b, q.other(b), -1);
        if (Rational(on_b) < alpha * k) {
          emit(EdgeFamily::ADoublePrime, k, qid, family_weight(EdgeFamily::ADoublePrime, k), b, q.other(b), -1);
        }
      }
    }

    for (PointId rid : arr.sequence(a)) {
      const auto& r = arr.point(rid);
      if (rid == pid || !r.is_touching()) continue;
      const CurveId c = r.other(a);
      const int a_pr = touch_count(a, pid, rid);
      for (PointId qid : arr.sequence(c)) {
        const auto& q = arr.point(qid);
        if (q.category != PointCategory::X2) continue;
        const int c_rq = touch_count(c, rid, qid);
        for (int k : params.levels) {
          if (a_pr < k && Rational(c_rq) < alpha * k) {
            emit(EdgeFamily::B, k, qid, Weight{make_rational(1, k * k), -1}, a, c, rid);
          }
        }
      }
    }
  });

  std::vector<ChargingEdge> edges;
  for (auto& s : slots) edges.insert(edges.end(), std::make_move_iterator(s.begin()), std::make_move_iterator(s.end()));
  return ChargingGraph(Scheme::Bipartite, params, std::move(edges));
}

double closed_upper_bound(std::size_t l, double alpha) {
  return 6.0 * static_cast<double>(l) + 2 * alpha * alpha * std::log2(alpha) + 12 * alpha * alpha;
}

std::vector<AuditRow> audit_upper_closed(const ChargingGraph& graph, const Arrangement& arr, PointId qid) {
  const auto& params = graph.params();
  const Rational& alpha = params.alpha;
  const auto& q = arr.point(qid);
  const auto& incident = graph.at_crossing(qid);
  std::map<std::pair<EdgeFamily, int>, int> counts;
  std::optional<int> k0;
  std::set<CurveId> c_roles;
  WeightSum sum;
  for (std::size_t i : incident) {
    const auto& e = graph.edges()[i];
    ++counts[{e.family, e.level}];
    sum.add(e.weight);
    if (e.family == EdgeFamily::C) {
      c_roles.insert(e.carrier);
      if (!k0 || e.level < *k0) k0 = e.level;
    }
  }
  std::vector<AuditRow> rows;
  for (int k : params.levels) {
    const Rational kk(k);
    if (q.category == PointCategory::X1) {
      rows.push_back(exact_row("upper_A", qid, k, Relation::Le, counts[{EdgeFamily::A, k}], 2 * kk));
      rows.push_back(exact_row("upper_C", qid, k, Relation::Le, counts[{EdgeFamily::C, k}], kk));
      if (k0) {
        rows.push_back(exact_row("upper_C_k0", qid, k, Relation::Le, counts[{EdgeFamily::C, k}], 3 * alpha * alpha * *k0));
      }
    } else {
      rows.push_back(exact_row("upper_A'", qid, k, Relation::Le, counts[{EdgeFamily::APrime, k}], 2 * ceil_q(kk / alpha)));
      rows.push_back(exact_row("upper_A''", qid, k, Relation::Le, counts[{EdgeFamily::ADoublePrime, k}], 2 * ceil_q(alpha * kk)));
      rows.push_back(exact_row("upper_B", qid, k, Relation::Le, counts[{EdgeFamily::B, k}], 2 * kk * ceil_q(alpha * kk)));
    }
  }
  if (q.category == PointCategory::X1) {
    rows.push_back(exact_row("c_role_unique", qid, 0, Relation::Le, static_cast<long>(c_roles.size()), 1));
  }
  rows.push_back(numeric_row("upper_aggregate", qid, 0, Relation::Le, sum.numeric(to_double(alpha)),
                             closed_upper_bound(params.levels.size(), to_double(alpha))));
  if (incident.empty()) {
    for (auto& r : rows) {
      if (r.status == AuditStatus::Pass) r.status = AuditStatus::Vacuous;
    }
  }
  return rows;
}

AuditRow audit_lower_closed(const ChargingGraph& graph, const Arrangement& arr, PointId pid, int k) {
  if (!complete_bipartite(arr)) {
    throw PreconditionError("lower audit needs every S1 curve to touch every S2 curve");
  }
  WeightSum sum;
  for (std::size_t i : graph.at_touching(pid)) {
    const auto& e = graph.edges()[i];
    if (e.level == k) sum.add(e.weight);
  }
  return exact_row("lower", pid, k, Relation::Ge, sum.value(graph.params().alpha), graph.params().alpha);
}

std::vector<AuditRow> audit_a_double_prime_identity(const ChargingGraph& graph) {
  std::vector<AuditRow> rows;
  const auto& params = graph.params();
  const Rational alpha2 = params.alpha * params.alpha;
  if (!is_power_of_two(alpha2) || alpha2 < 1 || alpha2.get_den() != 1) return rows;
  const long factor = alpha2.get_num().get_si();
  using Pair = std::pair<PointId, PointId>;
  std::map<int, std::set<Pair>> a1;
  std::map<int, std::set<Pair>> a2;
  for (const auto& e : graph.edges()) {
    if (e.family == EdgeFamily::APrime) a1[e.level].insert({e.touching, e.crossing});
    if (e.family == EdgeFamily::ADoublePrime) a2[e.level].insert({e.touching, e.crossing});
  }
  const std::set<int> levels(params.levels.begin(), params.levels.end());
  for (int k : params.levels) {
    const long big = factor * k;
    if (!levels.count(static_cast<int>(big))) continue;
    std::vector<Pair> diff;
    std::set_symmetric_difference(a2[k].begin(), a2[k].end(), a1[static_cast<int>(big)].begin(),
                                  a1[static_cast<int>(big)].end(), std::back_inserter(diff));
    AuditRow r = exact_row("a_double_prime_identity", -1, k, Relation::Le, static_cast<long>(diff.size()), 0);
    r.note = "A''_" + std::to_string(k) + " vs A'_" + std::to_string(big);
    rows.push_back(r);
  }
  return rows;
}

AuditReport summarize_closed(const ChargingGraph& graph, const Arrangement& arr) {
  const auto& params = graph.params();
  const Rational& alpha = params.alpha;
  const double alpha_d = to_double(alpha);
  const std::size_t l = params.levels.size();
  const Rational n(static_cast<long>(params.n));
  AuditReport report;

  WeightSum total;
  std::map<EdgeFamily, WeightSum> per_family;
  std::map<int, WeightSum> per_level;
  for (const auto& e : graph.edges()) {
    total.add(e.weight);
    per_family[e.family].add(e.weight);
    per_level[e.level].add(e.weight);
  }
  const Rational grand = total.value(alpha);
  report.summary.total_weights["total"] = to_string(grand);
  for (const auto& [f, s] : per_family) report.summary.total_weights[to_string(f)] = to_string(s.value(alpha));
  for (int k : params.levels) report.summary.total_weights["k=" + std::to_string(k)] = to_string(per_level[k].value(alpha));

  const double x_actual = static_cast<double>(arr.same_class_crossing_count());
  const double upper = closed_upper_bound(l, alpha_d);
  report.summary.formula_bounds["upper_per_crossing"] = upper;
  report.summary.formula_bounds["x_lower_bound_from_total"] = total.numeric(alpha_d) / upper;
  report.rows.push_back(numeric_row("implied_crossings", -1, 0, Relation::Ge, x_actual, total.numeric(alpha_d) / upper));

  if (complete_bipartite(arr)) {
    const Rational touch_count(static_cast<long>(arr.touchings().size()));
    for (int k : params.levels) {
      report.rows.push_back(exact_row("level_total", -1, k, Relation::Ge, per_level[k].value(alpha), alpha * touch_count));
    }
    report.rows.push_back(exact_row("total_lower", -1, 0, Relation::Ge, grand, alpha * static_cast<long>(l) * n * n));
    const double nd = to_double(n);
    const double at_alpha = alpha_d * static_cast<double>(l) * nd * nd / upper;
    report.summary.formula_bounds["x_lower_bound_alpha"] = at_alpha;
    report.rows.push_back(numeric_row("formula_alpha", -1, 0, Relation::Ge, x_actual, at_alpha));
    if (params.n >= 4) {
      const double ln = std::log2(nd);
      const double a_star = std::sqrt(ln / std::log2(ln));
      const std::size_t l_n = static_cast<std::size_t>(std::ceil(ln));
      const double at_star = a_star * static_cast<double>(l_n) * nd * nd / closed_upper_bound(l_n, a_star);
      report.summary.formula_bounds["alpha_star"] = a_star;
      report.summary.formula_bounds["x_lower_bound_alpha_star"] = at_star;
      report.rows.push_back(numeric_row("formula_alpha_star", -1, 0, Relation::Ge, x_actual, at_star));
    } else {
      report.summary.notices.push_back("n < 4: alpha* undefined (log log n <= 0); numeric section skipped");
    }
  } else {
    report.summary.notices.push_back("touchings are not complete bipartite; lower-bound totals not checked");
  }
  return report;
}

AuditReport run_bipartite_audits(const ChargingGraph& graph, const Arrangement& arr) {
  if (!complete_bipartite(arr)) {
    throw PreconditionError("bipartite audits need every S1 curve to touch every S2 curve");
  }
  AuditReport report;
  report.rows.push_back(audit_edge_weights(graph));

  std::vector<PointId> crossings;
  for (const auto& p : arr.points()) {
    if (p.in_x()) crossings.push_back(p.id);
  }
  std::vector<std::vector<AuditRow>> upper(crossings.size());
  parallel_for(crossings.size(), [&](std::size_t i) { upper[i] = audit_upper_closed(graph, arr, crossings[i]); });
  for (auto& rows : upper) report.rows.insert(report.rows.end(), rows.begin(), rows.end());

  for (PointId p : arr.touchings()) {
    for (int k : graph.params().levels) report.rows.push_back(audit_lower_closed(graph, arr, p, k));
  }
  for (auto& r : audit_a_double_prime_identity(graph)) report.rows.push_back(r);
  report.append(summarize_closed(graph, arr));
  return report;
}

}  // namespace tangency
