#include "tangency/charging_monotone.hpp"

#include <algorithm>
#include <cmath>

#include "tangency/parallel.hpp"

namespace tangency {

namespace {

std::vector<int> default_levels(const Rational& t) {
  std::vector<int> out;
  for (int k = 1; Rational(2 * k) <= t; k *= 2) out.push_back(k);
  return out;
}

Rational ceil_q(const Rational& x) { return Rational(ceil(x)); }

const Rational& x_of(const Arrangement& arr, PointId id) { return arr.point(id).point.x; }

}  // namespace

ChargingParams make_params(const Arrangement& arr, const Rational& alpha, std::optional<Rational> t,
                           std::optional<std::vector<int>> levels) {
  if (alpha <= 1) throw std::invalid_argument("alpha must exceed 1");
  ChargingParams p;
  p.alpha = alpha;
  p.n = arr.n();
  p.t = t ? *t : arr.t_eff();
  p.levels = levels ? *levels : default_levels(p.t);
  for (int k : p.levels) {
    if (k < 1 || !is_power_of_two(Rational(k))) throw std::invalid_argument("levels must be powers of two");
  }
  std::sort(p.levels.begin(), p.levels.end());
  p.levels.erase(std::unique(p.levels.begin(), p.levels.end()), p.levels.end());
  return p;
}

void require_normalized(const Arrangement& arr) {
  for (const auto& rec : arr.curves()) {
    if (rec.geometry.kind() != CurveKind::BiInfinite) {
      throw PreconditionError("monotone charging needs bi-infinite curves; curve " + std::to_string(rec.id) + " is " +
                              to_string(rec.geometry.kind()));
    }
    if (rec.cls == CurveClass::Unassigned) {
      throw PreconditionError("monotone charging needs S1/S2 classes; curve " + std::to_string(rec.id) + " has none");
    }
  }
  for (PointId id : arr.touchings()) {
    const auto& p = arr.point(id);
    const CurveId lower = p.other(p.upper);
    if (arr.curve(p.upper).cls != CurveClass::S1 || arr.curve(lower).cls != CurveClass::S2) {
      throw PreconditionError("touching " + std::to_string(id) + " at " + to_string(p.point) +
                              " is not an S1 curve above an S2 curve; normalize first");
    }
  }
}

ChargingGraph build_graph(const Arrangement& arr, const ChargingParams& params) {
  require_normalized(arr);
  const auto& touchings = arr.touchings();
  const Rational& alpha = params.alpha;
  std::vector<std::vector<ChargingEdge>> slots(touchings.size());

  parallel_for(touchings.size(), [&](std::size_t i) {
    const PointId pid = touchings[i];
    const auto& p = arr.point(pid);
    auto& out = slots[i];
    for (const CurveId a : {p.curve_lo, p.curve_hi}) {
      const CurveId b = p.other(a);
      const auto& seq = arr.sequence(a);
      // Other curves of the touchings passed so far on a, strictly right of p.
      std::vector<CurveId> partners;
      for (std::size_t j = static_cast<std::size_t>(p.position_on(a)) + 1; j < seq.size(); ++j) {
        const PointId qid = seq[j];
        const auto& q = arr.point(qid);
        if (q.is_touching()) {
          partners.push_back(q.other(a));
          continue;
        }
        if (!q.in_x()) continue;
        const CurveId c = q.other(a);
        const int touch_between = static_cast<int>(partners.size());

        const auto bc = arr.touching_between(b, c);
        const bool b1 = bc && x_of(arr, *bc) > q.point.x;
        int b2_count = 0;
        for (CurveId other : partners) {
          if (arr.touching_between(other, c)) ++b2_count;
        }

        const auto q2 = next_crossing_of_pair(arr, a, c, qid, NextMode::XOrder);
        bool c_ok = false;
        int c4_count = 0;
        if (q2) {
          const Rational& x2 = x_of(arr, *q2);
          const bool c2 = bc && q.point.x < x_of(arr, *bc) && x_of(arr, *bc) < x2;
          if (c2) {
            c4_count = count_between_monotone(arr, b, p.point.x, x2, CountKind::SameClassCrossing);
            c_ok = true;
          }
        }

        for (int k : params.levels) {
          auto edge = [&](EdgeFamily f) {
            ChargingEdge e;
            e.touching = pid;
            e.crossing = qid;
            e.family = f;
            e.level = k;
            e.weight = family_weight(f, k);
            e.carrier = a;
            e.partner = c;
            return e;
          };
          if (touch_between < k) out.push_back(edge(EdgeFamily::A));
          if (b1 && alpha * b2_count < k) out.push_back(edge(EdgeFamily::B));
          if (c_ok && touch_between < k && Rational(c4_count) < alpha * k) {
            ChargingEdge e = edge(EdgeFamily::C);
            e.witness = *q2;
            e.arc_curve = b;
            e.arc_lo = p.point.x;
            e.arc_hi = x_of(arr, *q2);
            out.push_back(std::move(e));
          }
        }
      }
    }
  });

  std::vector<ChargingEdge> edges;
  for (auto& s : slots) edges.insert(edges.end(), std::make_move_iterator(s.begin()), std::make_move_iterator(s.end()));
  return ChargingGraph(Scheme::Monotone, params, std::move(edges));
}

std::vector<AuditRow> audit_upper_per_level(const ChargingGraph& graph, PointId q) {
  const auto& params = graph.params();
  const auto& incident = graph.at_crossing(q);
  std::map<std::pair<EdgeFamily, int>, int> counts;
  std::optional<int> k0;
  for (std::size_t i : incident) {
    const auto& e = graph.edges()[i];
    ++counts[{e.family, e.level}];
    if (e.family == EdgeFamily::C && (!k0 || e.level < *k0)) k0 = e.level;
  }
  std::vector<AuditRow> rows;
  for (int k : params.levels) {
    const Rational kk(k);
    rows.push_back(exact_row("upper_A", q, k, Relation::Le, counts[{EdgeFamily::A, k}], 2 * kk));
    rows.push_back(exact_row("upper_B", q, k, Relation::Le, counts[{EdgeFamily::B, k}], 2 * ceil_q(kk / params.alpha)));
    Rational c_bound = kk;
    if (k0) c_bound = std::min(c_bound, ceil_q(params.alpha * *k0));
    rows.push_back(exact_row("upper_C", q, k, Relation::Le, counts[{EdgeFamily::C, k}], c_bound));
  }
  if (incident.empty()) {
    for (auto& r : rows) {
      if (r.status == AuditStatus::Pass) r.status = AuditStatus::Vacuous;
    }
  }
  return rows;
}

double upper_aggregate_bound(const Rational& t, double alpha) {
  return 4 * log2_of(t) + alpha * alpha * std::log2(alpha) + 6 * alpha * alpha;
}

AuditRow audit_upper_aggregate(const ChargingGraph& graph, PointId q) {
  const auto& params = graph.params();
  if (params.t < 2) return skipped_row("upper_aggregate", q, 0, "t < 2: log t not positive");
  const double alpha = to_double(params.alpha);
  WeightSum sum;
  for (std::size_t i : graph.at_crossing(q)) sum.add(graph.edges()[i].weight);
  AuditRow row = numeric_row("upper_aggregate", q, 0, Relation::Le, sum.numeric(alpha), upper_aggregate_bound(params.t, alpha));
  if (graph.at_crossing(q).empty() && row.status == AuditStatus::Pass) row.status = AuditStatus::Vacuous;
  return row;
}

namespace {

// Touchings on curve c strictly right of p, in x order.
std::vector<PointId> touchings_right_of(const Arrangement& arr, CurveId c, const IntersectionPoint& p) {
  std::vector<PointId> out;
  const auto& seq = arr.sequence(c);
  for (std::size_t j = static_cast<std::size_t>(p.position_on(c)) + 1; j < seq.size(); ++j) {
    if (arr.point(seq[j]).is_touching()) out.push_back(seq[j]);
  }
  return out;
}

}  // namespace

AuditRow audit_lower(const ChargingGraph& graph, const Arrangement& arr, PointId pid, int k) {
  const auto& p = arr.point(pid);
  const auto right_lo = touchings_right_of(arr, p.curve_lo, p);
  const auto right_hi = touchings_right_of(arr, p.curve_hi, p);
  if (static_cast<int>(right_lo.size()) < k || static_cast<int>(right_hi.size()) < k) {
    return skipped_row("lower", pid, k, "eligibility: fewer than k touchings to the right on a curve of p");
  }
  // Role (a, b) is valid when b has fewer than k touchings strictly between
  // p and r_k, the k-th touching on a after p.
  auto valid = [&](const std::vector<PointId>& right_a, CurveId b) {
    const Rational& xr = x_of(arr, right_a[static_cast<std::size_t>(k - 1)]);
    return count_between_monotone(arr, b, p.point.x, xr, CountKind::Touching) < k;
  };
  const bool role_ok = valid(right_lo, p.curve_hi) || valid(right_hi, p.curve_lo);

  WeightSum sum;
  for (std::size_t i : graph.at_touching(pid)) {
    const auto& e = graph.edges()[i];
    if (e.level == k) sum.add(e.weight);
  }
  AuditRow row = exact_row("lower", pid, k, Relation::Ge, sum.value(graph.params().alpha), graph.params().alpha);
  if (!role_ok) row.note = "role-failure";
  return row;
}

AuditReport audit_arcs_proposition(const ChargingGraph& graph, const Arrangement& arr) {
  std::map<PointId, std::vector<const ChargingEdge*>> c_edges;
  for (const auto& e : graph.edges()) {
    if (e.family == EdgeFamily::C) c_edges[e.crossing].push_back(&e);
  }
  AuditReport report;
  for (const auto& [q, list] : c_edges) {
    if (list.size() < 2) continue;
    int bad = 0;
    for (std::size_t i = 0; i < list.size(); ++i) {
      for (std::size_t j = i + 1; j < list.size(); ++j) {
        const ChargingEdge& e = *list[i];
        const ChargingEdge& f = *list[j];
        if (e.arc_curve == f.arc_curve) {
          if (e.arc_lo != f.arc_lo || e.arc_hi != f.arc_hi) ++bad;
          continue;
        }
        const Rational lo = std::max(e.arc_lo, f.arc_lo);
        const Rational hi = std::min(e.arc_hi, f.arc_hi);
        int crossings = 0;
        bool foreign = false;
        for (PointId id : arr.sequence(e.arc_curve)) {
          const auto& pt = arr.point(id);
          if (!pt.on(f.arc_curve) || !(lo < pt.point.x && pt.point.x < hi)) continue;
          if (pt.is_touching() || !pt.in_x()) foreign = true;
          ++crossings;
        }
        if (crossings == 0 || foreign) ++bad;
      }
    }
    report.rows.push_back(exact_row("arcs_proposition", q, 0, Relation::Le, bad, 0));
  }
  if (report.rows.empty()) {
    AuditRow r = exact_row("arcs_proposition", -1, 0, Relation::Le, 0, 0);
    r.status = AuditStatus::Vacuous;
    r.note = "no crossing carries two C edges";
    report.rows.push_back(r);
  }
  return report;
}

double crossing_lower_bound(double t, double n, double alpha) {
  const double lt = std::log2(t);
  return (lt - 3) * alpha * t * n / 2 / (4 * lt + alpha * alpha * std::log2(alpha) + 6 * alpha * alpha);
}

std::optional<double> optimal_alpha(double t) {
  if (!(t > 2)) return std::nullopt;
  const double lt = std::log2(t);
  const double llt = std::log2(lt);
  if (!(llt > 0)) return std::nullopt;
  const double a = std::sqrt(lt / llt);
  if (!(a > 1)) return std::nullopt;
  return a;
}

AuditReport summarize(const ChargingGraph& graph, const Arrangement& arr, const std::vector<AuditRow>& lower_rows) {
  const auto& params = graph.params();
  const Rational& alpha = params.alpha;
  const Rational touch_count(static_cast<long>(arr.touchings().size()));
  const Rational n(static_cast<long>(params.n));
  AuditReport report;

  WeightSum total;
  std::map<int, WeightSum> per_level;
  std::map<EdgeFamily, WeightSum> per_family;
  for (const auto& e : graph.edges()) {
    total.add(e.weight);
    per_level[e.level].add(e.weight);
    per_family[e.family].add(e.weight);
  }
  report.summary.total_weights["total"] = to_string(total.value(alpha));
  for (const auto& [f, s] : per_family) report.summary.total_weights[to_string(f)] = to_string(s.value(alpha));

  for (int k : params.levels) {
    const Rational got = per_level[k].value(alpha);
    report.summary.total_weights["k=" + std::to_string(k)] = to_string(got);
    report.rows.push_back(exact_row("level_total", -1, k, Relation::Ge, got, alpha * (touch_count - 2 * n * k)));
    const auto skipped = std::count_if(lower_rows.begin(), lower_rows.end(), [&](const AuditRow& r) {
      return r.level == k && r.status == AuditStatus::Skipped;
    });
    report.rows.push_back(exact_row("lower_skipped", -1, k, Relation::Le, static_cast<long>(skipped), 2 * n * k));
  }
  const auto role_failures = std::count_if(lower_rows.begin(), lower_rows.end(),
                                           [](const AuditRow& r) { return r.note == "role-failure"; });
  report.rows.push_back(exact_row("lower_role_failures", -1, 0, Relation::Le, static_cast<long>(role_failures), 0));
  if (role_failures > 0) report.summary.notices.push_back("role-failure: no valid (a, b) role assignment at some touching");

  const double x_actual = static_cast<double>(arr.same_class_crossing_count());
  const double t = to_double(params.t);
  const double nd = to_double(n);
  report.summary.formula_bounds["upper_per_crossing"] = upper_aggregate_bound(params.t, to_double(alpha));
  if (!(params.t > 8)) {
    report.summary.notices.push_back("t <= 8: closed-form crossing bound is not positive (log t - 3 <= 0)");
    for (const char* kind : {"formula_alpha", "formula_alpha_star"}) {
      AuditRow r = skipped_row(kind, -1, 0, "vacuous: t <= 8");
      r.status = AuditStatus::Vacuous;
      r.exact = false;
      r.relation = Relation::Ge;
      r.computed = x_actual;
      r.bound = params.t > 0 ? std::min(0.0, crossing_lower_bound(t, nd, to_double(alpha))) : 0.0;
      report.rows.push_back(r);
    }
    return report;
  }
  const double at_alpha = crossing_lower_bound(t, nd, to_double(alpha));
  report.summary.formula_bounds["x_lower_bound_alpha"] = at_alpha;
  report.rows.push_back(numeric_row("formula_alpha", -1, 0, Relation::Ge, x_actual, at_alpha));
  if (const auto a_star = optimal_alpha(t)) {
    const double at_star = crossing_lower_bound(t, nd, *a_star);
    report.summary.formula_bounds["alpha_star"] = *a_star;
    report.summary.formula_bounds["x_lower_bound_alpha_star"] = at_star;
    report.rows.push_back(numeric_row("formula_alpha_star", -1, 0, Relation::Ge, x_actual, at_star));
  } else {
    report.summary.notices.push_back("alpha* undefined for this t");
    report.rows.push_back(skipped_row("formula_alpha_star", -1, 0, "alpha* undefined"));
  }
  return report;
}

AuditReport run_monotone_audits(const ChargingGraph& graph, const Arrangement& arr) {
  AuditReport report;
  report.rows.push_back(audit_edge_weights(graph));

  std::vector<PointId> crossings;
  for (const auto& p : arr.points()) {
    if (p.in_x()) crossings.push_back(p.id);
  }
  std::vector<std::vector<AuditRow>> upper(crossings.size());
  parallel_for(crossings.size(), [&](std::size_t i) {
    upper[i] = audit_upper_per_level(graph, crossings[i]);
    upper[i].push_back(audit_upper_aggregate(graph, crossings[i]));
  });
  for (auto& rows : upper) report.rows.insert(report.rows.end(), rows.begin(), rows.end());

  const auto& touchings = arr.touchings();
  const auto& levels = graph.params().levels;
  std::vector<std::vector<AuditRow>> lower(touchings.size());
  parallel_for(touchings.size(), [&](std::size_t i) {
    for (int k : levels) lower[i].push_back(audit_lower(graph, arr, touchings[i], k));
  });
  std::vector<AuditRow> lower_rows;
  for (auto& rows : lower) lower_rows.insert(lower_rows.end(), rows.begin(), rows.end());
  report.rows.insert(report.rows.end(), lower_rows.begin(), lower_rows.end());

  report.append(audit_arcs_proposition(graph, arr));
  report.append(summarize(graph, arr, lower_rows));
  return report;
}

}  // namespace tangency
