#pragma once

#include <optional>
#include <vector>

#include "tangency/charging.hpp"

namespace tangency {

// Levels k = 1, 2, 4, ... with k <= t/2; t defaults to the arrangement's
// t_eff and n to its class size. `levels` overrides the level list.
ChargingParams make_params(const Arrangement& arr, const Rational& alpha, std::optional<Rational> t = std::nullopt,
                           std::optional<std::vector<int>> levels = std::nullopt);

// Throws PreconditionError unless every curve is BiInfinite and classified
// and every touching has its S1 curve above its S2 curve.
void require_normalized(const Arrangement& arr);

// Edges (p, q) with p in T, q a same-class crossing on a curve a through p,
// x(q) > x(p):
//   A_k (1/k):   fewer than k touchings on a strictly between p and q;
//   B_k (alpha/k): b, c touch right of q, and fewer than k/alpha touchings p'
//                on a between p and q whose other curve touches c;
//   C_k (alpha^2/k): q' = next crossing of a, c right of q; b touches c
//                between q and q'; fewer than k touchings on a between p
//                and q; fewer than alpha*k same-class crossings on b
//                strictly between x(p) and x(q').
ChargingGraph build_graph(const Arrangement& arr, const ChargingParams& params);

// Per-level counts at crossing q: |A_k| <= 2k, |B_k| <= 2 ceil(k/alpha),
// |C_k| <= min(k, ceil(alpha k0)).
std::vector<AuditRow> audit_upper_per_level(const ChargingGraph& graph, PointId q);

// Incident weight at q <= 4 log t + alpha^2 log alpha + 6 alpha^2.
AuditRow audit_upper_aggregate(const ChargingGraph& graph, PointId q);
double upper_aggregate_bound(const Rational& t, double alpha);

// Level-k weight at p >= alpha, for touchings where both curves have at
// least k touchings to the right of p (others are skipped). The note records
// "role-failure" when neither curve satisfies the b0 condition.
AuditRow audit_lower(const ChargingGraph& graph, const Arrangement& arr, PointId p, int k);

// Any two C edges at a crossing have identical arcs, or arcs on curves that
// cross inside the common x-range, only at same-class crossings. One row per
// crossing: the number of offending pairs.
AuditReport audit_arcs_proposition(const ChargingGraph& graph, const Arrangement& arr);

// |X| >= (log t - 3) alpha t n / 2 / (4 log t + alpha^2 log alpha + 6 alpha^2).
double crossing_lower_bound(double t, double n, double alpha);
std::optional<double> optimal_alpha(double t);

// Per-level totals against alpha (|T| - 2nk), skipped-row counts against
// 2nk, and the closed-form |X| bound at alpha and alpha*. `lower_rows` are
// the rows from audit_lower.
AuditReport summarize(const ChargingGraph& graph, const Arrangement& arr, const std::vector<AuditRow>& lower_rows);

// Every audit above over every vertex and level, plus audit_edge_weights.
AuditReport run_monotone_audits(const ChargingGraph& graph, const Arrangement& arr);

}  // namespace tangency
