#pragma once

#include <optional>
#include <vector>

#include "tangency/charging.hpp"

namespace tangency {

// Levels k = 1, 2, 4, ... with k < n (ceil(log2 n) of them); `levels`
// overrides the list.
ChargingParams make_closed_params(const Arrangement& arr, const Rational& alpha,
                                  std::optional<std::vector<int>> levels = std::nullopt);

// Throws PreconditionError unless every curve is closed, oriented and
// classified, and every touching joins an S1 curve to an S2 curve.
void require_oriented_bipartite(const Arrangement& arr);

// True when every S1 curve touches every S2 curve (exactly once, as
// touchings are single common points).
bool complete_bipartite(const Arrangement& arr);

// Whether point `pt` lies on the open oriented arc of `curve` from `from` to
// `to` (the whole curve minus `from` when from == to).
bool on_arc(const Arrangement& arr, CurveId curve, PointId from, PointId to, PointId pt);

// For a touching p of a in S1 and b in S2, with arcs open and oriented:
//   A_k   (1/k):          q in X1 on a, arc a p->q has < k touchings;
//   A'_k  (alpha/k):      q in X2 on b, arc b q->p has < k/alpha touchings;
//   A''_k (1/(alpha k)):  q in X2 on b, arc b q->p has < alpha k touchings;
//   B_k   (1/(alpha k^2)): per touching r != p of a with c in S2, arc a p->r
//                         has < k touchings, q in X2 on c, arc c r->q has
//                         < alpha k touchings;
//   C_k   (alpha^2/k):    q in X1 of a and d, q' the next a/d crossing after
//                         q along d; arc a p->q has < k touchings, arc d
//                         q->q' has < 3 alpha^2 k, and b touches d on it.
ChargingGraph build_graph_closed(const Arrangement& arr, const ChargingParams& params);

// Per-level counts at q (X1: A <= 2k, C <= k, C <= 3 alpha^2 k0, one role
// for a; X2: A' <= 2 ceil(k/alpha), A'' <= 2 ceil(alpha k), B <= 2k ceil(alpha
// k)) and the aggregate weight <= 6l + 2 alpha^2 log alpha + 12 alpha^2.
std::vector<AuditRow> audit_upper_closed(const ChargingGraph& graph, const Arrangement& arr, PointId q);
double closed_upper_bound(std::size_t l, double alpha);

// Level-k weight at p >= alpha. Throws PreconditionError when the touchings
// are not complete bipartite.
AuditRow audit_lower_closed(const ChargingGraph& graph, const Arrangement& arr, PointId p, int k);

// Edge-set identity A''_k == A'_{alpha^2 k} for every level pair present,
// when alpha^2 is a power of two.
std::vector<AuditRow> audit_a_double_prime_identity(const ChargingGraph& graph);

// Grand total >= alpha l n^2 (complete bipartite inputs), per-family totals,
// and the implied crossing bounds at alpha and at alpha* (n >= 4).
AuditReport summarize_closed(const ChargingGraph& graph, const Arrangement& arr);

AuditReport run_bipartite_audits(const ChargingGraph& graph, const Arrangement& arr);

}  // namespace tangency
