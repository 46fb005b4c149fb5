#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "tangency/arrangement.hpp"

namespace tangency {

// Edge families. The monotone scheme uses A, B, C; the closed bipartite
// scheme uses all five.
enum class EdgeFamily { A, APrime, ADoublePrime, B, C };
const char* to_string(EdgeFamily f);

// coeff * alpha^alpha_exp, alpha_exp in {-1, 0, 1, 2}.
struct Weight {
  Rational coeff;
  int alpha_exp = 0;

  Rational value(const Rational& alpha) const;
  double numeric(double alpha) const;
  friend bool operator==(const Weight&, const Weight&) = default;
};

// Exact sum of weights, one rational coefficient per power of alpha.
class WeightSum {
 public:
  void add(const Weight& w);
  void add(const WeightSum& other);
  Rational value(const Rational& alpha) const;
  double numeric(double alpha) const;
  const std::map<int, Rational>& terms() const { return terms_; }
  friend bool operator==(const WeightSum&, const WeightSum&) = default;

 private:
  std::map<int, Rational> terms_;
};

struct ChargingEdge {
  PointId touching = -1;  // p
  PointId crossing = -1;  // q
  EdgeFamily family = EdgeFamily::A;
  int level = 1;  // k
  Weight weight;
  // Curve through both p and q (the role "a", or "b" for A'/A''), and the
  // other curve through q.
  CurveId carrier = -1;
  CurveId partner = -1;
  // Closed B: the touching r. Both C schemes: the next crossing q' of the
  // charged pair.
  PointId witness = -1;
  // Monotone C: the arc, i.e. curve b strictly between x(p) and x(q').
  CurveId arc_curve = -1;
  Rational arc_lo;
  Rational arc_hi;

  friend bool operator==(const ChargingEdge&, const ChargingEdge&) = default;
};

// Canonical edge order: (touching, crossing, family, level, witness, carrier).
bool edge_less(const ChargingEdge& u, const ChargingEdge& v);

enum class Scheme { Monotone, Bipartite };
const char* to_string(Scheme s);

struct ChargingParams {
  Rational alpha{2};
  std::vector<int> levels;  // powers of two, increasing
  // Density parameter t (monotone scheme; defaults to t_eff).
  Rational t;
  // Class size n.
  std::size_t n = 0;
};

// Expected weight of an edge of `family` at level k.
Weight family_weight(EdgeFamily family, int k);

class ChargingGraph {
 public:
  ChargingGraph() = default;
  ChargingGraph(Scheme scheme, ChargingParams params, std::vector<ChargingEdge> edges);

  Scheme scheme() const { return scheme_; }
  const ChargingParams& params() const { return params_; }
  const std::vector<ChargingEdge>& edges() const { return edges_; }
  // Edge indices incident to a crossing / touching (empty when none).
  const std::vector<std::size_t>& at_crossing(PointId q) const;
  const std::vector<std::size_t>& at_touching(PointId p) const;

  // Test hook: replaces the edge list (re-sorted and re-indexed).
  void replace_edges(std::vector<ChargingEdge> edges);

 private:
  void reindex();

  Scheme scheme_ = Scheme::Monotone;
  ChargingParams params_;
  std::vector<ChargingEdge> edges_;
  std::map<PointId, std::vector<std::size_t>> by_crossing_;
  std::map<PointId, std::vector<std::size_t>> by_touching_;
};

enum class AuditStatus { Pass, Fail, Skipped, Vacuous };
const char* to_string(AuditStatus s);
AuditStatus parse_audit_status(const std::string& s);

enum class Relation { Le, Ge };

struct AuditRow {
  std::string audit_kind;
  PointId vertex = -1;  // -1 for family-wide rows
  int level = 0;        // 0 when not level-specific
  Relation relation = Relation::Le;
  // Exact rows compare the rationals; numeric rows compare the doubles with
  // kNumericTolerance.
  bool exact = true;
  Rational computed_exact;
  Rational bound_exact;
  double computed = 0.0;
  double bound = 0.0;
  AuditStatus status = AuditStatus::Pass;
  std::string note;
};

inline constexpr double kNumericTolerance = 1e-9;

// Status implied by the row's numbers. Skipped rows stay skipped; vacuous
// rows stay vacuous as long as the numbers still satisfy the relation.
AuditStatus recompute_status(const AuditRow& row);

AuditRow exact_row(std::string kind, PointId vertex, int level, Relation rel, Rational computed, Rational bound);
AuditRow numeric_row(std::string kind, PointId vertex, int level, Relation rel, double computed, double bound);
AuditRow skipped_row(std::string kind, PointId vertex, int level, std::string note);

struct ChargeSummary {
  // Exact totals as "p/q" strings, keyed e.g. "A", "A@k=2", "total".
  std::map<std::string, std::string> total_weights;
  std::map<std::string, double> formula_bounds;
  std::vector<std::string> notices;
};

struct AuditReport {
  std::vector<AuditRow> rows;
  ChargeSummary summary;

  bool ok() const;
  std::size_t count(AuditStatus s) const;
  std::vector<const AuditRow*> failures() const;
  void append(const AuditReport& other);
};

// Base-2 logarithm.
double log2_of(const Rational& x);

// Checks every edge's weight against family_weight.
AuditRow audit_edge_weights(const ChargingGraph& graph);

// Test hook for negative tests.
enum class Fault { None, Weight, Arc };
Fault parse_fault(const std::string& s);
ChargingGraph inject_fault(const ChargingGraph& graph, const Arrangement& arr, Fault fault);

}  // namespace tangency
