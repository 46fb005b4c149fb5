#pragma once

#include <map>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "tangency/geometry.hpp"

namespace tangency {

using CurveId = int;
using PointId = int;

enum class CurveClass { Unassigned, S1, S2 };
const char* to_string(CurveClass c);

struct CurveRecord {
  CurveId id = 0;
  CurveClass cls = CurveClass::Unassigned;
  Curve geometry;
};

// Touching: the pair's single common point, locally non-crossing.
// X1/X2: crossings within S1 / S2. XCross: between the classes.
// XUnclassed: a crossing involving an unassigned curve.
enum class PointCategory { Touching, X1, X2, XCross, XUnclassed };
const char* to_string(PointCategory c);

struct IntersectionPoint {
  PointId id = 0;
  Point point;
  CurveId curve_lo = 0;
  CurveId curve_hi = 0;
  PointCategory category = PointCategory::XUnclassed;
  // For touchings: the curve locally above (monotone families) and the side
  // of each curve, relative to its traversal, that holds the other one
  // (closed families).
  CurveId upper = -1;
  Side side_on_lo = Side::None;
  Side side_on_hi = Side::None;
  // Index of this point in the ordered sequence of curve_lo / curve_hi.
  int pos_lo = -1;
  int pos_hi = -1;

  bool is_touching() const { return category == PointCategory::Touching; }
  bool is_crossing() const { return !is_touching(); }
  // Same-class crossing: the charging schemes' X.
  bool in_x() const { return category == PointCategory::X1 || category == PointCategory::X2 || category == PointCategory::XUnclassed; }
  CurveId other(CurveId c) const { return c == curve_lo ? curve_hi : curve_lo; }
  int position_on(CurveId c) const { return c == curve_lo ? pos_lo : pos_hi; }
  bool on(CurveId c) const { return c == curve_lo || c == curve_hi; }
};

enum class ViolationKind { TriplePoint, InfiniteOverlap, VertexDegeneracy };
const char* to_string(ViolationKind k);

struct Violation {
  ViolationKind kind;
  std::vector<CurveId> curves;
  std::string details;
};

struct GeneralPositionReport {
  bool ok = true;
  std::vector<Violation> violations;
};

class GeneralPositionError : public std::runtime_error {
 public:
  explicit GeneralPositionError(GeneralPositionReport report);
  const GeneralPositionReport& report() const { return report_; }

 private:
  GeneralPositionReport report_;
};

// Signals that an input does not meet an operation's documented
// precondition (wrong curve kinds, unassigned classes, un-normalized, ...).
class PreconditionError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class CountKind {
  Touching,          // points of T
  Crossing,          // every crossing, including cross-class ones
  SameClassCrossing  // the charging schemes' X (cross-class crossings excluded)
};

class Arrangement {
 public:
  const std::vector<CurveRecord>& curves() const { return curves_; }
  const CurveRecord& curve(CurveId id) const { return curves_.at(static_cast<std::size_t>(id)); }
  const std::vector<IntersectionPoint>& points() const { return points_; }
  const IntersectionPoint& point(PointId id) const { return points_.at(static_cast<std::size_t>(id)); }

  const std::vector<PointId>& touchings() const { return touchings_; }
  const std::vector<PointId>& x1() const { return x1_; }
  const std::vector<PointId>& x2() const { return x2_; }
  const std::vector<PointId>& x_cross() const { return x_cross_; }
  std::size_t same_class_crossing_count() const;

  // Intersection ids on a curve, ordered by x (monotone) or along the
  // oriented traversal (closed; cyclic, starting at an arbitrary point).
  const std::vector<PointId>& sequence(CurveId c) const { return seqs_.at(static_cast<std::size_t>(c)); }
  // Number of `kind` points among sequence(c)[0, pos).
  int prefix(CurveId c, CountKind kind, int pos) const;

  std::optional<PointId> touching_between(CurveId u, CurveId v) const;

  bool is_monotone() const { return monotone_; }
  std::size_t class_size(CurveClass c) const;
  // Size of each class: max(|S1|, |S2|), or the curve count when classes are
  // unassigned.
  std::size_t n() const;
  // Touchings per curve, |T| / n.
  Rational t_eff() const;

  // Copy with new curve orientations (closed families) and rebuilt sequences.
  Arrangement with_orientations(const std::vector<Orientation>& orientations) const;

 private:
  friend Arrangement build_arrangement(const std::vector<CurveRecord>& curves);
  void index();

  bool monotone_ = true;
  std::vector<CurveRecord> curves_;
  std::vector<IntersectionPoint> points_;
  std::vector<PointId> touchings_, x1_, x2_, x_cross_;
  std::vector<std::vector<PointId>> seqs_;
  std::vector<std::vector<int>> prefix_t_, prefix_x_, prefix_xs_;
  std::map<std::pair<CurveId, CurveId>, PointId> touch_index_;
};

// Computes and classifies every pairwise intersection. Throws
// GeneralPositionError when validate_general_position would report
// violations, std::invalid_argument for mixed closed/monotone families.
Arrangement build_arrangement(const std::vector<CurveRecord>& curves);

GeneralPositionReport validate_general_position(const std::vector<CurveRecord>& curves);

// Independent all-pairs oracle: one entry per common point, sorted.
struct OracleHit {
  Point point;
  CurveId curve_lo;
  CurveId curve_hi;
  bool touching;
  CurveId upper;  // monotone touchings only, else -1

  friend bool operator==(const OracleHit&, const OracleHit&) = default;
};
std::vector<OracleHit> brute_force_intersections(const std::vector<CurveRecord>& curves);

// The same view of an arrangement, for comparison with the oracle.
std::vector<OracleHit> classified_hits(const Arrangement& arr);

// Points of `kind` on a monotone curve with abscissa strictly inside (x_lo, x_hi).
int count_between_monotone(const Arrangement& arr, CurveId curve, const Rational& x_lo, const Rational& x_hi,
                           CountKind kind);

// Points of `kind` on the open oriented arc of a closed curve from `from` to
// `to`. from == to counts the whole curve except that point.
int count_on_arc_closed(const Arrangement& arr, CurveId curve, PointId from, PointId to, CountKind kind);

enum class NextMode { XOrder, AlongCurve };

// First crossing of curves a and c strictly after `after`, either by x
// (monotone) or along the oriented curve `along` (closed, cyclic).
std::optional<PointId> next_crossing_of_pair(const Arrangement& arr, CurveId a, CurveId c, PointId after,
                                             NextMode mode, CurveId along = -1);

class OrientationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Orients every closed curve so that the curves touching it lie on its left.
// Curves without touchings get Ccw. Throws OrientationError when some curve
// is touched from both sides.
Arrangement orient_closed_family(const Arrangement& arr);

}  // namespace tangency
