#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "tangency/charging.hpp"

namespace tangency {

struct PipelineOptions {
  // Run the monotone charging chain once |T| reaches this; defaults to the
  // number of curves.
  std::optional<std::size_t> touch_threshold;
  Rational alpha{2};
  std::uint64_t seed = 1;
};

struct PipelineResult {
  std::size_t n = 0;
  std::size_t total_intersections = 0;
  std::size_t touchings = 0;
  long bound = 0;  // 2 * C(n, 2) - |T|
  Rational shear_eps;
  int cut_count = 0;
  int max_pieces = 0;
  bool charged = false;
  std::size_t pieces = 0;
  AuditReport report;
};

// Closed curves, pairwise intersecting: counts intersections against
// 2 C(n, 2) - |T|, splits every curve into x-monotone pieces, and when the
// family is touch-rich runs bipartition, normalization, extension and the
// monotone charging audits on the pieces. Throws PreconditionError for
// non-closed input or a pair of curves that never meet.
PipelineResult run_rt_pipeline(const std::vector<CurveRecord>& curves, const PipelineOptions& options = {});

// Shortens both ends of an open piece of `source` along its end segments,
// by less than a third of the segment and less than half the distance to the
// nearest point of `arr` on that segment, so pieces cut from one curve stop
// sharing endpoints. Points at the old endpoints are dropped.
Curve trim_piece(const Curve& piece, const Arrangement& arr, CurveId source);

}  // namespace tangency
