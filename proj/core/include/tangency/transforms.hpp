#pragma once

#include <cstdint>
#include <vector>

#include "tangency/arrangement.hpp"

namespace tangency {

struct MonotonePiece {
  Curve curve;  // Open, x increasing
  CurveId source = 0;
  int index = 0;
  // The piece runs against the source's vertex order (it was a leftward
  // chain and got flipped to satisfy the Open invariant).
  bool reversed = false;
};

struct DecompositionResult {
  std::vector<MonotonePiece> pieces;
  int cut_count = 0;
  // Vertex index in the source where the first piece starts, and the source
  // orientation; together they let reassemble_pieces restore it exactly.
  std::size_t first_cut = 0;
  Orientation orientation = Orientation::Unset;
};

// Cuts a closed polygon at its locally x-extremal vertices into maximal
// x-monotone chains. Throws GeometryError on a vertical edge.
DecompositionResult decompose_closed(const Curve& curve, CurveId source = 0);

// Inverse of decompose_closed.
Curve reassemble_pieces(const DecompositionResult& decomposition);

// x <- x + eps * y on every vertex (and ray). Monotone inputs require
// 1 + eps * slope > 0 for every ray so the result stays x-monotone.
std::vector<CurveRecord> shear(const std::vector<CurveRecord>& family, const Rational& eps);

// The shear that removes vertical edges and x-ties while keeping every strict
// x-order: eps = (smallest positive x gap) / (2 * y range + 1). Returns the
// family unchanged (eps = 0) when no closed curve has a vertical edge.
struct ShearResult {
  std::vector<CurveRecord> family;
  Rational eps;
};
ShearResult auto_shear(const std::vector<CurveRecord>& family);

// Turns Open curves into BiInfinite ones with steep terminal rays, z = (max
// |segment slope|) + 1. Curves of `descending` get a left ray of slope +z and
// a right ray of slope -z; the other class gets -z and +z. Touchings where a
// `descending` curve lies below survive; curves already BiInfinite are kept.
std::vector<CurveRecord> extend_biinfinite(const std::vector<CurveRecord>& family,
                                           CurveClass descending = CurveClass::S1);
Rational extension_slope(const std::vector<CurveRecord>& family);

struct NormalizationResult {
  std::vector<CurveRecord> curves;
  int retained_touchings = 0;
  int removed_touchings = 0;
  bool swapped = false;
};

// Leaves only touchings where an S1 curve lies above an S2 curve, swapping
// the classes first when that keeps more of them. Every other touching is
// removed by lifting its upper curve on a small window around the point.
// Throws PreconditionError for closed or unclassified families.
NormalizationResult normalize_one_sided(const Arrangement& arr);

struct Bipartition {
  std::vector<CurveClass> classes;  // indexed by curve id
  int cross_touchings = 0;
  int attempts = 0;
};

// Balanced random split (floor(n/2) curves to S1), redrawn with derived
// seeds until more than half of the touchings join the two classes.
Bipartition random_bipartition(const Arrangement& arr, std::uint64_t seed);

std::vector<CurveRecord> with_classes(const std::vector<CurveRecord>& family, const std::vector<CurveClass>& classes);

}  // namespace tangency
