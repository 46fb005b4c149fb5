#pragma once

#include <cstdint>
#include <vector>

#include "tangency/arrangement.hpp"

namespace tangency {

// S2: n_lines bi-infinite lines, the tangents y = 2u x - u^2 of the parabola
// y = x^2 at seeded abscissas u. S1: n_combs bi-infinite convex polylines;
// each has one vertex on each of touches_per randomly chosen lines, so it
// touches exactly those lines from above and misses the rest. Curve ids:
// combs first, then lines. Resampled (deterministically) until the family
// is in general position with exactly n_combs * touches_per touchings.
std::vector<CurveRecord> gen_comb(int n_lines, int n_combs, int touches_per, std::uint64_t seed);

// n thin convex polygons: rational points of an ellipse, rotated by
// distinct rational rotations about nearby centres, so every pair crosses.
std::vector<CurveRecord> gen_convex_family(int n, std::uint64_t seed);

// Hand-built closed families, n in {1, 2}, where every S1 curve touches
// every S2 curve exactly once (and, for n = 2, curves of a class cross).
std::vector<CurveRecord> gen_bipartite_closed_small(int n);

// n open x-monotone polylines with m vertices each, rejection-sampled to
// general position.
std::vector<CurveRecord> gen_random_polylines(int n, int m, std::uint64_t seed);

}  // namespace tangency
