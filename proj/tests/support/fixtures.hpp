#pragma once

#include <vector>

#include "tangency/arrangement.hpp"

namespace tangency::testing {

inline Point P(long x, long y) { return Point(x, y); }

// a: V with apex (0,0), c: V with apex (4,0), both S1; b: the line y = 0 in
// S2. T = {(0,0) on (a,b), (4,0) on (c,b)}, X1 = {(2,2) on (a,c)}.
inline std::vector<CurveRecord> v_instance() {
  return {
      {0, CurveClass::S1, Curve::bi_infinite({P(0, 0)}, -1, 1)},
      {1, CurveClass::S2, Curve::bi_infinite({P(0, 0)}, 0, 0)},
      {2, CurveClass::S1, Curve::bi_infinite({P(4, 0)}, -1, 1)},
  };
}

inline std::vector<CurveRecord> v_instance_open() {
  return {
      {0, CurveClass::S1, Curve::open({P(-1, 1), P(0, 0), P(3, 3)})},
      {1, CurveClass::S2, Curve::open({P(-2, 0), P(6, 0)})},
      {2, CurveClass::S1, Curve::open({P(1, 3), P(4, 0), P(5, 1)})},
  };
}

inline Curve square(long x0, long y0, long side) {
  return Curve::closed({P(x0, y0), P(x0 + side, y0), P(x0 + side, y0 + side), P(x0, y0 + side)});
}

}  // namespace tangency::testing
