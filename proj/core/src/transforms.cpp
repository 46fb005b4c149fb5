#include "tangency/transforms.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <random>

namespace tangency {

DecompositionResult decompose_closed(const Curve& curve, CurveId source) {
  if (curve.kind() != CurveKind::Closed) throw PreconditionError("decompose_closed needs a closed curve");
  const auto& vs = curve.vertices();
  const std::size_t n = vs.size();
  for (std::size_t i = 0; i < n; ++i) {
    if (vs[i].x == vs[(i + 1) % n].x) {
      throw GeometryError("vertical edge at " + to_string(vs[i]) + "; shear the input first");
    }
  }
  std::vector<std::size_t> extrema;
  for (std::size_t i = 0; i < n; ++i) {
    const int before = sign(Rational(vs[i].x - vs[(i + n - 1) % n].x));
    const int after = sign(Rational(vs[(i + 1) % n].x - vs[i].x));
    if (before != after) extrema.push_back(i);
  }

  DecompositionResult out;
  out.cut_count = static_cast<int>(extrema.size());
  out.first_cut = extrema.front();
  out.orientation = curve.orientation();
  for (std::size_t j = 0; j < extrema.size(); ++j) {
    const std::size_t from = extrema[j];
    const std::size_t to = extrema[(j + 1) % extrema.size()];
    std::vector<Point> chain;
    for (std::size_t i = from;; i = (i + 1) % n) {
      chain.push_back(vs[i]);
      if (i == to && chain.size() > 1) break;
    }
    const bool reversed = chain.back().x < chain.front().x;
    if (reversed) std::reverse(chain.begin(), chain.end());
    out.pieces.push_back({Curve::open(std::move(chain)), source, static_cast<int>(j), reversed});
  }
  return out;
}

Curve reassemble_pieces(const DecompositionResult& d) {
  std::vector<Point> walk;
  for (const auto& piece : d.pieces) {
    std::vector<Point> chain = piece.curve.vertices();
    if (piece.reversed) std::reverse(chain.begin(), chain.end());
    walk.insert(walk.end(), chain.begin(), chain.end() - 1);
  }
  std::vector<Point> vs(walk.size());
  for (std::size_t k = 0; k < walk.size(); ++k) vs[(d.first_cut + k) % walk.size()] = walk[k];
  return Curve::closed(std::move(vs), d.orientation);
}

std::vector<CurveRecord> shear(const std::vector<CurveRecord>& family, const Rational& eps) {
  std::vector<CurveRecord> out;
  out.reserve(family.size());
  for (const auto& rec : family) {
    std::vector<Point> vs;
    for (const Point& p : rec.geometry.vertices()) vs.push_back({p.x + eps * p.y, p.y});
    auto slope = [&](const Rational& m) -> Rational {
      const Rational denom = 1 + eps * m;
      if (denom <= 0) throw GeometryError("shear would fold a ray past vertical");
      return m / denom;
    };
    Curve g = [&] {
      switch (rec.geometry.kind()) {
        case CurveKind::Open:
          return Curve::open(std::move(vs));
        case CurveKind::BiInfinite:
          return Curve::bi_infinite(std::move(vs), slope(rec.geometry.left_slope()), slope(rec.geometry.right_slope()));
        case CurveKind::Closed:
          break;
      }
      return Curve::closed(std::move(vs), rec.geometry.orientation());
    }();
    out.push_back({rec.id, rec.cls, std::move(g)});
  }
  return out;
}

ShearResult auto_shear(const std::vector<CurveRecord>& family) {
  bool vertical = false;
  std::vector<Rational> xs;
  Rational y_min;
  Rational y_max;
  bool first = true;
  for (const auto& rec : family) {
    const auto& vs = rec.geometry.vertices();
    for (std::size_t i = 0; i < vs.size(); ++i) {
      xs.push_back(vs[i].x);
      if (first || vs[i].y < y_min) y_min = vs[i].y;
      if (first || vs[i].y > y_max) y_max = vs[i].y;
      first = false;
      if (rec.geometry.kind() == CurveKind::Closed && vs[i].x == vs[(i + 1) % vs.size()].x) vertical = true;
    }
  }
  if (!vertical) return {family, Rational(0)};
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  Rational gap = 1;
  for (std::size_t i = 0; i + 1 < xs.size(); ++i) {
    const Rational d = xs[i + 1] - xs[i];
    if (i == 0 || d < gap) gap = d;
  }
  Rational eps = gap / (2 * (y_max - y_min) + 1);
  return {shear(family, eps), eps};
}

Rational extension_slope(const std::vector<CurveRecord>& family) {
  Rational z = 0;
  auto bump = [&](const Rational& m) {
    if (abs(m) > z) z = abs(m);
  };
  for (const auto& rec : family) {
    const Curve& c = rec.geometry;
    if (!c.is_monotone()) throw PreconditionError("extend_biinfinite needs x-monotone curves");
    const auto& vs = c.vertices();
    for (std::size_t i = 0; i + 1 < vs.size(); ++i) bump((vs[i + 1].y - vs[i].y) / (vs[i + 1].x - vs[i].x));
    if (c.kind() == CurveKind::BiInfinite) {
      bump(c.left_slope());
      bump(c.right_slope());
    }
  }
  return z + 1;
}

std::vector<CurveRecord> extend_biinfinite(const std::vector<CurveRecord>& family, CurveClass descending) {
  const Rational z = extension_slope(family);
  std::vector<CurveRecord> out;
  out.reserve(family.size());
  for (const auto& rec : family) {
    if (rec.geometry.kind() == CurveKind::BiInfinite) {
      out.push_back(rec);
      continue;
    }
    const bool down = rec.cls == descending;
    out.push_back({rec.id, rec.cls, Curve::bi_infinite(rec.geometry.vertices(), down ? z : Rational(-z), down ? Rational(-z) : z)});
  }
  return out;
}

namespace {

struct Lift {
  Rational x0;
  Rational w;
  Rational delta;
};

// Smallest positive vertical gap from `u` up to any other curve over
// [lo, hi]; empty when nothing lies above. No curve other than `lower` may
// meet u there.
std::optional<Rational> clearance_above(const Arrangement& arr, CurveId u, CurveId lower, const Rational& lo,
                                        const Rational& hi, const Rational& x0) {
  const Curve& cu = arr.curve(u).geometry;
  std::optional<Rational> best;
  for (const auto& rec : arr.curves()) {
    if (rec.id == u || rec.id == lower) continue;
    const Curve& cv = rec.geometry;
    Rational a = lo;
    Rational b = hi;
    if (auto m = cv.domain_min(); m && *m > a) a = *m;
    if (auto m = cv.domain_max(); m && *m < b) b = *m;
    if (b < a) continue;
    std::vector<Rational> xs{a, b};
    if (a <= x0 && x0 <= b) xs.push_back(x0);
    for (const Point& p : cv.vertices()) {
      if (a < p.x && p.x < b) xs.push_back(p.x);
    }
    Rational least;
    bool above = false;
    bool have = false;
    for (const Rational& x : xs) {
      const Rational g = eval_at(cv, x) - eval_at(cu, x);
      if (!have || g < least) least = g;
      if (g > 0) above = true;
      have = true;
    }
    if (!above) continue;
    if (least <= 0) throw PreconditionError("clearance window around a touching is empty on curve " + std::to_string(u));
    if (!best || least < *best) best = least;
  }
  return best;
}

Curve apply_lifts(const Curve& c, std::vector<Lift> lifts) {
  std::sort(lifts.begin(), lifts.end(), [](const Lift& a, const Lift& b) { return a.x0 < b.x0; });
  std::vector<Point> vs;
  for (const Point& p : c.vertices()) {
    const bool replaced = std::any_of(lifts.begin(), lifts.end(), [&](const Lift& l) { return l.x0 == p.x; });
    if (!replaced) vs.push_back(p);
  }
  for (const Lift& l : lifts) {
    vs.push_back({l.x0 - l.w, eval_at(c, l.x0 - l.w)});
    vs.push_back({l.x0, eval_at(c, l.x0) + l.delta});
    vs.push_back({l.x0 + l.w, eval_at(c, l.x0 + l.w)});
  }
  std::sort(vs.begin(), vs.end());
  if (c.kind() == CurveKind::BiInfinite) return Curve::bi_infinite(std::move(vs), c.left_slope(), c.right_slope());
  return Curve::open(std::move(vs));
}

}  // namespace

NormalizationResult normalize_one_sided(const Arrangement& arr) {
  if (!arr.is_monotone()) throw PreconditionError("normalize_one_sided needs x-monotone curves");
  for (const auto& rec : arr.curves()) {
    if (rec.cls == CurveClass::Unassigned) throw PreconditionError("normalize_one_sided needs S1/S2 classes");
  }
  int s1_above = 0;
  int s2_above = 0;
  for (PointId id : arr.touchings()) {
    const auto& p = arr.point(id);
    const CurveClass up = arr.curve(p.upper).cls;
    if (up == arr.curve(p.other(p.upper)).cls) continue;
    (up == CurveClass::S1 ? s1_above : s2_above)++;
  }

  NormalizationResult out;
  out.swapped = s2_above > s1_above;
  out.retained_touchings = std::max(s1_above, s2_above);
  const CurveClass keep_upper = out.swapped ? CurveClass::S2 : CurveClass::S1;

  std::map<CurveId, std::vector<Lift>> lifts;
  for (PointId id : arr.touchings()) {
    const auto& p = arr.point(id);
    const CurveId u = p.upper;
    const CurveId l = p.other(u);
    if (arr.curve(u).cls == keep_upper && arr.curve(l).cls != keep_upper) continue;

    const Rational& x0 = p.point.x;
    std::optional<Rational> near;
    auto consider = [&](const Rational& x) {
      if (x == x0) return;
      const Rational d = abs(x - x0);
      if (!near || d < *near) near = d;
    };
    for (const Point& v : arr.curve(u).geometry.vertices()) consider(v.x);
    for (PointId q : arr.sequence(u)) consider(arr.point(q).point.x);
    // A third keeps windows of neighbouring lifts on the same curve disjoint.
    const Rational w = near ? Rational(*near / 3) : Rational(1);
    const auto clearance = clearance_above(arr, u, l, x0 - w, x0 + w, x0);
    lifts[u].push_back({x0, w, clearance ? Rational(*clearance / 2) : Rational(1)});
    ++out.removed_touchings;
  }

  for (const auto& rec : arr.curves()) {
    CurveClass cls = rec.cls;
    if (out.swapped) cls = cls == CurveClass::S1 ? CurveClass::S2 : CurveClass::S1;
    auto it = lifts.find(rec.id);
    out.curves.push_back({rec.id, cls, it == lifts.end() ? rec.geometry : apply_lifts(rec.geometry, it->second)});
  }
  return out;
}

namespace {

void draw_split(std::uint64_t seed, int attempt, std::size_t n, std::vector<CurveClass>& classes) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(attempt)};
  std::mt19937_64 rng(seq);
  std::vector<std::size_t> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  // Explicit Fisher-Yates: std::shuffle's draw sequence differs between
  // standard libraries.
  for (std::size_t i = n - 1; i > 0; --i) std::swap(perm[i], perm[rng() % (i + 1)]);
  classes.assign(n, CurveClass::S2);
  for (std::size_t k = 0; k < n / 2; ++k) classes[perm[k]] = CurveClass::S1;
}

}  // namespace

Bipartition random_bipartition(const Arrangement& arr, std::uint64_t seed) {
  const std::size_t n = arr.curves().size();
  if (n < 2) throw PreconditionError("random_bipartition needs at least two curves");
  const int total = static_cast<int>(arr.touchings().size());
  constexpr int max_attempts = 100000;

  Bipartition best;
  best.cross_touchings = -1;
  std::vector<CurveClass> classes;
  for (int attempt = 0; attempt < max_attempts; ++attempt) {
    draw_split(seed, attempt, n, classes);
    int cross = 0;
    for (PointId id : arr.touchings()) {
      const auto& p = arr.point(id);
      if (classes[static_cast<std::size_t>(p.curve_lo)] != classes[static_cast<std::size_t>(p.curve_hi)]) ++cross;
    }
    if (cross > best.cross_touchings) best = {classes, cross, attempt + 1};
    if (total == 0 || 2 * cross > total) {
      best.attempts = attempt + 1;
      return best;
    }
  }
  best.attempts = max_attempts;
  return best;
}

std::vector<CurveRecord> with_classes(const std::vector<CurveRecord>& family, const std::vector<CurveClass>& classes) {
  std::vector<CurveRecord> out = family;
  for (std::size_t i = 0; i < out.size(); ++i) out[i].cls = classes.at(i);
  return out;
}

}  // namespace tangency
