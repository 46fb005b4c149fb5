#include "tangency/generators.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <set>

namespace tangency {

namespace {

// Seeded draws with an explicit reduction, so families are identical across
// standard libraries (std::uniform_int_distribution is not portable).
class Draw {
 public:
  Draw(std::uint64_t seed, int attempt, std::uint32_t salt) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(attempt), salt};
    rng_.seed(seq);
  }
  // Uniform-ish integer in [lo, hi].
  long range(long lo, long hi) { return lo + static_cast<long>(rng_() % static_cast<std::uint64_t>(hi - lo + 1)); }

 private:
  std::mt19937_64 rng_;
};

constexpr int kMaxAttempts = 1000;

std::optional<Arrangement> try_build(const std::vector<CurveRecord>& family) {
  try {
    return build_arrangement(family);
  } catch (const GeneralPositionError&) {
    return std::nullopt;
  } catch (const GeometryError&) {
    return std::nullopt;
  }
}

// Nearest rational with denominator `den`.
Rational approx(double v, long den) {
  return make_rational(static_cast<long>(std::llround(v * static_cast<double>(den))), den);
}

std::vector<CurveRecord> comb_attempt(int n_lines, int n_combs, int touches_per, Draw& draw) {
  // Tangency abscissas u_j = j + jitter, jitter in [0, 1/4).
  std::vector<Rational> u;
  for (int j = 0; j < n_lines; ++j) {
    u.push_back(make_rational(j * 4000L + draw.range(0, 999), 4000));
  }
  Rational gap = 1;
  for (int j = 0; j + 1 < n_lines; ++j) {
    const Rational d = u[static_cast<std::size_t>(j + 1)] - u[static_cast<std::size_t>(j)];
    if (j == 0 || d < gap) gap = d;
  }

  std::vector<CurveRecord> family;
  for (int i = 0; i < n_combs; ++i) {
    // Random subset of lines, in increasing u.
    std::vector<int> idx(static_cast<std::size_t>(n_lines));
    for (int j = 0; j < n_lines; ++j) idx[static_cast<std::size_t>(j)] = j;
    for (int j = n_lines - 1; j > 0; --j) std::swap(idx[static_cast<std::size_t>(j)], idx[static_cast<std::size_t>(draw.range(0, j))]);
    idx.resize(static_cast<std::size_t>(touches_per));
    std::sort(idx.begin(), idx.end());

    // Vertex on line j at x = u + delta, 0 < |delta| < gap/4. Such vertices
    // lie on y = x^2 - delta^2, which keeps the chain convex with every
    // chosen tangent line supporting it at its vertex.
    std::vector<Point> vs;
    for (int j : idx) {
      const Rational& uj = u[static_cast<std::size_t>(j)];
      Rational delta = gap * make_rational(draw.range(1, 999), 4000);
      if (draw.range(0, 1) == 1) delta = -delta;
      vs.push_back({uj + delta, uj * uj + 2 * uj * delta});
    }
    const Rational& u_first = u[static_cast<std::size_t>(idx.front())];
    const Rational& u_last = u[static_cast<std::size_t>(idx.back())];
    const Rational left = 2 * u_first - 1 - make_rational(draw.range(0, 999), 1000);
    const Rational right = 2 * u_last + 1 + make_rational(draw.range(0, 999), 1000);
    if (vs.size() == 1) {
      // A second vertex on the left ray keeps every comb a proper chain.
      vs.insert(vs.begin(), {vs.front().x - 1, vs.front().y - left});
    }
    family.push_back({i, CurveClass::S1, Curve::bi_infinite(std::move(vs), left, right)});
  }
  for (int j = 0; j < n_lines; ++j) {
    const Rational& uj = u[static_cast<std::size_t>(j)];
    family.push_back({n_combs + j, CurveClass::S2, Curve::bi_infinite({Point{uj, uj * uj}}, 2 * uj, 2 * uj)});
  }
  return family;
}

}  // namespace

std::vector<CurveRecord> gen_comb(int n_lines, int n_combs, int touches_per, std::uint64_t seed) {
  if (n_lines < 1 || n_combs < 1 || touches_per < 1 || touches_per > n_lines) {
    throw std::invalid_argument("gen_comb needs 1 <= touches_per <= n_lines and n_combs >= 1");
  }
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Draw draw(seed, attempt, 0xc0b);
    auto family = comb_attempt(n_lines, n_combs, touches_per, draw);
    const auto arr = try_build(family);
    if (!arr || static_cast<int>(arr->touchings().size()) != n_combs * touches_per) continue;
    const bool all_above = std::all_of(arr->touchings().begin(), arr->touchings().end(), [&](PointId id) {
      const auto& p = arr->point(id);
      return arr->curve(p.upper).cls == CurveClass::S1 && arr->curve(p.other(p.upper)).cls == CurveClass::S2;
    });
    if (all_above) return family;
  }
  throw std::runtime_error("gen_comb: no valid family within the attempt budget");
}

std::vector<CurveRecord> gen_convex_family(int n, std::uint64_t seed) {
  if (n < 2) throw std::invalid_argument("gen_convex_family needs n >= 2");
  constexpr int kVertices = 24;
  const double pi = std::numbers::pi;

  // Rational points on the unit circle, (1 - s^2, 2s) / (1 + s^2), in
  // counter-clockwise order.
  std::vector<Point> circle;
  std::set<Rational> seen;
  for (int k = 0; k < kVertices; ++k) {
    const double phi = -pi + 2 * pi * (k + 0.5) / kVertices;
    const Rational s = approx(std::tan(phi / 2), 1000);
    if (!seen.insert(s).second) continue;
    const Rational d = 1 + s * s;
    circle.push_back({(1 - s * s) / d, 2 * s / d});
  }

  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Draw draw(seed, attempt, 0xc01);
    std::vector<CurveRecord> family;
    for (int i = 0; i < n; ++i) {
      const Rational major = make_rational(1000 + draw.range(0, 199), 100);
      const Rational minor = make_rational(100 + draw.range(0, 99), 100);
      const double theta = pi * (i + 0.25 + 0.5 * static_cast<double>(draw.range(0, 999)) / 1000.0) / n;
      const Rational r = approx(std::tan(theta / 2), 1000);
      const Rational c = (1 - r * r) / (1 + r * r);
      const Rational s = 2 * r / (1 + r * r);
      const Rational cx = make_rational(draw.range(-250, 250), 1000);
      const Rational cy = make_rational(draw.range(-250, 250), 1000);
      std::vector<Point> vs;
      for (const Point& p : circle) {
        const Rational x = major * p.x;
        const Rational y = minor * p.y;
        vs.push_back({cx + c * x - s * y, cy + s * x + c * y});
      }
      family.push_back({i, CurveClass::Unassigned, Curve::closed(std::move(vs))});
    }
    const auto arr = try_build(family);
    if (!arr) continue;
    std::set<std::pair<CurveId, CurveId>> met;
    for (const auto& p : arr->points()) met.insert({p.curve_lo, p.curve_hi});
    if (met.size() == static_cast<std::size_t>(n * (n - 1) / 2)) return family;
  }
  throw std::runtime_error("gen_convex_family: no valid family within the attempt budget");
}

std::vector<CurveRecord> gen_bipartite_closed_small(int n) {
  auto poly = [](std::initializer_list<std::pair<long, long>> pts) {
    std::vector<Point> vs;
    for (auto [x, y] : pts) vs.push_back(Point(x, y));
    return Curve::closed(std::move(vs));
  };
  if (n == 1) {
    return {
        {0, CurveClass::S1, poly({{0, 0}, {4, 0}, {4, 2}, {0, 2}})},
        {1, CurveClass::S2, poly({{1, 2}, {3, 5}, {-1, 4}})},
    };
  }
  if (n == 2) {
    return {
        {0, CurveClass::S1, poly({{-50, -15}, {50, -5}, {50, 15}, {-50, 5}})},
        {1, CurveClass::S1, poly({{-60, -4}, {60, -16}, {60, 4}, {-60, 16}})},
        {2, CurveClass::S2,
         poly({{-40, 20}, {-30, 13}, {-20, 20}, {20, 20}, {30, 13}, {40, 20}, {70, 20}, {71, -40}, {81, -40}, {80, 30},
               {-40, 30}})},
        {3, CurveClass::S2,
         poly({{-40, -20}, {-30, -13}, {-20, -20}, {20, -20}, {30, -13}, {40, -20}, {90, -21}, {91, -30}, {-40, -30}})},
    };
  }
  throw std::invalid_argument("gen_bipartite_closed_small supports n = 1 and n = 2 only");
}

std::vector<CurveRecord> gen_random_polylines(int n, int m, std::uint64_t seed) {
  if (n < 1 || m < 2) throw std::invalid_argument("gen_random_polylines needs n >= 1 and m >= 2");
  constexpr long kScale = 1000000;
  for (int attempt = 0; attempt < kMaxAttempts; ++attempt) {
    Draw draw(seed, attempt, 0x9a1);
    std::vector<CurveRecord> family;
    for (int i = 0; i < n; ++i) {
      std::vector<Point> vs;
      long x = draw.range(0, kScale / 10);
      const long span = 2 * kScale / m;
      for (int k = 0; k < m; ++k) {
        vs.push_back(Point(Rational(x), Rational(draw.range(-kScale, kScale))));
        x += draw.range(1, span);
      }
      family.push_back({i, CurveClass::Unassigned, Curve::open(std::move(vs))});
    }
    if (try_build(family)) return family;
  }
  throw std::runtime_error("gen_random_polylines: no valid family within the attempt budget");
}

}  // namespace tangency
