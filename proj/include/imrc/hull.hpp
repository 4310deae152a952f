#ifndef IMRC_HULL_HPP
#define IMRC_HULL_HPP

#include <algorithm>
#include <cmath>
#include <span>
#include <vector>

namespace imrc {

struct Point2 {
  double x = 0.0;
  double y = 0.0;

  friend constexpr bool operator==(const Point2&, const Point2&) = default;
  friend constexpr auto operator<=>(const Point2&, const Point2&) = default;
};

// z-component of (b - a) x (c - a); positive for a left turn.
constexpr double orient(const Point2& a, const Point2& b, const Point2& c) noexcept {
  return (b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x);
}

/// Andrew's monotone chain. Returns the hull counterclockwise starting at the
/// lexicographically smallest point; collinear and duplicate points dropped.
inline std::vector<Point2> hull2d(std::span<const Point2> input) {
  std::vector<Point2> pts(input.begin(), input.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) return pts;

  std::vector<Point2> h(2 * pts.size());
  std::size_t k = 0;
  for (const Point2& p : pts) {
    while (k >= 2 && orient(h[k - 2], h[k - 1], p) <= 0.0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, lower = k + 1; i-- > 0;) {
    while (k >= lower && orient(h[k - 2], h[k - 1], pts[i]) <= 0.0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  return h;
}

/// True when every consecutive turn of a CCW polygon is a left turn
/// (within tol, scaled by the polygon's extent).
inline bool is_convex(std::span<const Point2> poly, double tol = 1e-12) {
  const std::size_t n = poly.size();
  if (n < 3) return true;
  double scale = 0.0;
  for (const Point2& p : poly) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
  for (std::size_t i = 0; i < n; ++i) {
    if (orient(poly[i], poly[(i + 1) % n], poly[(i + 2) % n]) < -tol * scale * scale) return false;
  }
  return true;
}

/// Point-in-convex-polygon test for a CCW hull, boundary included.
inline bool contains(std::span<const Point2> hull, const Point2& q, double tol = 1e-12) {
  const std::size_t n = hull.size();
  if (n == 0) return false;
  double scale = std::max(std::abs(q.x), std::abs(q.y));
  for (const Point2& p : hull) scale = std::max({scale, std::abs(p.x), std::abs(p.y)});
  const double eps = tol * std::max(scale, 1e-300);
  if (n == 1) return std::abs(q.x - hull[0].x) <= eps && std::abs(q.y - hull[0].y) <= eps;
  if (n == 2) {
    const Point2 a = hull[0], b = hull[1];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    if (std::abs(orient(a, b, q)) > eps * len) return false;
    const double t = ((q.x - a.x) * (b.x - a.x) + (q.y - a.y) * (b.y - a.y)) / (len * len);
    return t >= -eps / len && t <= 1.0 + eps / len;
  }
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = hull[i];
    const Point2& b = hull[(i + 1) % n];
    const double len = std::hypot(b.x - a.x, b.y - a.y);
    if (orient(a, b, q) < -eps * len) return false;
  }
  return true;
}

}  // namespace imrc

#endif  // IMRC_HULL_HPP
