// Breakpoint representation of elements as piecewise-linear homeomorphisms of
// [0,1]: exact application, composition, inversion.
#pragma once

#include <algorithm>
#include <cstddef>
#include <string>
#include <utility>
#include <vector>

#include "thompson/dyadic.hpp"
#include "thompson/element.hpp"
#include "thompson/errors.hpp"

namespace thompson {

struct PLPoint {
  DyadicRational x, y;
  friend bool operator==(const PLPoint&, const PLPoint&) = default;
};

// Canonical form: includes (0,0) and (1,1), coordinates strictly increasing,
// every interior point is a genuine slope change, slopes are powers of two.
class PLMap {
 public:
  static PLMap identity() {
    return PLMap({{DyadicRational::zero(), DyadicRational::zero()},
                  {DyadicRational::one(), DyadicRational::one()}});
  }

  static PLMap from_points(std::vector<PLPoint> pts) {
    validate(pts);
    return PLMap(canonicalize(std::move(pts)));
  }

  const std::vector<PLPoint>& breakpoints() const { return pts_; }

  friend bool operator==(const PLMap& a, const PLMap& b) { return a.pts_ == b.pts_; }

  // Base-2 logarithm of the slope on segment i.
  int slope_exponent(std::size_t i) const {
    DyadicRational dx = pts_[i + 1].x - pts_[i].x;
    DyadicRational dy = pts_[i + 1].y - pts_[i].y;
    if (dx.numerator() != dy.numerator())
      throw ValidationError("segment slope is not a power of two");
    return static_cast<int>(dx.exponent()) - static_cast<int>(dy.exponent());
  }

  std::string to_string() const {
    std::string s;
    for (std::size_t i = 0; i < pts_.size(); ++i) {
      if (i) s += " ";
      s += "(" + pts_[i].x.to_string() + "," + pts_[i].y.to_string() + ")";
    }
    return s;
  }

 private:
  explicit PLMap(std::vector<PLPoint> pts) : pts_(std::move(pts)) {}

  static void validate(const std::vector<PLPoint>& pts) {
    if (pts.size() < 2 || !pts.front().x.is_zero() || !pts.front().y.is_zero() ||
        !pts.back().x.is_one() || !pts.back().y.is_one())
      throw std::invalid_argument("breakpoints must run from (0,0) to (1,1)");
    for (std::size_t i = 0; i + 1 < pts.size(); ++i) {
      if (!(pts[i].x < pts[i + 1].x) || !(pts[i].y < pts[i + 1].y))
        throw std::invalid_argument("breakpoints must be strictly increasing");
      DyadicRational dx = pts[i + 1].x - pts[i].x;
      DyadicRational dy = pts[i + 1].y - pts[i].y;
      if (dx.numerator() != dy.numerator())
        throw std::invalid_argument("segment slope is not a power of two");
    }
  }

  static std::vector<PLPoint> canonicalize(std::vector<PLPoint> pts) {
    std::vector<PLPoint> out;
    out.reserve(pts.size());
    out.push_back(pts.front());
    for (std::size_t i = 1; i + 1 < pts.size(); ++i) {
      // Keep pts[i] only if the slope changes there: cross-multiplied compare.
      DyadicRational lx = pts[i].x - out.back().x, ly = pts[i].y - out.back().y;
      DyadicRational rx = pts[i + 1].x - pts[i].x, ry = pts[i + 1].y - pts[i].y;
      if (!(ly * rx == ry * lx)) out.push_back(pts[i]);
    }
    out.push_back(pts.back());
    return out;
  }

  std::vector<PLPoint> pts_;
};

// The element's PL view: each domain leaf interval maps affinely onto the
// corresponding range leaf interval.
inline PLMap pl_of_element(const GroupElement& f) {
  auto dp = partition_of_leaves(f.domain_tree());
  auto rp = partition_of_leaves(f.range_tree());
  std::vector<PLPoint> pts;
  pts.reserve(dp.size() + 1);
  for (std::size_t i = 0; i < dp.size(); ++i) pts.push_back({dp[i].lower(), rp[i].lower()});
  pts.push_back({DyadicRational::one(), DyadicRational::one()});
  return PLMap::from_points(std::move(pts));
}

inline DyadicRational pl_apply(const PLMap& m, const DyadicRational& x) {
  const auto& pts = m.breakpoints();
  // Last segment whose left endpoint is <= x.
  std::size_t lo = 0, hi = pts.size() - 1;
  while (lo + 1 < hi) {
    std::size_t mid = (lo + hi) / 2;
    if (pts[mid].x <= x)
      lo = mid;
    else
      hi = mid;
  }
  return pts[lo].y + (x - pts[lo].x).shifted(m.slope_exponent(lo));
}

inline PLMap pl_invert(const PLMap& m) {
  std::vector<PLPoint> pts;
  pts.reserve(m.breakpoints().size());
  for (const auto& p : m.breakpoints()) pts.push_back({p.y, p.x});
  return PLMap::from_points(std::move(pts));
}

// Left-to-right composition: pl_compose(m1, m2)(x) = m2(m1(x)).
inline PLMap pl_compose(const PLMap& m1, const PLMap& m2) {
  PLMap m1inv = pl_invert(m1);
  std::vector<DyadicRational> xs;
  for (const auto& p : m1.breakpoints()) xs.push_back(p.x);
  for (const auto& p : m2.breakpoints()) xs.push_back(pl_apply(m1inv, p.x));
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::vector<PLPoint> pts;
  pts.reserve(xs.size());
  for (const auto& x : xs) pts.push_back({x, pl_apply(m2, pl_apply(m1, x))});
  return PLMap::from_points(std::move(pts));
}

}  // namespace thompson
