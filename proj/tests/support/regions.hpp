#pragma once

// Sample-point selection and region overlap on indicator grids.

#include <algorithm>
#include <cmath>
#include <vector>

#include "bhfm/imaging.hpp"

namespace regions {

struct Node {
  int ix;
  int iy;
};

struct Box {
  double xmin, xmax, ymin, ymax;
};

inline Box bounding_box(const bhfm::Shape& shape) {
  Box b{1e300, -1e300, 1e300, -1e300};
  for (int j = 0; j < 4096; ++j) {
    const bhfm::Point p = shape.position(2.0 * bhfm::kPi * j / 4096);
    b.xmin = std::min(b.xmin, p.x);
    b.xmax = std::max(b.xmax, p.x);
    b.ymin = std::min(b.ymin, p.y);
    b.ymax = std::max(b.ymax, p.y);
  }
  return b;
}

inline double boundary_distance(const bhfm::Shape& shape, bhfm::Point p) {
  double best = 1e300;
  for (int j = 0; j < 4096; ++j) best = std::min(best, bhfm::distance(shape.position(2.0 * bhfm::kPi * j / 4096), p));
  return best;
}

inline std::vector<Node> spread(const std::vector<Node>& all, int count) {
  std::vector<Node> out;
  if (all.empty()) return out;
  for (int i = 0; i < count; ++i)
    out.push_back(all[static_cast<std::size_t>((2 * i + 1) * all.size() / (2 * static_cast<std::size_t>(count)))]);
  return out;
}

// Grid nodes inside the obstacle at least `margin` from its boundary.
inline std::vector<Node> interior_nodes(const bhfm::GridSpec& grid, const bhfm::BoundaryCurve& curve, int count,
                                        double margin = 0.1) {
  std::vector<Node> all;
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix) {
      const bhfm::Point p = grid.point(ix, iy);
      if (curve.contains(p) && boundary_distance(curve.shape(), p) >= margin) all.push_back({ix, iy});
    }
  return spread(all, count);
}

// Grid nodes outside the obstacle's bounding box enlarged by `margin`.
inline std::vector<Node> exterior_nodes(const bhfm::GridSpec& grid, const bhfm::Shape& shape, int count,
                                        double margin = 0.1) {
  const Box b = bounding_box(shape);
  std::vector<Node> all;
  for (int iy = 0; iy < grid.ny; ++iy)
    for (int ix = 0; ix < grid.nx; ++ix) {
      const bhfm::Point p = grid.point(ix, iy);
      if (p.x < b.xmin - margin || p.x > b.xmax + margin || p.y < b.ymin - margin || p.y > b.ymax + margin)
        all.push_back({ix, iy});
    }
  return spread(all, count);
}

inline double median(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : 0.5 * (v[n / 2 - 1] + v[n / 2]);
}

inline double median_at(const bhfm::IndicatorGrid& g, const std::vector<Node>& nodes) {
  std::vector<double> v;
  for (const Node& n : nodes) v.push_back(g.at(n.ix, n.iy));
  return median(v);
}

inline double separation(const bhfm::IndicatorGrid& g, const std::vector<Node>& in, const std::vector<Node>& out) {
  return median_at(g, in) / median_at(g, out);
}

inline double jaccard(const bhfm::IndicatorGrid& a, const bhfm::IndicatorGrid& b, double threshold) {
  std::size_t both = 0, either = 0;
  for (std::size_t i = 0; i < a.values.size(); ++i) {
    const bool ia = a.values[i] >= threshold, ib = b.values[i] >= threshold;
    both += ia && ib;
    either += ia || ib;
  }
  return either == 0 ? 1.0 : static_cast<double>(both) / static_cast<double>(either);
}

}  // namespace regions
