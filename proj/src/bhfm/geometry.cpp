#include "bhfm/geometry.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <sstream>

namespace bhfm {

namespace {

constexpr int kDenseSamples = 4096;

struct Radial {
  double r;
  double dr;
};

Radial radial(const Shape& s, double t) {
  switch (s.kind) {
    case ShapeKind::Star:
      return {0.25 * (0.3 * std::cos(5.0 * t) + 2.0), -0.375 * std::sin(5.0 * t)};
    case ShapeKind::Peanut: {
      const double sn = std::sin(t);
      const double cs = std::cos(t);
      const double root = std::sqrt(0.5 * sn * sn + 0.1 * cs * cs);
      return {2.0 * root, 0.8 * sn * cs / root};
    }
    case ShapeKind::Disk:
      return {s.radius, 0.0};
    case ShapeKind::Custom: {
      double r = s.cosines.empty() ? 0.0 : s.cosines[0];
      double dr = 0.0;
      for (std::size_t m = 1; m < s.cosines.size(); ++m) {
        const double md = static_cast<double>(m);
        r += s.cosines[m] * std::cos(md * t);
        dr -= md * s.cosines[m] * std::sin(md * t);
      }
      for (std::size_t m = 1; m <= s.sines.size(); ++m) {
        const double md = static_cast<double>(m);
        r += s.sines[m - 1] * std::sin(md * t);
        dr += md * s.sines[m - 1] * std::cos(md * t);
      }
      return {r, dr};
    }
    case ShapeKind::Kite:
      break;
  }
  throw InvalidArgument("radial: shape is not radial");
}

}  // namespace

Shape Shape::disk(double radius) {
  if (!(radius > 0.0)) throw InvalidArgument("disk radius must be positive");
  Shape s;
  s.kind = ShapeKind::Disk;
  s.radius = radius;
  return s;
}

Shape Shape::custom(std::vector<double> cosines, std::vector<double> sines) {
  if (cosines.empty() || !(cosines[0] > 0.0))
    throw InvalidArgument("custom shape needs a positive mean radius");
  Shape s;
  s.kind = ShapeKind::Custom;
  s.cosines = std::move(cosines);
  s.sines = std::move(sines);
  return s;
}

Shape Shape::parse(std::string_view name) {
  if (name == "star") return star();
  if (name == "peanut") return peanut();
  if (name == "kite") return kite();
  if (name.starts_with("disk:")) {
    const std::string value(name.substr(5));
    std::size_t used = 0;
    double r = 0.0;
    try {
      r = std::stod(value, &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != value.size()) throw InvalidArgument("bad disk radius in '" + std::string(name) + "'");
    return disk(r);
  }
  throw InvalidArgument("unknown shape '" + std::string(name) + "' (expected star, peanut, kite, disk:<radius>)");
}

std::string Shape::name() const {
  switch (kind) {
    case ShapeKind::Star:
      return "star";
    case ShapeKind::Peanut:
      return "peanut";
    case ShapeKind::Kite:
      return "kite";
    case ShapeKind::Disk: {
      std::ostringstream os;
      os.precision(17);
      os << "disk:" << radius;
      return os.str();
    }
    case ShapeKind::Custom:
      return "custom";
  }
  return "unknown";
}

Point Shape::position(double t) const {
  if (kind == ShapeKind::Kite)
    return {-1.5 * std::sin(t), std::cos(t) + 0.65 * std::cos(2.0 * t) - 0.65};
  const auto [r, dr] = radial(*this, t);
  return {r * std::cos(t), r * std::sin(t)};
}

Point Shape::derivative(double t) const {
  if (kind == ShapeKind::Kite) return {-1.5 * std::cos(t), -std::sin(t) - 1.3 * std::sin(2.0 * t)};
  const auto [r, dr] = radial(*this, t);
  const double c = std::cos(t);
  const double s = std::sin(t);
  return {dr * c - r * s, dr * s + r * c};
}

BoundaryCurve::BoundaryCurve(Shape shape, int n) : shape_(std::move(shape)) {
  if (n < 16) throw InvalidArgument("boundary node count must be at least 16");
  if (n % 2 != 0) throw InvalidArgument("boundary node count must be even");
  nodes_.reserve(static_cast<std::size_t>(n));
  for (int j = 0; j < n; ++j) {
    CurveNode node;
    node.t = 2.0 * kPi * j / n;
    node.point = shape_.position(node.t);
    node.tangent = shape_.derivative(node.t);
    node.jacobian = norm(node.tangent);
    if (!(node.jacobian > 0.0)) throw InvalidArgument("degenerate parameterization: |x'(t)| vanishes");
    // Counter-clockwise orientation: outward normal is the tangent rotated by -pi/2.
    node.normal = (1.0 / node.jacobian) * Point{node.tangent.y, -node.tangent.x};
    nodes_.push_back(node);
  }
  dense_.reserve(kDenseSamples);
  for (int j = 0; j < kDenseSamples; ++j) dense_.push_back(shape_.position(2.0 * kPi * j / kDenseSamples));
}

double BoundaryCurve::perimeter() const {
  double sum = 0.0;
  for (const auto& node : nodes_) sum += node.jacobian;
  return sum * 2.0 * kPi / size();
}

double BoundaryCurve::max_radius() const {
  double r = 0.0;
  for (const auto& p : dense_) r = std::max(r, norm(p));
  return r;
}

bool BoundaryCurve::contains(Point p) const {
  double winding = 0.0;
  for (std::size_t j = 0; j < dense_.size(); ++j) {
    const Point a = dense_[j] - p;
    const Point b = dense_[(j + 1) % dense_.size()] - p;
    winding += std::atan2(a.x * b.y - a.y * b.x, dot(a, b));
  }
  return std::abs(winding) > kPi;
}

BoundaryCurve make_curve(const Shape& shape, int n) { return BoundaryCurve(shape, n); }

Point MeasurementCircle::point(int i) const {
  const double th = angle(i);
  return {radius * std::cos(th), radius * std::sin(th)};
}

Point MeasurementCircle::direction(int i) const {
  const double th = angle(i);
  return {std::cos(th), std::sin(th)};
}

MeasurementCircle make_circle(double radius, int sensors) {
  if (!(radius > 0.0)) throw InvalidArgument("measurement radius must be positive");
  if (sensors < 4) throw InvalidArgument("at least 4 sensors are required");
  return {radius, sensors};
}

}  // namespace bhfm
