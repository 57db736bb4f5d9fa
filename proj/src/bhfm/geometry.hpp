#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bhfm/types.hpp"

namespace bhfm {

enum class ShapeKind { Star, Peanut, Kite, Disk, Custom };

// Analytic description of a closed C^2 boundary x(t), t in [0, 2pi).
// Custom shapes are star-shaped radial Fourier series
//   r(t) = a0 + sum_m (a_m cos(m t) + b_m sin(m t)).
struct Shape {
  ShapeKind kind = ShapeKind::Kite;
  double radius = 1.0;           // Disk only
  std::vector<double> cosines;   // Custom: a0, a1, ..., aK
  std::vector<double> sines;     // Custom: b1, ..., bK

  static Shape star() { return {.kind = ShapeKind::Star, .radius = 0.0, .cosines = {}, .sines = {}}; }
  static Shape peanut() { return {.kind = ShapeKind::Peanut, .radius = 0.0, .cosines = {}, .sines = {}}; }
  static Shape kite() { return {.kind = ShapeKind::Kite, .radius = 0.0, .cosines = {}, .sines = {}}; }
  static Shape disk(double radius);
  static Shape custom(std::vector<double> cosines, std::vector<double> sines);

  // Accepts "star", "peanut", "kite", "disk:<radius>".
  static Shape parse(std::string_view name);
  std::string name() const;

  Point position(double t) const;
  Point derivative(double t) const;
};

struct CurveNode {
  double t = 0.0;
  Point point;
  Point tangent;   // x'(t)
  Point normal;    // unit outward
  double jacobian = 0.0;  // |x'(t)|
};

// Boundary sampled at t_j = 2 pi j / n, n even.
class BoundaryCurve {
 public:
  BoundaryCurve(Shape shape, int n);

  const Shape& shape() const { return shape_; }
  int size() const { return static_cast<int>(nodes_.size()); }
  const std::vector<CurveNode>& nodes() const { return nodes_; }
  const CurveNode& node(int j) const { return nodes_[static_cast<std::size_t>(j)]; }

  // Trapezoid-rule arclength.
  double perimeter() const;
  // max |x(t)| over a dense parameter sample.
  double max_radius() const;
  // Winding-number test against the analytic curve sampled densely.
  bool contains(Point p) const;

 private:
  Shape shape_;
  std::vector<CurveNode> nodes_;
  std::vector<Point> dense_;
};

BoundaryCurve make_curve(const Shape& shape, int n);

struct MeasurementCircle {
  double radius = 3.0;
  int sensors = 64;

  double angle(int i) const { return 2.0 * kPi * i / sensors; }
  Point point(int i) const;
  Point direction(int i) const;
  double angular_weight() const { return 2.0 * kPi / sensors; }
  double arclength_weight() const { return radius * angular_weight(); }
  bool encloses(const BoundaryCurve& curve) const { return curve.max_radius() < radius; }
};

MeasurementCircle make_circle(double radius, int sensors);

}  // namespace bhfm
