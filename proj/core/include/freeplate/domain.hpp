#pragma once

#include <array>
#include <string>
#include <vector>

namespace freeplate {

using Point = std::array<double, 2>;  // second coordinate unused in 1-D

enum class DomainKind { Interval, Rectangle, Disk };

/// Geometry of the computational domain: an interval [0, L], an axis-aligned
/// rectangle [0, a] x [0, b], or a disk of radius R centered at the origin.
/// Extents are strictly positive.
class DomainSpec {
 public:
  static DomainSpec interval(double length);
  static DomainSpec rectangle(double a, double b);
  static DomainSpec disk(double radius);

  DomainKind kind() const { return kind_; }
  int dimension() const { return kind_ == DomainKind::Interval ? 1 : 2; }
  const std::vector<double>& extents() const { return extents_; }
  double volume() const;

  /// Axis-aligned bounding box (lo, hi per axis; 1-D uses axis 0 only).
  Point box_lo() const;
  Point box_hi() const;

  /// Largest Euclidean norm over the closure of the domain.
  double max_point_norm() const;

  std::string to_json() const;
  static DomainSpec from_json(const std::string& text);

  bool operator==(const DomainSpec&) const = default;

 private:
  DomainSpec(DomainKind kind, std::vector<double> extents);

  DomainKind kind_;
  std::vector<double> extents_;
};

/// Nodes with strictly positive weights; integrates polynomials on the
/// domain exactly up to `exact_degree` (per axis for tensor rules, total
/// degree for the disk).
struct QuadratureRule {
  std::vector<Point> nodes;
  std::vector<double> weights;
  int exact_degree = 0;
};

/// Volume of the unit ball in R^n (n >= 1): pi^(n/2) / Gamma(n/2 + 1).
double unit_ball_volume(int n);

/// Quadrature over the domain. Tensor Gauss-Legendre with `order` points per
/// axis for interval and rectangle (exact through per-axis degree
/// 2 order - 1); for the disk, a polar rule with `order` radial
/// Gauss-Legendre points and 2 order + 1 uniform angles (exact for total
/// degree <= 2 order - 2).
QuadratureRule quadrature(const DomainSpec& domain, int order);

}  // namespace freeplate
