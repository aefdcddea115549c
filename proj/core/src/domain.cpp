#include "freeplate/domain.hpp"

#include <cmath>
#include <numbers>
#include <stdexcept>

#include <json.hpp>

#include "freeplate/numerics.hpp"
#include "freeplate/serialize.hpp"

namespace freeplate {

namespace {
constexpr double kPi = std::numbers::pi;

void check_positive(double v, const char* what) {
  if (!(v > 0.0)) throw std::invalid_argument(std::string(what) + " must be > 0");
}
}  // namespace

DomainSpec::DomainSpec(DomainKind kind, std::vector<double> extents)
    : kind_(kind), extents_(std::move(extents)) {}

DomainSpec DomainSpec::interval(double length) {
  check_positive(length, "interval length");
  return DomainSpec(DomainKind::Interval, {length});
}

DomainSpec DomainSpec::rectangle(double a, double b) {
  check_positive(a, "rectangle extent");
  check_positive(b, "rectangle extent");
  return DomainSpec(DomainKind::Rectangle, {a, b});
}

DomainSpec DomainSpec::disk(double radius) {
  check_positive(radius, "disk radius");
  return DomainSpec(DomainKind::Disk, {radius});
}

double DomainSpec::volume() const {
  switch (kind_) {
    case DomainKind::Interval:
      return extents_[0];
    case DomainKind::Rectangle:
      return extents_[0] * extents_[1];
    case DomainKind::Disk:
      return kPi * extents_[0] * extents_[0];
  }
  throw std::logic_error("unreachable");
}

Point DomainSpec::box_lo() const {
  if (kind_ == DomainKind::Disk) return {-extents_[0], -extents_[0]};
  return {0.0, 0.0};
}

Point DomainSpec::box_hi() const {
  switch (kind_) {
    case DomainKind::Interval:
      return {extents_[0], 0.0};
    case DomainKind::Rectangle:
      return {extents_[0], extents_[1]};
    case DomainKind::Disk:
      return {extents_[0], extents_[0]};
  }
  throw std::logic_error("unreachable");
}

double DomainSpec::max_point_norm() const {
  switch (kind_) {
    case DomainKind::Interval:
      return extents_[0];
    case DomainKind::Rectangle:
      return std::hypot(extents_[0], extents_[1]);
    case DomainKind::Disk:
      return extents_[0];
  }
  throw std::logic_error("unreachable");
}

std::string DomainSpec::to_json() const {
  const char* name = kind_ == DomainKind::Interval    ? "interval"
                     : kind_ == DomainKind::Rectangle ? "rectangle"
                                                      : "disk";
  std::string out = "{\"kind\":\"";
  out += name;
  out += "\",\"extents\":[";
  for (size_t i = 0; i < extents_.size(); ++i) {
    if (i) out += ",";
    out += format_sci(extents_[i]);
  }
  out += "]}";
  return out;
}

DomainSpec DomainSpec::from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("domain JSON parse error: ") + e.what());
  }
  if (!j.is_object() || !j.contains("kind") || !j.contains("extents"))
    throw std::invalid_argument("domain JSON needs \"kind\" and \"extents\"");
  const std::string kind = j.at("kind").get<std::string>();
  const auto& ext = j.at("extents");
  if (!ext.is_array()) throw std::invalid_argument("domain \"extents\" must be an array");
  std::vector<double> e;
  for (const auto& v : ext) {
    if (!v.is_number()) throw std::invalid_argument("domain extents must be numbers");
    e.push_back(v.get<double>());
  }
  if (kind == "interval") {
    if (e.size() != 1) throw std::invalid_argument("interval takes one extent");
    return interval(e[0]);
  }
  if (kind == "rectangle") {
    if (e.size() != 2) throw std::invalid_argument("rectangle takes two extents");
    return rectangle(e[0], e[1]);
  }
  if (kind == "disk") {
    if (e.size() != 1) throw std::invalid_argument("disk takes one extent");
    return disk(e[0]);
  }
  throw std::invalid_argument("unknown domain kind: " + kind);
}

double unit_ball_volume(int n) {
  if (n < 1) throw std::invalid_argument("unit_ball_volume: n must be >= 1");
  return std::pow(kPi, 0.5 * n) / gamma(0.5 * n + 1.0);
}

QuadratureRule quadrature(const DomainSpec& domain, int order) {
  if (order < 1) throw std::invalid_argument("quadrature: order must be >= 1");
  QuadratureRule rule;
  const GaussRule gl = gauss_legendre_nodes(order);
  switch (domain.kind()) {
    case DomainKind::Interval: {
      const double a = domain.extents()[0];
      rule.nodes.reserve(order);
      rule.weights.reserve(order);
      for (int i = 0; i < order; ++i) {
        rule.nodes.push_back({0.5 * a * (gl.nodes[i] + 1.0), 0.0});
        rule.weights.push_back(0.5 * a * gl.weights[i]);
      }
      rule.exact_degree = 2 * order - 1;
      return rule;
    }
    case DomainKind::Rectangle: {
      const double a = domain.extents()[0];
      const double b = domain.extents()[1];
      rule.nodes.reserve(static_cast<size_t>(order) * order);
      rule.weights.reserve(static_cast<size_t>(order) * order);
      for (int i = 0; i < order; ++i) {
        const double x = 0.5 * a * (gl.nodes[i] + 1.0);
        const double wx = 0.5 * a * gl.weights[i];
        for (int j = 0; j < order; ++j) {
          rule.nodes.push_back({x, 0.5 * b * (gl.nodes[j] + 1.0)});
          rule.weights.push_back(wx * 0.5 * b * gl.weights[j]);
        }
      }
      rule.exact_degree = 2 * order - 1;
      return rule;
    }
    case DomainKind::Disk: {
      // Polar: radial Gauss-Legendre on [0, R] with weight r, uniform
      // trapezoid in the angle. 2 order + 1 angles integrate harmonics up
      // to order 2 order exactly, so total polynomial degree 2 order - 2
      // is handled once the radial factor r^(deg+1) is (degree 2 order - 1).
      const double R = domain.extents()[0];
      const int na = 2 * order + 1;
      const double wa = 2.0 * kPi / na;
      rule.nodes.reserve(static_cast<size_t>(order) * na);
      rule.weights.reserve(static_cast<size_t>(order) * na);
      for (int i = 0; i < order; ++i) {
        const double r = 0.5 * R * (gl.nodes[i] + 1.0);
        const double wr = 0.5 * R * gl.weights[i] * r;
        for (int k = 0; k < na; ++k) {
          const double th = wa * k;
          rule.nodes.push_back({r * std::cos(th), r * std::sin(th)});
          rule.weights.push_back(wr * wa);
        }
      }
      rule.exact_degree = 2 * order - 2;
      return rule;
    }
  }
  throw std::logic_error("unreachable");
}

}  // namespace freeplate
