#include "bse2/framework.hpp"

#include <cmath>
#include <string>
#include <utility>

#include "bse2/error.hpp"

namespace bse2 {

namespace {

DegenerateEdgeError degenerate(std::size_t k, std::size_t head, std::size_t tail) {
  std::string where = k == DegenerateEdgeError::npos ? "vertex pair" : "edge " + std::to_string(k);
  return DegenerateEdgeError(k, head, tail,
                             where + " (" + std::to_string(head) + " -> " + std::to_string(tail) +
                                 ") joins coincident points");
}

/// Body-frame bearing of `to` seen from `from`, via the unit vector.
Vec2 body_bearing_vector(const Vec2& from, double from_attitude, const Vec2& to) {
  const Vec2 d = to - from;
  return rotation_matrix(Angle(from_attitude)).transpose() * (d / d.norm());
}

double pair_bearing(const Se2Framework& f, std::size_t v, std::size_t u) {
  const Vec2 r = body_bearing_vector(f.position(v), f.attitudes()(static_cast<Eigen::Index>(v)),
                                     f.position(u));
  return std::atan2(r.y(), r.x());
}

}  // namespace

Mat2 rotation_matrix(Angle psi) noexcept {
  const double c = std::cos(psi.value());
  const double s = std::sin(psi.value());
  Mat2 t;
  t << c, -s, s, c;
  return t;
}

Se2Framework::Se2Framework(DirectedGraph graph, Vector positions, Vector attitudes)
    : graph_(std::move(graph)), positions_(std::move(positions)), attitudes_(std::move(attitudes)) {
  const auto n = static_cast<Eigen::Index>(graph_.vertex_count());
  if (positions_.size() != 2 * n) {
    throw InvalidArgument("positions must have length 2n = " + std::to_string(2 * n) + ", got " +
                          std::to_string(positions_.size()));
  }
  if (attitudes_.size() != n) {
    throw InvalidArgument("attitudes must have length n = " + std::to_string(n) + ", got " +
                          std::to_string(attitudes_.size()));
  }
  if (!positions_.allFinite() || !attitudes_.allFinite()) {
    throw InvalidArgument("framework positions and attitudes must be finite");
  }
  for (Eigen::Index i = 0; i < n; ++i) attitudes_(i) = wrap_angle(attitudes_(i));
  for (std::size_t k = 0; k < graph_.edge_count(); ++k) {
    const Edge& e = graph_.edge(k);
    if ((position(e.tail) - position(e.head)).squaredNorm() == 0.0) throw degenerate(k, e.head, e.tail);
  }
}

Se2Framework Se2Framework::with_graph(DirectedGraph graph) const {
  return Se2Framework(std::move(graph), positions_, attitudes_);
}

Vec2 bearing_vector(const Se2Framework& f, std::size_t k) {
  const Edge& e = f.graph().edge(k);
  return body_bearing_vector(f.position(e.head), f.attitudes()(static_cast<Eigen::Index>(e.head)),
                             f.position(e.tail));
}

Angle bearing(const Se2Framework& f, std::size_t k) {
  const Vec2 r = bearing_vector(f, k);
  return Angle(std::atan2(r.y(), r.x()));
}

Vector bearing_rigidity_function(const Se2Framework& f) {
  Vector b(static_cast<Eigen::Index>(f.edge_count()));
  for (std::size_t k = 0; k < f.edge_count(); ++k) b(static_cast<Eigen::Index>(k)) = bearing(f, k).value();
  return b;
}

bool is_bearing_equivalent(const Se2Framework& f1, const Se2Framework& f2, double tol) {
  if (!(f1.graph() == f2.graph())) {
    throw InvalidArgument("bearing equivalence requires both frameworks to share the same graph");
  }
  const Vector b1 = bearing_rigidity_function(f1);
  const Vector b2 = bearing_rigidity_function(f2);
  for (Eigen::Index k = 0; k < b1.size(); ++k) {
    if (std::abs(angle_difference(b1(k), b2(k))) > tol) return false;
  }
  return true;
}

bool is_bearing_congruent(const Se2Framework& f1, const Se2Framework& f2, double tol) {
  const std::size_t n = f1.vertex_count();
  if (f2.vertex_count() != n) {
    throw InvalidArgument("bearing congruence requires equal vertex counts");
  }
  for (std::size_t v = 0; v < n; ++v) {
    for (std::size_t u = v + 1; u < n; ++u) {
      if (f1.position(v) == f1.position(u) || f2.position(v) == f2.position(u)) {
        throw degenerate(DegenerateEdgeError::npos, v, u);
      }
    }
  }
  bool congruent = true;
  for (std::size_t v = 0; v < n && congruent; ++v) {
    for (std::size_t u = 0; u < n; ++u) {
      if (u == v) continue;
      if (std::abs(angle_difference(pair_bearing(f1, v, u), pair_bearing(f2, v, u))) > tol) {
        congruent = false;
        break;
      }
    }
  }
  return congruent;
}

Se2Framework apply_trivial_motion(const Se2Framework& f, const TrivialMotion& motion) {
  if (!(motion.scale > 0.0)) {
    throw InvalidArgument("trivial motion scale must be positive, got " + std::to_string(motion.scale));
  }
  const Mat2 rot = rotation_matrix(motion.rotation);
  Vector p(f.positions().size());
  Vector psi(f.attitudes().size());
  for (std::size_t v = 0; v < f.vertex_count(); ++v) {
    const auto i = static_cast<Eigen::Index>(v);
    p.segment<2>(2 * i) = motion.scale * rot * (f.position(v) - motion.pivot) + motion.pivot + motion.translation;
    psi(i) = wrap_angle(f.attitudes()(i) + motion.rotation.value());
  }
  return Se2Framework(f.graph(), std::move(p), std::move(psi));
}

Vec2 centroid(const Se2Framework& f) {
  Vec2 c = Vec2::Zero();
  for (std::size_t v = 0; v < f.vertex_count(); ++v) c += f.position(v);
  return c / static_cast<double>(f.vertex_count());
}

}  // namespace bse2
