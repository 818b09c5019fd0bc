#include "bse2/report.hpp"

#include <sstream>

namespace bse2 {

nlohmann::json to_json(const RigidityReport& r) {
  nlohmann::json basis = nlohmann::json::array();
  for (Eigen::Index c = 0; c < r.nullspace_basis.cols(); ++c) {
    const Eigen::VectorXd v = r.nullspace_basis.col(c);
    basis.push_back(std::vector<double>(v.data(), v.data() + v.size()));
  }
  return nlohmann::json{
      {"n_vertices", r.n_vertices},
      {"n_edges", r.n_edges},
      {"bearing_rank", r.bearing_rank},
      {"bearing_nullity", r.bearing_nullity},
      {"required_rank", r.required_rank},
      {"parallel_rank", r.parallel_rank},
      {"attitude_rank", r.attitude_rank},
      {"coord_rot_dim", r.coord_rot_dim},
      {"min_out_degree", r.min_out_degree},
      {"out_degree_ok", r.out_degree_ok},
      {"rigid_by_theorem", r.rigid_by_theorem},
      {"rigid_by_corollary", r.rigid_by_corollary},
      {"tolerance_used", r.tolerance_used},
      {"nullspace_basis", basis},
  };
}

std::string format_report(const RigidityReport& r, const std::string& title) {
  std::ostringstream os;
  if (!title.empty()) os << title << "\n";
  const int n = static_cast<int>(r.n_vertices);
  os << "agents: " << r.n_vertices << ", directed edges: " << r.n_edges << "\n"
     << "bearing rank " << r.bearing_rank << " / required " << r.required_rank << "\n"
     << "bearing nullity: " << r.bearing_nullity << " (trivial motions: 4)\n"
     << "parallel rank " << r.parallel_rank << " / required " << 2 * n - 3 << "\n"
     << "attitude coupling rank " << r.attitude_rank << " / required " << n << "\n"
     << "coordinated rotation subspace dim: " << r.coord_rot_dim << " (rigid requires 1)\n"
     << "min out-degree: " << r.min_out_degree << (r.out_degree_ok ? " (ok)" : " (some agent measures nothing)")
     << "\n"
     << "rank tolerance: " << r.tolerance_used << "\n"
     << "verdict (rank test): " << (r.rigid_by_theorem ? "infinitesimally rigid" : "roto-flexible") << "\n"
     << "verdict (parallel rank + rotation subspace): "
     << (r.rigid_by_corollary ? "infinitesimally rigid" : "roto-flexible") << "\n";
  return os.str();
}

}  // namespace bse2
