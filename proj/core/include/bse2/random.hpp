#pragma once

#include <cstddef>
#include <optional>
#include <random>

#include "bse2/framework.hpp"

namespace bse2 {

struct RandomFrameworkOptions {
  double edge_probability = 0.5;
  bool require_out_degree = true;                    // every vertex measures at least one other
  std::optional<std::size_t> sink_vertex;            // this vertex gets out-degree 0
  double min_separation = 0.15;                      // between every pair of points
  double extent = 1.0;                               // positions in [-extent, extent]^2
};

/// Generic random framework: uniform positions with pairwise separation,
/// uniform attitudes, and an Erdos-Renyi directed graph adjusted per options.
Se2Framework random_framework(std::mt19937_64& rng, std::size_t n, const RandomFrameworkOptions& options = {});

}  // namespace bse2
