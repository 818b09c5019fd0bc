#pragma once

#include <cstddef>
#include <filesystem>
#include <ostream>
#include <string>

#include "bse2/estimator.hpp"

namespace bse2 {

/// `t,J,e_p,e_1..e_m,xi_1x,xi_1y,...,xi_nx,xi_ny,theta_1..theta_n`.
std::string trace_csv_header(std::size_t n_edges, std::size_t n_agents);

/// One CSV row, numbers in %.17g.
std::string trace_csv_row(const TraceSample& sample);

/// Streams rows as samples arrive; flushes after each row so an aborted run
/// leaves a readable prefix.
class TraceCsvWriter {
 public:
  TraceCsvWriter(std::ostream& out, std::size_t n_edges, std::size_t n_agents);
  void write(const TraceSample& sample);

 private:
  std::ostream& out_;
  std::size_t n_edges_;
  std::size_t n_agents_;
};

void write_csv(const TrajectoryTrace& trace, std::ostream& out);

/// Throws Error on I/O failure.
void write_csv(const TrajectoryTrace& trace, const std::filesystem::path& path);

}  // namespace bse2
