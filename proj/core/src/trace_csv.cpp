#include "bse2/trace_csv.hpp"

#include <cstdio>
#include <fstream>

#include "bse2/error.hpp"

namespace bse2 {

namespace {

void append_number(std::string& line, double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  line += buf;
}

}  // namespace

std::string trace_csv_header(std::size_t n_edges, std::size_t n_agents) {
  std::string h = "t,J,e_p";
  for (std::size_t k = 1; k <= n_edges; ++k) h += ",e_" + std::to_string(k);
  for (std::size_t i = 1; i <= n_agents; ++i) {
    h += ",xi_" + std::to_string(i) + "x,xi_" + std::to_string(i) + "y";
  }
  for (std::size_t i = 1; i <= n_agents; ++i) h += ",theta_" + std::to_string(i);
  return h;
}

std::string trace_csv_row(const TraceSample& sample) {
  std::string line;
  append_number(line, sample.time);
  line += ',';
  append_number(line, sample.cost);
  line += ',';
  append_number(line, sample.position_error);
  for (Eigen::Index k = 0; k < sample.bearing_error.size(); ++k) {
    line += ',';
    append_number(line, sample.bearing_error(k));
  }
  for (Eigen::Index i = 0; i < sample.state.xi_hat.size(); ++i) {
    line += ',';
    append_number(line, sample.state.xi_hat(i));
  }
  for (Eigen::Index i = 0; i < sample.state.theta_hat.size(); ++i) {
    line += ',';
    append_number(line, sample.state.theta_hat(i));
  }
  return line;
}

TraceCsvWriter::TraceCsvWriter(std::ostream& out, std::size_t n_edges, std::size_t n_agents)
    : out_(out), n_edges_(n_edges), n_agents_(n_agents) {
  out_ << trace_csv_header(n_edges_, n_agents_) << '\n';
  out_.flush();
}

void TraceCsvWriter::write(const TraceSample& sample) {
  if (static_cast<std::size_t>(sample.bearing_error.size()) != n_edges_ ||
      sample.state.agent_count() != n_agents_) {
    throw InvalidArgument("trace sample does not match the CSV header dimensions");
  }
  out_ << trace_csv_row(sample) << '\n';
  out_.flush();
}

void write_csv(const TrajectoryTrace& trace, std::ostream& out) {
  TraceCsvWriter writer(out, trace.n_edges, trace.n_agents);
  for (std::size_t i = 0; i < trace.size(); ++i) writer.write(trace.sample(i));
}

void write_csv(const TrajectoryTrace& trace, const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw Error("cannot write " + path.string());
  write_csv(trace, out);
  if (!out) throw Error("failed writing " + path.string());
}

}  // namespace bse2
