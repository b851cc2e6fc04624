#include "torusfhn/trajectory_io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>
#include <string_view>

#include "torusfhn/errors.hpp"

namespace torusfhn {

std::vector<std::string> trajectory_header(int n, bool two_tori) {
  std::vector<std::string> cols{"t"};
  for (int torus = 0; torus < (two_tori ? 2 : 1); ++torus) {
    const std::string suffix = torus == 1 ? "_t2" : "";
    for (int alpha = 0; alpha < n; ++alpha) {
      for (int beta = 0; beta < n; ++beta) {
        const std::string site = std::to_string(alpha) + "_" + std::to_string(beta) + suffix;
        cols.push_back("x_" + site);
        cols.push_back("y_" + site);
      }
    }
  }
  return cols;
}

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return {buf, res.ptr};
}

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  int n = 0;
  bool two = false;
  if (const auto* t = std::get_if<TorusConfig>(&traj.config)) {
    n = t->n;
  } else if (const auto* tt = std::get_if<TwoToriConfig>(&traj.config)) {
    n = tt->torus.n;
    two = true;
  } else {
    throw InvalidArgumentError("trajectory has no system configuration attached");
  }
  const auto header = trajectory_header(n, two);
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';
  std::string line;
  for (std::size_t i = 0; i < traj.size(); ++i) {
    line = format_double(traj.times[i]);
    for (double v : traj.row(i)) {
      line += ',';
      line += format_double(v);
    }
    line += '\n';
    os << line;
  }
}

void write_trajectory_csv(const std::string& path, const Trajectory& traj) {
  std::ofstream os(path, std::ios::binary);
  if (!os) throw Error("cannot write '" + path + "'");
  write_trajectory_csv(os, traj);
  if (!os) throw Error("failed while writing '" + path + "'");
}

namespace {

std::vector<std::string_view> split(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  while (true) {
    const auto pos = line.find(',', start);
    out.push_back(line.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start));
    if (pos == std::string_view::npos) break;
    start = pos + 1;
  }
  return out;
}

double parse_number(std::string_view field, std::size_t line_no) {
  double v = 0.0;
  const auto* end = field.data() + field.size();
  const auto res = std::from_chars(field.data(), end, v);
  if (res.ec != std::errc() || res.ptr != end || !std::isfinite(v)) {
    throw TrajectoryFormatError("line " + std::to_string(line_no) + ": malformed number '" + std::string(field) + "'");
  }
  return v;
}

}  // namespace

Trajectory read_trajectory_csv(std::istream& is, const RunConfig& cfg) {
  const auto expected = trajectory_header(cfg.torus.n, cfg.two_tori());
  std::string line;
  if (!std::getline(is, line)) throw TrajectoryFormatError("empty trajectory file");
  if (!line.empty() && line.back() == '\r') line.pop_back();
  const auto header = split(line);
  if (header.size() != expected.size()) {
    throw TrajectoryFormatError("header has " + std::to_string(header.size()) + " columns, config implies " +
                                std::to_string(expected.size()));
  }
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] != expected[i]) {
      throw TrajectoryFormatError("header column " + std::to_string(i) + " is '" + std::string(header[i]) +
                                  "', expected '" + expected[i] + "'");
    }
  }

  Trajectory traj;
  traj.dim = expected.size() - 1;
  traj.settings = cfg.settings;
  if (cfg.two_tori()) {
    traj.config = cfg.two_tori_config();
  } else {
    traj.config = cfg.torus;
  }
  std::size_t line_no = 1;
  while (std::getline(is, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    const auto fields = split(line);
    if (fields.size() != expected.size()) {
      throw TrajectoryFormatError("line " + std::to_string(line_no) + " has " + std::to_string(fields.size()) +
                                  " fields, expected " + std::to_string(expected.size()));
    }
    traj.times.push_back(parse_number(fields[0], line_no));
    for (std::size_t i = 1; i < fields.size(); ++i) traj.data.push_back(parse_number(fields[i], line_no));
  }
  if (traj.times.size() < 2) throw TrajectoryFormatError("trajectory has fewer than two rows");

  const double spacing = cfg.settings.sample_interval();
  for (std::size_t i = 1; i < traj.times.size(); ++i) {
    const double step = traj.times[i] - traj.times[i - 1];
    if (std::abs(step - spacing) > 1e-9 * std::max(1.0, spacing) + 1e-12 * std::abs(traj.times[i])) {
      throw TrajectoryFormatError("time column is not uniformly spaced by dt*record_stride = " +
                                  format_double(spacing) + " (row " + std::to_string(i + 1) + ")");
    }
  }
  return traj;
}

Trajectory read_trajectory_csv(const std::string& path, const RunConfig& cfg) {
  std::ifstream is(path, std::ios::binary);
  if (!is) throw TrajectoryFormatError("cannot read trajectory file '" + path + "'");
  return read_trajectory_csv(is, cfg);
}

}  // namespace torusfhn
