#include "geoch/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <istream>
#include <ostream>
#include <sstream>

#include "geoch/errors.hpp"

namespace geoch::io {

std::string format_double(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc() || res.ptr != text.data() + text.size()) {
    throw ValidationError("not a number: '" + std::string(text) + "'");
  }
  return v;
}

void write_snapshot(std::ostream& out, const Snapshot& snap) {
  out << "# t=" << format_double(snap.t) << '\n';
  for (std::size_t r = 0; r < snap.rows(); ++r) {
    for (std::size_t c = 0; c < snap.columns.size(); ++c) {
      if (c) out << ',';
      out << format_double(snap.columns[c][r]);
    }
    out << '\n';
  }
}

Snapshot read_snapshot(std::istream& in) {
  std::string line;
  if (!std::getline(in, line) || line.rfind("# t=", 0) != 0) {
    throw ValidationError("snapshot must start with '# t=<time>'");
  }
  Snapshot snap;
  snap.t = parse_double(std::string_view(line).substr(4));
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (line.empty()) continue;
    std::vector<double> row;
    std::size_t start = 0;
    while (true) {
      const auto comma = line.find(',', start);
      row.push_back(parse_double(std::string_view(line).substr(start, comma - start)));
      if (comma == std::string::npos) break;
      start = comma + 1;
    }
    if (snap.columns.empty()) snap.columns.resize(row.size());
    if (row.size() != snap.columns.size()) {
      throw ValidationError("snapshot line " + std::to_string(lineno) + " has " +
                            std::to_string(row.size()) + " columns, expected " +
                            std::to_string(snap.columns.size()));
    }
    for (std::size_t c = 0; c < row.size(); ++c) snap.columns[c].push_back(row[c]);
  }
  return snap;
}

Snapshot eulerian_snapshot(double t, const Field& u) {
  return Snapshot{t, {u.grid().points(), u.data()}};
}

Snapshot lagrangian_snapshot(double t, const DiffeoState& s) {
  return Snapshot{t, {s.grid().points(), s.positions(), s.velocity()}};
}

Field field_from_snapshot(const Snapshot& snap) {
  if (snap.columns.size() != 2 || snap.rows() < 2) {
    throw ValidationError("expected a two-column x,u snapshot");
  }
  const auto& x = snap.columns[0];
  const double dx = x[1] - x[0];
  const Grid grid(x.size(), dx * static_cast<double>(x.size()));
  for (std::size_t j = 0; j < x.size(); ++j) {
    if (std::abs(x[j] - grid.point(j)) > 1e-9 * grid.length()) {
      throw ValidationError("snapshot abscissae are not a uniform periodic grid");
    }
  }
  return Field(grid, snap.columns[1]);
}

void write_snapshot_file(const std::filesystem::path& path, const Snapshot& snap) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path.string());
  write_snapshot(out, snap);
}

Snapshot read_snapshot_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ValidationError("cannot open " + path.string());
  return read_snapshot(in);
}

void write_report(std::ostream& out, const RunReport& r) {
  out << "run_id: " << r.run_id << '\n';
  out << "metric: " << to_string(r.metric) << '\n';
  out << "n: " << r.n << '\n';
  out << "dt: " << format_double(r.dt) << '\n';
  out << "samples: " << r.times.size() << '\n';
  out << "status: " << to_string(r.status.kind) << '\n';
  out << "last_valid_time: " << format_double(r.status.last_valid_time) << '\n';
  if (!r.status.message.empty()) out << "message: " << r.status.message << '\n';
  out << "energy_relative_drift: " << format_double(relative_drift(r.energy)) << '\n';
  out << "mean_momentum_drift: " << format_double(absolute_drift(r.mean_momentum)) << '\n';
  for (const auto& [key, value] : r.residuals) out << key << ": " << format_double(value) << '\n';
  out << '\n' << "t,energy,mean_momentum,l2_norm,max_norm\n";
  for (std::size_t i = 0; i < r.times.size(); ++i) {
    out << format_double(r.times[i]) << ',' << format_double(r.energy[i]) << ','
        << format_double(r.mean_momentum[i]) << ',' << format_double(r.l2_norm[i]) << ','
        << format_double(r.max_norm[i]) << '\n';
  }
}

void write_peakon_csv(std::ostream& out, const PeakonTrajectory& traj) {
  if (traj.states.empty()) return;
  const std::size_t n = traj.states.front().size();
  out << 't';
  for (std::size_t i = 0; i < n; ++i) out << ",q" << i;
  for (std::size_t i = 0; i < n; ++i) out << ",p" << i;
  out << ",H\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    const auto& s = traj.states[k];
    out << format_double(traj.times[k]);
    for (double q : s.q) out << ',' << format_double(q);
    for (double p : s.p) out << ',' << format_double(p);
    out << ',' << format_double(peakon_hamiltonian(s)) << '\n';
  }
}

namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

}  // namespace

std::map<std::string, std::string> read_config(std::istream& in) {
  std::map<std::string, std::string> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    const std::string t = trim(line);
    if (t.empty() || t.front() == '#') continue;
    const auto eq = t.find('=');
    if (eq == std::string::npos) {
      throw ValidationError("config line " + std::to_string(lineno) + " is not 'key = value'");
    }
    std::string key = trim(t.substr(0, eq));
    while (!key.empty() && key.front() == '-') key.erase(key.begin());
    if (key.empty()) throw ValidationError("config line " + std::to_string(lineno) + " has no key");
    out[key] = trim(t.substr(eq + 1));
  }
  return out;
}

}  // namespace geoch::io
