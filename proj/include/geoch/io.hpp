#pragma once

#include <filesystem>
#include <iosfwd>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "geoch/diagnostics.hpp"
#include "geoch/peakon.hpp"

namespace geoch::io {

/// Shortest decimal text that parses back to exactly the same double.
std::string format_double(double v);
/// Strict parse of a whole string as a double; throws ValidationError.
double parse_double(std::string_view text);

/// Snapshot file: a `# t=<time>` line followed by one CSV row per sample.
/// Eulerian snapshots carry the columns x,u; Lagrangian ones X,eta,V.
/// Every number is written with format_double, so reading a file and writing
/// it again reproduces it byte for byte.
struct Snapshot {
  double t = 0.0;
  std::vector<std::vector<double>> columns;

  std::size_t rows() const { return columns.empty() ? 0 : columns.front().size(); }
};

void write_snapshot(std::ostream& out, const Snapshot& snap);
/// Throws ValidationError on a missing header, ragged rows or bad numbers.
Snapshot read_snapshot(std::istream& in);

Snapshot eulerian_snapshot(double t, const Field& u);
Snapshot lagrangian_snapshot(double t, const DiffeoState& s);
/// Field stored in a two-column x,u snapshot (grid length inferred as n * dx).
Field field_from_snapshot(const Snapshot& snap);

void write_snapshot_file(const std::filesystem::path& path, const Snapshot& snap);
Snapshot read_snapshot_file(const std::filesystem::path& path);

/// RunReport as `key: value` lines, a blank line, then the CSV series
/// t,energy,mean_momentum,l2_norm,max_norm.
void write_report(std::ostream& out, const RunReport& report);

/// Peakon trajectory CSV: t,q0..q{N-1},p0..p{N-1},H.
void write_peakon_csv(std::ostream& out, const PeakonTrajectory& traj);

/// Flat `key = value` config file. Blank lines and lines starting with '#'
/// are ignored; keys are flag names without leading dashes.
std::map<std::string, std::string> read_config(std::istream& in);

}  // namespace geoch::io
