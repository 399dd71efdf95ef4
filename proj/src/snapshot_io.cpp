#include "greedyrb/snapshot_io.hpp"

#include <charconv>
#include <cmath>
#include <cstring>
#include <fstream>
#include <limits>
#include <sstream>
#include <stdexcept>

namespace greedyrb {

namespace {

std::string shortest(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

double parse_double(std::string_view text, const std::string& path) {
  double v = 0.0;
  const auto res = std::from_chars(text.data(), text.data() + text.size(), v);
  if (res.ec != std::errc{} || res.ptr != text.data() + text.size())
    throw std::runtime_error(path + ": malformed number '" +
                             std::string(text) + "'");
  return v;
}

double space_code(const SpaceSpec& s) {
  switch (s.regime) {
    case SpaceSpec::Regime::l1: return 1.0;
    case SpaceSpec::Regime::linf:
      return std::numeric_limits<double>::infinity();
    case SpaceSpec::Regime::lp: return s.p;
  }
  return 2.0;
}

}  // namespace

void write_snapshots_csv(const std::string& path, const TrainingSet& ts) {
  std::ofstream out(path, std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open " + path);
  for (int j = 0; j < ts.size(); ++j) {
    if (j) out << ',';
    if (j < static_cast<int>(ts.column_labels.size()))
      out << ts.column_labels[j];
    else
      out << 'f' << j;
  }
  out << '\n';
  for (Eigen::Index i = 0; i < ts.dim(); ++i) {
    for (int j = 0; j < ts.size(); ++j) {
      if (j) out << ',';
      out << shortest(ts.vectors(i, j));
    }
    out << '\n';
  }
  if (!out) throw std::runtime_error("write failed: " + path);
}

TrainingSet read_snapshots_csv(const std::string& path, SpaceSpec space) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line))
    throw std::runtime_error(path + ": empty file");

  std::vector<std::string> labels;
  {
    std::stringstream header(line);
    std::string cell;
    while (std::getline(header, cell, ',')) labels.push_back(cell);
  }
  const int cols = static_cast<int>(labels.size());
  if (cols == 0) throw std::runtime_error(path + ": no columns");

  std::vector<double> values;
  int rows = 0;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::stringstream row(line);
    std::string cell;
    int got = 0;
    while (std::getline(row, cell, ',')) {
      values.push_back(parse_double(cell, path));
      ++got;
    }
    if (got != cols)
      throw std::runtime_error(path + ": ragged row " + std::to_string(rows));
    ++rows;
  }
  if (rows == 0) throw std::runtime_error(path + ": no data rows");

  Matrix m(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) m(i, j) = values[i * cols + j];
  TrainingSet ts(std::move(m), space, path);
  ts.column_labels = std::move(labels);
  return ts;
}

void write_snapshots_binary(const std::string& path, const TrainingSet& ts) {
  std::ofstream out(path, std::ios::trunc | std::ios::binary);
  if (!out) throw std::runtime_error("cannot open " + path);
  std::uint64_t header[8] = {};
  header[0] = kSnapshotMagic;
  header[1] = kSnapshotVersion;
  header[2] = static_cast<std::uint64_t>(ts.dim());
  header[3] = static_cast<std::uint64_t>(ts.size());
  const double p = space_code(ts.space);
  std::memcpy(&header[4], &p, sizeof p);
  out.write(reinterpret_cast<const char*>(header), sizeof header);
  out.write(reinterpret_cast<const char*>(ts.vectors.data()),
            static_cast<std::streamsize>(sizeof(double) * ts.dim() * ts.size()));
  if (!out) throw std::runtime_error("write failed: " + path);
}

TrainingSet read_snapshots_binary(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::uint64_t header[8] = {};
  in.read(reinterpret_cast<char*>(header), sizeof header);
  if (!in || header[0] != kSnapshotMagic)
    throw std::runtime_error(path + ": not a snapshot file");
  if (header[1] != kSnapshotVersion)
    throw std::runtime_error(path + ": unsupported version");
  const auto rows = static_cast<Eigen::Index>(header[2]);
  const auto cols = static_cast<Eigen::Index>(header[3]);
  if (rows < 1 || cols < 1 || rows > (1 << 28) || cols > (1 << 28))
    throw std::runtime_error(path + ": implausible dimensions");
  double p = 2.0;
  std::memcpy(&p, &header[4], sizeof p);
  Matrix m(rows, cols);
  in.read(reinterpret_cast<char*>(m.data()),
          static_cast<std::streamsize>(sizeof(double) * rows * cols));
  if (!in) throw std::runtime_error(path + ": truncated payload");
  return TrainingSet(std::move(m), SpaceSpec::from_p(p), path);
}

}  // namespace greedyrb
