#include "bhfm/io.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <vector>

namespace bhfm::io {

namespace {

constexpr const char* kDataHeader = "# k R M delta seed shape n_boundary";

double parse_real(const std::string& token, int line) {
  double value = 0.0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw IoError("line " + std::to_string(line) + ": bad number '" + token + "'");
  return value;
}

template <typename Int>
Int parse_int(const std::string& token, int line) {
  Int value = 0;
  const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
  if (ec != std::errc() || ptr != token.data() + token.size())
    throw IoError("line " + std::to_string(line) + ": bad integer '" + token + "'");
  return value;
}

std::vector<std::string> split(const std::string& line) {
  std::istringstream is(line);
  std::vector<std::string> out;
  for (std::string tok; is >> tok;) out.push_back(tok);
  return out;
}

std::ofstream open_out(const std::string& path, std::ios::openmode mode = std::ios::out) {
  std::ofstream os(path, mode);
  if (!os) throw IoError("cannot open '" + path + "' for writing");
  return os;
}

}  // namespace

std::string format_real(double value) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", value);
  return buf;
}

void write_near_field(std::ostream& os, const NearFieldSet& data) {
  const auto& c = data.context;
  const int m = data.sensors();
  if (data.L.rows() != m || data.U.cols() != m || data.L.cols() != m)
    throw DimensionError("near-field matrices are not M x M");
  os << kDataHeader << '\n';
  os << "# " << format_real(c.k) << ' ' << format_real(c.radius) << ' ' << m << ' ' << format_real(data.noise.delta)
     << ' ' << data.noise.seed << ' ' << data.shape << ' ' << c.n_boundary << '\n';
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < m; ++j)
      os << i << ' ' << j << ' ' << format_real(data.U(i, j).real()) << ' ' << format_real(data.U(i, j).imag()) << ' '
         << format_real(data.L(i, j).real()) << ' ' << format_real(data.L(i, j).imag()) << '\n';
  if (!os) throw IoError("write failed");
}

NearFieldSet read_near_field(std::istream& is) {
  std::string line;
  int line_no = 1;
  if (!std::getline(is, line) || split(line) != split(kDataHeader)) throw IoError("missing near-field header line");
  ++line_no;
  if (!std::getline(is, line)) throw IoError("missing parameter line");
  const auto fields = split(line);
  if (fields.size() != 8 || fields[0] != "#") throw IoError("line 2: expected 7 parameters after '#'");

  NearFieldSet data;
  data.context.k = parse_real(fields[1], line_no);
  data.context.radius = parse_real(fields[2], line_no);
  data.context.sensors = parse_int<int>(fields[3], line_no);
  data.noise.delta = parse_real(fields[4], line_no);
  data.noise.seed = parse_int<std::uint64_t>(fields[5], line_no);
  data.shape = fields[6];
  data.context.n_boundary = parse_int<int>(fields[7], line_no);
  const int m = data.context.sensors;
  if (m < 1) throw IoError("line 2: sensor count must be positive");

  data.U = CMatrix::Zero(m, m);
  data.L = CMatrix::Zero(m, m);
  std::vector<char> seen(static_cast<std::size_t>(m) * m, 0);
  int records = 0;
  while (std::getline(is, line)) {
    ++line_no;
    const auto tok = split(line);
    if (tok.empty()) continue;
    if (tok.size() != 6) throw IoError("line " + std::to_string(line_no) + ": expected 6 fields");
    const int i = parse_int<int>(tok[0], line_no);
    const int j = parse_int<int>(tok[1], line_no);
    if (i < 0 || j < 0 || i >= m || j >= m) throw IoError("line " + std::to_string(line_no) + ": index out of range");
    auto& flag = seen[static_cast<std::size_t>(i) * m + j];
    if (flag) throw IoError("line " + std::to_string(line_no) + ": duplicate record");
    flag = 1;
    data.U(i, j) = {parse_real(tok[2], line_no), parse_real(tok[3], line_no)};
    data.L(i, j) = {parse_real(tok[4], line_no), parse_real(tok[5], line_no)};
    ++records;
  }
  if (records != m * m) throw IoError("expected " + std::to_string(m * m) + " records, found " + std::to_string(records));
  return data;
}

void save_near_field(const std::string& path, const NearFieldSet& data) {
  auto os = open_out(path);
  write_near_field(os, data);
}

NearFieldSet load_near_field(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path + "'");
  return read_near_field(is);
}

void write_grid_csv(std::ostream& os, const IndicatorGrid& grid) {
  os << "x,y,value\n";
  for (int iy = 0; iy < grid.spec.ny; ++iy)
    for (int ix = 0; ix < grid.spec.nx; ++ix) {
      const Point p = grid.point(ix, iy);
      os << format_real(p.x) << ',' << format_real(p.y) << ',' << format_real(grid.at(ix, iy)) << '\n';
    }
  if (!os) throw IoError("write failed");
}

void save_grid_csv(const std::string& path, const IndicatorGrid& grid) {
  auto os = open_out(path);
  write_grid_csv(os, grid);
}

void write_grid_pgm(std::ostream& os, const IndicatorGrid& grid) {
  os << "P5\n" << grid.spec.nx << ' ' << grid.spec.ny << "\n255\n";
  std::string row(static_cast<std::size_t>(grid.spec.nx), '\0');
  for (int iy = grid.spec.ny - 1; iy >= 0; --iy) {
    for (int ix = 0; ix < grid.spec.nx; ++ix) {
      const double v = std::clamp(grid.at(ix, iy), 0.0, 1.0);
      row[static_cast<std::size_t>(ix)] = static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * v)));
    }
    os.write(row.data(), static_cast<std::streamsize>(row.size()));
  }
  if (!os) throw IoError("write failed");
}

void save_grid_pgm(const std::string& path, const IndicatorGrid& grid) {
  auto os = open_out(path, std::ios::out | std::ios::binary);
  write_grid_pgm(os, grid);
}

void save_metadata(const std::string& path, const Metadata& meta) {
  auto os = open_out(path);
  os << meta.dump(2) << '\n';
  if (!os) throw IoError("write failed");
}

Metadata load_metadata(const std::string& path) {
  std::ifstream is(path);
  if (!is) throw IoError("cannot open '" + path + "'");
  try {
    return Metadata::parse(is);
  } catch (const nlohmann::json::exception& e) {
    throw IoError(std::string("bad metadata: ") + e.what());
  }
}

}  // namespace bhfm::io
