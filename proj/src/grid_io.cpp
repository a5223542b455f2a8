#include "criccati/grid_io.hpp"

#include <charconv>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "criccati/errors.hpp"

namespace criccati {

namespace {

std::vector<double> split_numbers(const std::string& line, int line_no) {
  std::vector<double> out;
  std::size_t start = 0;
  while (start <= line.size()) {
    std::size_t end = line.find(',', start);
    if (end == std::string::npos) end = line.size();
    std::string token = line.substr(start, end - start);
    const auto first = token.find_first_not_of(" \t\r");
    const auto last = token.find_last_not_of(" \t\r");
    if (first == std::string::npos) throw ParseError("grid csv: empty value", line_no);
    token = token.substr(first, last - first + 1);
    double v = 0.0;
    auto res = std::from_chars(token.data(), token.data() + token.size(), v);
    if (res.ec != std::errc() || res.ptr != token.data() + token.size()) {
      throw ParseError("grid csv: malformed number '" + token + "'", line_no);
    }
    out.push_back(v);
    start = end + 1;
  }
  return out;
}

std::filesystem::path with_suffix(const std::filesystem::path& prefix, const char* suffix) {
  return std::filesystem::path(prefix.string() + suffix);
}

}  // namespace

ScalarField read_grid_csv(std::istream& in, std::optional<Point> base) {
  std::string line;
  if (!std::getline(in, line)) throw ParseError("grid csv: missing header", 1);
  const auto header = split_numbers(line, 1);
  if (header.size() != 6) throw ParseError("grid csv: header needs 6 fields", 1);
  const int nx = static_cast<int>(header[0]), ny = static_cast<int>(header[1]);
  if (nx != header[0] || ny != header[1]) throw ParseError("grid csv: non-integer counts", 1);
  const DomainSpec grid(header[2], header[3], header[4], header[5],
                        base.value_or(Point{header[2], header[4]}), nx, ny);
  std::vector<double> samples;
  samples.reserve(static_cast<std::size_t>(nx) * ny);
  for (int j = 0; j < ny; ++j) {
    if (!std::getline(in, line)) throw ParseError("grid csv: missing rows", j + 2);
    const auto row = split_numbers(line, j + 2);
    if (static_cast<int>(row.size()) != nx) throw ParseError("grid csv: wrong row length", j + 2);
    samples.insert(samples.end(), row.begin(), row.end());
  }
  return ScalarField(grid, std::move(samples));
}

ScalarField read_grid_csv(const std::filesystem::path& path, std::optional<Point> base) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open " + path.string());
  return read_grid_csv(in, base);
}

ComplexField read_complex_grid_csv(const std::filesystem::path& prefix,
                                   std::optional<Point> base) {
  return {read_grid_csv(with_suffix(prefix, "_re.csv"), base),
          read_grid_csv(with_suffix(prefix, "_im.csv"), base)};
}

void write_grid_csv(std::ostream& out, const ScalarField& field) {
  const ScalarField grid = ScalarField::sample(field, field.domain());
  const DomainSpec& d = grid.domain();
  auto num = [](double v) {
    char buf[32];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
  };
  out << d.nx() << ',' << d.ny() << ',' << num(d.x_min()) << ',' << num(d.x_max()) << ','
      << num(d.y_min()) << ',' << num(d.y_max()) << '\n';
  for (int j = 0; j < d.ny(); ++j) {
    for (int i = 0; i < d.nx(); ++i) out << (i ? "," : "") << num(grid.node(i, j));
    out << '\n';
  }
}

void write_grid_csv(const std::filesystem::path& path, const ScalarField& field) {
  std::ofstream out(path);
  if (!out) throw IoError("cannot write " + path.string());
  write_grid_csv(out, field);
  if (!out) throw IoError("write failed for " + path.string());
}

void write_complex_grid_csv(const std::filesystem::path& prefix, const ComplexField& field) {
  write_grid_csv(with_suffix(prefix, "_re.csv"), field.re());
  write_grid_csv(with_suffix(prefix, "_im.csv"), field.im());
}

}  // namespace criccati
