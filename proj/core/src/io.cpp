#include "noonsim/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>
#include <system_error>

#include "noonsim/error.hpp"

namespace noonsim {

namespace {

std::string chars(double v, int precision) {
  if (!std::isfinite(v)) {
    if (std::isnan(v)) return "nan";
    return v > 0 ? "inf" : "-inf";
  }
  char buf[64];
  const auto res = precision > 0
                       ? std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, precision)
                       : std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

void append_row(std::string& out, const std::vector<std::string>& fields) {
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += fields[i];
  }
  out += '\n';
}

}  // namespace

std::string format_double(double v) { return chars(v, 17); }

std::string format_double_shortest(double v) { return chars(v, 0); }

double parse_double(std::string_view text) {
  double v = 0.0;
  const char* first = text.data();
  const char* last = text.data() + text.size();
  if (first != last && *first == '+') ++first;
  const auto res = std::from_chars(first, last, v);
  if (res.ec != std::errc{} || res.ptr != last) {
    throw std::invalid_argument("not a number: '" + std::string(text) + "'");
  }
  return v;
}

void write_file(const std::filesystem::path& path, std::string_view content) {
  std::error_code ec;
  if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path(), ec);
  std::ofstream f(path, std::ios::binary | std::ios::trunc);
  if (!f) throw IoError("cannot open '" + path.string() + "' for writing");
  f.write(content.data(), static_cast<std::streamsize>(content.size()));
  f.close();
  if (!f) throw IoError("failed writing '" + path.string() + "'");
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw IoError("cannot open '" + path.string() + "' for reading");
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

std::vector<std::string> csv_header(const SweepResult& result) {
  std::vector<std::string> h{result.variable};
  for (const auto& s : result.series) {
    const std::string n = "cf_N" + std::to_string(s.photons);
    h.push_back(n);
    h.push_back(n + "_norm");
  }
  if (result.variable == "theta") h.emplace_back("classical_norm");
  if (result.variable == "s") h.emplace_back("object_footprint");
  return h;
}

std::string sweep_csv(const SweepResult& result) {
  const std::size_t m = result.x.size();
  for (const auto& s : result.series) {
    if (s.raw.size() != m || s.normalized.size() != m) {
      throw DimensionMismatchError("sweep column lengths differ");
    }
  }
  const bool phase = result.variable == "theta";
  const auto& extra = phase ? result.classical_norm : result.object_footprint;
  if (!extra.empty() && extra.size() != m) throw DimensionMismatchError("sweep column lengths differ");

  std::string out;
  append_row(out, csv_header(result));
  for (std::size_t k = 0; k < m; ++k) {
    std::vector<std::string> row{format_double(result.x[k])};
    for (const auto& s : result.series) {
      row.push_back(format_double(s.raw[k]));
      row.push_back(format_double(s.normalized[k]));
    }
    if (phase || result.variable == "s") row.push_back(format_double(extra.empty() ? 0.0 : extra[k]));
    append_row(out, row);
  }
  return out;
}

void emit_csv(const SweepResult& result, const std::filesystem::path& path) {
  write_file(path, sweep_csv(result));
}

std::string components_csv(const SweepResult& result) {
  std::string out;
  append_row(out, {result.variable, "photons", "numerator", "denom_alpha", "denom_beta",
                   "state_norm", "value", "regularized"});
  for (const auto& s : result.series) {
    for (std::size_t k = 0; k < s.points.size(); ++k) {
      const auto& c = s.points[k];
      append_row(out, {format_double(result.x[k]), std::to_string(s.photons),
                       format_double(c.numerator), format_double(c.denom_alpha),
                       format_double(c.denom_beta), format_double(c.state_norm),
                       format_double(c.value), c.regularized ? "1" : "0"});
    }
  }
  return out;
}

std::string permittivity_csv(const PermittivityMap& map) {
  const Grid& g = map.grid();
  std::string out;
  if (g.dimension() == 1) {
    append_row(out, {"eps1d", std::to_string(g.cells(0))});
  } else {
    append_row(out, {"eps2d", std::to_string(g.cells(0)), std::to_string(g.cells(1))});
  }
  const int ny = g.dimension() == 2 ? g.cells(1) : 1;
  for (int iy = 0; iy < ny; ++iy) {
    std::vector<std::string> row;
    for (int ix = 0; ix < g.cells(0); ++ix) row.push_back(format_double(map[g.flat_index(ix, iy)]));
    append_row(out, row);
  }
  return out;
}

PermittivityMap read_permittivity_csv(const std::filesystem::path& path,
                                      std::array<double, 2> cell_size) {
  const auto rows = parse_csv(read_file(path));
  if (rows.empty()) throw ConfigError("permittivity file '" + path.string() + "' is empty");
  const auto& head = rows.front();
  auto dim = [&](std::size_t i) {
    try {
      return std::stoi(head.at(i));
    } catch (const std::exception&) {
      throw ConfigError("permittivity file header must be 'eps1d,nx' or 'eps2d,nx,ny'");
    }
  };
  std::vector<double> eps;
  for (std::size_t r = 1; r < rows.size(); ++r) {
    for (const auto& f : rows[r]) {
      try {
        eps.push_back(parse_double(f));
      } catch (const std::invalid_argument&) {
        throw ConfigError("permittivity file row " + std::to_string(r + 1) + ": bad value '" + f + "'");
      }
    }
  }
  if (head.size() == 2 && head[0] == "eps1d") {
    const int nx = dim(1);
    return PermittivityMap(Grid::line(nx, cell_size[0], -0.5 * nx * cell_size[0]), std::move(eps));
  }
  if (head.size() == 3 && head[0] == "eps2d") {
    const int nx = dim(1);
    const int ny = dim(2);
    return PermittivityMap(Grid::plane({nx, ny}, cell_size,
                                       {-0.5 * nx * cell_size[0], -0.5 * ny * cell_size[1]}),
                           std::move(eps));
  }
  throw ConfigError("permittivity file header must be 'eps1d,nx' or 'eps2d,nx,ny'");
}

std::string omegas_csv(const ModeBasis& basis) {
  std::string out = "index,omega\n";
  for (Eigen::Index i = 0; i < basis.omegas().size(); ++i) {
    append_row(out, {std::to_string(i), format_double(basis.omegas()[i])});
  }
  return out;
}

std::string modes_csv(const ModeBasis& basis) {
  std::string out = "cell,mode,re,im\n";
  const auto& phi = basis.modes();
  for (Eigen::Index j = 0; j < phi.rows(); ++j) {
    for (Eigen::Index i = 0; i < phi.cols(); ++i) {
      append_row(out, {std::to_string(j), std::to_string(i), format_double(phi(j, i).real()),
                       format_double(phi(j, i).imag())});
    }
  }
  return out;
}

std::string amplitudes_csv(const SpectralAmplitudes& g) {
  std::string out = "index,re,im\n";
  for (std::size_t i = 0; i < g.size(); ++i) {
    append_row(out, {std::to_string(i), format_double(g[i].real()), format_double(g[i].imag())});
  }
  return out;
}

std::vector<std::vector<std::string>> parse_csv(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::size_t pos = 0;
  while (pos < text.size()) {
    std::size_t end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    std::string_view line = text.substr(pos, end - pos);
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty()) {
      std::vector<std::string> fields;
      std::size_t a = 0;
      while (true) {
        const std::size_t b = line.find(',', a);
        fields.emplace_back(line.substr(a, b == std::string_view::npos ? line.size() - a : b - a));
        if (b == std::string_view::npos) break;
        a = b + 1;
      }
      rows.push_back(std::move(fields));
    }
    pos = end + 1;
  }
  return rows;
}

}  // namespace noonsim
