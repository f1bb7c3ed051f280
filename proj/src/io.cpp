#include "gpr/io.hpp"

#include "gpr/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

namespace gpr::io {

std::string format_double(double v) {
  if (std::isnan(v)) {
    return "nan";
  }
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) {
    s.remove_prefix(1);
  }
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
    s.remove_suffix(1);
  }
  return s;
}

std::vector<std::vector<double>> read_table(std::istream& in, const std::string& name) {
  std::vector<std::vector<double>> rows;
  std::string line;
  std::size_t row = 0;
  while (std::getline(in, line)) {
    ++row;
    if (trim(line).empty()) {
      continue;
    }
    std::vector<double> values;
    std::size_t column = 0;
    std::string_view rest(line);
    while (true) {
      ++column;
      const std::size_t comma = rest.find(',');
      const std::string_view cell = trim(rest.substr(0, comma));
      double v = 0.0;
      if (cell == "nan" || cell == "NaN") {
        v = std::numeric_limits<double>::quiet_NaN();
      } else {
        const auto res = std::from_chars(cell.data(), cell.data() + cell.size(), v);
        if (cell.empty() || res.ec != std::errc() || res.ptr != cell.data() + cell.size()) {
          throw ParseError(name, row, column, "not a number: '" + std::string(cell) + "'");
        }
      }
      values.push_back(v);
      if (comma == std::string_view::npos) {
        break;
      }
      rest.remove_prefix(comma + 1);
    }
    if (!rows.empty() && values.size() != rows.front().size()) {
      throw ParseError(name, row, std::min(values.size(), rows.front().size()) + 1,
                       "expected " + std::to_string(rows.front().size()) + " columns, found " +
                           std::to_string(values.size()));
    }
    rows.push_back(std::move(values));
  }
  if (rows.empty()) {
    throw ParseError(name, 1, 1, "empty grid");
  }
  return rows;
}

std::ifstream open_in(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw Error("cannot open '" + path.string() + "' for reading");
  }
  return in;
}

std::ofstream open_out(const std::filesystem::path& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) {
    throw Error("cannot open '" + path.string() + "' for writing");
  }
  return out;
}

} // namespace

GridField read_grid_csv(std::istream& in, const std::string& name) {
  const auto rows = read_table(in, name);
  GridField f(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t y = 0; y < rows.size(); ++y) {
    for (std::size_t x = 0; x < rows[y].size(); ++x) {
      f(static_cast<Index>(y), static_cast<Index>(x)) = rows[y][x];
    }
  }
  return f;
}

GridField read_grid_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_grid_csv(in, path.string());
}

void write_grid_csv(std::ostream& out, const GridField& field) {
  for (Index y = 0; y < field.rows(); ++y) {
    for (Index x = 0; x < field.cols(); ++x) {
      if (x > 0) {
        out << ',';
      }
      out << format_double(field(y, x));
    }
    out << '\n';
  }
}

void write_grid_csv(const std::filesystem::path& path, const GridField& field) {
  auto out = open_out(path);
  write_grid_csv(out, field);
}

ObservationMask read_mask_csv(std::istream& in, const std::string& name) {
  const auto rows = read_table(in, name);
  ObservationMask m(static_cast<Index>(rows.size()), static_cast<Index>(rows.front().size()));
  for (std::size_t y = 0; y < rows.size(); ++y) {
    for (std::size_t x = 0; x < rows[y].size(); ++x) {
      const double v = rows[y][x];
      if (v != 0.0 && v != 1.0) {
        throw ParseError(name, y + 1, x + 1, "mask values must be 0 or 1");
      }
      m(static_cast<Index>(y), static_cast<Index>(x)) = v == 1.0;
    }
  }
  return m;
}

ObservationMask read_mask_csv(const std::filesystem::path& path) {
  auto in = open_in(path);
  return read_mask_csv(in, path.string());
}

void write_mask_csv(std::ostream& out, const ObservationMask& mask) {
  for (Index y = 0; y < mask.rows(); ++y) {
    for (Index x = 0; x < mask.cols(); ++x) {
      out << (x > 0 ? "," : "") << (mask(y, x) ? '1' : '0');
    }
    out << '\n';
  }
}

void write_mask_csv(const std::filesystem::path& path, const ObservationMask& mask) {
  auto out = open_out(path);
  write_mask_csv(out, mask);
}

void write_predictions_csv(const std::filesystem::path& path, const GridField& predicted,
                           const ObservationMask& mask) {
  auto out = open_out(path);
  out << "x,y,value\n";
  for (Index y = 0; y < mask.rows(); ++y) {
    for (Index x = 0; x < mask.cols(); ++x) {
      if (!mask(y, x)) {
        out << x << ',' << y << ',' << format_double(predicted(y, x)) << '\n';
      }
    }
  }
}

void write_energy_trace_csv(const std::filesystem::path& path, std::span<const double> trace) {
  auto out = open_out(path);
  out << "sweep,specific_energy\n";
  for (std::size_t s = 0; s < trace.size(); ++s) {
    out << (s + 1) << ',' << format_double(trace[s]) << '\n';
  }
}

std::string read_text(const std::filesystem::path& path) {
  auto in = open_in(path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void write_text(const std::filesystem::path& path, const std::string& text) {
  auto out = open_out(path);
  out << text;
}

} // namespace gpr::io
