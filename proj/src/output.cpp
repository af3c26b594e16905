#include "freemult/output.hpp"

#include <charconv>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include <unistd.h>

#include "freemult/errors.hpp"

namespace freemult {

std::string format_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  if (x == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, x);
  return {buf, res.ptr};
}

void write_file_atomic(const std::string& path, const std::string& content) {
  namespace fs = std::filesystem;
  const fs::path target(path);
  fs::path tmp = target;
  tmp += ".tmp" + std::to_string(::getpid());
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorKind::InvalidArgument, "cannot write " + tmp.string());
    out << content;
    out.flush();
    if (!out) throw Error(ErrorKind::InvalidArgument, "write failed for " + tmp.string());
  }
  std::error_code ec;
  fs::rename(tmp, target, ec);
  if (ec) {
    fs::remove(tmp);
    throw Error(ErrorKind::InvalidArgument, "cannot move output into place: " + ec.message());
  }
}

namespace {

// Keeps the config on a single comment line.
std::string one_line(std::string s) {
  for (char& c : s)
    if (c == '\n' || c == '\r') c = ' ';
  return s;
}

std::string xml_escape(const std::string& s) {
  std::string out;
  for (char c : s) {
    switch (c) {
      case '<': out += "&lt;"; break;
      case '>': out += "&gt;"; break;
      case '&': out += "&amp;"; break;
      default: out += c;
    }
  }
  return out;
}

}  // namespace

std::string density_csv(const DensityTable& table, const std::string& abscissa_name, const std::string& config) {
  std::ostringstream os;
  os << "# config: " << one_line(config) << '\n';
  os << abscissa_name << ",density\n";
  for (std::size_t i = 0; i < table.abscissae.size(); ++i)
    os << format_number(table.abscissae[i]) << ',' << format_number(table.values[i]) << '\n';
  return os.str();
}

std::string level_curves_csv(const LevelCurveSet& set, const std::string& config) {
  std::ostringstream os;
  os << "# config: " << one_line(config) << '\n';
  os << "level,polyline,vertex,r,theta\n";
  for (std::size_t l = 0; l < set.levels.size(); ++l)
    for (std::size_t p = 0; p < set.polylines[l].size(); ++p)
      for (std::size_t v = 0; v < set.polylines[l][p].size(); ++v) {
        const auto& q = set.polylines[l][p][v];
        os << format_number(set.levels[l]) << ',' << p << ',' << v << ',' << format_number(q.r) << ','
           << format_number(q.theta) << '\n';
      }
  return os.str();
}

std::string level_curves_svg(const LevelCurveSet& set, const std::string& config) {
  const auto& w = set.window;
  const double width = w.r_max - w.r_min;
  const double height = w.theta_max - w.theta_min;
  std::ostringstream os;
  os << "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  os << "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"" << format_number(w.r_min) << ' ' << format_number(-w.theta_max)
     << ' ' << format_number(width) << ' ' << format_number(height) << "\" width=\"800\" height=\"600\""
     << " preserveAspectRatio=\"none\">\n";
  os << "<metadata>" << xml_escape(one_line(config)) << "</metadata>\n";
  const double stroke = 0.002 * std::max(width, height);
  for (std::size_t l = 0; l < set.levels.size(); ++l) {
    os << "<g data-level=\"" << format_number(set.levels[l]) << "\" fill=\"none\" stroke=\"black\" stroke-width=\""
       << format_number(stroke) << "\">\n";
    for (const auto& line : set.polylines[l]) {
      os << "<polyline points=\"";
      for (std::size_t v = 0; v < line.size(); ++v) {
        if (v > 0) os << ' ';
        os << format_number(line[v].r) << ',' << format_number(-line[v].theta);
      }
      os << "\"/>\n";
    }
    os << "</g>\n";
  }
  os << "</svg>\n";
  return os.str();
}

}  // namespace freemult
