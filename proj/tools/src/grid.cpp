#include <cmath>
#include <cstdlib>
#include <sstream>

#include "entgeo/cli.hpp"

namespace entgeo::cli {

namespace {

double parse_number(const std::string& s) {
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(s, &used);
  } catch (const std::exception&) {
    throw ConfigError("not a number: '" + s + "'");
  }
  if (used != s.size() || !std::isfinite(v)) throw ConfigError("not a number: '" + s + "'");
  return v;
}

double round12(double v) { return std::round(v * 1e12) / 1e12; }

}  // namespace

std::vector<double> parse_grid(const std::string& text) {
  if (text.empty()) throw ConfigError("empty grid");
  const auto dots = text.find("..");
  if (dots != std::string::npos) {
    const auto colon = text.find(':', dots);
    if (colon == std::string::npos) throw ConfigError("grid '" + text + "' needs a step: start..end:step");
    const double start = parse_number(text.substr(0, dots));
    const double end = parse_number(text.substr(dots + 2, colon - dots - 2));
    const double step = parse_number(text.substr(colon + 1));
    if (!(step > 0.0)) throw ConfigError("grid step must be positive");
    if (end < start) throw ConfigError("grid end is below its start");
    std::vector<double> grid;
    for (long k = 0;; ++k) {
      const double v = start + static_cast<double>(k) * step;
      if (v > end + step / 2.0) break;
      grid.push_back(round12(v));
    }
    return grid;
  }
  std::vector<double> grid;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) grid.push_back(parse_number(item));
  if (grid.empty()) throw ConfigError("empty grid");
  return grid;
}

std::pair<int, int> parse_dims(const std::string& text) {
  const auto x = text.find_first_of("xX");
  if (x == std::string::npos) throw ConfigError("dims must look like 2x3, got '" + text + "'");
  const double a = parse_number(text.substr(0, x));
  const double b = parse_number(text.substr(x + 1));
  if (a != std::floor(a) || b != std::floor(b) || a < 2 || b < 2)
    throw ConfigError("dims must be integers >= 2, got '" + text + "'");
  return {static_cast<int>(a), static_cast<int>(b)};
}

}  // namespace entgeo::cli
