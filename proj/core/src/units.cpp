#include "squidgate/units.hpp"

#include <cstdlib>
#include <map>
#include <vector>

namespace squidgate {

namespace {

const std::map<char, double>& prefixes() {
  static const std::map<char, double> table = {
      {'a', 1e-18}, {'f', 1e-15}, {'p', 1e-12}, {'n', 1e-9}, {'u', 1e-6},
      {'m', 1e-3},  {'k', 1e3},   {'M', 1e6},   {'G', 1e9},  {'T', 1e12},
  };
  return table;
}

// Accepted base symbols per dimension (first entry is canonical).
const std::vector<std::string>& base_symbols(Dimension dim) {
  static const std::vector<std::string> farad = {"F"};
  static const std::vector<std::string> henry = {"H"};
  static const std::vector<std::string> hertz = {"Hz"};
  static const std::vector<std::string> rad_s = {"rad/s"};
  static const std::vector<std::string> second = {"s"};
  static const std::vector<std::string> metre = {"m"};
  static const std::vector<std::string> weber = {"Wb"};
  static const std::vector<std::string> ohm = {"ohm", "Ohm"};
  switch (dim) {
    case Dimension::Capacitance: return farad;
    case Dimension::Inductance: return henry;
    case Dimension::Frequency: return hertz;
    case Dimension::AngularRate: return rad_s;
    case Dimension::Time: return second;
    case Dimension::Length: return metre;
    case Dimension::Flux: return weber;
    case Dimension::Resistance: return ohm;
    default: throw std::logic_error("base_symbols: composite dimension");
  }
}

// Matches suffix == [prefix]base for one of the dimension's base symbols.
// Returns the scale factor, or 0 when nothing matches (0 is never a valid
// scale, so it doubles as the failure sentinel).
double match_suffix(const std::string& suffix, Dimension dim) {
  for (const std::string& base : base_symbols(dim)) {
    if (suffix == base) return 1.0;
    if (suffix.size() == base.size() + 1 &&
        suffix.compare(1, std::string::npos, base) == 0) {
      auto it = prefixes().find(suffix[0]);
      if (it != prefixes().end()) return it->second;
    }
  }
  return 0.0;
}

std::string trim(const std::string& s) {
  size_t b = s.find_first_not_of(" \t");
  size_t e = s.find_last_not_of(" \t");
  if (b == std::string::npos) return "";
  return s.substr(b, e - b + 1);
}

}  // namespace

const char* dimension_name(Dimension dim) {
  switch (dim) {
    case Dimension::Capacitance: return "capacitance";
    case Dimension::Inductance: return "inductance";
    case Dimension::InductancePerLength: return "inductance per length";
    case Dimension::Frequency: return "frequency";
    case Dimension::AngularRate: return "angular rate";
    case Dimension::Time: return "time";
    case Dimension::Length: return "length";
    case Dimension::Flux: return "flux";
    case Dimension::Resistance: return "resistance";
  }
  return "?";
}

const char* dimension_unit(Dimension dim) {
  switch (dim) {
    case Dimension::Capacitance: return "F";
    case Dimension::Inductance: return "H";
    case Dimension::InductancePerLength: return "H/m";
    case Dimension::Frequency: return "Hz";
    case Dimension::AngularRate: return "rad/s";
    case Dimension::Time: return "s";
    case Dimension::Length: return "m";
    case Dimension::Flux: return "Wb";
    case Dimension::Resistance: return "ohm";
  }
  return "?";
}

double parse_quantity(const std::string& text, Dimension expected) {
  const char* begin = text.c_str();
  char* end = nullptr;
  double value = std::strtod(begin, &end);
  if (end == begin) {
    throw ConfigError("quantity '" + text + "' has no numeric value");
  }
  std::string suffix = trim(text.substr(end - begin));
  if (suffix.empty()) {
    throw ConfigError("quantity '" + text + "' is missing a unit suffix (expected " +
                      std::string(dimension_name(expected)) + " in " +
                      dimension_unit(expected) + ")");
  }

  double scale = 0.0;
  if (expected == Dimension::InductancePerLength) {
    // Composite form <inductance>/<length>, e.g. "0.65pH/um".
    size_t slash = suffix.find('/');
    if (slash != std::string::npos) {
      double num = match_suffix(suffix.substr(0, slash), Dimension::Inductance);
      double den = match_suffix(suffix.substr(slash + 1), Dimension::Length);
      if (num != 0.0 && den != 0.0) scale = num / den;
    }
  } else {
    scale = match_suffix(suffix, expected);
  }

  if (scale == 0.0) {
    throw ConfigError("quantity '" + text + "': unit '" + suffix +
                      "' does not express " + dimension_name(expected) + " (" +
                      dimension_unit(expected) + ")");
  }
  return value * scale;
}

}  // namespace squidgate
