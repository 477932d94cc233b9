#pragma once

#include <stdexcept>
#include <string>

namespace squidgate {

namespace constants {
// 2019 SI exact values.
inline constexpr double h = 6.62607015e-34;          // Planck constant, J s
inline constexpr double hbar = 1.054571817e-34;      // J s
inline constexpr double e_charge = 1.602176634e-19;  // C
inline constexpr double phi0 = h / (2.0 * e_charge); // flux quantum h/2e, Wb
}  // namespace constants

/// Raised for malformed configuration input (bad units, unknown keys,
/// missing fields). The CLI maps it to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

enum class Dimension {
  Capacitance,          // F
  Inductance,           // H
  InductancePerLength,  // H/m
  Frequency,            // Hz (cyclic)
  AngularRate,          // rad/s
  Time,                 // s
  Length,               // m
  Flux,                 // Wb
  Resistance,           // ohm
};

const char* dimension_name(Dimension dim);
const char* dimension_unit(Dimension dim);

/// Parses a unit-suffixed quantity such as "240pH", "11.4GHz", "0.65pH/um"
/// or "7.5e9rad/s" into its SI value. The suffix is mandatory and must
/// match the expected dimension; SI prefixes a,f,p,n,u,m,k,M,G,T are
/// understood. Throws ConfigError otherwise.
double parse_quantity(const std::string& text, Dimension expected);

}  // namespace squidgate
