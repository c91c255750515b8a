#include "lenscli/output.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>

namespace lenscli {

double round15(double x) {
  if (!std::isfinite(x) || x == 0.0) return x == 0.0 ? 0.0 : x;
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x);
  return std::strtod(buf, nullptr);
}

json complex_json(std::complex<double> z) { return json::array({round15(z.real()), round15(z.imag())}); }

std::string csv_number(double x) {
  if (std::isnan(x)) return "nan";
  if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.15g", x == 0.0 ? 0.0 : x);
  return buf;
}

std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace lenscli
