#include "lenscli/model_spec.hpp"

#include <charconv>
#include <cmath>
#include <string_view>

#include "rmtlens/errors.hpp"
#include "rmtlens/gaussian_lens.hpp"
#include "rmtlens/quartic_lens.hpp"

namespace lenscli {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t')) s.remove_suffix(1);
  return s;
}

double parse_real(std::string_view s) {
  s = trim(s);
  double v = 0.0;
  const auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc{} || ptr != s.data() + s.size() || !std::isfinite(v)) {
    throw ConfigError("not a finite number: '" + std::string(s) + "'");
  }
  return v;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
  std::vector<std::string_view> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(s.substr(start, i - start));
      start = i + 1;
    }
  }
  return out;
}

double require(const std::optional<double>& v, const char* name) {
  if (!v) throw ConfigError(std::string("missing --") + name);
  return *v;
}

}  // namespace

double ModelSpec::mass() const {
  if (kind == ModelKind::gaussian && !m && p) return 0.5 * *p * require(a, "a") * *a;
  return require(m, "m");
}

ModelKind parse_model_kind(const std::string& name) {
  if (name == "gaussian") return ModelKind::gaussian;
  if (name == "quartic") return ModelKind::quartic;
  if (name == "generic") return ModelKind::generic;
  throw ConfigError("unknown model '" + name + "' (expected gaussian, quartic or generic)");
}

rmtlens::LensModel build_model(const ModelSpec& spec) {
  try {
    switch (spec.kind) {
      case ModelKind::gaussian:
        if (spec.m && spec.p) throw ConfigError("give either --m or --p for the gaussian model, not both");
        return rmtlens::gaussian_model(require(spec.a, "a"), spec.mass());
      case ModelKind::quartic:
        return rmtlens::quartic_model(require(spec.t, "t"), spec.mass());
      case ModelKind::generic: {
        if (spec.potential.empty() || spec.spectral.empty() || spec.cuts.empty()) {
          throw ConfigError("generic model needs --potential, --spectral and --cuts");
        }
        return rmtlens::LensModel(rmtlens::Potential(spec.potential),
                                  rmtlens::SpectralPolynomial::from_coefficients(spec.spectral),
                                  rmtlens::SupportCuts(spec.cuts), spec.mass());
      }
    }
  } catch (const rmtlens::DomainError& e) {
    throw ConfigError(e.what());
  } catch (const rmtlens::NumericError& e) {
    throw ConfigError(e.what());
  }
  throw ConfigError("unhandled model kind");
}

std::complex<double> parse_complex(const std::string& text) {
  const auto parts = split(text, ',');
  if (parts.size() == 1) return {parse_real(parts[0]), 0.0};
  if (parts.size() == 2) return {parse_real(parts[0]), parse_real(parts[1])};
  throw ConfigError("expected re,im but got '" + text + "'");
}

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  for (std::string_view s : split(text, ',')) out.push_back(parse_real(s));
  return out;
}

std::vector<rmtlens::Interval> parse_cuts(const std::string& text) {
  std::vector<rmtlens::Interval> out;
  for (std::string_view s : split(text, ',')) {
    const auto ends = split(s, ':');
    if (ends.size() != 2) throw ConfigError("expected lo:hi but got '" + std::string(s) + "'");
    out.push_back({parse_real(ends[0]), parse_real(ends[1])});
  }
  return out;
}

std::vector<double> GridAxis::points() const {
  std::vector<double> out;
  const auto n = static_cast<long>(std::floor((hi - lo) / step + 0.5));
  for (long k = 0; k <= n; ++k) out.push_back(lo + static_cast<double>(k) * step);
  return out;
}

GridAxis parse_grid(const std::string& text) {
  const auto parts = split(text, ':');
  if (parts.size() != 3) throw ConfigError("expected lo:hi:step but got '" + text + "'");
  GridAxis g{parse_real(parts[0]), parse_real(parts[1]), parse_real(parts[2])};
  if (!(g.step > 0.0) || g.hi < g.lo) throw ConfigError("grid needs lo <= hi and step > 0");
  if ((g.hi - g.lo) / g.step > 1e6) throw ConfigError("grid has more than a million points per axis");
  return g;
}

}  // namespace lenscli
