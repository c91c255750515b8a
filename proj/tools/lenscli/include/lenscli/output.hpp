#pragma once

#include <complex>
#include <string>

#include <nlohmann/json.hpp>

namespace lenscli {

using json = nlohmann::ordered_json;

/// Rounds to 15 significant digits so that the serialized text is stable.
double round15(double x);

/// [re, im] with both parts rounded.
json complex_json(std::complex<double> z);

/// %.15g; "nan" and "inf" spelled out.
std::string csv_number(double x);

/// Two-space indented JSON followed by a newline.
std::string dump(const json& j);

}  // namespace lenscli
