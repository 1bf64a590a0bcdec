#include "nodsbm/saturation.hpp"

#include <algorithm>
#include <cctype>
#include <stdexcept>

namespace nodsbm {

std::string_view to_string(Saturation kind) {
  switch (kind) {
    case Saturation::TanH: return "tanh";
    case Saturation::Algebraic1: return "algebraic1";
    case Saturation::Algebraic2: return "algebraic2";
    case Saturation::ErfScaled: return "erf";
  }
  return "unknown";
}

Saturation parse_saturation(std::string_view name) {
  std::string lower(name);
  std::transform(lower.begin(), lower.end(), lower.begin(),
                 [](unsigned char c) { return static_cast<char>(std::tolower(c)); });
  for (auto kind : {Saturation::TanH, Saturation::Algebraic1, Saturation::Algebraic2,
                    Saturation::ErfScaled})
    if (lower == to_string(kind)) return kind;
  if (lower == "erfscaled") return Saturation::ErfScaled;
  throw std::invalid_argument("unknown saturation: " + std::string(name));
}

}  // namespace nodsbm
