#pragma once

#include <vector>

namespace pshmass {

/// Gauss-Legendre rule mapped to [0, 1]; weights sum to one.
struct GaussLegendreRule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// n-point rule, nodes ascending and mirror-symmetric about 1/2. Rules are
/// cached per n, so repeated calls are cheap.
const GaussLegendreRule& gauss_legendre(int n);

}  // namespace pshmass
