#include "sixbar/number_synthesis.hpp"

#include <string>

#include "sixbar/error.hpp"

namespace sixbar::number_synthesis {

std::vector<LinkComposition> enumerate_compositions(const DofSpec& spec) {
  SIXBAR_REQUIRE(spec.link_count > 0, ErrorCode::InvalidInput,
                 "link count must be positive, got " + std::to_string(spec.link_count));
  SIXBAR_REQUIRE(spec.dof > 0, ErrorCode::InvalidInput,
                 "dof must be positive, got " + std::to_string(spec.dof));

  std::vector<LinkComposition> out;
  const int rhs = spec.link_count - 3 - spec.dof;
  if (rhs < 0) return out;

  // T + 2Q + 3P + 4H = rhs bounds each count by rhs / weight.
  for (int t = 0; t <= rhs; ++t) {
    for (int q = 0; t + 2 * q <= rhs; ++q) {
      for (int p = 0; t + 2 * q + 3 * p <= rhs; ++p) {
        const int rest = rhs - t - 2 * q - 3 * p;
        if (rest % 4 != 0) continue;
        const int h = rest / 4;
        const int b = spec.link_count - t - q - p - h;
        if (b < 0) continue;
        out.push_back({b, t, q, p, h});
      }
    }
  }
  return out;
}

int gruebler_dof(int links, int joints) {
  SIXBAR_REQUIRE(links >= 2, ErrorCode::InvalidInput, "need at least two links");
  SIXBAR_REQUIRE(joints >= 1, ErrorCode::InvalidInput, "need at least one joint");
  return 3 * (links - 1) - 2 * joints;
}

}  // namespace sixbar::number_synthesis
