#pragma once

#include <compare>
#include <vector>

namespace sixbar::number_synthesis {

struct DofSpec {
  int link_count = 0;  // L
  int dof = 0;         // M
};

/// Counts of links by number of joint connections.
struct LinkComposition {
  int binary = 0;
  int ternary = 0;
  int quaternary = 0;
  int pentagonal = 0;
  int hexagonal = 0;

  int total() const noexcept { return binary + ternary + quaternary + pentagonal + hexagonal; }
  int higher_order_weight() const noexcept {
    return ternary + 2 * quaternary + 3 * pentagonal + 4 * hexagonal;
  }

  auto operator<=>(const LinkComposition&) const = default;
};

/// Every non-negative (B,T,Q,P,H) with T+2Q+3P+4H = L-3-M and B+T+Q+P+H = L,
/// ordered lexicographically by (T,Q,P,H). An infeasible spec (L-3-M < 0) yields an
/// empty list. Throws Error{InvalidInput} for non-positive L or M.
std::vector<LinkComposition> enumerate_compositions(const DofSpec& spec);

/// Planar mobility 3(links-1) - 2*joints for revolute-jointed chains.
int gruebler_dof(int links, int joints);

}  // namespace sixbar::number_synthesis
