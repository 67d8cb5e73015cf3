#include "klein/arrangement.hpp"

#include <sstream>

namespace klein {

int jacobian_degree(const TVector& t) {
  int s = 0;
  for (const auto& [r, n] : t) s += (r - 1) * (r - 1) * n;
  return s;
}

int pair_count(const TVector& t) {
  int s = 0;
  for (const auto& [r, n] : t) s += r * (r - 1) / 2 * n;
  return s;
}

PluckerCounts plucker_counts(int d) {
  if (d < 3) throw std::invalid_argument("plucker_counts: degree must be at least 3");
  return {d * (d - 1), d * (d - 2) * (d * d - 9) / 2, 3 * d * (d - 2)};
}

std::string format_tvector(const TVector& t) {
  std::ostringstream os;
  bool first = true;
  for (auto it = t.rbegin(); it != t.rend(); ++it) {
    if (!first) os << ", ";
    first = false;
    os << "t" << it->first << "=" << it->second;
  }
  return os.str();
}

}  // namespace klein
