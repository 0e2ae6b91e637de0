#include "raqr/atoms/angular.hpp"

#include <cmath>
#include <stdexcept>

namespace raqr::atoms {

double cg_spin_half(int l, double j, double mj, double ms) {
  if (l < 0) throw std::invalid_argument("cg_spin_half: l < 0");
  double ml = mj - ms;
  if (std::abs(ml) > l + 1e-9) return 0.0;
  double tl = 2.0 * l + 1.0;
  bool up = std::abs(j - (l + 0.5)) < 1e-9;
  bool down = std::abs(j - (l - 0.5)) < 1e-9;
  if (!up && !down) return 0.0;
  if (ms > 0) // ms = +1/2
    return up ? std::sqrt((l + mj + 0.5) / tl) : -std::sqrt((l - mj + 0.5) / tl);
  return up ? std::sqrt((l - mj + 0.5) / tl) : std::sqrt((l + mj + 0.5) / tl);
}

double cos_theta_element(int l1, int l2, double ml) {
  if (std::abs(l1 - l2) != 1) return 0.0;
  int l = std::max(l1, l2); // <l, ml|cos|l-1, ml>
  double num = static_cast<double>(l) * l - ml * ml;
  if (num <= 0.0) return 0.0;
  return std::sqrt(num / ((2.0 * l + 1.0) * (2.0 * l - 1.0)));
}

double stark_angular_factor(int l1, double j1, int l2, double j2, double mj) {
  if (std::abs(l1 - l2) != 1) return 0.0;
  double sum = 0.0;
  for (double ms : {-0.5, 0.5}) {
    double ml = mj - ms;
    if (std::abs(ml) > std::min(l1, l2) + 1e-9) continue;
    sum += cg_spin_half(l1, j1, mj, ms) * cg_spin_half(l2, j2, mj, ms) *
           cos_theta_element(l1, l2, ml);
  }
  return sum;
}

} // namespace raqr::atoms
