#include "lyacert/diophantine.hpp"

#include <cmath>
#include <limits>
#include <numbers>

#include "lyacert/errors.hpp"

namespace lyacert {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

DiophantineHit simultaneous_approx(double r1, double r2, std::int64_t big_m) {
  if (big_m < 4) throw ContractViolation("simultaneous_approx: big_m must be >= 4");
  if (!(r1 > 0.0) || !(r2 > 0.0))
    throw ContractViolation("simultaneous_approx: r1, r2 must be > 0");
  // every candidate x = round(m*r/2pi) must stay an exact integer in double
  const double x_cap = 9007199254740992.0;  // 2^53
  if (static_cast<double>(big_m) * std::max(r1, r2) / kTwoPi > x_cap)
    throw ContractViolation(
        "simultaneous_approx: frequencies too large for the search window");

  const double bound = kTwoPi / std::sqrt(static_cast<double>(big_m));
  const double inv_two_pi = 1.0 / kTwoPi;

  for (std::int64_t m = 1; m <= big_m; ++m) {
    const double md = static_cast<double>(m);
    const double t1 = md * r1;
    const double x1 = std::round(t1 * inv_two_pi);
    const double e1 = t1 - kTwoPi * x1;
    if (!(std::abs(e1) < bound)) continue;
    const double t2 = md * r2;
    const double x2 = std::round(t2 * inv_two_pi);
    const double e2 = t2 - kTwoPi * x2;
    if (!(std::abs(e2) < bound)) continue;

    DiophantineHit hit;
    hit.m = m;
    hit.x1 = static_cast<std::int64_t>(x1);
    hit.x2 = static_cast<std::int64_t>(x2);
    hit.err1 = e1;
    hit.err2 = e2;
    hit.bound = bound;
    return hit;
  }
  throw NoHitFound(r1, r2, big_m);
}

PowerNeighborhood power_in_neighborhood(const TransferMatrix& a,
                                        std::int64_t big_m, double delta,
                                        int retries) {
  if (!(delta > 0.0))
    throw ContractViolation("power_in_neighborhood: delta must be > 0");
  if (retries < 0)
    throw ContractViolation("power_in_neighborhood: retries must be >= 0");

  std::int64_t window = big_m;
  double last_dist = std::numeric_limits<double>::infinity();
  std::int64_t last_window = big_m;

  for (int attempt = 0; attempt <= retries; ++attempt) {
    last_window = window;
    try {
      const DiophantineHit hit = simultaneous_approx(a.r1, a.r2, window);
      const Mat4 power = matrix_power(a.a, hit.m);
      const double dist = op_norm(power - Mat4::identity());
      last_dist = dist;
      if (dist < delta) return {hit, power, dist, window};
    } catch (const NoHitFound&) {
      // enlarge the window and try again
    }
    window *= 4;
  }
  throw NeighborhoodMiss(last_dist, delta, last_window);
}

}  // namespace lyacert
