#include "expdec/common.hpp"

#include <cmath>
#include <cstdlib>

namespace expdec {

namespace {

// Best rational approximation of x with denominator <= max_den, by walking
// the continued fraction expansion and testing the final semiconvergent.
Rat best_rational(double x, int64_t max_den) {
  int64_t p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = x;
  for (int it = 0; it < 64; ++it) {
    int64_t a = static_cast<int64_t>(std::floor(frac));
    int64_t p2 = a * p1 + p0, q2 = a * q1 + q0;
    if (q2 > max_den) {
      int64_t k = (max_den - q0) / q1;
      int64_t ps = k * p1 + p0, qs = k * q1 + q0;
      // Choose the closer of the last convergent and the semiconvergent.
      double d1 = std::fabs(x - static_cast<double>(p1) / q1);
      double ds = std::fabs(x - static_cast<double>(ps) / qs);
      return ds < d1 ? Rat(ps, qs) : Rat(p1, q1);
    }
    p0 = p1;
    q0 = q1;
    p1 = p2;
    q1 = q2;
    double rem = frac - static_cast<double>(a);
    if (rem < 1e-15) break;
    frac = 1.0 / rem;
  }
  return Rat(p1, q1);
}

}  // namespace

Phi parse_phi(const std::string& text) {
  EXPDEC_REQUIRE(!text.empty(), "empty phi");
  auto slash = text.find('/');
  if (slash != std::string::npos) {
    char* end = nullptr;
    int64_t p = std::strtoll(text.c_str(), &end, 10);
    EXPDEC_REQUIRE(end == text.c_str() + slash, "bad phi numerator: " + text);
    int64_t q = std::strtoll(text.c_str() + slash + 1, &end, 10);
    EXPDEC_REQUIRE(*end == '\0', "bad phi denominator: " + text);
    return Phi(p, q);
  }
  char* end = nullptr;
  double x = std::strtod(text.c_str(), &end);
  EXPDEC_REQUIRE(end && *end == '\0', "bad phi value: " + text);
  EXPDEC_REQUIRE(x > 0.0 && x < 1.0, "phi must be in (0,1): " + text);
  Rat r = best_rational(x, 1000000);
  EXPDEC_REQUIRE(r.num > 0 && r.num < r.den, "phi must be in (0,1): " + text);
  return Phi(r.num, r.den);
}

}  // namespace expdec
