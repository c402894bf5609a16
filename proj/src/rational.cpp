#include "synq/rational.hpp"

#include <cmath>
#include <stdexcept>

namespace synq {

std::string to_string(const Rat& r) { return r.get_str(); }

std::optional<Rat> parse_rat(std::string_view text) {
  if (text.empty()) return std::nullopt;
  std::string s(text);
  // mpq_class(str) aborts on garbage, so validate by hand.
  std::size_t i = 0;
  if (s[i] == '-' || s[i] == '+') ++i;
  bool digits = false, slash = false;
  for (; i < s.size(); ++i) {
    if (std::isdigit(static_cast<unsigned char>(s[i]))) {
      digits = true;
    } else if (s[i] == '/' && !slash && digits) {
      slash = true;
      digits = false;
    } else {
      return std::nullopt;
    }
  }
  if (!digits) return std::nullopt;
  Rat r(s);
  if (slash && r.get_den() == 0) return std::nullopt;
  r.canonicalize();
  return r;
}

Rat rat_from_double(double x, unsigned long max_den) {
  if (!std::isfinite(x)) throw std::invalid_argument("rat_from_double: non-finite value");
  if (max_den == 0) max_den = 1;
  bool neg = x < 0;
  double v = std::fabs(x);

  // Continued-fraction convergents p/q; stop before q exceeds max_den and
  // finish with the best semiconvergent.
  mpz_class p0 = 0, q0 = 1, p1 = 1, q1 = 0;
  double frac = v;
  for (int iter = 0; iter < 64; ++iter) {
    double fa = std::floor(frac);
    if (fa > 1e18) break;
    mpz_class a(static_cast<unsigned long>(fa));
    mpz_class p2 = a * p1 + p0;
    mpz_class q2 = a * q1 + q0;
    if (q2 > mpz_class(max_den)) {
      // Largest k with q0 + k*q1 <= max_den gives the best semiconvergent.
      if (q1 > 0) {
        mpz_class k = (mpz_class(max_den) - q0) / q1;
        if (k > 0) {
          p0 = k * p1 + p0;
          q0 = k * q1 + q0;
        }
      }
      break;
    }
    p0 = p1; q0 = q1; p1 = p2; q1 = q2;
    double rem = frac - fa;
    if (rem < 1e-18) break;
    frac = 1.0 / rem;
  }
  mpz_class p = p1, q = q1;
  if (q == 0 || q > mpz_class(max_den)) { p = p0; q = q0; }
  if (q == 0) { p = 0; q = 1; }
  // Between the last convergent and the semiconvergent, keep the closer.
  if (p0 != p && q0 > 0 && q0 <= mpz_class(max_den)) {
    Rat cand(p, q), alt(p0, q0);
    cand.canonicalize();
    alt.canonicalize();
    if (std::fabs(alt.get_d() - v) < std::fabs(cand.get_d() - v)) { p = p0; q = q0; }
  }
  Rat r(neg ? -p : p, q);
  r.canonicalize();
  return r;
}

double to_double(const Rat& r) { return r.get_d(); }

}  // namespace synq
