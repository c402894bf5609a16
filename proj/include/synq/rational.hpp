#pragma once

#include <gmpxx.h>

#include <optional>
#include <string>
#include <string_view>

namespace synq {

/// Exact rational coefficient type. All algebraic computation in the
/// library is closed over these; floating point appears only inside the
/// numerical SDP solver.
using Rat = mpq_class;

inline Rat rat(long num, long den = 1) {
  Rat r(num, den);
  r.canonicalize();
  return r;
}

std::string to_string(const Rat& r);

/// Parses "p", "-p" or "p/q". Returns nullopt on malformed input.
std::optional<Rat> parse_rat(std::string_view text);

/// Best rational approximation of x with denominator <= max_den,
/// by the continued-fraction convergent/semiconvergent construction.
Rat rat_from_double(double x, unsigned long max_den);

double to_double(const Rat& r);

}  // namespace synq
