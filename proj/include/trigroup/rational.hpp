#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <optional>
#include <string>

namespace trigroup {

using Rat = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

/// Formats a rational as "p" or "p/q" (canonical, q > 0).
std::string rat_to_string(const Rat& r);

/// Parses "p" or "p/q" with optional sign. Returns nullopt on malformed
/// input or zero denominator.
std::optional<Rat> rat_from_string(const std::string& s);

inline int sign_of(const Rat& r) {
  if (r == 0) return 0;
  return r > 0 ? 1 : -1;
}

} // namespace trigroup
