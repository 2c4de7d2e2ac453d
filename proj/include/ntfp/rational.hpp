#pragma once

#include <boost/rational.hpp>
#include <cstdint>
#include <string>

#include "ntfp/errors.hpp"

namespace ntfp {

// Exact rational scalar used for all finite-space distances, so that
// membership and equality checks do not depend on float rounding.
using Rational = boost::rational<long long>;

// Parses "p/q", an integer, or a plain decimal with optional exponent
// ("0.25", "-3", "1e-3"). Throws ParseError on anything else or on overflow.
Rational rational_from_string(const std::string& text);

double to_double(const Rational& r);

// "p/q", or just "p" when the denominator is 1.
std::string to_string(const Rational& r);

}  // namespace ntfp
