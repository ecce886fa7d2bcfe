#pragma once

#include <string>
#include <string_view>

#include "fglkit/ring/graded_poly.hpp"

namespace fglkit::ring {

// Canonical text form: terms in canonical monomial order joined by " + " /
// " - ", factors in table order joined by '*', exponents written as '^k',
// unit coefficients omitted, e.g. "2*b1^2 - 3*b2". The zero polynomial is "0".
std::string to_string(const GradedPoly& p);

// Parses sums of products of integers and generator powers over `table`.
// Factors may appear in any order (odd generators pick up Koszul signs) and
// whitespace is ignored, so every output of to_string parses back to the
// same polynomial. Throws ParseError.
GradedPoly parse_poly(const TablePtr& table, std::string_view text);

} // namespace fglkit::ring
