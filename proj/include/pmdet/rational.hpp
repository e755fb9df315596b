#ifndef PMDET_RATIONAL_HPP
#define PMDET_RATIONAL_HPP

#include <boost/multiprecision/cpp_int.hpp>

#include <string>
#include <vector>

namespace pmdet {

// Exact rational scalar used for all combinatorial geometry.
using Q = boost::multiprecision::cpp_rational;
using QVec = std::vector<Q>;

// Parses "num", "num/den" (optional leading '-' on either part).
// Throws ParseError on malformed text or zero denominator.
Q parse_rational(const std::string& text);

// Canonical text form: "num" when the denominator is 1, else "num/den".
std::string to_string(const Q& q);

double to_double(const Q& q);

int sign(const Q& q);  // -1, 0, +1

Q qfloor(const Q& q);
Q qabs(const Q& q);

}  // namespace pmdet

#endif
