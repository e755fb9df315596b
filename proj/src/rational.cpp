#include "pmdet/rational.hpp"

#include <cctype>

#include "pmdet/errors.hpp"

namespace pmdet {

namespace {

bool is_integer_text(const std::string& s) {
  if (s.empty()) return false;
  std::size_t i = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  if (i == s.size()) return false;
  for (; i < s.size(); ++i)
    if (!std::isdigit(static_cast<unsigned char>(s[i]))) return false;
  return true;
}

}  // namespace

Q parse_rational(const std::string& text) {
  const auto slash = text.find('/');
  std::string num = text.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : text.substr(slash + 1);
  if (!is_integer_text(num) || !is_integer_text(den))
    throw ParseError("not a rational: \"" + text + "\"");
  boost::multiprecision::cpp_int n(num), d(den);
  if (d == 0) throw ParseError("zero denominator in \"" + text + "\"");
  if (d < 0) { n = -n; d = -d; }
  return Q(n, d);
}

std::string to_string(const Q& q) {
  const auto& den = boost::multiprecision::denominator(q);
  std::string s = boost::multiprecision::numerator(q).str();
  if (den != 1) s += "/" + den.str();
  return s;
}

double to_double(const Q& q) { return q.convert_to<double>(); }

int sign(const Q& q) { return q.sign(); }

Q qfloor(const Q& q) {
  boost::multiprecision::cpp_int n = boost::multiprecision::numerator(q);
  const auto& d = boost::multiprecision::denominator(q);
  boost::multiprecision::cpp_int quo = n / d;
  if (quo * d != n && n < 0) --quo;
  return Q(quo);
}

Q qabs(const Q& q) { return q < 0 ? Q(-q) : q; }

}  // namespace pmdet
