#include "ntfp/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>

namespace ntfp {

namespace {

long long checked_pow10(int e) {
  // 10^18 is the largest power of ten below 2^63.
  if (e < 0 || e > 18) throw ParseError("exponent out of range for exact rational: 10^" + std::to_string(e));
  long long v = 1;
  for (int i = 0; i < e; ++i) v *= 10;
  return v;
}

long long parse_ll(const std::string& s) {
  if (s.empty()) throw ParseError("empty integer in rational literal");
  errno = 0;
  char* end = nullptr;
  long long v = std::strtoll(s.c_str(), &end, 10);
  if (errno == ERANGE || end != s.c_str() + s.size())
    throw ParseError("bad integer in rational literal: '" + s + "'");
  return v;
}

}  // namespace

Rational rational_from_string(const std::string& text) {
  std::string s;
  for (char c : text)
    if (!std::isspace(static_cast<unsigned char>(c))) s += c;
  if (s.empty()) throw ParseError("empty rational literal");

  if (auto slash = s.find('/'); slash != std::string::npos) {
    long long num = parse_ll(s.substr(0, slash));
    long long den = parse_ll(s.substr(slash + 1));
    if (den == 0) throw ParseError("zero denominator in '" + text + "'");
    return Rational(num, den);
  }

  // [sign] digits [. digits] [e [sign] digits]
  bool neg = false;
  size_t pos = 0;
  if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) neg = s[pos++] == '-';

  std::string ipart, fpart, epart;
  while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) ipart += s[pos++];
  if (pos < s.size() && s[pos] == '.') {
    ++pos;
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) fpart += s[pos++];
  }
  int exp10 = 0;
  if (pos < s.size() && (s[pos] == 'e' || s[pos] == 'E')) {
    ++pos;
    bool eneg = false;
    if (pos < s.size() && (s[pos] == '+' || s[pos] == '-')) eneg = s[pos++] == '-';
    epart.clear();
    while (pos < s.size() && std::isdigit(static_cast<unsigned char>(s[pos]))) epart += s[pos++];
    if (epart.empty()) throw ParseError("bad exponent in '" + text + "'");
    exp10 = static_cast<int>(parse_ll(epart));
    if (eneg) exp10 = -exp10;
  }
  if (pos != s.size() || (ipart.empty() && fpart.empty()))
    throw ParseError("bad rational literal: '" + text + "'");

  long long mantissa = parse_ll(ipart.empty() ? "0" : ipart);
  for (char c : fpart) {
    if (mantissa > (std::numeric_limits<long long>::max() - 9) / 10)
      throw ParseError("rational literal too precise: '" + text + "'");
    mantissa = mantissa * 10 + (c - '0');
  }
  int shift = exp10 - static_cast<int>(fpart.size());
  Rational r = shift >= 0 ? Rational(mantissa * checked_pow10(shift), 1)
                          : Rational(mantissa, checked_pow10(-shift));
  return neg ? -r : r;
}

double to_double(const Rational& r) {
  return static_cast<double>(r.numerator()) / static_cast<double>(r.denominator());
}

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

}  // namespace ntfp
