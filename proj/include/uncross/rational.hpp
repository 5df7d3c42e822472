#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <string>

#include "uncross/errors.hpp"

namespace uncross {

using Int = boost::multiprecision::cpp_int;
using Rat = boost::multiprecision::cpp_rational;

inline Rat pow2(int k) {
  if (k >= 0) return Rat(Int(1) << k);
  return Rat(Int(1), Int(1) << (-k));
}

// Accepts "p" or "p/q" with optional leading '-'; exact, no decimals.
inline Rat parse_rat(const std::string& text) {
  auto is_int = [](const std::string& s) {
    if (s.empty()) return false;
    std::size_t i = (s[0] == '-') ? 1 : 0;
    if (i == s.size()) return false;
    for (; i < s.size(); ++i)
      if (s[i] < '0' || s[i] > '9') return false;
    return true;
  };
  const auto slash = text.find('/');
  try {
    if (slash == std::string::npos) {
      if (!is_int(text)) throw ParseError("not a rational: \"" + text + "\"");
      return Rat(Int(text));
    }
    const std::string p = text.substr(0, slash);
    const std::string q = text.substr(slash + 1);
    if (!is_int(p) || !is_int(q)) throw ParseError("not a rational: \"" + text + "\"");
    Int den(q);
    if (den == 0) throw ParseError("zero denominator in \"" + text + "\"");
    return Rat(Int(p), den);
  } catch (const std::runtime_error& e) {
    throw ParseError(std::string("bad rational \"") + text + "\": " + e.what());
  }
}

inline std::string rat_string(const Rat& r) {
  const Int num = boost::multiprecision::numerator(r);
  const Int den = boost::multiprecision::denominator(r);
  if (den == 1) return num.str();
  return num.str() + "/" + den.str();
}

}  // namespace uncross
