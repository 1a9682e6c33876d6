#include "franklforge/rational.hpp"

#include <cctype>

#include "franklforge/errors.hpp"

namespace frankl {

std::string to_string(const Rational& r) {
  if (denominator(r) == 1) {
    return numerator(r).str();
  }
  return numerator(r).str() + "/" + denominator(r).str();
}

Rational parse_rational(std::string_view text) {
  auto bad = [&] { throw ParseError("not a rational: '" + std::string(text) + "'"); };
  if (text.empty()) bad();
  std::string s(text);
  auto slash = s.find('/');
  try {
    if (slash == std::string::npos) {
      return Rational(BigInt(s));
    }
    std::string num = s.substr(0, slash);
    std::string den = s.substr(slash + 1);
    if (num.empty() || den.empty()) bad();
    BigInt q(den);
    if (q == 0) throw ParseError("zero denominator: '" + std::string(text) + "'");
    return Rational(BigInt(num), q);
  } catch (const ParseError&) {
    throw;
  } catch (const std::exception&) {
    bad();
  }
  return Rational();  // unreachable
}

}  // namespace frankl
