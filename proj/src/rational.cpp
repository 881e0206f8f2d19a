#include "dist235/rational.hpp"

#include <cctype>

#include "dist235/errors.hpp"

namespace dist235 {

std::string to_pq_string(const Rational& value) {
  return value.get_num().get_str() + "/" + value.get_den().get_str();
}

namespace {

Integer parse_integer(std::string_view text, std::size_t offset) {
  if (text.empty()) throw ParseError("expected digits", offset);
  for (std::size_t i = 0; i < text.size(); ++i) {
    if (!std::isdigit(static_cast<unsigned char>(text[i]))) {
      throw ParseError("unexpected character '" + std::string(1, text[i]) + "' in number",
                       offset + i);
    }
  }
  return Integer(std::string(text));
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::size_t pos = 0;
  bool negative = false;
  if (pos < text.size() && (text[pos] == '-' || text[pos] == '+')) {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string_view rest = text.substr(pos);
  Rational result;
  if (auto slash = rest.find('/'); slash != std::string_view::npos) {
    Integer num = parse_integer(rest.substr(0, slash), pos);
    Integer den = parse_integer(rest.substr(slash + 1), pos + slash + 1);
    if (den == 0) throw ZeroDivisionError("zero denominator in rational literal");
    result = Rational(num, den);
    result.canonicalize();
  } else if (auto dot = rest.find('.'); dot != std::string_view::npos) {
    Integer whole = dot == 0 ? Integer(0) : parse_integer(rest.substr(0, dot), pos);
    std::string_view frac = rest.substr(dot + 1);
    Integer frac_num = frac.empty() ? Integer(0) : parse_integer(frac, pos + dot + 1);
    Integer scale;
    mpz_ui_pow_ui(scale.get_mpz_t(), 10, frac.size());
    result = Rational(whole * scale + frac_num, scale);
    result.canonicalize();
  } else {
    result = Rational(parse_integer(rest, pos));
  }
  return negative ? Rational(-result) : result;
}

}  // namespace dist235
