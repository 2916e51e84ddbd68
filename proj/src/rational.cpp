#include "oac/rational.hpp"

#include <cctype>

#include "oac/error.hpp"

namespace oac {

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

}  // namespace

Rational parse_rational(std::string_view text) {
  std::string_view body = text;
  bool negative = false;
  if (!body.empty() && (body.front() == '-' || body.front() == '+')) {
    negative = body.front() == '-';
    body.remove_prefix(1);
  }
  const std::size_t offset = text.size() - body.size();
  const auto slash = body.find('/');
  const std::string_view num = body.substr(0, slash);
  const std::string_view den = slash == std::string_view::npos ? std::string_view{"1"} : body.substr(slash + 1);
  if (!all_digits(num)) throw ParseError("malformed rational '" + std::string(text) + "'", offset);
  if (!all_digits(den)) throw ParseError("malformed denominator in '" + std::string(text) + "'", offset + slash + 1);
  mpz_class n(std::string(num), 10);
  mpz_class d(std::string(den), 10);
  if (d == 0) throw ParseError("zero denominator in '" + std::string(text) + "'", offset + slash + 1);
  Rational q(n, d);
  q.canonicalize();
  if (negative) q = -q;
  return q;
}

std::string to_string(const Rational& q) { return q.get_str(10); }

}  // namespace oac
