#include "lsopkit/scalar.hpp"

#include <charconv>
#include <cctype>
#include <string>

#include "lsopkit/errors.hpp"

namespace lsopkit {

const char* to_string(ErrorKind kind) noexcept {
  switch (kind) {
    case ErrorKind::Dimension: return "dimension";
    case ErrorKind::Degeneracy: return "degeneracy";
    case ErrorKind::Admissibility: return "admissibility";
    case ErrorKind::Structure: return "structure";
    case ErrorKind::Evaluation: return "evaluation";
    case ErrorKind::IncompleteTable: return "incomplete-table";
    case ErrorKind::Gauge: return "gauge";
    case ErrorKind::Hypothesis: return "hypothesis";
    case ErrorKind::Numerical: return "numerical";
    case ErrorKind::Representation: return "representation";
    case ErrorKind::Refused: return "refused";
    case ErrorKind::Format: return "format";
  }
  return "unknown";
}

namespace {

Rational pow10(long k) {
  mpz_class p;
  mpz_ui_pow_ui(p.get_mpz_t(), 10, static_cast<unsigned long>(k));
  return Rational(p);
}

[[noreturn]] void bad_number(std::string_view text) {
  throw Error(ErrorKind::Format, "malformed number: '" + std::string(text) + "'");
}

}  // namespace

Rational parse_rational(std::string_view text) {
  if (text.empty()) bad_number(text);
  if (const auto slash = text.find('/'); slash != std::string_view::npos) {
    Rational num = parse_rational(text.substr(0, slash));
    Rational den = parse_rational(text.substr(slash + 1));
    if (is_zero(den)) bad_number(text);
    Rational out = num / den;
    out.canonicalize();
    return out;
  }

  std::size_t pos = 0;
  bool negative = false;
  if (text[pos] == '+' || text[pos] == '-') {
    negative = text[pos] == '-';
    ++pos;
  }
  std::string digits;
  long frac_digits = 0;
  bool seen_point = false;
  bool any_digit = false;
  for (; pos < text.size(); ++pos) {
    const char ch = text[pos];
    if (std::isdigit(static_cast<unsigned char>(ch))) {
      digits.push_back(ch);
      any_digit = true;
      if (seen_point) ++frac_digits;
    } else if (ch == '.' && !seen_point) {
      seen_point = true;
    } else {
      break;
    }
  }
  if (!any_digit) bad_number(text);
  long exponent = 0;
  if (pos < text.size()) {
    if (text[pos] != 'e' && text[pos] != 'E') bad_number(text);
    ++pos;
    const auto rest = text.substr(pos);
    const char* first = rest.data();
    if (!rest.empty() && rest.front() == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, rest.data() + rest.size(), exponent);
    if (ec != std::errc() || ptr != rest.data() + rest.size()) bad_number(text);
  }
  Rational value{mpz_class(digits, 10)};
  const long scale = exponent - frac_digits;
  if (scale > 0) value *= pow10(scale);
  if (scale < 0) value /= pow10(-scale);
  value.canonicalize();
  return negative ? Rational(-value) : value;
}

std::string format_rational(const Rational& x) {
  Rational c = x;
  c.canonicalize();
  return c.get_str(10);
}

std::string format_double(double x) {
  char buf[64];
  auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, x);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

}  // namespace lsopkit
