#include "ccv/rdf/literal.hpp"

#include <array>
#include <cctype>
#include <cstdint>
#include <cstdio>

#include "ccv/rdf/vocab.hpp"

namespace ccv::rdf {
namespace {

enum class Family { temporal, numeric, string, other };

Family family_of(const std::string& datatype) {
  if (datatype == vocab::xsd_date_time || datatype == vocab::xsd_date) return Family::temporal;
  if (datatype == vocab::xsd_string) return Family::string;
  static const std::array<std::string_view, 13> numeric = {
      "integer", "decimal", "int", "long", "short", "byte", "nonNegativeInteger",
      "positiveInteger", "negativeInteger", "nonPositiveInteger", "unsignedInt",
      "unsignedLong", "unsignedShort"};
  if (datatype.starts_with(vocab::xsd_ns)) {
    std::string_view local = std::string_view(datatype).substr(vocab::xsd_ns.size());
    for (auto n : numeric)
      if (local == n) return Family::numeric;
  }
  return Family::other;
}

// Days since 1970-01-01 for a proleptic Gregorian date.
std::int64_t days_from_civil(std::int64_t y, unsigned m, unsigned d) {
  y -= m <= 2;
  const std::int64_t era = (y >= 0 ? y : y - 399) / 400;
  const unsigned yoe = static_cast<unsigned>(y - era * 400);
  const unsigned doy = (153 * (m + (m > 2 ? -3 : 9)) + 2) / 5 + d - 1;
  const unsigned doe = yoe * 365 + yoe / 4 - yoe / 100 + doy;
  return era * 146097 + static_cast<std::int64_t>(doe) - 719468;
}

void civil_from_days(std::int64_t z, std::int64_t& y, unsigned& m, unsigned& d) {
  z += 719468;
  const std::int64_t era = (z >= 0 ? z : z - 146096) / 146097;
  const unsigned doe = static_cast<unsigned>(z - era * 146097);
  const unsigned yoe = (doe - doe / 1460 + doe / 36524 - doe / 146096) / 365;
  y = static_cast<std::int64_t>(yoe) + era * 400;
  const unsigned doy = doe - (365 * yoe + yoe / 4 - yoe / 100);
  const unsigned mp = (5 * doy + 2) / 153;
  d = doy - (153 * mp + 2) / 5 + 1;
  m = mp < 10 ? mp + 3 : mp - 9;
  y += m <= 2;
}

bool is_leap(std::int64_t y) { return (y % 4 == 0 && y % 100 != 0) || y % 400 == 0; }

unsigned days_in_month(std::int64_t y, unsigned m) {
  static constexpr std::array<unsigned, 12> days = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  return m == 2 && is_leap(y) ? 29 : days[m - 1];
}

struct Instant {
  std::int64_t seconds = 0;  // since epoch, UTC
  std::uint32_t nanos = 0;
  unsigned fraction_digits = 0;

  auto operator<=>(const Instant& o) const {
    if (auto c = seconds <=> o.seconds; c != 0) return c;
    return nanos <=> o.nanos;
  }
};

class Cursor {
public:
  explicit Cursor(std::string_view s) : s_(s) {}
  bool done() const { return pos_ == s_.size(); }
  bool peek(char c) const { return pos_ < s_.size() && s_[pos_] == c; }
  bool eat(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }
  bool digits(std::size_t n, unsigned& out) {
    if (pos_ + n > s_.size()) return false;
    unsigned v = 0;
    for (std::size_t i = 0; i < n; ++i) {
      char c = s_[pos_ + i];
      if (!std::isdigit(static_cast<unsigned char>(c))) return false;
      v = v * 10 + static_cast<unsigned>(c - '0');
    }
    pos_ += n;
    out = v;
    return true;
  }
  bool fraction(std::uint32_t& nanos, unsigned& count) {
    std::uint64_t v = 0;
    count = 0;
    while (pos_ < s_.size() && std::isdigit(static_cast<unsigned char>(s_[pos_]))) {
      if (count < 9) {
        v = v * 10 + static_cast<unsigned>(s_[pos_] - '0');
        ++count;
      }
      ++pos_;
    }
    if (count == 0) return false;
    for (unsigned i = count; i < 9; ++i) v *= 10;
    nanos = static_cast<std::uint32_t>(v);
    return true;
  }

private:
  std::string_view s_;
  std::size_t pos_ = 0;
};

// YYYY-MM-DD[Thh:mm:ss[.f]][Z|(+|-)hh:mm]. `allow_time` false for xsd:date.
std::optional<Instant> parse_instant(std::string_view lexical, bool allow_time) {
  Cursor c(lexical);
  unsigned year = 0, month = 0, day = 0;
  if (!c.digits(4, year) || !c.eat('-') || !c.digits(2, month) || !c.eat('-') || !c.digits(2, day))
    return std::nullopt;
  if (month < 1 || month > 12 || day < 1 || day > days_in_month(year, month)) return std::nullopt;
  unsigned hour = 0, minute = 0, second = 0;
  Instant out;
  if (allow_time && c.eat('T')) {
    if (!c.digits(2, hour) || !c.eat(':') || !c.digits(2, minute) || !c.eat(':') ||
        !c.digits(2, second))
      return std::nullopt;
    if (hour > 23 || minute > 59 || second > 59) return std::nullopt;
    if (c.eat('.') && !c.fraction(out.nanos, out.fraction_digits)) return std::nullopt;
  }
  std::int64_t offset = 0;
  if (c.eat('Z')) {
  } else if (c.peek('+') || c.peek('-')) {
    int sign = c.eat('+') ? 1 : (c.eat('-'), -1);
    unsigned oh = 0, om = 0;
    if (!c.digits(2, oh) || !c.eat(':') || !c.digits(2, om) || oh > 14 || om > 59)
      return std::nullopt;
    offset = sign * static_cast<std::int64_t>(oh * 3600 + om * 60);
  }
  if (!c.done()) return std::nullopt;
  out.seconds = days_from_civil(year, month, day) * 86400 + hour * 3600 + minute * 60 + second -
                offset;
  return out;
}

std::optional<Instant> temporal_value(const Term& t) {
  return parse_instant(t.value(), t.datatype() == vocab::xsd_date_time);
}

struct Decimal {
  bool negative = false;
  std::string integral;  // no leading zeros
  std::string fraction;  // no trailing zeros
};

std::optional<Decimal> parse_decimal(std::string_view s, bool allow_fraction) {
  Decimal d;
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) d.negative = s[i++] == '-';
  std::size_t int_start = i;
  while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
  std::string_view integral = s.substr(int_start, i - int_start);
  std::string_view fraction;
  if (i < s.size() && s[i] == '.') {
    if (!allow_fraction) return std::nullopt;
    std::size_t frac_start = ++i;
    while (i < s.size() && std::isdigit(static_cast<unsigned char>(s[i]))) ++i;
    fraction = s.substr(frac_start, i - frac_start);
  }
  if (i != s.size() || (integral.empty() && fraction.empty())) return std::nullopt;
  while (!integral.empty() && integral.front() == '0') integral.remove_prefix(1);
  while (!fraction.empty() && fraction.back() == '0') fraction.remove_suffix(1);
  d.integral = std::string(integral);
  d.fraction = std::string(fraction);
  if (d.integral.empty() && d.fraction.empty()) d.negative = false;
  return d;
}

int compare_magnitude(const Decimal& a, const Decimal& b) {
  if (a.integral.size() != b.integral.size()) return a.integral.size() < b.integral.size() ? -1 : 1;
  if (int c = a.integral.compare(b.integral); c != 0) return c < 0 ? -1 : 1;
  if (int c = a.fraction.compare(b.fraction); c != 0) return c < 0 ? -1 : 1;
  return 0;
}

int compare_decimal(const Decimal& a, const Decimal& b) {
  if (a.negative != b.negative) return a.negative ? -1 : 1;
  int m = compare_magnitude(a, b);
  return a.negative ? -m : m;
}

LiteralOrder from_int(int c) {
  return c < 0 ? LiteralOrder::less : (c > 0 ? LiteralOrder::greater : LiteralOrder::equal);
}

}  // namespace

std::optional<std::string> canonical_date_time(std::string_view lexical) {
  auto instant = parse_instant(lexical, true);
  if (!instant) return std::nullopt;
  std::int64_t days = instant->seconds / 86400;
  std::int64_t rem = instant->seconds % 86400;
  if (rem < 0) {
    rem += 86400;
    --days;
  }
  std::int64_t year = 0;
  unsigned month = 0, day = 0;
  civil_from_days(days, year, month, day);
  if (year < 0 || year > 9999) return std::nullopt;
  char buf[64];
  std::snprintf(buf, sizeof buf, "%04lld-%02u-%02uT%02lld:%02lld:%02lld",
                static_cast<long long>(year), month, day, static_cast<long long>(rem / 3600),
                static_cast<long long>(rem % 3600 / 60), static_cast<long long>(rem % 60));
  std::string out = buf;
  if (instant->nanos != 0) {
    char frac[16];
    std::snprintf(frac, sizeof frac, "%09u", instant->nanos);
    std::string f = frac;
    while (!f.empty() && f.back() == '0') f.pop_back();
    out += "." + f;
  }
  return out;
}

LiteralComparison compare_literals(const Term& a, const Term& b) {
  if (!a.is_literal() || !b.is_literal()) return {};
  Family fa = family_of(a.datatype());
  Family fb = family_of(b.datatype());
  if (fa != fb || fa == Family::other) return {};
  switch (fa) {
    case Family::temporal: {
      auto ia = temporal_value(a);
      auto ib = temporal_value(b);
      if (!ia || !ib) return {LiteralOrder::incomparable, true};
      auto c = *ia <=> *ib;
      return {c < 0 ? LiteralOrder::less : (c > 0 ? LiteralOrder::greater : LiteralOrder::equal)};
    }
    case Family::numeric: {
      auto da = parse_decimal(a.value(), a.datatype() == vocab::xsd_decimal);
      auto db = parse_decimal(b.value(), b.datatype() == vocab::xsd_decimal);
      if (!da || !db) return {LiteralOrder::incomparable, true};
      return {from_int(compare_decimal(*da, *db))};
    }
    case Family::string:
      return {from_int(a.value().compare(b.value()))};
    case Family::other:
      break;
  }
  return {};
}

bool literal_less_or_equal(const Term& a, const Term& b) {
  auto order = compare_literals(a, b).order;
  return order == LiteralOrder::less || order == LiteralOrder::equal;
}

}  // namespace ccv::rdf
