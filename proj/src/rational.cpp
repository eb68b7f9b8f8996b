#include "concord/rational.hpp"

#include <cctype>
#include <cstdlib>
#include <stdexcept>

namespace concord {

std::int64_t rat_floor(const Rat& r) {
    // boost::rational keeps the denominator positive.
    const std::int64_t n = r.numerator();
    const std::int64_t d = r.denominator();
    std::int64_t q = n / d;
    if (n % d != 0 && n < 0) --q;
    return q;
}

std::int64_t rat_ceil(const Rat& r) {
    const std::int64_t n = r.numerator();
    const std::int64_t d = r.denominator();
    std::int64_t q = n / d;
    if (n % d != 0 && n > 0) ++q;
    return q;
}

bool rat_is_integral(const Rat& r) { return r.denominator() == 1; }

std::string rat_to_string(const Rat& r) {
    if (r.denominator() == 1) return std::to_string(r.numerator());
    return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

namespace {

std::int64_t parse_int_digits(std::string_view digits, std::string_view whole) {
    if (digits.empty() || digits.size() > 15)
        throw std::invalid_argument("not a rational literal: '" + std::string(whole) + "'");
    std::int64_t value = 0;
    for (char c : digits) {
        if (!std::isdigit(static_cast<unsigned char>(c)))
            throw std::invalid_argument("not a rational literal: '" + std::string(whole) + "'");
        value = value * 10 + (c - '0');
    }
    return value;
}

} // namespace

Rat parse_rational(std::string_view text) {
    std::string_view s = text;
    bool negative = false;
    if (!s.empty() && (s.front() == '-' || s.front() == '+')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (s.empty()) throw std::invalid_argument("not a rational literal: '" + std::string(text) + "'");

    const auto slash = s.find('/');
    const auto dot = s.find('.');
    Rat value;
    if (slash != std::string_view::npos) {
        const std::int64_t num = parse_int_digits(s.substr(0, slash), text);
        const std::int64_t den = parse_int_digits(s.substr(slash + 1), text);
        if (den == 0) throw std::invalid_argument("zero denominator: '" + std::string(text) + "'");
        value = Rat(num, den);
    } else if (dot != std::string_view::npos) {
        const std::int64_t whole = parse_int_digits(s.substr(0, dot), text);
        const std::string_view frac = s.substr(dot + 1);
        const std::int64_t frac_num = parse_int_digits(frac, text);
        std::int64_t scale = 1;
        for (std::size_t i = 0; i < frac.size(); ++i) scale *= 10;
        value = Rat(whole) + Rat(frac_num, scale);
    } else {
        value = Rat(parse_int_digits(s, text));
    }
    return negative ? -value : value;
}

} // namespace concord
