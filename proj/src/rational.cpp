// Copyright 2026 The pilotpart Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//     http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "pilotpart/rational.hpp"

#include <cctype>
#include <charconv>
#include <cstdint>
#include <cstring>
#include <cmath>
#include <stdexcept>

namespace pilotpart {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

Rational pow10(long e) {
    boost::multiprecision::mpz_int p = 1;
    for (long i = 0; i < std::labs(e); ++i) p *= 10;
    return e >= 0 ? Rational(p) : Rational(boost::multiprecision::mpz_int(1), p);
}

} // namespace

Rational parse_rational(std::string_view text) {
    const std::string original(text);
    auto fail = [&]() -> Rational { throw std::invalid_argument("malformed rational literal '" + original + "'"); };
    if (text.empty()) return fail();

    bool negative = false;
    if (text.front() == '+' || text.front() == '-') {
        negative = text.front() == '-';
        text.remove_prefix(1);
    }

    Rational value;
    if (auto slash = text.find('/'); slash != std::string_view::npos) {
        auto num = text.substr(0, slash);
        auto den = text.substr(slash + 1);
        if (!all_digits(num) || !all_digits(den)) return fail();
        auto strip = [](std::string_view v) {
            const auto nz = v.find_first_not_of('0');
            return nz == std::string_view::npos ? std::string("0") : std::string(v.substr(nz));
        };
        boost::multiprecision::mpz_int n{strip(num)}, d{strip(den)};
        if (d == 0) throw std::invalid_argument("zero denominator in '" + original + "'");
        value = Rational(n, d);
    } else {
        long exponent = 0;
        if (auto e = text.find_first_of("eE"); e != std::string_view::npos) {
            auto exp_text = text.substr(e + 1);
            bool exp_negative = false;
            if (!exp_text.empty() && (exp_text.front() == '+' || exp_text.front() == '-')) {
                exp_negative = exp_text.front() == '-';
                exp_text.remove_prefix(1);
            }
            if (!all_digits(exp_text) || exp_text.size() > 6) return fail();
            exponent = std::stol(std::string(exp_text));
            if (exp_negative) exponent = -exponent;
            text = text.substr(0, e);
        }
        std::string digits;
        if (auto dot = text.find('.'); dot != std::string_view::npos) {
            auto int_part = text.substr(0, dot);
            auto frac_part = text.substr(dot + 1);
            if (int_part.empty() && frac_part.empty()) return fail();
            if ((!int_part.empty() && !all_digits(int_part)) || (!frac_part.empty() && !all_digits(frac_part)))
                return fail();
            digits = std::string(int_part) + std::string(frac_part);
            exponent -= static_cast<long>(frac_part.size());
        } else {
            if (!all_digits(text)) return fail();
            digits = std::string(text);
        }
        // mpz parses a leading 0 as an octal prefix.
        const auto nz = digits.find_first_not_of('0');
        digits = nz == std::string::npos ? "0" : digits.substr(nz);
        value = Rational(boost::multiprecision::mpz_int(digits)) * pow10(exponent);
    }
    return negative ? Rational(-value) : value;
}

std::string format_rational(const Rational& value) {
    if (denominator(value) == 1) return numerator(value).str();
    return numerator(value).str() + "/" + denominator(value).str();
}

Rational exact_from_double(double value) {
    if (!std::isfinite(value)) throw std::invalid_argument("non-finite value has no exact rational form");
    return Rational(value);
}

double to_double(const Rational& value) {
    // GMP truncates toward zero; step to the neighbour when it is closer.
    const double truncated = value.convert_to<double>();
    if (!std::isfinite(truncated) || value == 0) return truncated;
    const double away = std::nextafter(truncated, value > 0 ? HUGE_VAL : -HUGE_VAL);
    if (!std::isfinite(away)) return truncated;
    const Rational err_t = abs(value - Rational(truncated));
    const Rational err_a = abs(value - Rational(away));
    if (err_a < err_t) return away;
    if (err_t < err_a) return truncated;
    std::uint64_t bits = 0;
    std::memcpy(&bits, &truncated, sizeof bits);
    return (bits & 1u) ? away : truncated;
}

Rational shortest_decimal(double value) {
    char buf[64];
    auto [end, ec] = std::to_chars(buf, buf + sizeof buf, value);
    if (ec != std::errc{}) throw std::invalid_argument("cannot format value");
    return parse_rational(std::string_view(buf, static_cast<std::size_t>(end - buf)));
}

std::optional<std::string> exact_decimal(const Rational& value, int max_digits) {
    using boost::multiprecision::mpz_int;
    mpz_int den = denominator(value);
    int twos = 0, fives = 0;
    while (den % 2 == 0) {
        den /= 2;
        ++twos;
    }
    while (den % 5 == 0) {
        den /= 5;
        ++fives;
    }
    if (den != 1) return std::nullopt;
    const int scale = std::max(twos, fives);
    mpz_int scaled = numerator(value);
    for (int i = 0; i < scale; ++i) scaled *= 10;
    scaled /= denominator(value);

    const bool negative = scaled < 0;
    std::string digits = (negative ? mpz_int(-scaled) : scaled).str();
    std::size_t significant = digits.find_first_not_of('0') == std::string::npos
                                  ? 1
                                  : digits.size() - digits.find_first_not_of('0');
    if (static_cast<int>(significant) > max_digits) return std::nullopt;
    if (scale > 0) {
        if (digits.size() <= static_cast<std::size_t>(scale)) digits.insert(0, scale - digits.size() + 1, '0');
        digits.insert(digits.size() - scale, ".");
        while (digits.back() == '0') digits.pop_back();
        if (digits.back() == '.') digits.pop_back();
    }
    return negative ? "-" + digits : digits;
}

} // namespace pilotpart
