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

#pragma once

#include <optional>
#include <string>
#include <string_view>

#include <boost/multiprecision/gmp.hpp>

namespace pilotpart {

/// Arbitrary-precision rational used wherever a result must be certified
/// exactly (reduction weights, squared fading payloads, exact optima).
using Rational = boost::multiprecision::mpq_rational;

/// Which arithmetic a computation should use.
enum class Arithmetic { Float, Exact };

/// Parses `p/q`, an integer, or a decimal literal with optional exponent
/// ("0.125", "-3e-4") into the exact rational it denotes.
/// Throws std::invalid_argument on malformed input or a zero denominator.
Rational parse_rational(std::string_view text);

/// `p` when the denominator is 1, otherwise `p/q`.
std::string format_rational(const Rational& value);

/// Exact value of a finite double (every finite double is a dyadic rational).
Rational exact_from_double(double value);

/// Correctly rounded (nearest, ties to even) conversion.
double to_double(const Rational& value);

/// The rational denoted by the shortest decimal literal that round-trips `value`.
Rational shortest_decimal(double value);

/// Exact decimal expansion when the denominator is of the form 2^a 5^b and
/// the expansion has at most `max_digits` significant digits.
std::optional<std::string> exact_decimal(const Rational& value, int max_digits = 40);

} // namespace pilotpart
