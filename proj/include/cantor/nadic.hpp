#pragma once

#include <optional>

#include <boost/multiprecision/cpp_int.hpp>

#include "cantor/words.hpp"

namespace cantor {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Exact value in [0, r) of an eventually periodic point.
Rational point_value(const EventuallyPeriodicPoint& p, const AlphabetParams& ap);

// Canonical expansion of a rational in [0, r); n-adic rationals get the
// upper (0-tail) expansion.
EventuallyPeriodicPoint value_to_point(const Rational& x, const AlphabetParams& ap);

// The unique other expansion of an n-adic point (with the circle
// wraparound d0.0^w <-> d(r-1).(n-1)^w), or nullopt for non-n-adic points.
std::optional<EventuallyPeriodicPoint> partner_point(
    const EventuallyPeriodicPoint& p, const AlphabetParams& ap);

bool is_nadic(const Rational& x, int n);

// Do the two points name the same circle point (equal or glued)?
bool simeq_equal(const EventuallyPeriodicPoint& a,
                 const EventuallyPeriodicPoint& b, const AlphabetParams& ap);

}  // namespace cantor
