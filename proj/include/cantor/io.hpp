#pragma once

#include <string>
#include <variant>

#include "cantor/anchored.hpp"
#include "cantor/mealy.hpp"
#include "cantor/nadic.hpp"
#include "cantor/prefix_map.hpp"
#include "cantor/words.hpp"

namespace cantor {

// Word syntax: rooted "d<i>" or "d<i>:<digits>", plain "<digits>"; digits
// are single characters for n <= 10, comma-separated integers otherwise.
Word parse_word(const std::string& s, const AlphabetParams& p);
std::string format_word(const Word& w);

// Point syntax: "d<i>:<digits>(<digits>)" or an exact fraction "a/b".
EventuallyPeriodicPoint parse_point(const std::string& s,
                                    const AlphabetParams& p);
std::string format_point(const EventuallyPeriodicPoint& x);

Rational parse_fraction(const std::string& s);
std::string format_fraction(const Rational& q);

using Artifact = std::variant<PrefixMap, Mealy, AnchoredHomeo, RawInitial>;

Artifact parse_artifact(const std::string& text);
std::string print_artifact(const Artifact& a);

std::string print_prefix_map(const PrefixMap& g);
std::string print_mealy(const Mealy& m);
std::string print_anchored(const AnchoredHomeo& h);
std::string print_raw(const RawInitial& t);

}  // namespace cantor
