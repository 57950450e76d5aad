#include "cantor/io.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <sstream>
#include <vector>

namespace cantor {

namespace {

[[noreturn]] void syntax(int line, const std::string& msg) {
  fail("SyntaxError", "line " + std::to_string(line) + ": " + msg);
}

[[noreturn]] void invariant(int line, const std::string& msg) {
  fail("InvariantViolation", "line " + std::to_string(line) + ": " + msg);
}

std::vector<int> parse_digit_string(const std::string& s) {
  std::vector<int> out;
  if (s.empty()) return out;
  if (s.find(',') != std::string::npos) {
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ',')) {
      if (item.empty() || !std::all_of(item.begin(), item.end(), ::isdigit))
        fail("BadWord", "bad letter '" + item + "'");
      out.push_back(std::stoi(item));
    }
    return out;
  }
  for (char c : s) {
    if (!std::isdigit(static_cast<unsigned char>(c)))
      fail("BadWord", std::string("bad digit '") + c + "'");
    out.push_back(c - '0');
  }
  return out;
}

std::string format_digits(const std::vector<int>& digits) {
  bool wide = std::any_of(digits.begin(), digits.end(),
                          [](int d) { return d > 9; });
  std::string out;
  for (std::size_t i = 0; i < digits.size(); ++i) {
    if (wide && i) out += ',';
    out += std::to_string(digits[i]);
  }
  return out;
}

struct Line {
  int no;
  std::string text;
};

std::vector<Line> significant_lines(const std::string& text) {
  std::vector<Line> out;
  std::stringstream ss(text);
  std::string raw;
  int no = 0;
  while (std::getline(ss, raw)) {
    ++no;
    std::size_t hash = raw.find('#');
    if (hash != std::string::npos) raw.erase(hash);
    std::size_t a = raw.find_first_not_of(" \t\r");
    if (a == std::string::npos) continue;
    std::size_t b = raw.find_last_not_of(" \t\r");
    out.push_back({no, raw.substr(a, b - a + 1)});
  }
  return out;
}

std::vector<std::string> tokens_of(const std::string& s) {
  std::stringstream ss(s);
  std::vector<std::string> out;
  std::string t;
  while (ss >> t) out.push_back(t);
  return out;
}

// header tokens after the tag: key=value pairs
std::map<std::string, std::string> header_fields(
    const std::vector<std::string>& toks, int line) {
  std::map<std::string, std::string> out;
  for (std::size_t i = 1; i < toks.size(); ++i) {
    std::size_t eq = toks[i].find('=');
    if (eq == std::string::npos) syntax(line, "expected key=value");
    out[toks[i].substr(0, eq)] = toks[i].substr(eq + 1);
  }
  return out;
}

int field_int(const std::map<std::string, std::string>& f,
              const std::string& key, int line) {
  auto it = f.find(key);
  if (it == f.end()) syntax(line, "missing " + key + "=");
  try {
    return std::stoi(it->second);
  } catch (const std::exception&) {
    syntax(line, "bad integer for " + key);
  }
}

int parse_int(const std::string& s, int line) {
  try {
    std::size_t used = 0;
    int v = std::stoi(s, &used);
    if (used != s.size()) syntax(line, "bad integer '" + s + "'");
    return v;
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    syntax(line, "bad integer '" + s + "'");
  }
}

Word parse_word_at(const std::string& s, const AlphabetParams& p, int line) {
  try {
    return parse_word(s, p);
  } catch (const Error& e) {
    syntax(line, e.what());
  }
}

Artifact parse_prefixmap(const std::vector<Line>& lines) {
  auto f = header_fields(tokens_of(lines[0].text), lines[0].no);
  AlphabetParams p{field_int(f, "n", lines[0].no), field_int(f, "r", lines[0].no)};
  check_params(p);
  std::vector<PrefixMap::Cell> cells;
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto toks = tokens_of(lines[i].text);
    if (toks.size() != 3 || toks[1] != "->")
      syntax(lines[i].no, "expected '<word> -> <word>'");
    cells.push_back({parse_word_at(toks[0], p, lines[i].no),
                     parse_word_at(toks[2], p, lines[i].no)});
  }
  try {
    return PrefixMap::from_cells(std::move(cells), p);
  } catch (const Error& e) {
    invariant(lines[0].no, e.what());
  }
}

// parses "@mealy ..." plus following edge rows [first, last)
Mealy parse_mealy_block(const std::vector<Line>& lines, std::size_t first,
                        std::size_t last) {
  auto toks = tokens_of(lines[first].text);
  if (toks[0] != "@mealy") syntax(lines[first].no, "expected @mealy header");
  auto f = header_fields(toks, lines[first].no);
  int n = field_int(f, "n", lines[first].no);
  int states = field_int(f, "states", lines[first].no);
  std::optional<int> start;
  if (f.count("start")) start = field_int(f, "start", lines[first].no);
  if (n < 2 || states < 1) invariant(lines[first].no, "bad machine shape");
  if (start && (*start < 0 || *start >= states))
    invariant(lines[first].no, "start state out of range");
  Mealy m(n, states, start);
  for (std::size_t i = first + 1; i < last; ++i) {
    auto et = tokens_of(lines[i].text);
    if (et.size() != 4) syntax(lines[i].no, "expected '<q> <a> <b> <q2>'");
    int q = parse_int(et[0], lines[i].no), a = parse_int(et[1], lines[i].no);
    int b = parse_int(et[2], lines[i].no), q2 = parse_int(et[3], lines[i].no);
    if (q < 0 || q >= states || q2 < 0 || q2 >= states || a < 0 || a >= n ||
        b < 0 || b >= n)
      invariant(lines[i].no, "edge letter or state out of range");
    if (m.has_edge(q, a)) invariant(lines[i].no, "duplicate edge");
    m.set_edge(q, a, b, q2);
  }
  try {
    m.check_total();
  } catch (const Error& e) {
    invariant(lines[first].no, e.what());
  }
  return m;
}

Artifact parse_anchored(const std::vector<Line>& lines) {
  auto f = header_fields(tokens_of(lines[0].text), lines[0].no);
  AlphabetParams p{field_int(f, "n", lines[0].no), field_int(f, "r", lines[0].no)};
  check_params(p);
  std::size_t i = 1;
  if (i >= lines.size() || lines[i].text != "@core")
    syntax(i < lines.size() ? lines[i].no : lines[0].no, "expected @core");
  std::size_t core_hdr = ++i;
  while (i < lines.size() && lines[i].text != "@cells") ++i;
  if (i >= lines.size()) syntax(lines[0].no, "expected @cells");
  if (core_hdr >= i) syntax(lines[0].no, "empty @core block");
  Mealy core = parse_mealy_block(lines, core_hdr, i);
  if (core.n() != p.n) invariant(lines[core_hdr].no, "core arity mismatch");
  std::vector<AnchoredCell> cells;
  for (++i; i < lines.size(); ++i) {
    auto toks = tokens_of(lines[i].text);
    if (toks.size() != 5 || toks[1] != "->" || toks[3] != "@")
      syntax(lines[i].no, "expected '<u> -> <v> @ <state>'");
    cells.push_back({parse_word_at(toks[0], p, lines[i].no),
                     parse_word_at(toks[2], p, lines[i].no),
                     parse_int(toks[4], lines[i].no)});
  }
  try {
    return AnchoredHomeo::from_parts(p, core, std::move(cells));
  } catch (const Error& e) {
    invariant(lines[0].no, e.what());
  }
}

Artifact parse_rawinit(const std::vector<Line>& lines) {
  auto f = header_fields(tokens_of(lines[0].text), lines[0].no);
  RawInitial t;
  t.params = {field_int(f, "n", lines[0].no), field_int(f, "r", lines[0].no)};
  check_params(t.params);
  t.num_states = field_int(f, "states", lines[0].no);
  t.start = field_int(f, "start", lines[0].no);
  if (t.num_states < 1) invariant(lines[0].no, "no states");
  t.dot_out.assign(t.params.r, Word());
  t.dot_next.assign(t.params.r, -1);
  t.dig_out.assign(std::size_t(t.num_states) * t.params.n, Word());
  t.dig_next.assign(std::size_t(t.num_states) * t.params.n, -1);
  std::vector<bool> have_dig(t.dig_next.size(), false);
  std::vector<bool> have_dot(t.params.r, false);
  for (std::size_t i = 1; i < lines.size(); ++i) {
    auto toks = tokens_of(lines[i].text);
    if (toks.size() != 4)
      syntax(lines[i].no, "expected '<state> <in> <out> <next>'");
    int q = parse_int(toks[0], lines[i].no);
    int nx = parse_int(toks[3], lines[i].no);
    Word out = toks[2] == "-" ? Word() : parse_word_at(toks[2], t.params, lines[i].no);
    if (toks[1].size() > 1 && toks[1][0] == 'd') {
      int dot = parse_int(toks[1].substr(1), lines[i].no);
      if (q != t.start) invariant(lines[i].no, "dot edge off the start state");
      if (dot < 0 || dot >= t.params.r)
        invariant(lines[i].no, "dot letter out of range");
      if (have_dot[dot]) invariant(lines[i].no, "duplicate dot edge");
      have_dot[dot] = true;
      t.dot_out[dot] = out;
      t.dot_next[dot] = nx;
    } else {
      int a = parse_int(toks[1], lines[i].no);
      if (q == t.start) invariant(lines[i].no, "digit edge on the start state");
      if (q < 0 || q >= t.num_states || a < 0 || a >= t.params.n)
        invariant(lines[i].no, "edge state or letter out of range");
      std::size_t idx = std::size_t(q) * t.params.n + a;
      if (have_dig[idx]) invariant(lines[i].no, "duplicate digit edge");
      have_dig[idx] = true;
      t.dig_out[idx] = out;
      t.dig_next[idx] = nx;
    }
  }
  try {
    t.check_valid();
  } catch (const Error& e) {
    invariant(lines[0].no, e.what());
  }
  return t;
}

}  // namespace

Word parse_word(const std::string& s, const AlphabetParams& p) {
  Word w;
  if (!s.empty() && s[0] == 'd') {
    std::size_t colon = s.find(':');
    std::string dot_str = s.substr(1, colon == std::string::npos
                                          ? std::string::npos
                                          : colon - 1);
    if (dot_str.empty() ||
        !std::all_of(dot_str.begin(), dot_str.end(), ::isdigit))
      fail("BadWord", "bad dot letter in '" + s + "'");
    std::vector<int> digits =
        colon == std::string::npos ? std::vector<int>{}
                                   : parse_digit_string(s.substr(colon + 1));
    w = Word::rooted(std::stoi(dot_str), std::move(digits));
  } else {
    w = Word::plain(parse_digit_string(s));
  }
  w.check_valid(p);
  return w;
}

std::string format_word(const Word& w) {
  if (!w.is_rooted()) {
    std::vector<int> digits;
    for (std::size_t i = 0; i < w.size(); ++i) digits.push_back(w.letter(i));
    return format_digits(digits);
  }
  std::string out = "d" + std::to_string(w.dot());
  if (w.digit_count() > 0) {
    std::vector<int> digits;
    for (std::size_t i = 0; i < w.digit_count(); ++i)
      digits.push_back(w.digit(i));
    out += ":" + format_digits(digits);
  }
  return out;
}

EventuallyPeriodicPoint parse_point(const std::string& s,
                                    const AlphabetParams& p) {
  std::size_t open = s.find('(');
  if (open == std::string::npos)
    return value_to_point(parse_fraction(s), p);
  if (s.empty() || s.back() != ')')
    fail("BadWord", "unterminated period in '" + s + "'");
  std::string stem_str = s.substr(0, open);
  if (!stem_str.empty() && stem_str.back() == ':') stem_str.pop_back();
  Word stem = parse_word(stem_str, p);
  if (!stem.is_rooted()) fail("BadWord", "point stem must be rooted");
  Word period =
      Word::plain(parse_digit_string(s.substr(open + 1, s.size() - open - 2)));
  return EventuallyPeriodicPoint::make(stem, period, p);
}

std::string format_point(const EventuallyPeriodicPoint& x) {
  std::vector<int> stem_digits, per;
  for (std::size_t i = 0; i < x.stem().digit_count(); ++i)
    stem_digits.push_back(x.stem().digit(i));
  for (std::size_t i = 0; i < x.period().size(); ++i)
    per.push_back(x.period().letter(i));
  return "d" + std::to_string(x.stem().dot()) + ":" +
         format_digits(stem_digits) + "(" + format_digits(per) + ")";
}

Rational parse_fraction(const std::string& s) {
  std::size_t slash = s.find('/');
  auto check = [&](const std::string& part) {
    if (part.empty() || !std::all_of(part.begin(), part.end(), ::isdigit))
      fail("BadNumber", "bad fraction '" + s + "'");
  };
  try {
    if (slash == std::string::npos) {
      check(s);
      return Rational(BigInt(s));
    }
    std::string num = s.substr(0, slash), den = s.substr(slash + 1);
    check(num);
    check(den);
    if (BigInt(den) == 0) fail("BadNumber", "zero denominator");
    return Rational(BigInt(num), BigInt(den));
  } catch (const Error&) {
    throw;
  } catch (const std::exception&) {
    fail("BadNumber", "bad fraction '" + s + "'");
  }
}

std::string format_fraction(const Rational& q) {
  if (denominator(q) == 1) return numerator(q).str();
  return numerator(q).str() + "/" + denominator(q).str();
}

Artifact parse_artifact(const std::string& text) {
  std::vector<Line> lines = significant_lines(text);
  if (lines.empty()) fail("UnknownHeader", "empty input");
  auto toks = tokens_of(lines[0].text);
  if (toks[0] == "@prefixmap") return parse_prefixmap(lines);
  if (toks[0] == "@mealy")
    return parse_mealy_block(lines, 0, lines.size());
  if (toks[0] == "@anchored") return parse_anchored(lines);
  if (toks[0] == "@rawinit") return parse_rawinit(lines);
  fail("UnknownHeader", "unrecognized header '" + toks[0] + "'");
}

std::string print_prefix_map(const PrefixMap& g) {
  std::string out = "@prefixmap n=" + std::to_string(g.params().n) +
                    " r=" + std::to_string(g.params().r) + "\n";
  for (const auto& c : g.cells())
    out += format_word(c.u) + " -> " + format_word(c.v) + "\n";
  return out;
}

std::string print_mealy(const Mealy& m) {
  std::string out =
      "@mealy n=" + std::to_string(m.n()) + " states=" + std::to_string(m.num_states());
  if (m.start()) out += " start=" + std::to_string(*m.start());
  out += "\n";
  for (int q = 0; q < m.num_states(); ++q)
    for (int a = 0; a < m.n(); ++a)
      out += std::to_string(q) + " " + std::to_string(a) + " " +
             std::to_string(m.out(q, a)) + " " + std::to_string(m.next(q, a)) +
             "\n";
  return out;
}

std::string print_anchored(const AnchoredHomeo& h) {
  std::string out = "@anchored n=" + std::to_string(h.params().n) +
                    " r=" + std::to_string(h.params().r) + "\n@core\n" +
                    print_mealy(h.core()) + "@cells\n";
  for (const AnchoredCell& c : h.cells())
    out += format_word(c.u) + " -> " + format_word(c.v) + " @ " +
           std::to_string(c.q) + "\n";
  return out;
}

std::string print_raw(const RawInitial& t) {
  std::string out = "@rawinit n=" + std::to_string(t.params.n) +
                    " r=" + std::to_string(t.params.r) +
                    " states=" + std::to_string(t.num_states) +
                    " start=" + std::to_string(t.start) + "\n";
  auto word_or_dash = [](const Word& w) {
    return w.empty() ? std::string("-") : format_word(w);
  };
  for (int i = 0; i < t.params.r; ++i)
    out += std::to_string(t.start) + " d" + std::to_string(i) + " " +
           word_or_dash(t.dot_out[i]) + " " + std::to_string(t.dot_next[i]) +
           "\n";
  for (int q = 0; q < t.num_states; ++q) {
    if (q == t.start) continue;
    for (int a = 0; a < t.params.n; ++a) {
      std::size_t idx = std::size_t(q) * t.params.n + a;
      out += std::to_string(q) + " " + std::to_string(a) + " " +
             word_or_dash(t.dig_out[idx]) + " " +
             std::to_string(t.dig_next[idx]) + "\n";
    }
  }
  return out;
}

std::string print_artifact(const Artifact& a) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, PrefixMap>) return print_prefix_map(v);
        if constexpr (std::is_same_v<T, Mealy>) return print_mealy(v);
        if constexpr (std::is_same_v<T, AnchoredHomeo>) return print_anchored(v);
        if constexpr (std::is_same_v<T, RawInitial>) return print_raw(v);
      },
      a);
}

}  // namespace cantor
