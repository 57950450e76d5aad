#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "cantor/anchored.hpp"
#include "cantor/circle.hpp"
#include "cantor/germ.hpp"
#include "cantor/io.hpp"
#include "cantor/mealy.hpp"
#include "cantor/prefix_map.hpp"

namespace {

using namespace cantor;

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("FileNotFound", path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void emit(const std::string& text, const std::string& out_path) {
  if (out_path.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream out(out_path, std::ios::binary);
  if (!out) fail("FileWriteFailed", out_path);
  out << text;
}

Artifact load(const std::string& path) { return parse_artifact(read_file(path)); }

AnchoredHomeo to_anchored(const Artifact& a) {
  if (const PrefixMap* g = std::get_if<PrefixMap>(&a))
    return AnchoredHomeo::from_prefix_map(*g);
  if (const AnchoredHomeo* h = std::get_if<AnchoredHomeo>(&a)) return *h;
  if (const RawInitial* t = std::get_if<RawInitial>(&a)) return from_raw(*t);
  fail("NotAHomeomorphism", "machine artifacts act on digits only");
}

std::vector<Word> parse_cones(const std::string& csv, const AlphabetParams& p) {
  std::vector<Word> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_word(item, p));
  return out;
}

std::vector<Rational> parse_fracs(const std::string& csv) {
  std::vector<Rational> out;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) out.push_back(parse_fraction(item));
  return out;
}

int extra_depth_from_env() {
  const char* v = std::getenv("CANTOR_DEPTH_BOUND");
  if (!v) return 0;
  int d = std::atoi(v);
  return d > 0 ? d : 0;
}

// exit codes for membership checks: errors that just mean "outside the
// supported group" count as non-membership
bool non_member_code(const std::string& code) {
  return code == "NotSynchronizing" || code == "CoreNotSynchronous" ||
         code == "CoreNotInvertible" || code == "NotRootedOutput" ||
         code == "NotBijective" || code == "NotAHomeomorphism";
}

int run_member(const std::string& group, const std::string& path) {
  Artifact a = load(path);
  try {
    AnchoredHomeo h = to_anchored(a);
    if (group == "gnr" || group == "tnr") {
      auto ex = trivial_core_extract(h);
      const PrefixMap* pm = std::get_if<PrefixMap>(&ex);
      if (!pm) return 1;
      if (group == "tnr" && !is_torder(*pm).is_torder) return 1;
      return 0;
    }
    if (!h.is_bijective()) return 1;
    require_sync(invert(h.core()));  // bi-synchronizing
    if (group == "tbnr" && !simeq_compatible(h).compatible) return 1;
    return 0;
  } catch (const Error& e) {
    if (non_member_code(e.code())) return 1;
    throw;
  }
}

int run(int argc, char** argv) {
  CLI::App app{"exact computation in homeomorphism groups of Cantor spaces"};
  app.require_subcommand(1);

  std::string in_a, in_b, out_path, group, point_str, word_str;
  std::string e1_str, e2_str, u_str, v_str, from_str, to_str, avoid_str;
  int n = 2, r = 1, gd = 0, ge = 0;

  auto add_params = [&](CLI::App* c) {
    c->add_option("--n", n, "alphabet arity")->capture_default_str();
    c->add_option("--r", r, "root count")->capture_default_str();
  };

  CLI::App* compose_cmd = app.add_subcommand("compose", "compose two elements (left then right)");
  compose_cmd->add_option("A", in_a)->required();
  compose_cmd->add_option("B", in_b)->required();
  compose_cmd->add_option("-o", out_path);

  CLI::App* invert_cmd = app.add_subcommand("invert", "invert an element or machine");
  invert_cmd->add_option("A", in_a)->required();
  invert_cmd->add_option("-o", out_path);

  CLI::App* minimize_cmd = app.add_subcommand("minimize", "minimize a machine");
  minimize_cmd->add_option("A", in_a)->required();
  minimize_cmd->add_option("-o", out_path);

  CLI::App* sync_cmd = app.add_subcommand("sync", "decide synchronization");
  sync_cmd->add_option("A", in_a)->required();

  CLI::App* core_cmd = app.add_subcommand("core", "extract the core of a machine");
  core_cmd->add_option("A", in_a)->required();
  core_cmd->add_option("-o", out_path);

  CLI::App* member_cmd = app.add_subcommand("member", "group membership (exit 0/1)");
  member_cmd->add_option("--group", group)->required()
      ->check(CLI::IsMember({"gnr", "tnr", "bnr", "tbnr"}));
  member_cmd->add_option("A", in_a)->required();

  CLI::App* germ_cmd = app.add_subcommand("germ", "germ at a fixed point");
  germ_cmd->add_option("A", in_a)->required();
  germ_cmd->add_option("--point", point_str)->required();

  CLI::App* decompose_cmd = app.add_subcommand("decompose", "small-support factorization");
  decompose_cmd->add_option("A", in_a)->required();
  decompose_cmd->add_option("-o", out_path);

  CLI::App* witness_cmd = app.add_subcommand("witness", "constructive witnesses");
  witness_cmd->require_subcommand(1);
  CLI::App* flex_cmd = witness_cmd->add_subcommand("flex", "map E1 into E2");
  flex_cmd->add_option("--e1", e1_str)->required();
  flex_cmd->add_option("--e2", e2_str)->required();
  flex_cmd->add_option("-o", out_path);
  add_params(flex_cmd);
  CLI::App* rubin_cmd = witness_cmd->add_subcommand("rubin", "move x into V inside U");
  rubin_cmd->add_option("--point", point_str)->required();
  rubin_cmd->add_option("--u", u_str)->required();
  rubin_cmd->add_option("--v", v_str)->required();
  rubin_cmd->add_option("-o", out_path);
  add_params(rubin_cmd);
  CLI::App* trans_cmd = witness_cmd->add_subcommand("transitive", "circle-order transport");
  trans_cmd->add_option("--from", from_str)->required();
  trans_cmd->add_option("--to", to_str)->required();
  trans_cmd->add_option("-o", out_path);
  add_params(trans_cmd);
  CLI::App* realize_cmd = witness_cmd->add_subcommand("germ", "realize a germ at a fixed point");
  realize_cmd->add_option("--point", point_str)->required();
  realize_cmd->add_option("--d", gd)->required();
  realize_cmd->add_option("--e", ge)->required();
  realize_cmd->add_option("--avoid", avoid_str);
  realize_cmd->add_option("-o", out_path);
  add_params(realize_cmd);

  CLI::App* conj_cmd = app.add_subcommand("conjugate", "conjugate G by H");
  conj_cmd->add_option("G", in_a)->required();
  conj_cmd->add_option("H", in_b)->required();
  conj_cmd->add_option("-o", out_path);

  CLI::App* apply_cmd = app.add_subcommand("apply", "apply an element to a word or point");
  apply_cmd->add_option("A", in_a)->required();
  CLI::Option* aw = apply_cmd->add_option("--word", word_str);
  CLI::Option* ap = apply_cmd->add_option("--point", point_str);
  aw->excludes(ap);

  CLI::App* value_cmd = app.add_subcommand("value", "exact value of a point");
  value_cmd->add_option("--point", point_str)->required();
  add_params(value_cmd);

  CLI::App* fmt_cmd = app.add_subcommand("fmt", "canonical reprint of an artifact");
  fmt_cmd->add_option("A", in_a)->required();
  fmt_cmd->add_option("-o", out_path);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (compose_cmd->parsed()) {
    AnchoredHomeo g = to_anchored(load(in_a));
    AnchoredHomeo h = to_anchored(load(in_b));
    emit(print_anchored(compose(g, h)), out_path);
    return 0;
  }
  if (invert_cmd->parsed()) {
    Artifact a = load(in_a);
    if (const Mealy* m = std::get_if<Mealy>(&a))
      emit(print_mealy(invert(*m)), out_path);
    else
      emit(print_anchored(inverse(to_anchored(a))), out_path);
    return 0;
  }
  if (minimize_cmd->parsed()) {
    Artifact a = load(in_a);
    const Mealy* m = std::get_if<Mealy>(&a);
    if (!m) fail("WrongArtifact", "minimize expects a machine file");
    emit(print_mealy(minimize(*m).machine), out_path);
    return 0;
  }
  if (sync_cmd->parsed()) {
    Artifact a = load(in_a);
    const Mealy* m = std::get_if<Mealy>(&a);
    if (!m) fail("WrongArtifact", "sync expects a machine file");
    SyncResult sr = synchronization_certificate(*m);
    if (const SyncCertificate* c = std::get_if<SyncCertificate>(&sr)) {
      int core_states = int(core_extract(*m).core.num_states());
      std::cout << "synchronizing level=" << c->level
                << " core_states=" << core_states << "\n";
    } else {
      const NotSyncWitness& w = std::get<NotSyncWitness>(sr);
      std::string subset = "{";
      for (std::size_t i = 0; i < w.subsets[0].size(); ++i)
        subset += (i ? "," : "") + std::to_string(w.subsets[0][i]);
      std::cout << "not-synchronizing witness=" << subset << "}\n";
    }
    return 0;
  }
  if (core_cmd->parsed()) {
    Artifact a = load(in_a);
    const Mealy* m = std::get_if<Mealy>(&a);
    if (!m) fail("WrongArtifact", "core expects a machine file");
    emit(print_mealy(core_extract(*m).core), out_path);
    return 0;
  }
  if (member_cmd->parsed()) return run_member(group, in_a);
  if (germ_cmd->parsed()) {
    AnchoredHomeo h = to_anchored(load(in_a));
    EventuallyPeriodicPoint x = parse_point(point_str, h.params());
    std::cout << render_germ(germ_at(h, x, extra_depth_from_env())) << "\n";
    return 0;
  }
  if (decompose_cmd->parsed()) {
    Artifact a = load(in_a);
    const PrefixMap* g = std::get_if<PrefixMap>(&a);
    if (!g) fail("WrongArtifact", "decompose expects a prefix map file");
    SmallSupportFactors f = small_support_decompose(*g);
    std::string text = "# factor s1 fixes " + format_word(f.fix1) + "\n" +
                       print_prefix_map(f.s1) + "# factor s2 fixes " +
                       format_word(f.fix2) + "\n" + print_prefix_map(f.s2);
    emit(text, out_path);
    return 0;
  }
  if (flex_cmd->parsed()) {
    AlphabetParams p{n, r};
    emit(print_prefix_map(flexibility_witness(parse_cones(e1_str, p),
                                              parse_cones(e2_str, p), p)),
         out_path);
    return 0;
  }
  if (rubin_cmd->parsed()) {
    AlphabetParams p{n, r};
    emit(print_prefix_map(rubin_witness(parse_point(point_str, p),
                                        parse_cones(u_str, p),
                                        parse_cones(v_str, p), p)),
         out_path);
    return 0;
  }
  if (trans_cmd->parsed()) {
    AlphabetParams p{n, r};
    emit(print_prefix_map(
             transitive_witness(parse_fracs(from_str), parse_fracs(to_str), p)),
         out_path);
    return 0;
  }
  if (realize_cmd->parsed()) {
    AlphabetParams p{n, r};
    std::optional<Word> avoid;
    if (!avoid_str.empty()) avoid = parse_word(avoid_str, p);
    emit(print_prefix_map(
             realize_germ(parse_point(point_str, p), gd, ge, avoid, p)),
         out_path);
    return 0;
  }
  if (conj_cmd->parsed()) {
    AnchoredHomeo g = to_anchored(load(in_a));
    AnchoredHomeo h = to_anchored(load(in_b));
    emit(print_anchored(conjugate(g, h)), out_path);
    return 0;
  }
  if (apply_cmd->parsed()) {
    AnchoredHomeo h = to_anchored(load(in_a));
    if (!word_str.empty()) {
      AnchoredHomeo::WordImage img = h.evaluate(parse_word(word_str, h.params()));
      std::string w = img.out.empty() ? "-" : format_word(img.out);
      std::cout << w << (img.complete ? "" : " (partial)") << "\n";
    } else if (!point_str.empty()) {
      std::cout << format_point(h.evaluate(parse_point(point_str, h.params())))
                << "\n";
    } else {
      fail("MissingArgument", "apply needs --word or --point");
    }
    return 0;
  }
  if (value_cmd->parsed()) {
    AlphabetParams p{n, r};
    std::cout << format_fraction(point_value(parse_point(point_str, p), p))
              << "\n";
    return 0;
  }
  if (fmt_cmd->parsed()) {
    emit(print_artifact(load(in_a)), out_path);
    return 0;
  }
  fail("Internal", "unhandled subcommand");
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const cantor::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: Internal: " << e.what() << "\n";
    return 2;
  }
}
