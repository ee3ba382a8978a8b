#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include <filesystem>
#include <iostream>
#include <memory>
#include <sstream>

#include "scissors/error.hpp"
#include "scissors/examples.hpp"
#include "scissors/io.hpp"
#include "scissors/k0.hpp"
#include "scissors/validate.hpp"
#include "scissors/waldhausen.hpp"

using namespace scissors;
using json = nlohmann::json;

namespace {

enum Exit { kOk = 0, kNegative = 1, kUsage = 2 };

// "a+b+c" names a family; the empty string is the empty family.
TwObject parse_family(const PolytopeComplex& c, const std::string& text) {
  TwObject a;
  std::stringstream in(text);
  std::string part;
  while (std::getline(in, part, '+')) {
    const auto b = part.find_first_not_of(' '), e = part.find_last_not_of(' ');
    if (b == std::string::npos) throw PreconditionError("empty component in family '" + text + "'");
    const ObjectId x = c.at(part.substr(b, e - b + 1));
    if (x == c.bottom) throw PreconditionError("the bottom object '" + c.name(x) + "' is not a polytope");
    a.components.push_back(x);
  }
  return a;
}

json class_json(const K0Class& k) {
  json out = json::array();
  for (const auto& x : k.coords) out.push_back(x.get_str());
  return out;
}

json group_json(const AbelianGroup& g) {
  json factors = json::array();
  for (const auto& d : g.invariant_factors) factors.push_back(d.get_str());
  return {{"rank", g.rank}, {"invariant_factors", factors}, {"group", group_string(g)}};
}

std::string torsion_text(const AbelianGroup& g) {
  if (g.invariant_factors.empty()) return "none";
  std::string out;
  for (const auto& d : g.invariant_factors) out += (out.empty() ? "Z/" : " + Z/") + d.get_str();
  return out;
}

std::string matrix_text(const IntMatrix& m) {
  std::string out;
  for (const auto& row : m) {
    out += " ";
    for (const auto& x : row) out += " " + x.get_str();
    out += "\n";
  }
  return out;
}

json matrix_json(const IntMatrix& m) {
  json out = json::array();
  for (const auto& row : m) {
    json r = json::array();
    for (const auto& x : row) r.push_back(x.get_str());
    out.push_back(r);
  }
  return out;
}

// Loads and validates; prints the report and returns false on failure.
bool load_valid(const std::string& path, PolytopeComplex& c) {
  c = load_complex_file(path);
  const ValidationReport r = validate(c);
  if (r.ok()) return true;
  std::cout << format_report(r);
  return false;
}

int cmd_validate(const std::string& path) {
  const PolytopeComplex c = load_complex_file(path);
  const ValidationReport r = validate(c);
  std::cout << format_report(r);
  return r.ok() ? kOk : kNegative;
}

int cmd_k0(const std::string& path, const std::string& format) {
  PolytopeComplex c;
  if (!load_valid(path, c)) return kNegative;
  const K0 k = compute_k0(c);
  if (format == "json") {
    json gens = json::array();
    for (ObjectId g : k.presentation.generators) gens.push_back({{"object", c.name(g)}, {"class", class_json(k.generator_class(g))}});
    json out = group_json(k.group);
    out["version"] = SCISSORS_VERSION;
    out["relations"] = k.presentation.relations.size();
    out["generators"] = gens;
    std::cout << out.dump(2) << "\n";
    return kOk;
  }
  std::cout << "K0 = " << group_string(k.group) << "\n";
  std::cout << "rank " << k.group.rank << ", torsion " << torsion_text(k.group) << "\n";
  std::cout << k.presentation.generators.size() << " generators, " << k.presentation.relations.size() << " relations\n";
  for (ObjectId g : k.presentation.generators) std::cout << "  " << c.name(g) << "  " << to_string(k.generator_class(g)) << "\n";
  return kOk;
}

int cmd_class(const std::string& path, const std::vector<std::string>& families, const std::string& format) {
  PolytopeComplex c;
  if (!load_valid(path, c)) return kNegative;
  const K0 k = compute_k0(c);
  json out = json::array();
  for (const std::string& f : families) {
    const K0Class cls = class_of(k, parse_family(c, f));
    if (format == "json") {
      out.push_back({{"family", f}, {"class", class_json(cls)}});
    } else {
      std::cout << (f.empty() ? "{}" : f) << "  " << to_string(cls) << "\n";
    }
  }
  if (format == "json") std::cout << json{{"version", SCISSORS_VERSION}, {"classes", out}}.dump(2) << "\n";
  return kOk;
}

int cmd_congruent(const std::string& path, const std::string& a, const std::string& b) {
  PolytopeComplex c;
  if (!load_valid(path, c)) return kNegative;
  const K0 k = compute_k0(c);
  const bool same = equal_in_k0(k, parse_family(c, a), parse_family(c, b));
  std::cout << (same ? "congruent" : "not congruent") << "\n";
  return same ? kOk : kNegative;
}

int cmd_map_k0(const std::string& path, const std::string& format) {
  const PolytopeFunctor f = load_functor_file(path);
  for (const auto* side : {f.source.get(), f.target.get()}) {
    const ValidationReport r = validate(*side);
    if (!r.ok()) {
      std::cout << format_report(r);
      return kNegative;
    }
  }
  const ValidationReport fr = validate_functor(f);
  if (!fr.ok()) {
    std::cout << format_report(fr);
    return kNegative;
  }
  const K0 src = compute_k0(*f.source), tgt = compute_k0(*f.target);
  const IntMatrix by_generator = induced_k0_map(f, src, tgt);
  const IntMatrix canonical = induced_k0_map_canonical(f, src, tgt);
  if (format == "json") {
    json images = json::array();
    for (ObjectId g : src.presentation.generators) {
      const ObjectId y = f(g);
      images.push_back({{"source", f.source->name(g)},
                        {"image", f.target->name(y)},
                        {"class", class_json(y == f.target->bottom ? zero_class(tgt.group) : tgt.generator_class(y))}});
    }
    json out{{"version", SCISSORS_VERSION},
             {"source", group_json(src.group)},
             {"target", group_json(tgt.group)},
             {"images", images},
             {"generator_matrix", matrix_json(by_generator)},
             {"canonical_matrix", matrix_json(canonical)}};
    std::cout << out.dump(2) << "\n";
    return kOk;
  }
  std::cout << "source K0 = " << group_string(src.group) << "\n";
  std::cout << "target K0 = " << group_string(tgt.group) << "\n";
  for (ObjectId g : src.presentation.generators) {
    const ObjectId y = f(g);
    const K0Class cls = y == f.target->bottom ? zero_class(tgt.group) : tgt.generator_class(y);
    std::cout << "  [" << f.source->name(g) << "] -> [" << f.target->name(y) << "]  " << to_string(cls) << "\n";
  }
  std::cout << "matrix on generators:\n" << matrix_text(by_generator);
  std::cout << "matrix on canonical coordinates:\n" << matrix_text(canonical);
  return kOk;
}

int cmd_check_waldhausen(const std::string& path, std::size_t samples, std::uint64_t seed, const std::string& format) {
  PolytopeComplex c;
  if (!load_valid(path, c)) return kNegative;
  const WaldhausenReport r = check_waldhausen(c, samples, seed);
  if (format == "json") {
    json props = json::array();
    for (const PropertyResult& p : r.properties) {
      props.push_back({{"name", p.name},
                       {"samples", p.samples},
                       {"applicable", p.applicable},
                       {"failures", p.failures},
                       {"counterexamples", p.counterexamples}});
    }
    std::cout << json{{"version", SCISSORS_VERSION}, {"seed", r.seed}, {"samples", r.samples}, {"properties", props}}.dump(2)
              << "\n";
  } else {
    std::cout << format_report(r);
  }
  return r.ok() ? kOk : kNegative;
}

void emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
  } else {
    write_text_file(out, text);
  }
}

GroupTable parse_group(const std::string& spec) {
  if (spec == "S3") return symmetric_group_3();
  if (spec.size() > 1 && spec[0] == 'C') {
    std::size_t used = 0;
    const unsigned long n = std::stoul(spec.substr(1), &used);
    if (used == spec.size() - 1 && n >= 1) return cyclic_group(n);
  }
  throw PreconditionError("unknown group '" + spec + "' (expected Cn or S3)");
}

std::map<std::uint64_t, Splitting> parse_splitting(const std::string& path) {
  const json doc = json::parse(read_text_file(path));
  std::map<std::uint64_t, Splitting> table;
  for (const auto& [key, value] : doc.items()) {
    const std::string s = value.get<std::string>();
    Splitting t;
    if (s == "split") {
      t = Splitting::split;
    } else if (s == "inert") {
      t = Splitting::inert;
    } else if (s == "ramified") {
      t = Splitting::ramified;
    } else {
      throw ParseError("splitting of " + key + ": expected split, inert or ramified, got '" + s + "'");
    }
    table[std::stoull(key)] = t;
  }
  return table;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Polytope complexes, scissors congruence and K0"};
  app.set_version_flag("--version", SCISSORS_VERSION);
  app.require_subcommand(1);
  std::string path, format = "text", out;
  std::vector<std::string> families;
  std::string fam_a, fam_b;
  std::size_t samples = 200;
  std::uint64_t seed = 0;

  auto format_opt = [&](CLI::App* sub) {
    sub->add_option("--format", format, "Output format")->check(CLI::IsMember({"text", "json"}));
  };

  auto* validate_cmd = app.add_subcommand("validate", "Check the axioms of a complex file");
  validate_cmd->add_option("file", path)->required();

  auto* k0_cmd = app.add_subcommand("k0", "Compute K0 of a complex");
  k0_cmd->add_option("file", path)->required();
  format_opt(k0_cmd);

  auto* class_cmd = app.add_subcommand("class", "Classes of families in K0 (components joined by '+')");
  class_cmd->add_option("file", path)->required();
  class_cmd->allow_extras();  // families are read raw; CLI11 would split "[0,1]" as a list
  format_opt(class_cmd);

  auto* congruent_cmd = app.add_subcommand("congruent", "Exit 0 iff two families have the same K0 class");
  congruent_cmd->add_option("file", path)->required();
  congruent_cmd->add_option("a", fam_a)->required();
  congruent_cmd->add_option("b", fam_b)->required();

  auto* map_cmd = app.add_subcommand("map-k0", "Induced map on K0 of a functor file");
  map_cmd->add_option("functor", path)->required();
  format_opt(map_cmd);

  auto* wald_cmd = app.add_subcommand("check-waldhausen", "Seeded property tests of the Waldhausen axioms");
  wald_cmd->add_option("file", path)->required();
  wald_cmd->add_option("--samples", samples, "Samples per property");
  wald_cmd->add_option("--seed", seed, "Random seed");
  format_opt(wald_cmd);

  auto* example_cmd = app.add_subcommand("example", "Write a bundled example complex");
  example_cmd->require_subcommand(1);
  example_cmd->add_option("-o,--output", out, "Output file (stdout if omitted)");
  std::string group = "C2", splitting_file, source_out, target_out;
  std::size_t q = 1, M = 2;
  std::uint64_t N = 12;
  std::int64_t d = -1;
  std::vector<std::string> parts;

  example_cmd->add_subcommand("sphere", "Two objects, no nontrivial covers");
  auto* sg_cmd = example_cmd->add_subcommand("sg", "Sphere with Aut(*) = G");
  sg_cmd->add_option("--group", group, "Cn or S3");
  auto* interval_cmd = example_cmd->add_subcommand("interval", "Unions of grid cells in [0, M]");
  interval_cmd->add_option("--q", q, "Cells per unit");
  interval_cmd->add_option("--M", M, "Length");
  auto* rationals_cmd = example_cmd->add_subcommand("rationals", "Ideals of Z up to N");
  rationals_cmd->add_option("--N", N, "Bound");
  auto* quadratic_cmd = example_cmd->add_subcommand("quadratic", "Ideals of a quadratic field up to norm N");
  quadratic_cmd->add_option("--d", d, "Squarefree discriminant parameter");
  quadratic_cmd->add_option("--N", N, "Norm bound");
  quadratic_cmd->add_option("--splitting", splitting_file, "JSON table prime -> split|inert|ramified");
  auto* inclusion_cmd = example_cmd->add_subcommand("inclusion", "Functor from the rationals into a quadratic field");
  inclusion_cmd->add_option("--d", d, "Squarefree discriminant parameter");
  inclusion_cmd->add_option("--N", N, "Norm bound of the target");
  inclusion_cmd->add_option("--source", source_out, "Where to write the source complex")->required();
  inclusion_cmd->add_option("--target", target_out, "Where to write the target complex")->required();
  auto* wedge_cmd = example_cmd->add_subcommand("wedge", "Wedge of complex files");
  wedge_cmd->add_option("files", parts)->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kUsage;
  }

  try {
    if (*validate_cmd) return cmd_validate(path);
    if (*k0_cmd) return cmd_k0(path, format);
    if (*class_cmd) {
      families = class_cmd->remaining();
      if (families.empty()) throw CLI::RequiredError("families");
      return cmd_class(path, families, format);
    }
    if (*congruent_cmd) return cmd_congruent(path, fam_a, fam_b);
    if (*map_cmd) return cmd_map_k0(path, format);
    if (*wald_cmd) return cmd_check_waldhausen(path, samples, seed, format);
    if (*example_cmd) {
      if (*example_cmd->get_subcommand("sphere")) emit(out, dump_complex(sphere()));
      if (*sg_cmd) emit(out, dump_complex(s_g(parse_group(group))));
      if (*interval_cmd) emit(out, dump_complex(interval_line(q, M)));
      if (*rationals_cmd) emit(out, dump_complex(rationals(N)));
      if (*quadratic_cmd) {
        emit(out, dump_complex(splitting_file.empty() ? quadratic(d, N)
                                                      : quadratic_from_splitting(parse_splitting(splitting_file), N)));
      }
      if (*inclusion_cmd) {
        if (out.empty()) throw PreconditionError("inclusion needs -o for the functor file");
        const PolytopeFunctor f = inclusion_functor(d, N);
        write_text_file(source_out, dump_complex(*f.source));
        write_text_file(target_out, dump_complex(*f.target));
        const auto base = std::filesystem::absolute(out).parent_path();
        write_text_file(out, dump_functor(f, std::filesystem::relative(std::filesystem::absolute(source_out), base).string(),
                                          std::filesystem::relative(std::filesystem::absolute(target_out), base).string()));
      }
      if (*wedge_cmd) {
        std::vector<PolytopeComplex> cs;
        for (const auto& p : parts) cs.push_back(load_complex_file(p));
        emit(out, dump_complex(wedge(cs)));
      }
      return kOk;
    }
  } catch (const CapExceeded& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kNegative;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}
