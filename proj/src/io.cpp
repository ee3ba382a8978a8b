#include "scissors/io.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <nlohmann/json.hpp>
#include <set>
#include <sstream>

#include "scissors/error.hpp"

namespace scissors {

using nlohmann::json;

std::string read_text_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open " + path.string());
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void write_text_file(const std::filesystem::path& path, std::string_view text) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw IoError("cannot write " + path.string());
  out << text;
}

namespace {

const json& field(const json& obj, const char* key, const std::string& where) {
  const auto it = obj.find(key);
  if (it == obj.end()) throw ParseError(where + ": missing field '" + key + "'");
  return *it;
}

const json& array_field(const json& doc, const char* key) {
  static const json empty = json::array();
  const auto it = doc.find(key);
  if (it == doc.end()) return empty;
  if (!it->is_array()) throw ParseError(std::string("field '") + key + "' must be an array");
  return *it;
}

std::string text(const json& v, const std::string& where) {
  if (!v.is_string()) throw ParseError(where + ": expected a string");
  return v.get<std::string>();
}

json parse(std::string_view document) {
  try {
    return json::parse(document);
  } catch (const json::parse_error& e) {
    throw ParseError(std::string("malformed JSON: ") + e.what());
  }
}

}  // namespace

PolytopeComplex load_complex(std::string_view document) {
  const json doc = parse(document);
  if (!doc.is_object()) throw ParseError("complex document must be a JSON object");
  ComplexBuilder b;

  const json& objects = array_field(doc, "objects");
  for (std::size_t i = 0; i < objects.size(); ++i) b.add_object(text(objects[i], "objects[" + std::to_string(i) + "]"));
  if (objects.empty() || !doc.contains("bottom")) throw ParseError("no bottom object");

  auto object = [&](const json& v, const std::string& where) {
    const std::string name = text(v, where);
    const auto id = b.find(name);
    if (!id) throw ParseError(where + ": unknown object '" + name + "'");
    return *id;
  };
  auto hmor = [&](const json& v, const std::string& where) {
    const std::string name = text(v, where);
    const auto id = b.find_hmor(name);
    if (!id) throw ParseError(where + ": unknown horizontal morphism '" + name + "'");
    return *id;
  };
  auto tuple = [](const json& v, std::size_t n, const std::string& where) -> const json& {
    if (!v.is_array() || v.size() != n) throw ParseError(where + ": expected an array of " + std::to_string(n));
    return v;
  };

  b.set_bottom(object(doc["bottom"], "bottom"));

  const json& leq = array_field(doc, "leq");
  for (std::size_t i = 0; i < leq.size(); ++i) {
    const std::string where = "leq[" + std::to_string(i) + "]";
    const json& pair = tuple(leq[i], 2, where);
    b.add_leq(object(pair[0], where), object(pair[1], where));
  }
  // Every object sits above the bottom.
  for (std::uint32_t i = 0; i < objects.size(); ++i) b.add_leq(object(doc["bottom"], "bottom"), ObjectId{i});

  const json& hmors = array_field(doc, "hmors");
  for (std::size_t i = 0; i < hmors.size(); ++i) {
    const std::string where = "hmors[" + std::to_string(i) + "]";
    const json& h = hmors[i];
    if (!h.is_object()) throw ParseError(where + ": expected an object");
    b.add_hmor(text(field(h, "id", where), where + ".id"), object(field(h, "src", where), where + ".src"),
               object(field(h, "dst", where), where + ".dst"));
  }
  // Identities may be referenced before they exist.
  for (std::uint32_t i = 0; i < objects.size(); ++i) {
    const std::string name = identity_name(b.object_name(ObjectId{i}));
    if (!b.find_hmor(name)) b.add_hmor(name, ObjectId{i}, ObjectId{i});
  }

  const json& compose = array_field(doc, "compose");
  for (std::size_t i = 0; i < compose.size(); ++i) {
    const std::string where = "compose[" + std::to_string(i) + "]";
    const json& t = tuple(compose[i], 3, where);
    b.set_compose(hmor(t[0], where), hmor(t[1], where), hmor(t[2], where));
  }
  const json& inverse = array_field(doc, "inverse");
  for (std::size_t i = 0; i < inverse.size(); ++i) {
    const std::string where = "inverse[" + std::to_string(i) + "]";
    const json& t = tuple(inverse[i], 2, where);
    b.set_inverse(hmor(t[0], where), hmor(t[1], where));
  }
  const json& restrict = array_field(doc, "restrict");
  for (std::size_t i = 0; i < restrict.size(); ++i) {
    const std::string where = "restrict[" + std::to_string(i) + "]";
    const json& t = tuple(restrict[i], 3, where);
    b.set_restrict(hmor(t[0], where), object(t[1], where), hmor(t[2], where));
  }
  const json& covers = array_field(doc, "covers");
  for (std::size_t i = 0; i < covers.size(); ++i) {
    const std::string where = "covers[" + std::to_string(i) + "]";
    const json& cv = covers[i];
    if (!cv.is_object()) throw ParseError(where + ": expected an object");
    const ObjectId target = object(field(cv, "target", where), where + ".target");
    const std::string named = "cover of " + b.object_name(target) + " (" + where + ")";
    const json& fam = field(cv, "family", where);
    if (!fam.is_array()) throw ParseError(named + ": family must be an array");
    std::vector<ObjectId> family;
    for (const json& y : fam) family.push_back(object(y, named));
    b.add_cover(target, std::move(family));
  }

  std::size_t cap = kDefaultCap;
  if (doc.contains("cap")) {
    const json& c = doc["cap"];
    if (!c.is_number_integer() || c.get<long long>() <= 0) throw ParseError("cap: expected a positive integer");
    cap = c.get<std::size_t>();
  }
  b.set_cap(cap_from_env(cap));
  return std::move(b).build();
}

PolytopeComplex load_complex_file(const std::filesystem::path& path) { return load_complex(read_text_file(path)); }

std::string dump_complex(const PolytopeComplex& c) {
  json doc;
  doc["objects"] = c.names;
  doc["bottom"] = c.name(c.bottom);

  json leq = json::array();
  for (std::uint32_t a = 0; a < c.size(); ++a) {
    for (ObjectId sup : c.up[a]) {
      if (sup.v == a || ObjectId{a} == c.bottom) continue;
      // keep only covering relations of the order
      bool direct = true;
      for (ObjectId mid : c.up[a]) {
        if (mid.v != a && mid != sup && c.leq(mid, sup)) {
          direct = false;
          break;
        }
      }
      if (direct) leq.push_back({c.names[a], c.name(sup)});
    }
  }
  doc["leq"] = leq;

  json hmors = json::array();
  for (std::uint32_t h = 0; h < c.hmors.size(); ++h) {
    if (c.is_identity(HMorId{h})) continue;
    const HMor& m = c.hmors[h];
    hmors.push_back({{"id", m.name}, {"src", c.name(m.src)}, {"dst", c.name(m.dst)}});
  }
  doc["hmors"] = hmors;

  std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> composites;
  for (const auto& [key, gh] : c.compose_table) {
    const HMorId g{static_cast<std::uint32_t>(key >> 32)}, h{static_cast<std::uint32_t>(key & 0xffffffffU)};
    if (!c.is_identity(g) && !c.is_identity(h)) composites.emplace_back(g.v, h.v, gh.v);
  }
  std::sort(composites.begin(), composites.end());
  json compose = json::array();
  for (auto [g, h, gh] : composites) compose.push_back({c.hmors[g].name, c.hmors[h].name, c.hmors[gh].name});
  doc["compose"] = compose;

  json inverse = json::array();
  for (std::uint32_t h = 0; h < c.hmors.size(); ++h) {
    const auto inv = c.inverse_table[h];
    if (inv && !c.is_identity(HMorId{h})) inverse.push_back({c.hmors[h].name, c.hmor(*inv).name});
  }
  doc["inverse"] = inverse;

  std::vector<std::tuple<std::uint32_t, std::uint32_t, std::uint32_t>> lifts;
  for (const auto& [key, lift] : c.restrict_table) {
    const HMorId h{static_cast<std::uint32_t>(key >> 32)};
    const ObjectId sub{static_cast<std::uint32_t>(key & 0xffffffffU)};
    if (c.is_identity(h) || sub == c.bottom || sub == c.hmor(h).dst) continue;
    lifts.emplace_back(h.v, sub.v, lift.v);
  }
  std::sort(lifts.begin(), lifts.end());
  json restrict = json::array();
  for (auto [h, sub, lift] : lifts) restrict.push_back({c.hmors[h].name, c.names[sub], c.hmors[lift].name});
  doc["restrict"] = restrict;

  json covers = json::array();
  for (const auto& [target, family] : c.covers.basis) {
    json fam = json::array();
    for (ObjectId y : family) fam.push_back(c.name(y));
    covers.push_back({{"target", c.name(target)}, {"family", fam}});
  }
  doc["covers"] = covers;
  if (c.cap != kDefaultCap) doc["cap"] = c.cap;
  return doc.dump(1) + "\n";
}

PolytopeFunctor load_functor_file(const std::filesystem::path& path) {
  const json doc = parse(read_text_file(path));
  if (!doc.is_object()) throw ParseError("functor document must be a JSON object");
  const auto base = path.parent_path();
  auto load_side = [&](const char* key) {
    const std::filesystem::path p = text(field(doc, key, "functor"), key);
    return std::make_shared<const PolytopeComplex>(load_complex_file(p.is_absolute() ? p : base / p));
  };
  PolytopeFunctor f;
  f.source = load_side("source");
  f.target = load_side("target");
  const PolytopeComplex& s = *f.source;
  const PolytopeComplex& t = *f.target;

  const json& objects = field(doc, "objects", "functor");
  if (!objects.is_object()) throw ParseError("objects: expected a name map");
  f.objects.assign(s.size(), t.bottom);
  std::vector<bool> seen(s.size(), false);
  for (const auto& [from, to] : objects.items()) {
    const auto a = s.find(from);
    if (!a) throw ParseError("objects: unknown source object '" + from + "'");
    const std::string name = text(to, "objects." + from);
    const auto b = t.find(name);
    if (!b) throw ParseError("objects." + from + ": unknown target object '" + name + "'");
    f.objects[a->v] = *b;
    seen[a->v] = true;
  }
  for (std::uint32_t i = 0; i < s.size(); ++i) {
    if (!seen[i] && ObjectId{i} != s.bottom) throw ParseError("objects: no image for '" + s.names[i] + "'");
  }

  f.hmors.assign(s.hmors.size(), HMorId{});
  std::vector<bool> mapped(s.hmors.size(), false);
  if (doc.contains("hmors")) {
    const json& hmors = doc["hmors"];
    if (!hmors.is_object()) throw ParseError("hmors: expected a name map");
    for (const auto& [from, to] : hmors.items()) {
      const auto h = s.find_hmor(from);
      if (!h) throw ParseError("hmors: unknown source morphism '" + from + "'");
      const std::string name = text(to, "hmors." + from);
      const auto k = t.find_hmor(name);
      if (!k) throw ParseError("hmors." + from + ": unknown target morphism '" + name + "'");
      f.hmors[h->v] = *k;
      mapped[h->v] = true;
    }
  }
  for (std::uint32_t h = 0; h < s.hmors.size(); ++h) {
    if (mapped[h]) continue;
    if (!s.is_identity(HMorId{h})) throw ParseError("hmors: no image for '" + s.hmors[h].name + "'");
    f.hmors[h] = t.identity[f.objects[s.hmors[h].src.v].v];
  }
  return f;
}

std::string dump_functor(const PolytopeFunctor& f, const std::string& source_path, const std::string& target_path) {
  const PolytopeComplex& s = *f.source;
  const PolytopeComplex& t = *f.target;
  json doc;
  doc["source"] = source_path;
  doc["target"] = target_path;
  json objects = json::object();
  for (std::uint32_t i = 0; i < s.size(); ++i) objects[s.names[i]] = t.name(f.objects[i]);
  doc["objects"] = objects;
  json hmors = json::object();
  for (std::uint32_t h = 0; h < s.hmors.size(); ++h) {
    if (!s.is_identity(HMorId{h})) hmors[s.hmors[h].name] = t.hmor(f.hmors[h]).name;
  }
  doc["hmors"] = hmors;
  return doc.dump(1) + "\n";
}

}  // namespace scissors
