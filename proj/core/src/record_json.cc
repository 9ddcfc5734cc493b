#include "grpdb/record_json.hpp"

#include "grpdb/error.hpp"

namespace grpdb {

using nlohmann::json;

namespace {

template <typename T>
T get(const json& j, const char* key) {
  if (!j.contains(key)) throw ParseError(std::string("missing field '") + key + "'", 1, 1);
  try {
    return j.at(key).get<T>();
  } catch (const json::exception&) {
    throw ParseError(std::string("field '") + key + "' has the wrong type", 1, 1);
  }
}

// JSON object keys are strings; prime-keyed maps are stored with decimal keys.
template <typename V>
json prime_map(const std::map<std::uint64_t, V>& m) {
  json out = json::object();
  for (const auto& [p, v] : m) out[std::to_string(p)] = v;
  return out;
}

template <typename V>
std::map<std::uint64_t, V> prime_map_from(const json& j) {
  std::map<std::uint64_t, V> out;
  for (const auto& [k, v] : j.items()) out[std::stoull(k)] = v.template get<V>();
  return out;
}

json to_json(const ClassRecord& c) {
  return {{"label", c.label},     {"division", c.division},   {"order", c.order},
          {"size", c.size},       {"centralizer_order", c.centralizer_order},
          {"representative", c.representative}, {"powers", prime_map(c.powers)}};
}

ClassRecord class_from_json(const json& j) {
  ClassRecord c;
  c.label = get<std::string>(j, "label");
  c.division = get<std::string>(j, "division");
  c.order = get<std::uint32_t>(j, "order");
  c.size = get<std::uint64_t>(j, "size");
  c.centralizer_order = get<std::uint64_t>(j, "centralizer_order");
  c.representative = get<std::string>(j, "representative");
  c.powers = prime_map_from<std::string>(j.at("powers"));
  return c;
}

SubgroupClassRecord subgroup_from_json(const json& j) {
  SubgroupClassRecord s;
  s.label = get<std::string>(j, "label");
  s.aut_label = get<std::string>(j, "aut_label");
  s.order = get<std::uint64_t>(j, "order");
  s.index = get<std::uint64_t>(j, "index");
  s.count = get<std::uint64_t>(j, "count");
  s.normal = get<bool>(j, "normal");
  s.maximal = get<bool>(j, "maximal");
  s.abelian = get<bool>(j, "abelian");
  s.cyclic = get<bool>(j, "cyclic");
  s.hash = get<std::string>(j, "hash");
  s.iso = get<std::string>(j, "iso");
  s.generators = get<std::vector<std::string>>(j, "generators");
  s.gassmann = get<std::vector<std::uint32_t>>(j, "gassmann");
  s.sylow_for = get<std::vector<std::uint64_t>>(j, "sylow_for");
  return s;
}

json to_json(const LatticeRecord& l) {
  json classes = json::array();
  for (const auto& s : l.classes) classes.push_back(to_json(s));
  json edges = json::array();
  for (const auto& [lo, hi] : l.edges) edges.push_back({lo, hi});
  return {{"complete", l.complete},
          {"partial_reason", l.partial_reason},
          {"subgroup_count", l.subgroup_count},
          {"fallback_labels", l.fallback_labels},
          {"label_failure", l.label_failure},
          {"classes", classes},
          {"edges", edges},
          {"special", l.special}};
}

LatticeRecord lattice_from_json(const json& j) {
  LatticeRecord l;
  l.complete = get<bool>(j, "complete");
  l.partial_reason = get<std::string>(j, "partial_reason");
  l.subgroup_count = get<std::uint64_t>(j, "subgroup_count");
  l.fallback_labels = get<bool>(j, "fallback_labels");
  l.label_failure = get<std::string>(j, "label_failure");
  for (const auto& s : j.at("classes")) l.classes.push_back(subgroup_from_json(s));
  for (const auto& e : j.at("edges")) l.edges.emplace_back(e.at(0).get<std::string>(), e.at(1).get<std::string>());
  l.special = get<std::map<std::string, std::string>>(j, "special");
  return l;
}

json to_json(const CharacterTableRecord& t) {
  json chars = json::array();
  for (const auto& c : t.characters)
    chars.push_back({{"label", c.label},
                     {"degree", c.degree},
                     {"indicator", c.indicator},
                     {"rational", c.rational},
                     {"values", c.values}});
  json rational = json::array();
  for (const auto& q : t.rational) {
    json r = {{"label", q.label}, {"degree", q.degree}, {"values", q.values}, {"constituents", q.constituents}};
    r["perm_degree"] = q.perm_degree ? json(*q.perm_degree) : json(nullptr);
    rational.push_back(std::move(r));
  }
  return {{"class_labels", t.class_labels},
          {"division_labels", t.division_labels},
          {"division_classes", t.division_classes},
          {"characters", chars},
          {"rational", rational},
          {"power_maps", prime_map(t.power_maps)}};
}

CharacterTableRecord characters_from_json(const json& j) {
  CharacterTableRecord t;
  t.class_labels = get<std::vector<std::string>>(j, "class_labels");
  t.division_labels = get<std::vector<std::string>>(j, "division_labels");
  t.division_classes = get<std::vector<std::vector<std::string>>>(j, "division_classes");
  for (const auto& c : j.at("characters")) {
    CharacterRecord r;
    r.label = get<std::string>(c, "label");
    r.degree = get<std::uint64_t>(c, "degree");
    r.indicator = get<int>(c, "indicator");
    r.rational = get<std::string>(c, "rational");
    r.values = get<std::vector<std::string>>(c, "values");
    t.characters.push_back(std::move(r));
  }
  for (const auto& q : j.at("rational")) {
    RationalCharacterRecord r;
    r.label = get<std::string>(q, "label");
    r.degree = get<std::uint64_t>(q, "degree");
    r.values = get<std::vector<long long>>(q, "values");
    r.constituents = get<std::vector<std::string>>(q, "constituents");
    if (q.contains("perm_degree") && !q.at("perm_degree").is_null()) r.perm_degree = q.at("perm_degree").get<std::uint64_t>();
    t.rational.push_back(std::move(r));
  }
  t.power_maps = prime_map_from<std::vector<std::string>>(j.at("power_maps"));
  return t;
}

json to_json(const PresentationRecord& p) {
  return {{"display", p.display},
          {"method", p.method},
          {"generators", p.generators},
          {"relative_orders", p.relative_orders},
          {"power_relations", p.power_relations},
          {"conjugation_relations", p.conjugation_relations}};
}

PresentationRecord presentation_from_json(const json& j) {
  PresentationRecord p;
  p.display = get<std::string>(j, "display");
  p.method = get<std::string>(j, "method");
  p.generators = get<std::vector<std::string>>(j, "generators");
  p.relative_orders = get<std::vector<std::uint64_t>>(j, "relative_orders");
  p.power_relations = get<std::vector<std::vector<std::uint32_t>>>(j, "power_relations");
  p.conjugation_relations = get<std::vector<std::vector<std::vector<std::uint32_t>>>>(j, "conjugation_relations");
  return p;
}

json attributes_json(const BooleanAttributes& a) {
  return {{"abelian", a.abelian},     {"cyclic", a.cyclic}, {"nilpotent", a.nilpotent},
          {"solvable", a.solvable},   {"simple", a.simple}, {"perfect", a.perfect},
          {"elementary_abelian", a.elementary_abelian}};
}

BooleanAttributes attributes_from_json(const json& j) {
  BooleanAttributes a;
  a.abelian = get<bool>(j, "abelian");
  a.cyclic = get<bool>(j, "cyclic");
  a.nilpotent = get<bool>(j, "nilpotent");
  a.solvable = get<bool>(j, "solvable");
  a.simple = get<bool>(j, "simple");
  a.perfect = get<bool>(j, "perfect");
  a.elementary_abelian = get<bool>(j, "elementary_abelian");
  return a;
}

template <typename T>
json optional_json(const std::optional<T>& v) {
  return v ? json(*v) : json(nullptr);
}

}  // namespace

json to_json(const SubgroupClassRecord& s) {
  return {{"label", s.label},       {"aut_label", s.aut_label}, {"order", s.order},
          {"index", s.index},       {"count", s.count},         {"normal", s.normal},
          {"maximal", s.maximal},   {"abelian", s.abelian},     {"cyclic", s.cyclic},
          {"hash", s.hash},         {"iso", s.iso},             {"generators", s.generators},
          {"gassmann", s.gassmann}, {"sylow_for", s.sylow_for}};
}

json to_json(const GroupRecord& r) {
  json j;
  j["label"] = r.label;
  j["name"] = r.name;
  j["degree"] = r.degree;
  j["generators"] = r.generators;
  j["order"] = r.order;
  j["exponent"] = r.exponent;
  j["hash"] = r.hash;
  json aliases = json::array();
  for (const auto& a : r.aliases)
    aliases.push_back({{"source", a.source}, {"degree", a.degree}, {"generators", a.generators}});
  j["aliases"] = aliases;
  j["computed"] = r.computed;
  if (!r.computed) return j;

  j["attributes"] = attributes_json(r.attributes);
  j["abelianization"] = r.abelianization;
  j["nilpotency_class"] = optional_json(r.nilpotency_class);
  j["derived_length"] = optional_json(r.derived_length);
  j["class_count"] = r.class_count;
  j["center_order"] = r.center_order;
  j["series"] = r.series;
  j["aut_order"] = optional_json(r.aut_order);
  j["outer_order"] = optional_json(r.outer_order);
  json stages = json::array();
  for (const auto& s : r.stages)
    stages.push_back({{"stage", s.stage}, {"state", to_string(s.state)}, {"reason", s.reason}});
  j["stages"] = stages;
  json classes = json::array();
  for (const auto& c : r.classes) classes.push_back(to_json(c));
  j["classes"] = classes;
  j["lattice"] = r.lattice ? to_json(*r.lattice) : json(nullptr);
  j["characters"] = r.characters ? to_json(*r.characters) : json(nullptr);
  j["presentation"] = r.presentation ? to_json(*r.presentation) : json(nullptr);
  return j;
}

namespace {

GroupRecord parse_record(const json& j) {
  if (!j.is_object()) throw ParseError("record is not an object", 1, 1);
  GroupRecord r;
  r.label = get<std::string>(j, "label");
  r.name = get<std::string>(j, "name");
  r.degree = get<std::size_t>(j, "degree");
  r.generators = get<std::vector<std::string>>(j, "generators");
  r.order = get<std::uint64_t>(j, "order");
  r.exponent = get<std::uint64_t>(j, "exponent");
  r.hash = get<std::string>(j, "hash");
  for (const auto& a : j.at("aliases"))
    r.aliases.push_back({get<std::string>(a, "source"), get<std::size_t>(a, "degree"),
                         get<std::vector<std::string>>(a, "generators")});
  r.computed = get<bool>(j, "computed");
  if (!r.computed) return r;

  r.attributes = attributes_from_json(j.at("attributes"));
  r.abelianization = get<std::vector<std::uint64_t>>(j, "abelianization");
  if (!j.at("nilpotency_class").is_null()) r.nilpotency_class = get<std::uint32_t>(j, "nilpotency_class");
  if (!j.at("derived_length").is_null()) r.derived_length = get<std::uint32_t>(j, "derived_length");
  r.class_count = get<std::size_t>(j, "class_count");
  r.center_order = get<std::uint64_t>(j, "center_order");
  r.series = get<std::map<std::string, std::vector<std::uint64_t>>>(j, "series");
  if (!j.at("aut_order").is_null()) r.aut_order = get<std::string>(j, "aut_order");
  if (!j.at("outer_order").is_null()) r.outer_order = get<std::string>(j, "outer_order");
  for (const auto& s : j.at("stages"))
    r.stages.push_back({get<std::string>(s, "stage"), stage_state_from_string(get<std::string>(s, "state")),
                        get<std::string>(s, "reason")});
  for (const auto& c : j.at("classes")) r.classes.push_back(class_from_json(c));
  if (!j.at("lattice").is_null()) r.lattice = lattice_from_json(j.at("lattice"));
  if (!j.at("characters").is_null()) r.characters = characters_from_json(j.at("characters"));
  if (!j.at("presentation").is_null()) r.presentation = presentation_from_json(j.at("presentation"));
  return r;
}

}  // namespace

GroupRecord record_from_json(const json& j) {
  try {
    return parse_record(j);
  } catch (const json::exception& e) {
    throw ParseError(std::string("malformed record: ") + e.what(), 1, 1);
  }
}

std::string dump_record(const GroupRecord& record) { return to_json(record).dump(); }

}  // namespace grpdb
