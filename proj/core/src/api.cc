#include "grpdb/api.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <limits>
#include <json.hpp>
#include <set>

#include "grpdb/generator_file.hpp"
#include "grpdb/perm_group.hpp"
#include "grpdb/query.hpp"
#include "grpdb/record_json.hpp"
#include "grpdb/store.hpp"
#include "grpdb/structure.hpp"

namespace grpdb {

using nlohmann::json;

namespace {

struct HttpError {
  int status;
  std::string message;
  json extra = json::object();
};

ApiResponse reply(int status, json body) {
  body["v"] = kApiVersion;
  return {status, body.dump(), "application/json"};
}

ApiResponse error_reply(const HttpError& e) {
  json err = e.extra;
  err["status"] = e.status;
  err["message"] = e.message;
  return reply(e.status, json{{"kind", "error"}, {"error", err}});
}

bool bool_param(const ApiParams& params, const std::string& key, bool fallback) {
  auto it = params.find(key);
  if (it == params.end() || it->second.empty()) return fallback;
  if (it->second == "true" || it->second == "1") return true;
  if (it->second == "false" || it->second == "0") return false;
  throw HttpError{400, "parameter '" + key + "' must be true or false"};
}

std::string param(const ApiParams& params, const std::string& key, const std::string& fallback = "") {
  auto it = params.find(key);
  return it == params.end() ? fallback : it->second;
}

std::vector<std::string> split_path(const std::string& path) {
  std::vector<std::string> parts;
  std::size_t pos = 0;
  while (pos <= path.size()) {
    const std::size_t next = path.find('/', pos);
    const std::string part = path.substr(pos, next == std::string::npos ? std::string::npos : next - pos);
    if (!part.empty()) parts.push_back(part);
    if (next == std::string::npos) break;
    pos = next + 1;
  }
  return parts;
}

/// "N.i" prefix of a subgroup or character label.
std::string group_prefix(const std::string& label) {
  const std::size_t a = label.find('.');
  if (a == std::string::npos) return "";
  const std::size_t b = label.find('.', a + 1);
  return label.substr(0, b);
}

std::uint32_t check_of(const std::string& query, std::size_t per_page) {
  return static_cast<std::uint32_t>(fnv1a64(query + "|" + std::to_string(per_page)));
}

std::optional<std::size_t> decode_token(const std::string& token, const std::string& query, std::size_t per_page) {
  const std::size_t dot = token.find('.');
  if (dot == std::string::npos || dot == 0 || dot > 12) return std::nullopt;
  std::size_t offset = 0;
  unsigned check = 0;
  try {
    std::size_t used = 0;
    offset = std::stoull(token.substr(0, dot), &used, 16);
    if (used != dot) return std::nullopt;
    check = static_cast<unsigned>(std::stoul(token.substr(dot + 1), &used, 16));
    if (used != token.size() - dot - 1) return std::nullopt;
  } catch (const std::exception&) {
    return std::nullopt;
  }
  if (check != check_of(query, per_page)) return std::nullopt;
  return offset;
}

GroupRecord require_group(const Store& store, const std::string& label) {
  if (auto rec = store.get(label)) return *rec;
  json extra;
  extra["label"] = label;
  std::vector<std::string> suggestions;
  const std::size_t dot = label.find('.');
  std::uint64_t wanted = 0;
  try {
    wanted = std::stoull(label.substr(0, dot));
  } catch (const std::exception&) {
  }
  if (wanted > 0) {
    std::uint64_t best = std::numeric_limits<std::uint64_t>::max();
    for (const auto& l : store.labels()) {
      const std::uint64_t n = std::stoull(l.substr(0, l.find('.')));
      const std::uint64_t d = n > wanted ? n - wanted : wanted - n;
      if (d < best) {
        best = d;
        suggestions.clear();
      }
      if (d == best) suggestions.push_back(l);
    }
  }
  extra["suggestions"] = suggestions;
  throw HttpError{404, "no group with label " + label, extra};
}

json stage_flags(const GroupRecord& r) {
  json out = json::object();
  for (const auto& s : r.stages) out[s.stage] = {{"state", to_string(s.state)}, {"reason", s.reason}};
  return out;
}

ApiResponse search(const Store& store, const ApiParams& params) {
  QueryAST ast;
  try {
    ast = parse_query(param(params, "q"));
  } catch (const ParseError& e) {
    throw HttpError{400, e.message(), json{{"line", e.line()}, {"column", e.column()}}};
  }
  std::size_t per_page = kDefaultPerPage;
  if (auto p = param(params, "per_page"); !p.empty()) {
    try {
      std::size_t used = 0;
      per_page = std::stoull(p, &used);
      if (used != p.size()) throw std::invalid_argument(p);
    } catch (const std::exception&) {
      throw HttpError{400, "per_page must be a positive integer"};
    }
    if (per_page == 0 || per_page > kMaxPerPage)
      throw HttpError{400, "per_page must be between 1 and " + std::to_string(kMaxPerPage)};
  }
  const std::string canonical = ast.str();
  std::size_t offset = 0;
  if (auto token = param(params, "page"); !token.empty()) {
    auto decoded = decode_token(token, canonical, per_page);
    if (!decoded) throw HttpError{400, "invalid page token"};
    offset = *decoded;
  }
  QueryResult result;
  try {
    result = run_query(store, ast);
  } catch (const UnsupportedQuery& e) {
    throw HttpError{422, e.what()};
  }
  json items = json::array();
  const std::size_t end = std::min(result.labels.size(), offset + per_page);
  for (std::size_t i = offset; i < end; ++i) {
    const auto rec = store.get(result.labels[i]);
    if (!rec) continue;
    json item{{"label", rec->label}, {"name", rec->name}, {"order", rec->order}, {"exponent", rec->exponent},
              {"computed", rec->computed}};
    if (rec->computed) {
      item["abelian"] = rec->attributes.abelian;
      item["nilpotent"] = rec->attributes.nilpotent;
      item["solvable"] = rec->attributes.solvable;
      item["simple"] = rec->attributes.simple;
      item["class_count"] = rec->class_count;
    }
    items.push_back(std::move(item));
  }
  json body{{"kind", "search"},
            {"query", canonical},
            {"total", result.labels.size()},
            {"unknown", result.unknown.size()},
            {"unknown_labels", result.unknown},
            {"per_page", per_page},
            {"results", items},
            {"next_page", nullptr}};
  if (end < result.labels.size()) body["next_page"] = page_token(canonical, per_page, end);
  return reply(200, body);
}

ApiResponse group_detail(const Store& store, const std::string& label) {
  const GroupRecord rec = require_group(store, label);
  json j = to_json(rec);
  j["stage_flags"] = stage_flags(rec);
  if (rec.lattice) {
    const auto& lat = *rec.lattice;
    json subgroups = json::array();
    for (const auto& s : lat.classes)
      subgroups.push_back({{"label", s.label}, {"order", s.order}, {"index", s.index}, {"normal", s.normal},
                           {"iso", s.iso}});
    j["lattice"] = {{"complete", lat.complete},
                    {"partial_reason", lat.partial_reason},
                    {"subgroup_count", lat.subgroup_count},
                    {"class_count", lat.classes.size()},
                    {"fallback_labels", lat.fallback_labels},
                    {"special", lat.special},
                    {"subgroups", subgroups}};
  }
  if (rec.characters) {
    json chars = json::array();
    for (const auto& c : rec.characters->characters) chars.push_back(c.label);
    json rational = json::array();
    for (const auto& q : rec.characters->rational) rational.push_back(q.label);
    j["characters"] = {{"complex", chars}, {"rational", rational}};
  }
  j["links"] = {{"lattice", "/group/" + rec.label + "/lattice"}, {"characters", "/group/" + rec.label + "/characters"}};
  return reply(200, json{{"kind", "group"}, {"group", j}});
}

using Bits = std::vector<std::uint64_t>;

bool test(const Bits& b, std::size_t i) { return (b[i / 64] >> (i % 64)) & 1u; }
void set(Bits& b, std::size_t i) { b[i / 64] |= std::uint64_t{1} << (i % 64); }

/// Hasse diagram of the order induced on node groups: A <= B when some member of A lies
/// in some member of B. `node_of[c]` is the node of class c, or -1 when filtered out.
std::vector<std::pair<std::size_t, std::size_t>> induced_hasse(std::size_t class_count,
                                                               const std::vector<std::pair<std::size_t, std::size_t>>& covers,
                                                               const std::vector<long>& node_of, std::size_t node_count) {
  const std::size_t words = (class_count + 63) / 64;
  std::vector<std::vector<std::size_t>> up(class_count);
  for (auto [lo, hi] : covers) up[lo].push_back(hi);
  std::vector<Bits> above(class_count, Bits(words, 0));
  std::vector<bool> done(class_count, false);
  std::function<void(std::size_t)> visit = [&](std::size_t c) {
    if (done[c]) return;
    done[c] = true;
    set(above[c], c);
    for (std::size_t h : up[c]) {
      visit(h);
      for (std::size_t w = 0; w < words; ++w) above[c][w] |= above[h][w];
    }
  };
  for (std::size_t c = 0; c < class_count; ++c) visit(c);

  const std::size_t nwords = (node_count + 63) / 64;
  std::vector<Bits> reach(node_count, Bits(nwords, 0));
  for (std::size_t c = 0; c < class_count; ++c) {
    if (node_of[c] < 0) continue;
    for (std::size_t d = 0; d < class_count; ++d)
      if (node_of[d] >= 0 && test(above[c], d)) set(reach[node_of[c]], static_cast<std::size_t>(node_of[d]));
  }
  std::vector<std::pair<std::size_t, std::size_t>> edges;
  for (std::size_t a = 0; a < node_count; ++a) {
    for (std::size_t b = 0; b < node_count; ++b) {
      if (a == b || !test(reach[a], b)) continue;
      bool covered = true;
      for (std::size_t m = 0; m < node_count && covered; ++m)
        if (m != a && m != b && test(reach[a], m) && test(reach[m], b)) covered = false;
      if (covered) edges.emplace_back(a, b);
    }
  }
  return edges;
}

ApiResponse lattice(const Store& store, const std::string& label, const ApiParams& params) {
  const GroupRecord rec = require_group(store, label);
  const std::string mode = param(params, "mode", "conj");
  if (mode != "conj" && mode != "aut") throw HttpError{400, "mode must be conj or aut"};
  const bool normals_only = bool_param(params, "normals_only", false);
  const bool full = bool_param(params, "full", false);
  if (!rec.lattice || !rec.lattice->complete) {
    const auto* stage = rec.stage("lattice");
    throw HttpError{409, "lattice not available for " + label,
                    json{{"reason", stage ? stage->reason : std::string("not computed")}}};
  }
  const auto& lat = *rec.lattice;
  const std::size_t n = lat.classes.size();
  std::map<std::string, std::size_t> index_of;
  for (std::size_t i = 0; i < n; ++i) index_of[lat.classes[i].label] = i;
  std::vector<std::pair<std::size_t, std::size_t>> covers;
  for (const auto& [lo, hi] : lat.edges) covers.emplace_back(index_of.at(lo), index_of.at(hi));

  if (mode == "aut" && std::any_of(lat.classes.begin(), lat.classes.end(), [](const auto& s) { return s.aut_label.empty(); }))
    throw HttpError{409, "automorphism classes not available for " + label};

  // Node per conjugacy class, or per autjugacy class.
  std::vector<long> node_of(n, -1);
  std::vector<std::vector<std::size_t>> members;
  std::map<std::string, std::size_t> node_by_key;
  for (std::size_t i = 0; i < n; ++i) {
    const auto& s = lat.classes[i];
    if (normals_only && !s.normal) continue;
    const std::string key = mode == "aut" ? s.aut_label : s.label;
    auto [it, fresh] = node_by_key.try_emplace(key, members.size());
    if (fresh) members.emplace_back();
    members[it->second].push_back(i);
    node_of[i] = static_cast<long>(it->second);
  }
  const std::size_t node_count = members.size();
  json body{{"kind", "lattice"}, {"group", label},        {"mode", mode},
            {"normals_only", normals_only}, {"node_count", node_count}, {"display_cap", kLatticeDisplayCap}};
  if (node_count > kLatticeDisplayCap && !full) {
    body["too_large"] = true;
    body["full_url"] = "/group/" + label + "/lattice?mode=" + mode + "&normals_only=" +
                       (normals_only ? "true" : "false") + "&full=true";
    return reply(200, body);
  }
  body["too_large"] = false;

  std::vector<std::pair<std::size_t, std::size_t>> edges;
  if (mode == "conj" && !normals_only) {
    edges = covers;
  } else {
    edges = induced_hasse(n, covers, node_of, node_count);
  }
  json nodes = json::array();
  for (std::size_t k = 0; k < node_count; ++k) {
    const auto& s = lat.classes[members[k].front()];
    std::uint64_t subgroups = 0;
    json conj = json::array();
    for (std::size_t i : members[k]) {
      subgroups += lat.classes[i].count;
      conj.push_back(lat.classes[i].label);
    }
    std::uint64_t omega = 0;
    for (auto [p, e] : factorize(s.order)) omega += static_cast<std::uint64_t>(e);
    json node{{"label", mode == "aut" ? s.aut_label : s.label},
              {"order", s.order},
              {"index", s.index},
              {"level_order", s.order},
              {"level_prime_factors", omega},
              {"normal", s.normal},
              {"maximal", s.maximal},
              {"abelian", s.abelian},
              {"cyclic", s.cyclic},
              {"iso", s.iso},
              {"subgroups", subgroups}};
    if (mode == "aut") node["classes"] = conj;
    nodes.push_back(std::move(node));
  }
  json jedges = json::array();
  std::sort(edges.begin(), edges.end());
  for (auto [a, b] : edges) {
    const auto& lo = lat.classes[members[a].front()];
    const auto& hi = lat.classes[members[b].front()];
    jedges.push_back({{"lower", nodes[a]["label"]}, {"upper", nodes[b]["label"]}, {"index", hi.order / lo.order}});
  }
  body["nodes"] = nodes;
  body["edges"] = jedges;
  return reply(200, body);
}

ApiResponse characters(const Store& store, const std::string& label) {
  const GroupRecord rec = require_group(store, label);
  if (!rec.characters) {
    const auto* stage = rec.stage("characters");
    throw HttpError{409, "character table not available for " + label,
                    json{{"reason", stage ? stage->reason : std::string("not computed")}}};
  }
  const json j = to_json(rec);
  json body{{"kind", "characters"}, {"group", label}, {"classes", j["classes"]}, {"table", j["characters"]}};
  return reply(200, body);
}

ApiResponse subgroup(const Store& store, const std::string& label) {
  const std::string parent = group_prefix(label);
  if (!is_group_label(parent) || !store.contains(parent)) throw HttpError{404, "no subgroup with label " + label};
  const GroupRecord rec = *store.get(parent);
  if (!rec.lattice) throw HttpError{404, "no subgroup with label " + label};
  const auto& lat = *rec.lattice;
  json body{{"kind", "subgroup"}, {"group", parent}};
  for (const auto& s : lat.classes) {
    if (s.label != label) continue;
    json j = to_json(s);
    json contained_in = json::array(), contains = json::array();
    for (const auto& [lo, hi] : lat.edges) {
      if (lo == label) contained_in.push_back(hi);
      if (hi == label) contains.push_back(lo);
    }
    j["contained_in"] = contained_in;
    j["contains"] = contains;
    body["subgroup"] = j;
    return reply(200, body);
  }
  // An autjugacy label names the union of its conjugacy classes.
  json classes = json::array();
  for (const auto& s : lat.classes)
    if (s.aut_label == label) classes.push_back(s.label);
  if (classes.empty()) throw HttpError{404, "no subgroup with label " + label};
  body["autjugacy_class"] = {{"label", label}, {"classes", classes}};
  return reply(200, body);
}

ApiResponse character(const Store& store, const std::string& label) {
  const std::string parent = group_prefix(label);
  if (!is_group_label(parent) || !store.contains(parent)) throw HttpError{404, "no character with label " + label};
  const GroupRecord rec = *store.get(parent);
  if (!rec.characters) throw HttpError{404, "no character with label " + label};
  const json table = to_json(rec)["characters"];
  json body{{"kind", "character"}, {"group", parent}, {"class_labels", table["class_labels"]}};
  for (const auto& c : table["characters"])
    if (c["label"] == label) {
      body["character"] = c;
      return reply(200, body);
    }
  for (const auto& q : table["rational"])
    if (q["label"] == label) {
      body["rational_character"] = q;
      body["division_labels"] = table["division_labels"];
      return reply(200, body);
    }
  throw HttpError{404, "no character with label " + label};
}

}  // namespace

std::string page_token(const std::string& query, std::size_t per_page, std::size_t offset) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%zx.%08x", offset, check_of(query, per_page));
  return buf;
}

ApiResponse handle_request(const Store& store, const std::string& method, const std::string& path,
                           const ApiParams& params) {
  if (method == "OPTIONS") return {204, "", "text/plain"};
  try {
    if (method != "GET" && method != "HEAD") throw HttpError{405, "method not allowed"};
    const auto parts = split_path(path);
    if (parts.size() == 1 && parts[0] == "groups") return search(store, params);
    if (parts.size() == 2 && parts[0] == "group") return group_detail(store, parts[1]);
    if (parts.size() == 3 && parts[0] == "group" && parts[2] == "lattice") return lattice(store, parts[1], params);
    if (parts.size() == 3 && parts[0] == "group" && parts[2] == "characters") return characters(store, parts[1]);
    if (parts.size() == 2 && parts[0] == "subgroup") return subgroup(store, parts[1]);
    if (parts.size() == 2 && parts[0] == "character") return character(store, parts[1]);
    throw HttpError{404, "no route for " + path};
  } catch (const HttpError& e) {
    return error_reply(e);
  } catch (const Error& e) {
    return error_reply({500, e.what()});
  }
}

}  // namespace grpdb
