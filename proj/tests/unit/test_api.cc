#include <gtest/gtest.h>

#include <json.hpp>
#include <set>

#include "corpus.hpp"
#include "grpdb/api.hpp"
#include "grpdb/store.hpp"

using namespace grpdb;
using nlohmann::json;

namespace {

Store& shared_store() {
  static Store* store = [] {
    auto* s = new Store;
    for (const char* name : {"C1", "C2", "C3", "C4", "C2^2", "C5", "S3", "C6", "C8", "C2xC4", "C2^3", "D4", "Q8", "Dic3",
                             "C12", "A4", "D6", "C2xC6", "F5", "C2^5", "C2^6"})
      s->ingest(testing_corpus::entry(name).id, name, testing_corpus::group(name));
    Budgets budgets;
    budgets.subgroup_budget = 5000;
    budgets.automorphism_budget = 1 << 20;
    std::vector<std::string> labels = s->labels();
    labels.erase(std::find(labels.begin(), labels.end(), "64.267"));
    s->compute(labels, budgets);
    Budgets small;
    small.subgroup_budget = 100;
    small.character_budget = 32;
    s->compute({"64.267"}, small);
    return s;
  }();
  return *store;
}

struct Reply {
  int status;
  json body;
};

Reply get(const std::string& path, const ApiParams& params = {}) {
  const ApiResponse r = handle_request(shared_store(), "GET", path, params);
  EXPECT_EQ(r.content_type, "application/json");
  json body = json::parse(r.body);
  EXPECT_EQ(body.at("v"), kApiVersion);
  return {r.status, body};
}

}  // namespace

TEST(Api, SearchByOrder) {
  const Reply r = get("/groups", {{"q", "order:6"}});
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.body["kind"], "search");
  EXPECT_EQ(r.body["total"], 2);
  ASSERT_EQ(r.body["results"].size(), 2u);
  EXPECT_EQ(r.body["results"][0]["label"], "6.1");
  EXPECT_EQ(r.body["results"][1]["label"], "6.2");
  EXPECT_EQ(r.body["results"][0]["name"], "S3");
  EXPECT_TRUE(r.body["next_page"].is_null());
}

TEST(Api, SearchErrors) {
  const Reply bad = get("/groups", {{"q", "order:6 bogus:1"}});
  EXPECT_EQ(bad.status, 400);
  EXPECT_EQ(bad.body["kind"], "error");
  EXPECT_EQ(bad.body["error"]["status"], 400);
  EXPECT_EQ(bad.body["error"]["line"], 1);
  EXPECT_EQ(bad.body["error"]["column"], 9);

  EXPECT_EQ(get("/groups", {{"q", "has_subgroup(iso=Foo)"}}).status, 422);
  EXPECT_EQ(get("/groups", {{"q", "order:6"}, {"page", "zz"}}).status, 400);
  EXPECT_EQ(get("/groups", {{"q", "order:6"}, {"per_page", "0"}}).status, 400);
  EXPECT_EQ(get("/groups", {{"q", "order:6"}, {"per_page", "501"}}).status, 400);
  // A token is bound to its query.
  EXPECT_EQ(get("/groups", {{"q", "order:8"}, {"page", page_token("order:6", 1, 1)}}).status, 400);
}

TEST(Api, PaginationCoversEveryResultOnce) {
  const Reply all = get("/groups", {{"q", "order:<=12"}});
  const std::size_t total = all.body["total"];
  std::vector<std::string> seen;
  ApiParams params{{"q", "order:<=12"}, {"per_page", "4"}};
  for (int guard = 0; guard < 100; ++guard) {
    const Reply page = get("/groups", params);
    ASSERT_EQ(page.status, 200);
    EXPECT_LE(page.body["results"].size(), 4u);
    for (const auto& item : page.body["results"]) seen.push_back(item["label"]);
    if (page.body["next_page"].is_null()) break;
    params["page"] = page.body["next_page"];
  }
  EXPECT_EQ(seen.size(), total);
  EXPECT_EQ(std::set<std::string>(seen.begin(), seen.end()).size(), total);
  for (std::size_t i = 0; i < total; ++i) EXPECT_EQ(seen[i], all.body["results"][i]["label"]);
}

TEST(Api, EveryResultDereferences) {
  const Reply all = get("/groups", {{"q", ""}, {"per_page", "500"}});
  EXPECT_EQ(all.body["total"], shared_store().size());
  for (const auto& item : all.body["results"]) {
    const Reply g = get("/group/" + item["label"].get<std::string>());
    EXPECT_EQ(g.status, 200) << item["label"];
    EXPECT_EQ(g.body["group"]["label"], item["label"]);
  }
}

TEST(Api, GroupDetail) {
  const Reply r = get("/group/6.1");
  EXPECT_EQ(r.status, 200);
  const json& g = r.body["group"];
  EXPECT_EQ(g["order"], 6);
  EXPECT_EQ(g["presentation"]["display"], "⟨a, b | a^2, b^3, b^a = b^2⟩");
  EXPECT_EQ(g["lattice"]["class_count"], 4);
  EXPECT_EQ(g["characters"]["complex"].size(), 3u);
  EXPECT_EQ(g["links"]["lattice"], "/group/6.1/lattice");
  EXPECT_TRUE(g.contains("stage_flags"));
}

TEST(Api, UnknownGroupSuggestsNearestOrder) {
  const Reply r = get("/group/7.1");
  EXPECT_EQ(r.status, 404);
  ASSERT_TRUE(r.body["error"].contains("suggestions"));
  const auto& s = r.body["error"]["suggestions"];
  ASSERT_FALSE(s.empty());
  // Orders 6 and 8 are equally near; the smaller comes first.
  EXPECT_EQ(s[0], "6.1");
  EXPECT_EQ(get("/nowhere").status, 404);
}

TEST(Api, LatticeOfA4) {
  const Reply r = get("/group/12.3/lattice");
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.body["node_count"], 5);
  std::multiset<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> edges;
  std::map<std::string, std::uint64_t> order;
  for (const auto& n : r.body["nodes"]) order[n["label"]] = n["order"];
  for (const auto& e : r.body["edges"]) edges.emplace(order.at(e["lower"]), order.at(e["upper"]), e["index"]);
  const std::multiset<std::tuple<std::uint64_t, std::uint64_t, std::uint64_t>> want{
      {1, 2, 2}, {1, 3, 3}, {2, 4, 2}, {4, 12, 3}, {3, 12, 4}};
  EXPECT_EQ(edges, want);
}

TEST(Api, NormalSubgroupLatticeOfS3) {
  const Reply r = get("/group/6.1/lattice", {{"normals_only", "true"}});
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.body["node_count"], 3);
  EXPECT_EQ(r.body["edges"].size(), 2u);
  for (const auto& n : r.body["nodes"]) EXPECT_TRUE(n["normal"].get<bool>());
}

TEST(Api, AutLatticeOfC2to5) {
  const Reply r = get("/group/32.51/lattice", {{"mode", "aut"}});
  EXPECT_EQ(r.status, 200);
  // One node per subgroup order; the order-8 node covers all 155 subgroups.
  EXPECT_EQ(r.body["node_count"], 6);
  for (const auto& n : r.body["nodes"]) {
    if (n["order"] == 8) {
      EXPECT_EQ(n["subgroups"], 155);
    }
  }

  const Reply conj = get("/group/32.51/lattice");
  EXPECT_EQ(conj.body["too_large"], true);
  EXPECT_EQ(conj.body["full_url"], "/group/32.51/lattice?mode=conj&normals_only=false&full=true");
  EXPECT_EQ(get("/group/32.51/lattice", {{"full", "true"}}).body["nodes"].size(), 374u);
}

TEST(Api, PartialLatticeIsAConflict) {
  const Reply r = get("/group/64.267/lattice");
  EXPECT_EQ(r.status, 409);
  EXPECT_FALSE(r.body["error"]["reason"].get<std::string>().empty());
  EXPECT_EQ(get("/group/64.267/characters").status, 409);
  EXPECT_EQ(get("/group/6.1/lattice", {{"mode", "sideways"}}).status, 400);
}

TEST(Api, CharacterTables) {
  const Reply s3 = get("/group/6.1/characters");
  EXPECT_EQ(s3.status, 200);
  EXPECT_EQ(s3.body["classes"].size(), 3u);
  EXPECT_EQ(s3.body["table"]["characters"].size(), 3u);
  EXPECT_EQ(s3.body["table"]["rational"].size(), 3u);
  for (const auto& c : s3.body["table"]["characters"]) EXPECT_EQ(c["values"].size(), 3u);

  const Reply q8 = get("/group/8.4/characters");
  int quaternionic = 0;
  for (const auto& c : q8.body["table"]["characters"]) quaternionic += c["indicator"] == -1;
  EXPECT_EQ(quaternionic, 1);

  const Reply c4 = get("/group/4.1/characters");
  const auto& labels = c4.body["table"]["class_labels"];
  const auto& squares = c4.body["table"]["power_maps"]["2"];
  for (std::size_t i = 0; i < labels.size(); ++i) {
    if (labels[i] == "4A1") {
      EXPECT_EQ(squares[i], "2A");
    }
  }
}

TEST(Api, SubgroupAndCharacterPages) {
  const Reply sub = get("/subgroup/12.3.4.a1.a1");
  EXPECT_EQ(sub.status, 200);
  EXPECT_EQ(sub.body["subgroup"]["order"], 3);
  EXPECT_EQ(sub.body["subgroup"]["contained_in"], json::array({"12.3.1.a1.a1"}));

  const Reply aut = get("/subgroup/32.51.4.a1");
  EXPECT_EQ(aut.status, 200);
  EXPECT_EQ(aut.body["autjugacy_class"]["classes"].size(), 155u);

  EXPECT_EQ(get("/subgroup/12.3.99.z1.a1").status, 404);

  const Reply chi = get("/character/6.1.2a");
  EXPECT_EQ(chi.status, 200);
  EXPECT_EQ(chi.body["rational_character"]["degree"], 2);
  const Reply complex = get("/character/6.1.2a1");
  EXPECT_EQ(complex.status, 200);
  EXPECT_EQ(complex.body["character"]["values"][0], "2");
  EXPECT_EQ(get("/character/6.1.9z").status, 404);
}

TEST(Api, MethodsAndDeterminism) {
  EXPECT_EQ(handle_request(shared_store(), "OPTIONS", "/groups", {}).status, 204);
  EXPECT_EQ(handle_request(shared_store(), "POST", "/groups", {}).status, 405);
  const auto a = handle_request(shared_store(), "GET", "/group/12.3/lattice", {});
  const auto b = handle_request(shared_store(), "GET", "/group/12.3/lattice", {});
  EXPECT_EQ(a.body, b.body);
}
