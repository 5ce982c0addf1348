#include <gtest/gtest.h>

#include <atomic>
#include <fstream>
#include <thread>

#include <httplib.h>

#include "ccv/service/http.hpp"
#include "fixtures.hpp"

namespace ccv::service {
namespace {

std::string text(const std::string& relative) {
  std::ifstream in(testing::data_path(relative));
  return {std::istreambuf_iterator<char>(in), {}};
}

json apply_body(std::uint64_t version, const std::string& chooser = "alice") {
  return {{"expectedVersion", version}, {"chooser", chooser}};
}

TEST(GraphStore, VersionsIncreaseAndHistoryIsKept) {
  GraphStore store;
  auto g = testing::load("examples/cr1-three-statuses.ttl");
  EXPECT_EQ(store.put("cr1", g), 1u);
  EXPECT_EQ(store.put("cr1", g), 2u);
  EXPECT_EQ(*store.get("cr1")->graph, g);
  EXPECT_EQ(*store.at("cr1", 1)->graph, g);
  EXPECT_TRUE(store.at("cr1", 0)->graph->empty());
  EXPECT_FALSE(store.get("other"));
  EXPECT_EQ(store.audit("cr1").size(), 2u);
  EXPECT_TRUE(store.audit("cr1")[1].patch.empty());
}

TEST(GraphStore, ApplyChecksExpectedVersion) {
  GraphStore store;
  store.put("g", testing::load("examples/two-statuses.ttl"));
  repair::RepairModel m;
  m.deletions.insert(testing::triple(testing::ex("contb2b"), vocab::has_contract_status, testing::core("statusPending")));
  EXPECT_EQ(store.apply("g", 2, m, "bob").status, GraphStore::Status::conflict);
  EXPECT_EQ(store.get("g")->version, 1u);
  auto c = store.apply("g", 1, m, "bob");
  EXPECT_EQ(c.status, GraphStore::Status::applied);
  EXPECT_EQ(c.version, 2u);
  EXPECT_EQ(store.apply("missing", 1, m, "bob").status, GraphStore::Status::missing);
  EXPECT_FALSE(store.get("g")->graph->contains(*m.deletions.begin()));
  EXPECT_TRUE(store.at("g", 1)->graph->contains(*m.deletions.begin()));
}

TEST(Service, ValidationPayload) {
  CcvService svc;
  svc.put_graph("ok", text("examples/conforming.ttl"));
  auto r = svc.validation("ok");
  EXPECT_EQ(r.status, 200);
  EXPECT_EQ(r.body["conforms"], true);
  EXPECT_EQ(r.body["violations"], json::array());
  EXPECT_EQ(svc.validation("nope").status, 404);

  ServiceOptions cr3;
  cr3.shapes = testing::ccv_shapes({"FunctionalContractStatusShape", "ContractViolationShape"});
  CcvService narrow(cr3);
  narrow.put_graph("cr3", text("examples/cr3-violated-obligation.ttl"));
  auto v = narrow.validation("cr3");
  ASSERT_EQ(v.body["violations"].size(), 1u);
  EXPECT_EQ(v.body["violations"][0]["focusNode"], ":contb2b");
  EXPECT_EQ(v.body["violations"][0]["shape"], ":ContractViolationShape");
  EXPECT_EQ(v.body["violations"][0]["component"], "sh:OrConstraintComponent");
}

TEST(Service, PutRejectsMalformedTurtle) {
  CcvService svc;
  auto r = svc.put_graph("bad", ":a :b");
  EXPECT_EQ(r.status, 400);
  EXPECT_EQ(r.body["error"], "parse");
  EXPECT_EQ(r.body["line"], 1);
  EXPECT_FALSE(svc.store().get("bad"));
  EXPECT_EQ(svc.put_graph("../x", "").status, 400);
}

TEST(Service, RepairsAndApply) {
  CcvService svc;
  svc.put_graph("cr1", text("examples/cr1-three-statuses.ttl"));
  auto r = svc.repairs("cr1");
  ASSERT_EQ(r.status, 200);
  ASSERT_EQ(r.body["models"].size(), 1u);
  const auto& m = r.body["models"][0];
  EXPECT_EQ(m["optimal"], true);
  EXPECT_EQ(m["additions"], json::array());
  EXPECT_EQ(m["deletions"], (json::array({{{"subject", ":contb2b"}, {"predicate", "smashHitCore:hasContractStatus"},
                                          {"object", "smashHitCore:statusFulfilled"}},
                                         {{"subject", ":contb2b"}, {"predicate", "smashHitCore:hasContractStatus"},
                                          {"object", "smashHitCore:statusPending"}}})));
  std::string id = m["id"];

  auto conflict = svc.apply("cr1", id, apply_body(7));
  EXPECT_EQ(conflict.status, 409);
  EXPECT_EQ(svc.store().get("cr1")->version, 1u);

  auto ok = svc.apply("cr1", id, apply_body(1));
  ASSERT_EQ(ok.status, 200) << ok.body.dump();
  EXPECT_EQ(ok.body["version"], 2);
  EXPECT_EQ(ok.body["validation"]["conforms"], true);

  EXPECT_EQ(svc.apply("cr1", id, apply_body(1)).status, 410);
  EXPECT_EQ(svc.apply("cr1", id, apply_body(2)).status, 410);
  EXPECT_EQ(svc.repairs("cr1").body["models"], json::array());
  EXPECT_EQ(svc.apply("cr1", id, json{{"chooser", "x"}}).status, 422);
}

TEST(Service, StrategiesOffExposesBothModels) {
  CcvService svc;
  svc.put_graph("s3", text("examples/two-statuses.ttl"));
  auto off = svc.repairs("s3", false);
  ASSERT_EQ(off.body["models"].size(), 2u);
  EXPECT_EQ(off.body["models"][0]["optimal"], true);
  EXPECT_EQ(off.body["models"][1]["optimal"], false);
  EXPECT_EQ(svc.repairs("s3", true).body["models"].size(), 1u);
  // Either listed model can be chosen.
  std::string second = off.body["models"][1]["id"];
  EXPECT_EQ(svc.apply("s3", second, apply_body(1)).status, 200);
}

TEST(Service, ApplyRecomputesUnlistedModels) {
  CcvService svc;
  svc.put_graph("cr1", text("examples/cr1-three-statuses.ttl"));
  CcvService other;
  other.put_graph("cr1", text("examples/cr1-three-statuses.ttl"));
  std::string id = other.repairs("cr1").body["models"][0]["id"];
  EXPECT_EQ(svc.apply("cr1", id, apply_body(1)).status, 200);
  EXPECT_EQ(svc.apply("cr1", "0123456789abcdef", apply_body(2)).status, 410);
}

TEST(Service, UnrepairableIsStructured) {
  CcvService svc;
  svc.put_graph("u", text("examples/unrepairable.ttl"));
  auto r = svc.repairs("u");
  EXPECT_EQ(r.status, 422);
  EXPECT_EQ(r.body["error"], "unrepairable");
  EXPECT_EQ(r.body["blocking"], json::array({":EndDateConsistencyShape @ :obligation1"}));
}

TEST(Service, ConcurrentApplyHasOneWinner) {
  for (int round = 0; round < 20; ++round) {
    CcvService svc;
    svc.put_graph("cr1", text("examples/cr1-three-statuses.ttl"));
    std::string id = svc.repairs("cr1").body["models"][0]["id"];
    std::atomic<int> won{0}, lost{0};
    std::vector<std::thread> threads;
    for (int t = 0; t < 8; ++t)
      threads.emplace_back([&, t] {
        auto r = svc.apply("cr1", id, apply_body(1, "user" + std::to_string(t)));
        if (r.status == 200) ++won;
        else if (r.status == 409 || r.status == 410) ++lost;
      });
    for (auto& t : threads) t.join();
    EXPECT_EQ(won, 1);
    EXPECT_EQ(lost, 7);
    EXPECT_EQ(svc.store().get("cr1")->version, 2u);
  }
}

TEST(Service, AuditReplayReproducesLatest) {
  CcvService svc;
  svc.put_graph("g", text("examples/two-statuses.ttl"));
  svc.put_graph("g", text("examples/cr1-three-statuses.ttl"));
  std::string id = svc.repairs("g").body["models"][0]["id"];
  ASSERT_EQ(svc.apply("g", id, apply_body(2, "carol")).status, 200);
  auto log = svc.store().audit("g");
  ASSERT_EQ(log.size(), 3u);
  EXPECT_EQ(log[2].chooser, "carol");
  EXPECT_EQ(log[2].from_version, 2u);
  EXPECT_EQ(replay(log), *svc.store().get("g")->graph);
  auto a = svc.audit("g");
  EXPECT_EQ(a.body["entries"].size(), 3u);
  EXPECT_EQ(a.body["entries"][2]["model"], nullptr);
  EXPECT_EQ(a.body["entries"][2]["deletions"].size(), 2u);
}

TEST(Service, ImportsDirectory) {
  CcvService svc;
  auto names = svc.import_directory(testing::data_path("examples"));
  EXPECT_EQ(names.size(), 7u);
  auto list = svc.list_graphs().body["graphs"];
  ASSERT_EQ(list.size(), 7u);
  EXPECT_EQ(list[0]["name"], "conforming");
  EXPECT_EQ(list[0]["conforms"], true);
  EXPECT_EQ(list[0]["version"], 1);
}

TEST(Http, EndToEnd) {
  CcvService svc;
  httplib::Server server;
  install_routes(server, svc);
  int port = server.bind_to_any_port("127.0.0.1");
  std::thread loop([&] { server.listen_after_bind(); });
  server.wait_until_ready();
  httplib::Client client("127.0.0.1", port);

  auto put = client.Put("/graphs/cr1", text("examples/cr1-three-statuses.ttl"), "text/turtle");
  ASSERT_TRUE(put);
  EXPECT_EQ(put->status, 200);

  auto list = client.Get("/graphs");
  EXPECT_EQ(json::parse(list->body)["graphs"][0]["conforms"], false);

  auto ttl = client.Get("/graphs/cr1");
  EXPECT_EQ(ttl->get_header_value("X-Graph-Version"), "1");
  EXPECT_NE(ttl->body.find("smashHitCore:statusViolated"), std::string::npos);

  auto repairs = json::parse(client.Get("/graphs/cr1/repairs")->body);
  std::string id = repairs["models"][0]["id"];
  auto applied = client.Post("/graphs/cr1/repairs/" + id + "/apply", apply_body(1).dump(), "application/json");
  EXPECT_EQ(applied->status, 200);
  EXPECT_EQ(json::parse(client.Get("/graphs/cr1/validation")->body)["conforms"], true);
  EXPECT_EQ(client.Post("/graphs/cr1/repairs/" + id + "/apply", "{", "application/json")->status, 400);
  EXPECT_EQ(client.Get("/graphs/none/validation")->status, 404);
  EXPECT_EQ(json::parse(client.Get("/graphs/cr1/audit")->body)["entries"].size(), 2u);

  server.stop();
  loop.join();
}

}  // namespace
}  // namespace ccv::service
