#include <gtest/gtest.h>

#include <httplib.h>

#include <thread>

#include "mbd/service.hpp"
#include "oracle.hpp"

using namespace mbd;

namespace {

json create(Service& svc, const std::string& board, const std::string& human, const std::string& engine,
            const std::string& first = "") {
  json req{{"board", board}, {"human", human}, {"engine", engine}};
  if (!first.empty()) req["first"] = first;
  return svc.create_session(req);
}

int status_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const ServiceError& e) {
    return e.status();
  }
  return 0;
}

}  // namespace

TEST(Service, ExactEngineOpensOptimally) {
  Service svc;
  const json s = create(svc, "grid2:4", "Staller", "exact");
  ASSERT_EQ(s["record"]["moves"].size(), 1u);
  const int d1 = s["record"]["moves"][0]["vertex"];
  // Independent check: the opening keeps the naive minimax value.
  const Position start = new_position(Grid2(4).graph(), {}, {}, Player::Dominator);
  EXPECT_EQ(oracle::naive_value(start.apply(Move::claim(d1))) + 1, oracle::naive_value(start));
  EXPECT_EQ(s["position"]["to_move"], "Staller");
  EXPECT_EQ(s["engine_exact"], true);
}

TEST(Service, ScriptedGridStrategy) {
  Service svc;
  const json s = create(svc, "grid2:13", "Staller", "strategy:sd_p2p13");
  ASSERT_EQ(s["record"]["moves"].size(), 1u);
  EXPECT_EQ(s["record"]["moves"][0]["label"], "v7");
  const json after = svc.post_move(s["id"], {{"vertex", "u5"}});
  ASSERT_EQ(after["record"]["moves"].size(), 3u);
  EXPECT_EQ(after["record"]["moves"][2]["label"], "u9");
}

TEST(Service, StallerEngineWaitsForDominator) {
  Service svc;
  const json s = create(svc, "rho:4", "Dominator", "strategy:staller-rho");
  EXPECT_TRUE(s["record"]["moves"].empty());
  EXPECT_EQ(s["position"]["to_move"], "Dominator");
  const json after = svc.post_move(s["id"], {{"vertex", 1}});
  EXPECT_EQ(after["record"]["moves"].size(), 2u);
}

TEST(Service, IllegalMovesLeaveStateUnchanged) {
  Service svc;
  const json s = create(svc, "grid2:4", "Staller", "exact");
  const std::string id = s["id"];
  const int d1 = s["record"]["moves"][0]["vertex"];
  EXPECT_EQ(status_of([&] { svc.post_move(id, {{"vertex", d1}}); }), 409);
  EXPECT_EQ(status_of([&] { svc.post_move(id, {{"vertex", "q9"}}); }), 409);
  EXPECT_EQ(status_of([&] { svc.post_move(id, {{"vertex", 99}}); }), 409);
  EXPECT_EQ(status_of([&] { svc.post_move(id, {{"nothing", 1}}); }), 400);
  EXPECT_EQ(svc.get_session(id), s);
}

TEST(Service, HumanWinEndsWithoutReply) {
  Service svc;
  // Two isolated vertices: whichever Dominator takes, Staller takes the other.
  const json s = create(svc, "empty:2", "Staller", "exact");
  const int d1 = s["record"]["moves"][0]["vertex"];
  const json after = svc.post_move(s["id"], {{"vertex", 1 - d1}});
  EXPECT_EQ(after["status"]["kind"], "StallerWin");
  EXPECT_EQ(after["status"]["isolated"], 1 - d1);
  EXPECT_EQ(after["record"]["moves"].size(), 2u);
  EXPECT_EQ(status_of([&] { svc.post_move(s["id"], {{"vertex", 0}}); }), 409);
}

TEST(Service, CreationErrors) {
  ServiceConfig cfg;
  cfg.max_exact_vertices = 8;
  Service svc(cfg);
  EXPECT_EQ(status_of([&] { create(svc, "grid2:5", "Staller", "exact"); }), 422);
  EXPECT_EQ(status_of([&] { create(svc, "grid2:5", "Dominator", "strategy:sd_p2p13"); }), 422);
  EXPECT_EQ(status_of([&] { create(svc, "nope:5", "Staller", "exact"); }), 400);
  EXPECT_EQ(status_of([&] { create(svc, "path:3", "Staller", "oracle"); }), 400);
  EXPECT_EQ(status_of([&] { svc.create_session(json::array()); }), 400);
  EXPECT_EQ(status_of([&] { svc.get_session("0123"); }), 404);
  EXPECT_EQ(svc.session_count(), 0u);
}

TEST(Service, EvalOfFreshSGame) {
  Service svc;
  const json s = create(svc, "grid2:3", "Staller", "exact", "Staller");
  EXPECT_TRUE(s["record"]["moves"].empty());
  const json e = svc.eval(s["id"]);
  EXPECT_EQ(e["value"]["claims"], 3);
  EXPECT_EQ(e["bound"], "exact");
  EXPECT_EQ(e["exhausted"], false);
  EXPECT_FALSE(e["best_move"].is_null());
}

TEST(Service, EvalListsTriangleTrap) {
  Service svc;
  const Board b = parse_board("rho:5");
  const Grid2 grid(5);
  const Position p = Position::restore(b.start.graph_ptr(), {}, VertexSet::of({grid.v(2), grid.u(3), grid.v(4)}),
                                       b.start.predom(), Player::Dominator, 0);
  const json e = svc.eval_position(b, p, true);
  ASSERT_FALSE(e["traps"].empty());
  EXPECT_EQ(e["traps"][0]["name"], "TriangleTrap@3");
  EXPECT_EQ(e["traps"][0]["reply_label"], "v3");
}

TEST(Service, OversizedBoardGivesBound) {
  ServiceConfig cfg;
  cfg.budget_ms = 50;
  Service svc(cfg);
  const json s = create(svc, "grid2:13", "Staller", "strategy:sd_p2p13");
  const json e = svc.eval(s["id"]);
  EXPECT_EQ(e["exhausted"], true);
  EXPECT_EQ(e["bound"], "lower");
  EXPECT_TRUE(e["best_move"].is_null());

  ServiceConfig tight;
  tight.budget_ms = 1;
  tight.solve.node_limit = 1000;
  Service small(tight);
  const json t = create(small, "grid2:8", "Dominator", "exact");
  const json te = small.eval(t["id"]);
  EXPECT_EQ(te["exhausted"], true);
  // A Staller reply still arrives, flagged as not proof-backed.
  const json moved = small.post_move(t["id"], {{"vertex", "u4"}});
  EXPECT_EQ(moved["record"]["moves"].size(), 2u);
  EXPECT_EQ(moved["engine_exact"], false);
  EXPECT_FALSE(moved["engine_note"].get<std::string>().empty());
}

TEST(Service, RecordReplaysAndParityHolds) {
  Service svc;
  json s = create(svc, "grid2:4", "Staller", "exact");
  const std::string id = s["id"];
  while (s["status"]["kind"] == "Ongoing") {
    const json pos = s["position"];
    std::vector<int> dom = pos["dom"], stall = pos["stall"];
    int pick = -1;
    for (int v = 0; v < 8 && pick < 0; ++v)
      if (std::find(dom.begin(), dom.end(), v) == dom.end() && std::find(stall.begin(), stall.end(), v) == stall.end())
        pick = v;
    const std::size_t before = s["record"]["moves"].size();
    s = svc.post_move(id, {{"vertex", pick}});
    const std::size_t added = s["record"]["moves"].size() - before;
    EXPECT_TRUE(added == 2 || (added == 1 && s["status"]["kind"] != "Ongoing"));
  }
  // Exact engine: Dominator never needs more claims than the opening value.
  EXPECT_EQ(s["status"]["kind"], "DominatorWin");
  int claims = 0;
  Position replay = new_position(Grid2(4).graph(), {}, {}, Player::Dominator);
  for (const json& m : s["record"]["moves"]) {
    replay = replay.apply(Move::claim(m["vertex"].get<int>()));
    claims += m["player"] == "Dominator";
  }
  EXPECT_EQ(to_json(replay), s["position"]);
  EXPECT_LE(claims, oracle::naive_value(new_position(Grid2(4).graph(), {}, {}, Player::Dominator)));
}

TEST(Service, SessionsAreIsolatedUnderConcurrency) {
  Service svc;
  std::vector<std::string> ids;
  for (int i = 0; i < 8; ++i) ids.push_back(create(svc, "grid2:13", "Staller", "strategy:sd_p2p13")["id"]);
  std::vector<std::thread> pool;
  std::atomic<int> errors{0};
  for (const std::string& id : ids) {
    pool.emplace_back([&svc, &errors, id] {
      try {
        svc.post_move(id, {{"vertex", "u5"}});
        svc.eval(id);
      } catch (...) {
        ++errors;
      }
    });
  }
  for (auto& t : pool) t.join();
  EXPECT_EQ(errors, 0);
  for (const std::string& id : ids) {
    const json s = svc.get_session(id);
    ASSERT_EQ(s["record"]["moves"].size(), 3u);
    EXPECT_EQ(s["record"]["moves"][2]["label"], "u9");
  }
  svc.delete_session(ids[0]);
  EXPECT_EQ(svc.session_count(), 7u);
  EXPECT_EQ(status_of([&] { svc.delete_session(ids[0]); }), 404);
}

TEST(Http, RoundTripThroughServer) {
  Service svc;
  httplib::Server server;
  install_routes(server, svc);
  const int port = server.bind_to_any_port("127.0.0.1");
  ASSERT_GT(port, 0);
  std::thread th([&] { server.listen_after_bind(); });
  server.wait_until_ready();

  httplib::Client cli("127.0.0.1", port);
  auto r = cli.Post("/sessions", R"({"board":"grid2:13","human":"Staller","engine":"strategy:sd_p2p13"})",
                    "application/json");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 201);
  EXPECT_EQ(r->get_header_value("Access-Control-Allow-Origin"), "*");
  const json s = json::parse(r->body);
  const std::string id = s["id"];

  r = cli.Post("/sessions/" + id + "/moves", R"({"vertex":"u7"})", "application/json");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200);
  EXPECT_EQ(json::parse(r->body)["record"]["moves"][2]["label"], "u9");

  r = cli.Post("/sessions/" + id + "/moves", R"({"vertex":"u7"})", "application/json");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 409);
  const json err = json::parse(r->body);
  EXPECT_EQ(err["code"], "illegal_move");
  EXPECT_FALSE(err["reason"].get<std::string>().empty());

  r = cli.Post("/sessions/" + id + "/moves", "{not json", "application/json");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 400);

  r = cli.Get("/sessions/" + id);
  ASSERT_TRUE(r);
  EXPECT_EQ(json::parse(r->body)["record"]["moves"].size(), 3u);

  r = cli.Get("/sessions/" + id + "/eval");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 200);
  EXPECT_TRUE(json::parse(r->body).contains("traps"));

  r = cli.Options("/sessions");
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 204);
  EXPECT_FALSE(r->get_header_value("Access-Control-Allow-Methods").empty());

  r = cli.Delete("/sessions/" + id);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 204);
  r = cli.Get("/sessions/" + id);
  ASSERT_TRUE(r);
  EXPECT_EQ(r->status, 404);
  EXPECT_EQ(json::parse(r->body)["code"], "not_found");

  server.stop();
  th.join();
}
