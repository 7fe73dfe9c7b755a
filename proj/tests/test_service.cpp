#include <doctest.h>

#include <httplib.h>

#include <condition_variable>
#include <cstdio>
#include <fstream>
#include <set>
#include <sstream>
#include <thread>

#include "coarsedim/cli.hpp"
#include "coarsedim/json_io.hpp"
#include "coarsedim/service.hpp"

using namespace coarsedim;

namespace {

const std::string kLine = "grid(n=1,k=1,s=8)";
const std::string kSmall = "grid(n=1,k=1,s=2)";

struct Fixture {
    SessionService svc;
    Fixture() {
        for (const auto& s : default_spaces()) svc.add_space(s);
    }
};

SessionService::Response post(SessionService& svc, const std::string& path, const Json& body) {
    return svc.handle("POST", path, {}, canonical_dump(body));
}

SessionService::Response get(SessionService& svc, const std::string& path,
                             const std::map<std::string, std::string>& q = {}) {
    return svc.handle("GET", path, q, "");
}

struct CliRun {
    int code;
    std::string out;
    std::string err;
};

CliRun cli(const std::vector<std::string>& args, const std::string& input = "") {
    std::istringstream in(input);
    std::ostringstream out, err;
    int code = run_cli(args, in, out, err);
    return {code, out.str(), err.str()};
}

std::string write_temp(const std::string& name, const std::string& text) {
    std::string path = "coarsedim_test_" + name + ".json";
    std::ofstream(path) << text;
    return path;
}

Json game_request(const std::string& space, Dist bound, std::size_t kcap, Dist rmax) {
    return {{"space", space}, {"bound", bound}, {"kcap", kcap}, {"rmax", rmax}};
}

}  // namespace

TEST_CASE("game sessions over the request handler") {
    Fixture fx;
    auto& svc = fx.svc;
    auto created = post(svc, "/games", game_request(kLine, 2, 4, 6));
    REQUIRE(created.status == 201);
    auto cj = parse_json(created.body);
    CHECK(cj["id"] == "1");
    CHECK(cj["state"]["rounds"].empty());
    CHECK(cj["state"]["status"] == "ongoing");

    auto moved = post(svc, "/games/1/move", {{"r", 2}});
    REQUIRE(moved.status == 200);
    auto mj = parse_json(moved.body);
    CHECK(mj["k"] == 2);
    CHECK(mj["round"] == 1);
    CHECK(mj["cover"]["families"].size() == 2);
    CHECK(mj["status"] == "ongoing");

    auto state = get(svc, "/games/1");
    CHECK(state.status == 200);
    CHECK(parse_json(state.body) == mj["state"]);

    auto exported = parse_json(get(svc, "/games/1/export").body);
    CHECK(exported["space"]["label"] == kLine);
    CHECK(exported["transcript"] == mj["state"]);

    CHECK(post(svc, "/games/1/move", {{"r", 1}}).status == 400);
    CHECK(post(svc, "/games/1/move", {{"r", "two"}}).status == 400);
    CHECK(post(svc, "/games/9/move", {{"r", 2}}).status == 404);
    CHECK(parse_json(get(svc, "/games/1").body) == mj["state"]);

    auto second = post(svc, "/games", game_request(kLine, 2, 4, 6));
    CHECK(parse_json(second.body)["id"] == "2");
}

TEST_CASE("moves on an ended game are conflicts and change nothing") {
    Fixture fx;
    auto& svc = fx.svc;
    const std::string point = "grid(n=1,k=1,s=0)";
    REQUIRE(post(svc, "/games", game_request(point, 1, 2, 5)).status == 201);
    auto won = post(svc, "/games/1/move", {{"r", 3}});
    REQUIRE(won.status == 200);
    CHECK(parse_json(won.body)["status"] == "A-wins");
    CHECK(parse_json(won.body)["k"] == 1);
    const std::string before = get(svc, "/games/1").body;
    auto again = post(svc, "/games/1/move", {{"r", 4}});
    CHECK(again.status == 409);
    CHECK(parse_json(again.body)["error"] == "conflict");
    CHECK(get(svc, "/games/1").body == before);
}

TEST_CASE("game creation errors") {
    Fixture fx;
    auto& svc = fx.svc;
    CHECK(post(svc, "/games", game_request("nowhere", 2, 4, 6)).status == 404);
    CHECK(post(svc, "/games", game_request(kLine, 2, 0, 6)).status == 400);
    CHECK(svc.handle("POST", "/games", {}, "{oops").status == 400);
    auto missing = post(svc, "/games", {{"space", kLine}});
    CHECK(missing.status == 400);
    auto body = parse_json(missing.body);
    CHECK(body.contains("error"));
    CHECK(body.contains("detail"));
}

TEST_CASE("routing") {
    Fixture fx;
    auto& svc = fx.svc;
    CHECK(svc.handle("DELETE", "/games", {}, "").status == 405);
    CHECK(svc.handle("GET", "/games", {}, "").status == 405);
    CHECK(get(svc, "/nothing/here").status == 404);
}

TEST_CASE("space registry") {
    Fixture fx;
    auto& svc = fx.svc;
    auto list = parse_json(get(svc, "/spaces").body);
    CHECK(list["spaces"].size() == default_spaces().size());

    auto one = get(svc, "/spaces", {{"label", kSmall}});
    REQUIRE(one.status == 200);
    CHECK(one.body == canonical_dump(space_to_json(build_grid_space(1, 1, 2))));
    CHECK(get(svc, "/spaces", {{"label", "absent"}}).status == 404);

    auto fresh = space_to_json(FiniteMetricSpace::from_matrix("tri", {"a", "b", "c"}, {0, 1, 2, 1, 0, 1, 2, 1, 0}));
    CHECK(post(svc, "/spaces", fresh).status == 201);
    CHECK(post(svc, "/spaces", fresh).status == 200);
    auto clash = space_to_json(FiniteMetricSpace::from_matrix("tri", {"a", "b", "c"}, {0, 1, 1, 1, 0, 1, 1, 1, 0}));
    CHECK(post(svc, "/spaces", clash).status == 409);
    auto broken = space_to_json(FiniteMetricSpace::from_matrix("bad", {"a", "b", "c"}, {0, 1, 5, 1, 0, 1, 5, 1, 0}));
    CHECK(post(svc, "/spaces", broken).status == 400);
    CHECK(parse_json(get(svc, "/spaces").body)["spaces"].size() == default_spaces().size() + 1);
}

TEST_CASE("empirical trees over the service") {
    Fixture fx;
    auto& svc = fx.svc;
    auto res = get(svc, "/trees/empirical", {{"space", kSmall}, {"rmax", "2"}, {"lmax", "1"}, {"bound", "2"}});
    REQUIRE(res.status == 200);
    auto j = parse_json(res.body);
    std::set<Sequence> nodes;
    for (const auto& n : j["tree"]["nodes"]) nodes.insert(n.get<Sequence>());
    CHECK(nodes.count({2}) == 1);
    CHECK(j["rank"] == 1);

    auto point = get(svc, "/trees/empirical",
                     {{"space", "grid(n=1,k=1,s=0)"}, {"rmax", "3"}, {"lmax", "2"}, {"bound", "0"}});
    CHECK(parse_json(point.body)["tree"]["nodes"].empty());
    CHECK(parse_json(point.body)["rank"].is_null());

    CHECK(get(svc, "/trees/empirical", {{"space", kSmall}, {"rmax", "99"}, {"lmax", "1"}, {"bound", "2"}}).status == 400);
    CHECK(get(svc, "/trees/empirical", {{"space", kSmall}, {"rmax", "x"}, {"lmax", "1"}, {"bound", "2"}}).status == 400);
    CHECK(get(svc, "/trees/empirical", {{"space", kSmall}, {"lmax", "1"}, {"bound", "2"}}).status == 400);
    CHECK(get(svc, "/trees/empirical",
              {{"space", kSmall}, {"rmax", "2"}, {"lmax", "1"}, {"bound", "2"}, {"variant", "odd"}})
              .status == 400);
}

TEST_CASE("service and CLI emit identical JSON for identical inputs") {
    Fixture fx;
    auto& svc = fx.svc;
    const std::string space_file = write_temp("line", canonical_dump(space_to_json(build_grid_space(1, 1, 8))));

    REQUIRE(post(svc, "/games", game_request(kLine, 2, 4, 6)).status == 201);
    for (Dist r : {2, 4, 4}) post(svc, "/games/1/move", {{"r", r}});
    auto game = cli({"game", "play", "--space", space_file, "--bound", "2", "--kcap", "4", "--rmax", "6", "--b-script",
                     "2,4,4"});
    CHECK(game.code == 0);
    CHECK(game.out == get(svc, "/games/1").body + "\n");

    auto tree = cli({"tree", "empirical", "--space", space_file, "--rmax", "3", "--lmax", "2", "--bound", "2"});
    CHECK(tree.code == 0);
    auto served = get(svc, "/trees/empirical", {{"space", kLine}, {"rmax", "3"}, {"lmax", "2"}, {"bound", "2"}});
    CHECK(tree.out == served.body + "\n");

    auto space = cli({"space", "build", "grid", "--n", "1", "--s", "8"});
    CHECK(space.out == get(svc, "/spaces", {{"label", kLine}}).body + "\n");
    std::remove(space_file.c_str());
}

TEST_CASE("CLI exit codes") {
    CHECK(cli({"--no-such-flag"}).code == 2);
    CHECK(cli({"cover", "solve", "--no-such-flag"}).code == 2);
    CHECK(cli({}).code == 2);
    CHECK(cli({"game", "play", "--space", "x.json", "--bound", "2", "--kcap", "2", "--rmax", "2"}).code == 2);
    CHECK(cli({"--help"}).code == 0);

    const std::string small = canonical_dump(space_to_json(build_grid_space(1, 1, 2)));
    auto unsat = cli({"cover", "solve", "--s", "2", "--bound", "2"}, small);
    CHECK(unsat.code == 0);
    CHECK(parse_json(unsat.out)["status"] == "UNSAT");
    auto sat = cli({"cover", "solve", "--s", "2,2", "--bound", "2"}, small);
    CHECK(parse_json(sat.out)["status"] == "SAT");

    const std::string space_file = write_temp("small", small);
    const std::string bad_cover = write_temp(
        "bad_cover", R"j({"space":"grid(n=1,k=1,s=2)","s":[2],"D":2,"families":[[["-2","-1","0"],["1","2"]]]})j");
    auto check = cli({"cover", "check", "--space", space_file, "--cover", bad_cover});
    CHECK(check.code == 1);
    CHECK(parse_json(check.out)["violation"]["predicate"] == "disjointness");
    std::remove(bad_cover.c_str());
    std::remove(space_file.c_str());

    CHECK(cli({"oracle", "run", "--suite", "all"}).code == 0);
    CHECK(cli({"oracle", "run", "--suite", "bogus"}).code == 1);
    CHECK(cli({"cover", "solve", "--s", "2", "--bound", "2"}, "not json").code == 1);
}

TEST_CASE("CLI covers the remaining subcommands") {
    auto brick = cli({"cover", "brick", "--n", "2", "--r", "2", "--box", "8"});
    CHECK(brick.code == 0);
    CHECK(parse_json(brick.out)["families"] == 3);

    auto rank = cli({"tree", "rank", "--method", "levels"}, R"({"nodes":[[],[1],[2],[2,1]]})");
    CHECK(parse_json(rank.out)["rank"] == 2);
    auto kb = cli({"tree", "kb-sort"}, R"({"nodes":[[],[1],[2],[2,1]]})");
    CHECK(parse_json(kb.out)["order"] == parse_json("[[1],[2,1],[2],[]]"));
    auto matrix = cli({"tree", "matrix", "--root", "2"}, R"({"nodes":[[],[1],[2],[2,1]]})");
    CHECK(parse_json(matrix.out)["nodes"] == parse_json("[[],[1]]"));

    auto net = cli({"space", "build", "net", "--r", "3"}, cli({"space", "build", "grid", "--n", "1", "--s", "4"}).out);
    CHECK(parse_json(net.out)["points"] == parse_json(R"(["-4","-1","2"])"));
    auto cupc = cli({"experiment", "cupc", "--c", "1,2", "--box", "4", "--bound", "2,4", "--rmax", "3", "--json"});
    CHECK(cupc.code == 0);
    CHECK(parse_json(cupc.out)["nonincreasing_in_D"] == true);
    auto valid = cli({"space", "validate"}, cli({"space", "build", "cupc", "--c", "1,2", "--box", "2"}).out);
    CHECK(valid.code == 0);

    auto interactive_space = write_temp("pt", cli({"space", "build", "grid", "--n", "1", "--s", "0"}).out);
    auto played = cli({"game", "play", "--space", interactive_space, "--bound", "0", "--kcap", "2", "--rmax", "4",
                       "--interactive"},
                      "x\n3\n");
    CHECK(played.code == 0);
    CHECK(parse_json(played.out)["status"] == "A-wins");
    CHECK(played.err.find("not an integer") != std::string::npos);
    std::remove(interactive_space.c_str());
}

TEST_CASE("concurrent sessions stay isolated") {
    Fixture fx;
    auto& svc = fx.svc;
    std::vector<std::thread> workers;
    std::vector<std::string> ids(6);
    for (std::size_t i = 0; i < ids.size(); ++i) {
        workers.emplace_back([&, i] {
            auto res = post(svc, "/games", game_request(kLine, 2, 4, 6));
            ids[i] = parse_json(res.body)["id"].get<std::string>();
            post(svc, "/games/" + ids[i] + "/move", {{"r", static_cast<Dist>(1 + i % 3)}});
        });
    }
    for (auto& w : workers) w.join();
    CHECK(std::set<std::string>(ids.begin(), ids.end()).size() == ids.size());
    for (std::size_t i = 0; i < ids.size(); ++i) {
        auto j = parse_json(get(svc, "/games/" + ids[i]).body);
        REQUIRE(j["rounds"].size() == 1);
        CHECK(j["rounds"][0]["r"] == static_cast<Dist>(1 + i % 3));
    }
}

TEST_CASE("HTTP round trip on an ephemeral port") {
    Fixture fx;
    auto& svc = fx.svc;
    std::mutex m;
    std::condition_variable cv;
    int port = 0;
    std::function<void()> stop;
    std::thread server([&] {
        serve(svc, "127.0.0.1", 0, [&](int p, std::function<void()> s) {
            std::lock_guard lock(m);
            port = p;
            stop = std::move(s);
            cv.notify_one();
        });
    });
    {
        std::unique_lock lock(m);
        REQUIRE(cv.wait_for(lock, std::chrono::seconds(10), [&] { return port > 0; }));
    }
    httplib::Client client("127.0.0.1", port);
    auto created = client.Post("/games", canonical_dump(game_request(kLine, 2, 4, 6)), "application/json");
    REQUIRE(created);
    CHECK(created->status == 201);
    auto moved = client.Post("/games/1/move", R"({"r":2})", "application/json");
    REQUIRE(moved);
    CHECK(moved->status == 200);
    CHECK(parse_json(moved->body)["k"] == 2);
    auto state = client.Get("/games/1");
    REQUIRE(state);
    CHECK(state->body == svc.handle("GET", "/games/1", {}, "").body);
    httplib::Params params{{"space", kSmall}, {"rmax", "2"}, {"lmax", "1"}, {"bound", "2"}};
    auto tree = client.Get("/trees/empirical", params, httplib::Headers{});
    REQUIRE(tree);
    CHECK(tree->status == 200);
    auto missing = client.Get("/games/77");
    REQUIRE(missing);
    CHECK(missing->status == 404);
    stop();
    server.join();
}
