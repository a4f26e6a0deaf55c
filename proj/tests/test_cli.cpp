#include "doctest.h"

#include "crossalg/cli.hpp"

using namespace crossalg;
using nlohmann::json;

namespace {

JobResult job(const std::string& cmd, json input, std::uint64_t seed = 0) {
    JobSpec j;
    j.command = cmd;
    j.input = std::move(input);
    j.seed = seed;
    return run(j);
}

}  // namespace

TEST_CASE("cli: documented examples") {
    auto r = job("metacyclic-class", json{{"params", {4, 2, 3, 2, 2}}});
    CHECK(r.status == 0);
    CHECK(r.document["class"] == json::array({1}));
    CHECK(r.document["group"] == "Z/2");
    auto c = job("cohomology", json::parse(R"({"group": {"cyclic": 2}, "module": {"factors": [2]}, "degree": 3})"));
    CHECK(c.status == 0);
    CHECK(c.document["invariant_factors"] == json::array({2}));
    const json& p = c.document["provenance"];
    CHECK(p["command"] == "cohomology");
    CHECK(p["version"] == kVersion);
    CHECK(p.contains("seed"));
    CHECK(p["caps"]["group_order"] == 96);
}

TEST_CASE("cli: exit statuses") {
    CHECK(job("cohomology", json::parse(R"({"group": {"cyclic": 2}, "degree": 3})")).status == 1);
    CHECK(job("cohomology", json::parse(R"({"group": {"cyclic": "two"}, "module": {"factors": [2]}, "degree": 3})")).status == 1);
    CHECK(job("no-such-command", json::object()).status == 1);
    CHECK(job("cohomology", json::parse(R"({"group": {"cyclic": 200}, "module": {"factors": [2]}, "degree": 1})")).status == 2);
    auto v = job("metacyclic-class", json{{"params", {4, 2, 3, 2, 4}}});
    CHECK(v.status == 3);
    CHECK(v.document["error"]["kind"] == "validation");
    // a table that is not a group
    CHECK(job("cohomology", json::parse(R"({"group": {"order": 2, "mul": [[0, 1], [1, 1]]}, "module": {"factors": [2]}, "degree": 1})"))
              .status == 3);
}

TEST_CASE("cli: group tables, twisted modules and algebras") {
    // C3 as a table; Z/7 with the generator acting by 2: H^1 = ker N / im(x-1) = 0 since 1+2+4 = 0 and x-1 = 1
    auto c = job("cohomology", json::parse(R"({"group": {"order": 3, "mul": [[0,1,2],[1,2,0],[2,0,1]]},
        "module": {"twisted": {"l": 7, "u": 2, "exponent_of": [0, 1, 2]}}, "degree": 1})"));
    REQUIRE(c.status == 0);
    CHECK(c.document["invariant_factors"] == json::array());
    auto a = job("azumaya", json::parse(R"({"algebra": {"tensor": [{"matrix": {"algebra": {"ring": {"zmod": 8}}, "size": 2}},
        {"opposite": {"matrix": {"algebra": {"ring": {"zmod": 8}}, "size": 2}}}]}})"));
    CHECK(a.document["azumaya"] == true);
    auto u = job("azumaya", json::parse(R"({"algebra": {"upper_triangular": {"ring": {"zmod": 2}, "size": 2}}})"));
    CHECK(u.document["azumaya"] == false);
    auto g = job("galois-check", json::parse(R"({"map_ring_action": {"group": {"cyclic": 2}, "points": 3,
        "perm": [0, 1, 2, 1, 0, 2], "ring": {"zmod": 3}}})"));
    CHECK(g.document["crit_i"] == false);
    CHECK(g.document["consistent"] == true);
}

TEST_CASE("cli: seeds and rendering") {
    json t = json::parse(R"({"base": {"gf": [2, 2]}, "group": {"cyclic": 2}, "kappa": {"frobenius": 2}, "perturb": 5})");
    auto a = job("teichmuller", t, 3), b = job("teichmuller", t, 3);
    CHECK(render(a.document) == render(b.document));
    CHECK(a.document["class"] == job("teichmuller", t, 11).document["class"]);
    std::string s = render(json{{"b", 1}, {"a", 2}});
    CHECK(s == "{\n  \"a\": 2,\n  \"b\": 1\n}\n");
    auto e = job("eight-term", json::parse(R"({"ambient": {"group": {"product": [{"cyclic": 2}, {"cyclic": 2}]}, "normal": [1]},
        "module": {"factors": [2]}})"));
    REQUIRE(e.status == 0);
    CHECK(e.document["exact_at_right_terms"] == true);
    CHECK(e.document["verdicts"].size() == 7);
}
