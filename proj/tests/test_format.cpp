#include <doctest.h>

#include <cstdio>
#include <fstream>

#include <json.hpp>

#include "fixtures.hpp"
#include "mealy/burnside.hpp"
#include "mealy/dot.hpp"
#include "mealy/format.hpp"
#include "mealy/reports.hpp"

using namespace mealy;

TEST_CASE("text format round-trips byte-stably") {
  for (const char* name : {"bellaterra", "shift2", "twist5", "identity2",
                           "noninvertible", "partial3"}) {
    CAPTURE(name);
    auto a = load_fixture(name);
    auto canonical = print_mealy_text(a);
    auto b = parse_mealy_text(canonical);
    CHECK(b.state_names() == a.state_names());
    CHECK(b.letter_names() == a.letter_names());
    CHECK(b.delta_table() == a.delta_table());
    CHECK(b.rho_table() == a.rho_table());
    CHECK(print_mealy_text(b) == canonical);
  }
}

TEST_CASE("json format round-trips and rejects unknown fields") {
  auto a = load_fixture("bellaterra");
  auto text = print_mealy_json(a);
  auto b = parse_mealy_json(text);
  CHECK(b.delta_table() == a.delta_table());
  CHECK(b.rho_table() == a.rho_table());
  CHECK(print_mealy_json(b) == text);

  auto j = nlohmann::json::parse(text);
  j["surprise"] = 1;
  CHECK_THROWS_AS(parse_mealy_json(j.dump()), ParseError);

  j = nlohmann::json::parse(text);
  j.erase("schema_version");
  CHECK_THROWS_AS(parse_mealy_json(j.dump()), ParseError);

  j = nlohmann::json::parse(text);
  j["transitions"][0]["extra"] = true;
  CHECK_THROWS_AS(parse_mealy_json(j.dump()), ParseError);
}

TEST_CASE("parse errors carry line numbers") {
  try {
    parse_mealy_text("states a b\nletters 0 1\na 0 -> c 1\n");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line == 3);
  }
  // Incomplete transition tables are rejected.
  CHECK_THROWS_AS(parse_mealy_text("states a\nletters 0 1\na 0 -> a 1\n"),
                  ParseError);
  // Duplicate transitions are rejected.
  CHECK_THROWS_AS(
      parse_mealy_text("states a\nletters 0\na 0 -> a 0\na 0 -> a 0\n"),
      ParseError);
}

TEST_CASE("file sniffing picks the parser by content") {
  auto a = load_fixture("bellaterra");  // text path exercised by the fixture
  auto json_path = std::string(FIXTURE_DIR) + "/.tmp_bellaterra.json";
  {
    std::ofstream out(json_path);
    out << print_mealy_json(a);
  }
  auto b = parse_mealy_file(json_path);
  CHECK(b.delta_table() == a.delta_table());
  std::remove(json_path.c_str());
}

TEST_CASE("input digest is stable and sensitive") {
  auto a = load_fixture("bellaterra");
  auto d = input_digest(a);
  CHECK(d.substr(0, 6) == "fnv1a:");
  CHECK(d.size() == 6 + 16);
  CHECK(input_digest(a) == d);
  CHECK(input_digest(load_fixture("shift2")) != d);
  // The digest depends on the canonical form, not the source layout.
  auto b = parse_mealy_text(print_mealy_text(a));
  CHECK(input_digest(b) == d);
}

TEST_CASE("word parsing accepts both spellings and rejects junk") {
  auto a = load_fixture("bellaterra");
  CHECK(parse_state_word(a, "abc") == StateWord{0, 1, 2});
  CHECK(parse_state_word(a, "a,b,c") == StateWord{0, 1, 2});
  CHECK_THROWS_AS(parse_state_word(a, "abz"), ParseError);
  CHECK(parse_letter_word(a, "01") == LetterWord{0, 1});
  CHECK_THROWS_AS(parse_letter_word(a, "02"), ParseError);
}

TEST_CASE("dot exports are deterministic and mention the structure") {
  auto a = load_fixture("bellaterra");
  auto d1 = export_dot(a);
  CHECK(d1 == export_dot(a));
  CHECK(d1.find("digraph") != std::string::npos);
  CHECK(d1.find("\"a\"") != std::string::npos);
  CHECK(d1.find("0|1") != std::string::npos);  // a reads 0, outputs 1

  auto t = OrbitTree::build(a, 3);
  auto d2 = export_dot(t);
  CHECK(d2 == export_dot(t));
  CHECK(d2.find("digraph") != std::string::npos);
  CHECK(d2.find("label=\"3\"") != std::string::npos);  // the ternary root edge
}

TEST_CASE("classification and orbit tree reports carry the header") {
  auto a = load_fixture("bellaterra");
  auto c = classification_report(a);
  CHECK(c["schema_version"] == 1);
  CHECK(c["input_digest"] == input_digest(a));
  CHECK(c["classification"]["bireversible"] == true);

  auto t = OrbitTree::build(a, 2);
  auto r = orbit_tree_report(t);
  CHECK(r["schema_version"] == 1);
  REQUIRE(r["levels"].size() == 2);  // word levels 1..depth
  CHECK(r["levels"][1]["level"] == 2);
  CHECK(r["levels"][1]["component_count"] == 2);
}

TEST_CASE("budgets round-trip through json") {
  Budgets b;
  b.tree_depth = 5;
  b.order_cap = 99;
  b.rewrite_seed = 777;
  b.equivalence.node_cap = 123;
  auto j = budgets_to_json(b);
  auto back = budgets_from_json(j);
  CHECK(back.tree_depth == 5);
  CHECK(back.order_cap == 99);
  CHECK(back.rewrite_seed == 777);
  CHECK(back.equivalence.node_cap == 123);
  CHECK(budgets_to_json(back) == j);
}

TEST_CASE("certificates re-verify and tampering is caught") {
  Budgets budgets;
  for (const char* name :
       {"bellaterra", "shift2", "shift3", "twist5", "swap1", "nonreversible",
        "noninvertible", "disconnected2"}) {
    CAPTURE(name);
    auto a = load_fixture(name);
    auto cert = certify(a, budgets);
    auto report = certificate_report(a, cert, budgets);
    std::string why;
    bool ok = reverify_certificate(report, a, &why);
    CAPTURE(why);
    CHECK(ok);
  }

  // Flip the claimed branch on a valid certificate.
  auto a = load_fixture("shift2");
  auto cert = certify(a, budgets);
  auto report = certificate_report(a, cert, budgets);
  report["branch"] = "infinite_order_element";
  std::string why;
  CHECK_FALSE(reverify_certificate(report, a, &why));
  CHECK(!why.empty());

  // Tamper with the evidence: claim a different uniform bound.
  report = certificate_report(a, cert, budgets);
  report["jungle"]["uniform_bound"] = 0;
  CHECK_FALSE(reverify_certificate(report, a, &why));

  // Serve the certificate against the wrong automaton.
  report = certificate_report(a, cert, budgets);
  CHECK_FALSE(reverify_certificate(report, load_fixture("shift3"), &why));
}
