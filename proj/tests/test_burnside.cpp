#include <doctest.h>

#include <memory>
#include <random>

#include "fixtures.hpp"
#include "generators.hpp"
#include "mealy/burnside.hpp"
#include "oracles.hpp"

using namespace mealy;

namespace {

// The jungle keeps a pointer to its automaton, so the automaton lives on the
// heap where moves of this struct cannot relocate it.
struct JungleSetup {
  std::unique_ptr<MealyAutomaton> aut;
  JungleTree jt;
  StemClasses cls;
  const MealyAutomaton& a() const { return *aut; }
};

JungleSetup setup(const std::string& name) {
  auto aut = std::make_unique<MealyAutomaton>(load_fixture(name));
  auto t = OrbitTree::build(*aut, 6);
  auto jungles = find_jungle_trees(*aut, t, 3);
  REQUIRE(!jungles.empty());
  auto cls = stem_classes(jungles[0]);
  return {std::move(aut), std::move(jungles[0]), std::move(cls)};
}

}  // namespace

TEST_CASE("orders on the fixtures") {
  auto b = load_fixture("bellaterra");
  auto ra = order_of(b, sw(b, "a"));
  CHECK(ra.verdict == OrderResult::Verdict::Finite);
  CHECK(ra.order == 2);

  auto rab = order_of(b, sw(b, "ab"));
  CHECK(rab.verdict == OrderResult::Verdict::InfiniteWitness);
  REQUIRE(rab.growth.size() >= 4);
  CHECK(rab.growth[0] == 6);
  CHECK(rab.growth[1] == 24);
  CHECK(rab.growth[2] == 96);
  CHECK(rab.growth[3] == 384);

  auto id1 = load_fixture("identity2");
  auto re = order_of(id1, {0});
  CHECK(re.verdict == OrderResult::Verdict::Finite);
  CHECK(re.order == 1);

  auto s2 = load_fixture("shift2");
  auto rs = order_of(s2, sw(s2, "a"));
  CHECK(rs.verdict == OrderResult::Verdict::Finite);
  CHECK(rs.order == 2);

  CHECK_THROWS_AS(order_of(b, {}), ValidationError);
  CHECK_THROWS_AS(order_of(load_fixture("noninvertible"), {0}), NotInvertible);
}

TEST_CASE("order_of agrees with the permutation oracle") {
  // Exhaustive over the connected invertible reversible automata on two
  // states and two letters, all words up to length three.
  int finite_seen = 0;
  for (const auto& a : gen::census_invertible_reversible(2, 2)) {
    if (!is_connected(a)) continue;
    for (std::size_t len = 1; len <= 3; ++len) {
      std::vector<StateWord> words{{StateWord{}}};
      for (std::size_t k = 0; k < len; ++k) {
        std::vector<StateWord> next;
        for (const auto& w : words)
          for (std::uint8_t x = 0; x < a.states(); ++x) {
            auto e = w;
            e.push_back(x);
            next.push_back(e);
          }
        words = std::move(next);
      }
      for (const auto& u : words) {
        auto r = order_of(a, u, 300, 500'000);
        if (r.verdict != OrderResult::Verdict::Finite) continue;
        ++finite_seen;
        // The oracle order on Sigma^k stabilizes to the true order.
        std::uint64_t prev = order_oracle(a, u, 7), cur = order_oracle(a, u, 8);
        REQUIRE(prev == cur);  // stabilized at this size
        CHECK(static_cast<std::uint64_t>(r.order) == cur);
        // Minimality: no proper divisor is already the identity.
        for (int d = 1; d < r.order; ++d) {
          if (r.order % d != 0) continue;
          StateWord p;
          for (int m = 0; m < d; ++m) p.insert(p.end(), u.begin(), u.end());
          CHECK_FALSE(is_identity_action(a, p));
        }
      }
    }
  }
  CHECK(finite_seen > 100);
}

TEST_CASE("order oracle matches the cycle structure by hand") {
  auto b = load_fixture("bellaterra");
  CHECK(order_oracle(b, sw(b, "a"), 4) == 2);
  CHECK(order_oracle(b, sw(b, "bb"), 5) == 1);
  // Orders along Sigma^k only grow with k for the infinite-order element.
  CHECK(order_oracle(b, sw(b, "ab"), 2) <= order_oracle(b, sw(b, "ab"), 5));
  CHECK(order_oracle(b, sw(b, "ab"), 8) > 64);
  CHECK_THROWS_AS(order_oracle(b, sw(b, "ab"), 40), LevelTooLarge);
}

TEST_CASE("a flat oracle window is not stabilization") {
  // Lamplighter-style automaton: delta swaps the states on letter 0 and
  // rho_a swaps the letters.  The word b has infinite order, yet its level
  // orders plateau in stretches of four (1 2 4 4 8 8 8 8 16 ...), so equal
  // values at levels 7 and 8 must not be read as the true order.
  MealyAutomaton a({"a", "b"}, {"0", "1"}, {1, 0, 0, 1}, {1, 0, 0, 1});
  REQUIRE(is_invertible(a));
  REQUIRE(is_reversible(a));
  auto u = sw(a, "b");
  CHECK(order_oracle(a, u, 7) == 8);
  CHECK(order_oracle(a, u, 8) == 8);  // looks stabilized...
  CHECK(order_oracle(a, u, 9) == 16);  // ...but jumps at the next level
  StateWord u8;
  for (int i = 0; i < 8; ++i) u8.push_back(u[0]);
  CHECK_FALSE(is_identity_action(a, u8));
  auto r = order_of(a, u, 300, 500'000);
  CHECK(r.verdict == OrderResult::Verdict::InfiniteWitness);
  // Power components double without pause.
  for (std::size_t m = 1; m < r.growth.size(); ++m)
    CHECK(r.growth[m] == 2 * r.growth[m - 1]);
}

TEST_CASE("rewriting into the jungle preserves the action") {
  std::mt19937 rng(79);
  for (const char* name : {"shift2", "shift3", "twist5"}) {
    CAPTURE(name);
    auto js = setup(name);
    for (int trial = 0; trial < 6; ++trial) {
      auto u = gen::random_state_word(rng, js.a(), 1 + trial);
      auto j = rewrite_as_j_word(js.jt, js.cls, u);
      REQUIRE(js.jt.is_j_word(j));
      // Same action on every letter word up to length five.
      std::vector<LetterWord> ws{{}};
      for (int len = 0; len < 5; ++len) {
        std::vector<LetterWord> next;
        for (const auto& s : ws)
          for (std::uint8_t i = 0; i < js.a().letters(); ++i) {
            auto e = s;
            e.push_back(i);
            next.push_back(e);
          }
        for (const auto& s : next) CHECK(act_rho(js.a(), u, s) == act_rho(js.a(), j, s));
        ws = std::move(next);
      }
    }
  }
}

TEST_CASE("rewriting respects its output cap") {
  auto js = setup("twist5");
  auto u = sw(js.a(), "abcde");
  CHECK_THROWS_AS(rewrite_as_j_word(js.jt, js.cls, u, 3), CapExceeded);
}

TEST_CASE("cyclic reduction yields a cyclic word acting like a power") {
  std::mt19937 rng(83);
  for (const char* name : {"shift2", "shift3", "twist5"}) {
    CAPTURE(name);
    auto js = setup(name);
    std::size_t q_pow = 1;
    for (int k = 0; k < js.jt.trunk_length(); ++k) q_pow *= js.a().states();
    for (int trial = 0; trial < 4; ++trial) {
      auto u = gen::random_state_word(rng, js.a(), 1 + trial % 3);
      auto red = cyclic_reduction(js.jt, js.cls, u);
      CHECK(is_cyclic_j_word(js.jt, red.word));
      CHECK(red.exponent >= 1);
      CHECK(static_cast<std::size_t>(red.exponent) <= q_pow);
      // red.word acts like u^exponent on letter words up to length four.
      StateWord up;
      for (int m = 0; m < red.exponent; ++m) up.insert(up.end(), u.begin(), u.end());
      std::vector<LetterWord> ws{{}};
      for (int len = 0; len < 4; ++len) {
        std::vector<LetterWord> next;
        for (const auto& s : ws)
          for (std::uint8_t i = 0; i < js.a().letters(); ++i) {
            auto e = s;
            e.push_back(i);
            next.push_back(e);
          }
        for (const auto& s : next)
          CHECK(act_rho(js.a(), up, s) == act_rho(js.a(), red.word, s));
        ws = std::move(next);
      }
    }
  }
}

TEST_CASE("uniform order bound") {
  // Both shifts act positionwise by independent swaps, so no element exceeds
  // order two and the exhaustively sampled bound is exactly two.
  for (const char* name : {"shift2", "shift3"}) {
    CAPTURE(name);
    auto js = setup(name);
    CHECK(uniform_order_bound(js.jt) == 2);
    for (const auto& s : js.jt.stems()) {
      auto r = order_of(js.a(), s);
      REQUIRE(r.verdict == OrderResult::Verdict::Finite);
      CHECK(r.order <= 2);
    }
  }
  auto js = setup("twist5");
  auto bound = uniform_order_bound(js.jt);
  CHECK(bound >= 2);
  CHECK(uniform_order_bound(js.jt) == bound);  // deterministic
}

TEST_CASE("certify: rejection branches") {
  auto c = certify(load_fixture("swap1"));
  CHECK(c.branch == Certificate::Branch::Rejected);
  CHECK(c.failed_precondition == "prime_size");

  c = certify(load_fixture("nonreversible"));
  CHECK(c.branch == Certificate::Branch::Rejected);
  CHECK(c.failed_precondition == "reversible");

  c = certify(load_fixture("noninvertible"));
  CHECK(c.branch == Certificate::Branch::Rejected);
  CHECK(c.failed_precondition == "invertible");

  c = certify(load_fixture("disconnected2"));
  CHECK(c.branch == Certificate::Branch::Rejected);
  CHECK(c.failed_precondition == "connected");
}

TEST_CASE("certify: infinite-order element on bellaterra") {
  auto a = load_fixture("bellaterra");
  auto c = certify(a);
  REQUIRE(c.branch == Certificate::Branch::InfiniteOrderElement);
  REQUIRE(c.witness.has_value());
  CHECK(format_state_word(a, c.witness->word) == "ab");
  CHECK(c.witness->kind == BranchWitness::Kind::ActiveSelfLiftable);
  REQUIRE(c.growth.size() >= 4);
  for (std::size_t m = 1; m < c.growth.size(); ++m) {
    CHECK(c.growth[m] > c.growth[m - 1]);
    CHECK(c.growth[m] % c.growth[m - 1] == 0);
  }
  CHECK(!c.rationale.empty());
}

TEST_CASE("certify: finite-group evidence on the shift fixtures") {
  for (const char* name : {"shift2", "shift3", "twist5"}) {
    CAPTURE(name);
    auto c = certify(load_fixture(name));
    REQUIRE(c.branch == Certificate::Branch::FiniteGroupEvidence);
    REQUIRE(c.jungle.has_value());
    const auto& j = *c.jungle;
    CHECK(!j.stems.empty());
    CHECK(!j.classes.empty());
    CHECK(j.uniform_bound >= 1);
    CHECK(j.s_eq[0] == static_cast<std::uint64_t>(load_fixture(name).states()));
    CHECK(!j.rewrites.empty());
  }
}

TEST_CASE("certify: inconclusive reports the exhausted budgets") {
  // Starve the budgets so that bellaterra cannot reach any verdict.
  Budgets b;
  b.witness_max_len = 0;   // no witness search at all
  b.max_trunk = 1;
  b.tree_depth = 3;
  b.soft_deadline_s = 60.0;
  auto c = certify(load_fixture("bellaterra"), b);
  CHECK(c.branch == Certificate::Branch::Inconclusive);
  CHECK(!c.budget_report.empty());
}

TEST_CASE("certify never throws across a random sample") {
  std::mt19937 rng(89);
  Budgets quick;
  quick.tree_depth = 4;
  quick.max_trunk = 2;
  quick.witness_max_len = 2;
  quick.growth_powers = 5;
  quick.rewrite_samples = 2;
  quick.sample_budget = 200;
  for (int trial = 0; trial < 25; ++trial) {
    auto a = gen::random_invertible_reversible(rng, 2 + trial % 4, 2);
    Certificate c;
    CHECK_NOTHROW(c = certify(a, quick));
    CHECK(!c.rationale.empty());
  }
}
