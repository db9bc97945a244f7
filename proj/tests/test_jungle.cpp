#include <doctest.h>

#include <map>
#include <random>
#include <set>

#include "fixtures.hpp"
#include "generators.hpp"
#include "mealy/jungle.hpp"

using namespace mealy;

namespace {

std::vector<JungleTree> jungles_of(const MealyAutomaton& a, int max_trunk = 3) {
  auto t = OrbitTree::build(a, max_trunk + 3);
  return find_jungle_trees(a, t, max_trunk);
}

// A pseudorandom walk along the liana from stem `start`.
StateWord liana_word(const JungleTree& jt, std::mt19937& rng, int start,
                     int steps) {
  LianaCursor cur(jt, start);
  std::uniform_int_distribution<int> pick(0, jt.arity() - 1);
  for (int k = 0; k < steps; ++k) cur.step(pick(rng));
  return cur.word();
}

}  // namespace

TEST_CASE("jungle shapes of the fixtures") {
  auto s2 = load_fixture("shift2");
  auto j2 = jungles_of(s2);
  REQUIRE(j2.size() == 1);
  CHECK(j2[0].trunk_length() == 1);
  CHECK(j2[0].trunk_labels() == std::vector<std::uint64_t>{2});
  CHECK(j2[0].arity() == 2);
  CHECK(j2[0].stem_count() == 2);
  CHECK(j2[0].verified_depth() >= 2);

  auto s3 = load_fixture("shift3");
  auto j3 = jungles_of(s3);
  REQUIRE(j3.size() == 1);
  CHECK(j3[0].trunk_labels() == std::vector<std::uint64_t>{3});
  CHECK(j3[0].arity() == 3);
  CHECK(j3[0].stem_count() == 3);

  auto t5 = load_fixture("twist5");
  auto j5 = jungles_of(t5);
  REQUIRE(j5.size() == 1);
  CHECK(j5[0].trunk_length() == 2);
  CHECK(j5[0].trunk_labels() == std::vector<std::uint64_t>{5, 5});
  CHECK(j5[0].arity() == 5);
  CHECK(j5[0].stem_count() == 25);

  auto p3 = load_fixture("partial3");
  auto jp = jungles_of(p3);
  REQUIRE(jp.size() == 1);
  CHECK(jp[0].trunk_labels() == std::vector<std::uint64_t>{2});
  CHECK(jp[0].arity() == 2);
  CHECK(jp[0].stem_count() == 2);

  CHECK(jungles_of(load_fixture("bellaterra")).empty());
  CHECK(jungles_of(load_fixture("identity2")).empty());
}

TEST_CASE("jungle search validates its inputs") {
  auto a = load_fixture("shift2");
  auto t = OrbitTree::build(a, 3);
  CHECK_THROWS_AS(find_jungle_trees(a, t, 0), ValidationError);
  CHECK_THROWS_AS(find_jungle_trees(a, t, 2), ValidationError);  // depth too small
}

TEST_CASE("stem counts split evenly along prefixes") {
  // Fixing the first l states of a stem leaves the same number of
  // completions no matter the prefix; the count is the product of the
  // deeper trunk labels.
  auto a = load_fixture("twist5");
  auto jt = jungles_of(a)[0];
  std::map<StateWord, std::size_t> by_prefix;
  for (const auto& s : jt.stems())
    ++by_prefix[StateWord(s.begin(), s.begin() + 1)];
  CHECK(by_prefix.size() == 5);
  for (const auto& [prefix, count] : by_prefix) CHECK(count == 5);
  // Product of the trunk labels = number of stems.
  std::uint64_t prod = 1;
  for (auto l : jt.trunk_labels()) prod *= l;
  CHECK(prod == jt.stem_count());
}

TEST_CASE("j-word membership: stems, trunk prefixes, and outsiders") {
  auto p3 = load_fixture("partial3");
  auto jt = jungles_of(p3)[0];
  CHECK(jt.is_j_word({}));
  for (const auto& s : jt.stems()) CHECK(jt.is_j_word(s));
  CHECK(jt.is_j_word(sw(p3, "abba")));
  CHECK_FALSE(jt.is_j_word(sw(p3, "c")));
  CHECK_FALSE(jt.is_j_word(sw(p3, "ac")));
  CHECK_FALSE(jt.is_j_word(sw(p3, "ca")));
  CHECK_FALSE(jt.is_j_word(sw(p3, "abcab")));
  CHECK(jt.stem_index(sw(p3, "a")) >= 0);
  CHECK(jt.stem_index(sw(p3, "c")) == -1);
}

TEST_CASE("every factor of a j-word is a j-word") {
  std::mt19937 rng(59);
  for (const char* name : {"shift2", "twist5", "partial3"}) {
    CAPTURE(name);
    auto a = load_fixture(name);
    auto jt = jungles_of(a)[0];
    for (int trial = 0; trial < 10; ++trial) {
      auto w = liana_word(jt, rng, trial % static_cast<int>(jt.stem_count()), 8);
      REQUIRE(jt.is_j_word(w));
      for (std::size_t lo = 0; lo <= w.size(); ++lo)
        for (std::size_t hi = lo; hi <= w.size(); ++hi)
          CHECK(jt.is_j_word(StateWord(w.begin() + lo, w.begin() + hi)));
    }
  }
}

TEST_CASE("follower tables are complete and consistent with walking") {
  for (const char* name : {"shift2", "shift3", "twist5", "partial3"}) {
    CAPTURE(name);
    auto a = load_fixture(name);
    auto jt = jungles_of(a)[0];
    for (int i = 0; i < static_cast<int>(jt.stem_count()); ++i) {
      const auto& fs = jt.followers(i);
      REQUIRE(fs.size() == static_cast<std::size_t>(jt.arity()));
      for (const auto& f : fs) {
        CHECK(jt.walk(i, {f.state}) == f.next);
        // The shifted window really is the recorded stem.
        StateWord shifted(jt.stems()[i].begin() + 1, jt.stems()[i].end());
        shifted.push_back(f.state);
        CHECK(jt.stem_index(shifted) == f.next);
      }
    }
  }
}

TEST_CASE("liana cursors depend only on the current window") {
  auto a = load_fixture("twist5");
  auto jt = jungles_of(a)[0];
  LianaCursor one(jt, 0);
  one.step(2);
  one.step(4);
  LianaCursor two(jt, one.window());
  // Following the same choices from the same window appends the same states.
  LianaCursor copy(jt, one.window());
  for (int c : {1, 3, 0}) {
    two.step(c);
    copy.step(c);
  }
  CHECK(two.word() == copy.word());
  CHECK(two.window() == copy.window());
  CHECK(two.length() == jt.stems()[0].size() + 3);
  CHECK_THROWS_AS(two.step(jt.arity()), ChoiceOutOfRange);
}

TEST_CASE("cyclic j-words") {
  for (const char* name : {"shift2", "shift3", "twist5", "partial3"}) {
    CAPTURE(name);
    auto a = load_fixture(name);
    auto jt = jungles_of(a)[0];
    for (const auto& s : jt.stems()) {
      if (!is_cyclic_j_word(jt, s)) continue;
      // Powers of a cyclic word stay inside the jungle.
      StateWord p = s;
      for (int m = 0; m < 4; ++m) {
        p.insert(p.end(), s.begin(), s.end());
        CHECK(jt.is_j_word(p));
      }
    }
    auto c = find_cyclic_j_word(jt);
    REQUIRE(!c.empty());
    CHECK(is_cyclic_j_word(jt, c));
  }
  auto p3 = load_fixture("partial3");
  auto jt = jungles_of(p3)[0];
  CHECK_FALSE(is_cyclic_j_word(jt, sw(p3, "c")));
}

TEST_CASE("recurrence: any factorized j-word can be continued to repeat u") {
  std::mt19937 rng(61);
  for (const char* name : {"shift2", "shift3", "twist5", "partial3"}) {
    CAPTURE(name);
    auto a = load_fixture(name);
    auto jt = jungles_of(a)[0];
    std::size_t q_pow = 1;
    for (int k = 0; k < jt.trunk_length(); ++k) q_pow *= a.states();
    std::size_t cap = jt.trunk_length() * (1 + q_pow);
    for (int trial = 0; trial < 8; ++trial) {
      auto w = liana_word(jt, rng, trial % static_cast<int>(jt.stem_count()), 7);
      std::uniform_int_distribution<std::size_t> cut(0, w.size());
      std::size_t i = cut(rng), j = cut(rng);
      if (i > j) std::swap(i, j);
      if (i == j) continue;  // u must be nonempty
      StateWord t(w.begin(), w.begin() + i);
      StateWord u(w.begin() + i, w.begin() + j);
      StateWord v(w.begin() + j, w.end());
      auto rec = find_recurrence(jt, t, u, v, cap);
      StateWord full = w;
      full.insert(full.end(), rec.begin(), rec.end());
      full.insert(full.end(), u.begin(), u.end());
      CHECK(jt.is_j_word(full));
    }
  }
}

TEST_CASE("identity action detection") {
  auto id1 = load_fixture("identity2");
  CHECK(is_identity_action(id1, {}));
  CHECK(is_identity_action(id1, StateWord(5, 0)));

  auto b = load_fixture("bellaterra");
  // rho_b fixes both single letters, yet is not the identity on longer words.
  CHECK(act_rho_letter(b, sw(b, "b"), 0) == 0);
  CHECK(act_rho_letter(b, sw(b, "b"), 1) == 1);
  CHECK_FALSE(is_identity_action(b, sw(b, "b")));
  CHECK(act_rho(b, sw(b, "b"), lw(b, "00")) != lw(b, "00"));
  CHECK(is_identity_action(b, sw(b, "bb")));
  CHECK(is_identity_action(b, sw(b, "aa")));
  CHECK_FALSE(is_identity_action(b, sw(b, "ab")));
  // The seed itself moves a letter, so the verdict needs no exploration.
  CHECK_FALSE(is_identity_action(b, sw(b, "ab"), 2));

  // The verdict is a property of the component, not the chosen member.
  std::mt19937 rng(67);
  for (int trial = 0; trial < 20; ++trial) {
    auto u = gen::random_state_word(rng, b, 1 + trial % 4);
    bool base = is_identity_action(b, u);
    for (std::uint8_t i = 0; i < b.letters(); ++i)
      CHECK(is_identity_action(b, act_delta(b, {i}, u)) == base);
  }
}

TEST_CASE("stem equivalence witnesses are sound") {
  auto a = load_fixture("shift2");
  auto jt = jungles_of(a)[0];
  auto u = sw(a, "a"), v = sw(a, "b");

  auto s = stem_equivalent(jt, u, v);
  REQUIRE(s.has_value());
  StateWord usv = u;
  usv.insert(usv.end(), s->begin(), s->end());
  StateWord us = usv;
  usv.insert(usv.end(), v.begin(), v.end());
  CHECK(jt.is_j_word(usv));
  CHECK(is_identity_action(a, us));

  CHECK(stem_equivalent(jt, u, u).has_value());  // reflexive
  CHECK(stem_equivalent(jt, v, u).has_value());  // symmetric
  CHECK_THROWS_AS(stem_equivalent(jt, sw(a, "aa"), v), ValidationError);

  // An impossible budget reports failure rather than guessing.
  EquivalenceBudget tiny;
  tiny.node_cap = 1;
  tiny.length_cap = 1;
  CHECK_FALSE(stem_equivalent(jt, u, v, tiny).has_value());
}

TEST_CASE("wedge relation is symmetric and refines stem equivalence") {
  for (const char* name : {"shift2", "twist5", "partial3"}) {
    CAPTURE(name);
    auto a = load_fixture(name);
    auto jt = jungles_of(a)[0];
    auto cls = stem_classes(jt);
    const auto& stems = jt.stems();
    for (std::size_t i = 0; i < std::min<std::size_t>(stems.size(), 6); ++i) {
      for (std::size_t j = 0; j < std::min<std::size_t>(stems.size(), 6); ++j) {
        bool w = wedge_related(jt, stems[i], stems[j]);
        CHECK(w == wedge_related(jt, stems[j], stems[i]));
        // Wedge-related stems must end up in the same class.
        if (w)
          CHECK(cls.class_of[static_cast<int>(i)] == cls.class_of[static_cast<int>(j)]);
      }
    }
  }
}

TEST_CASE("stem classes partition the stems into equal verified classes") {
  struct Expect {
    const char* name;
    std::size_t n_classes;
    std::size_t class_size;
  };
  for (auto [name, n_classes, class_size] :
       {Expect{"shift2", 1, 2}, Expect{"shift3", 1, 3}, Expect{"twist5", 1, 25},
        Expect{"partial3", 1, 2}}) {
    CAPTURE(name);
    auto a = load_fixture(name);
    auto jt = jungles_of(a)[0];
    auto cls = stem_classes(jt);
    REQUIRE(cls.classes.size() == n_classes);
    std::set<int> seen;
    for (std::size_t c = 0; c < cls.classes.size(); ++c) {
      CHECK(cls.classes[c].size() == class_size);
      for (int s : cls.classes[c]) {
        CHECK(cls.class_of[s] == static_cast<int>(c));
        CHECK(seen.insert(s).second);
      }
    }
    CHECK(seen.size() == jt.stem_count());
    CHECK(cls.failed_searches == 0);

    // Every stored witness edge must satisfy the defining property.
    REQUIRE(!cls.witnesses.empty());
    for (const auto& e : cls.witnesses) {
      StateWord w = jt.stems()[e.from];
      w.insert(w.end(), e.bridge.begin(), e.bridge.end());
      CHECK(is_identity_action(a, w));
      w.insert(w.end(), jt.stems()[e.to].begin(), jt.stems()[e.to].end());
      CHECK(jt.is_j_word(w));
    }
  }
}

TEST_CASE("composed witnesses stay sound across a class") {
  auto a = load_fixture("twist5");
  auto jt = jungles_of(a)[0];
  auto cls = stem_classes(jt);
  std::mt19937 rng(71);
  std::uniform_int_distribution<int> pick(0, static_cast<int>(jt.stem_count()) - 1);
  for (int trial = 0; trial < 10; ++trial) {
    int from = pick(rng), to = pick(rng);
    auto bridge = compose_witness(jt, cls, from, to);
    StateWord w = jt.stems()[from];
    w.insert(w.end(), bridge.begin(), bridge.end());
    CHECK(is_identity_action(a, w));
    w.insert(w.end(), jt.stems()[to].begin(), jt.stems()[to].end());
    CHECK(jt.is_j_word(w));
  }
}

TEST_CASE("suffix and class counting tables") {
  struct Expect {
    const char* name;
    std::vector<std::uint64_t> s_eq, p_eq;
  };
  for (const auto& e :
       {Expect{"shift2", {2}, {1}}, Expect{"shift3", {3}, {1}},
        Expect{"twist5", {5, 5}, {1, 1}}, Expect{"partial3", {2}, {1}}}) {
    CAPTURE(e.name);
    auto a = load_fixture(e.name);
    auto jt = jungles_of(a)[0];
    auto cls = stem_classes(jt);
    auto tables = seq_peq_tables(jt, cls);
    CHECK(tables.s_eq == e.s_eq);
    CHECK(tables.p_eq == e.p_eq);
    for (std::size_t l = 0; l < tables.s_eq.size(); ++l) {
      CHECK(tables.s_eq[l] * tables.p_eq[l] == jt.trunk_labels()[l]);
      CHECK(tables.s_eq[l] >= 2);
    }
  }
}

TEST_CASE("prime fixtures reach every state from every class") {
  for (const char* name : {"shift2", "shift3", "twist5"}) {
    CAPTURE(name);
    auto a = load_fixture(name);
    auto jt = jungles_of(a)[0];
    auto cls = stem_classes(jt);
    auto tables = seq_peq_tables(jt, cls);
    CHECK(tables.s_eq[0] == static_cast<std::uint64_t>(a.states()));
    for (const auto& c : cls.classes) {
      std::set<std::uint8_t> first;
      for (int s : c) first.insert(jt.stems()[s][0]);
      CHECK(first.size() == static_cast<std::size_t>(a.states()));
    }
  }
}

TEST_CASE("identity continuations extend any j-word toward any state") {
  std::mt19937 rng(73);
  for (const char* name : {"shift2", "shift3", "twist5"}) {
    CAPTURE(name);
    auto a = load_fixture(name);
    auto jt = jungles_of(a)[0];
    auto cls = stem_classes(jt);
    std::vector<StateWord> starts{{}, jt.stems()[0], liana_word(jt, rng, 0, 5)};
    for (const auto& u : starts) {
      for (std::uint8_t x = 0; x < a.states(); ++x) {
        auto w = identity_continuation(jt, cls, u, x);
        CHECK(w.size() >= static_cast<std::size_t>(jt.trunk_length()));
        CHECK(is_identity_action(a, w));
        StateWord uwx = u;
        uwx.insert(uwx.end(), w.begin(), w.end());
        uwx.push_back(x);
        CHECK(jt.is_j_word(uwx));
      }
    }
  }
  // partial3's only class never reaches c, so the continuation must fail
  // honestly for it and still work toward a and b.
  auto p3 = load_fixture("partial3");
  auto jt = jungles_of(p3)[0];
  auto cls = stem_classes(jt);
  CHECK_NOTHROW(identity_continuation(jt, cls, jt.stems()[0], 0));
  CHECK_THROWS_AS(identity_continuation(jt, cls, jt.stems()[0], 2), CapExceeded);
}
