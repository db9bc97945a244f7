#include "mealy/reports.hpp"

#include <algorithm>
#include <set>

#include "mealy/format.hpp"
#include "mealy/version.hpp"

namespace mealy {

namespace {

using nlohmann::json;

json word_to_json(const MealyAutomaton& a, const StateWord& w) {
    json out = json::array();
    for (std::uint8_t x : w) out.push_back(a.state_names()[x]);
    return out;
}

StateWord word_from_json(const MealyAutomaton& a, const json& j) {
    StateWord out;
    for (const auto& name : j) {
        const auto& names = a.state_names();
        auto it = std::find(names.begin(), names.end(), name.get<std::string>());
        if (it == names.end())
            throw ParseError("unknown state '" + name.get<std::string>() + "' in report");
        out.push_back(static_cast<std::uint8_t>(it - names.begin()));
    }
    return out;
}

json header(const MealyAutomaton& a) {
    return {{"schema_version", 1},
            {"tool", kToolName},
            {"tool_version", kToolVersion},
            {"input_digest", input_digest(a)}};
}

json classification_to_json(const Classification& c) {
    return {{"invertible", c.invertible},   {"reversible", c.reversible},
            {"bireversible", c.bireversible}, {"connected", c.connected},
            {"size", c.size},               {"prime_size", c.prime_size}};
}

const char* branch_name(Certificate::Branch b) {
    switch (b) {
        case Certificate::Branch::Rejected: return "rejected";
        case Certificate::Branch::NotBireversible: return "not_bireversible";
        case Certificate::Branch::InfiniteOrderElement: return "infinite_order_element";
        case Certificate::Branch::FiniteGroupEvidence: return "finite_group_evidence";
        case Certificate::Branch::Inconclusive: return "inconclusive";
    }
    return "inconclusive";
}

const char* kind_name(BranchWitness::Kind k) {
    return k == BranchWitness::Kind::ActiveSelfLiftable ? "active_self_liftable"
                                                        : "infinite_order_suspect";
}

// All letter words of length 1..max_len agree under u and v.
bool actions_equal(const MealyAutomaton& a, const StateWord& u, const StateWord& v,
                   int max_len) {
    for (int len = 1; len <= max_len; ++len) {
        LetterWord s(static_cast<std::size_t>(len), 0);
        for (;;) {
            if (act_rho(a, u, s) != act_rho(a, v, s)) return false;
            int pos = len - 1;
            while (pos >= 0 && s[pos] == a.letters() - 1) s[pos--] = 0;
            if (pos < 0) break;
            ++s[pos];
        }
    }
    return true;
}

}  // namespace

json classification_report(const MealyAutomaton& a) {
    json j = header(a);
    j["classification"] = classification_to_json(classify(a));
    return j;
}

json orbit_tree_report(const OrbitTree& t) {
    const MealyAutomaton& a = t.automaton();
    json j = header(a);
    j["depth"] = t.depth();
    auto& levels = j["levels"] = json::array();
    for (int level = 1; level <= t.depth(); ++level) {
        json entry{{"level", level}};
        auto& comps = entry["components"] = json::array();
        for (int v : t.level_vertices(level)) {
            const auto& vx = t.vertex(v);
            comps.push_back({{"representative", format_state_word(a, vx.comp.representative())},
                             {"size", vx.comp.size()},
                             {"parent_label", t.edge(vx.parent_edge).label}});
        }
        entry["component_count"] = comps.size();
        levels.push_back(std::move(entry));
    }
    return j;
}

json jungle_report(const MealyAutomaton& a, const JungleTree& jt, const StemClasses* cls,
                   const SeqPeqTables* tables) {
    json j = header(a);
    j["trunk_length"] = jt.trunk_length();
    j["trunk_labels"] = jt.trunk_labels();
    j["arity"] = jt.arity();
    j["verified_depth"] = jt.verified_depth();
    auto& stems = j["stems"] = json::array();
    for (const auto& s : jt.stems()) stems.push_back(word_to_json(a, s));
    if (cls) {
        j["classes"] = cls->classes;
        auto& ws = j["witnesses"] = json::array();
        for (const auto& e : cls->witnesses)
            ws.push_back({{"from", e.from}, {"to", e.to}, {"bridge", word_to_json(a, e.bridge)}});
    }
    if (tables) {
        j["s_eq"] = tables->s_eq;
        j["p_eq"] = tables->p_eq;
    }
    return j;
}

json budgets_to_json(const Budgets& b) {
    return {{"tree_depth", b.tree_depth},
            {"max_trunk", b.max_trunk},
            {"witness_max_len", b.witness_max_len},
            {"order_cap", b.order_cap},
            {"growth_powers", b.growth_powers},
            {"component_cap", b.component_cap},
            {"rewrite_cap", b.rewrite_cap},
            {"sample_budget", b.sample_budget},
            {"rewrite_samples", b.rewrite_samples},
            {"rewrite_seed", b.rewrite_seed},
            {"soft_deadline_s", b.soft_deadline_s},
            {"equivalence",
             {{"node_cap", b.equivalence.node_cap},
              {"length_cap", b.equivalence.length_cap},
              {"fingerprint_depth", b.equivalence.fingerprint_depth}}}};
}

Budgets budgets_from_json(const json& j) {
    Budgets b;
    b.tree_depth = j.at("tree_depth").get<int>();
    b.max_trunk = j.at("max_trunk").get<int>();
    b.witness_max_len = j.at("witness_max_len").get<int>();
    b.order_cap = j.at("order_cap").get<int>();
    b.growth_powers = j.at("growth_powers").get<int>();
    b.component_cap = j.at("component_cap").get<std::size_t>();
    b.rewrite_cap = j.at("rewrite_cap").get<std::size_t>();
    b.sample_budget = j.at("sample_budget").get<std::size_t>();
    b.rewrite_samples = j.at("rewrite_samples").get<int>();
    b.rewrite_seed = j.at("rewrite_seed").get<unsigned>();
    b.soft_deadline_s = j.at("soft_deadline_s").get<double>();
    b.equivalence.node_cap = j.at("equivalence").at("node_cap").get<std::size_t>();
    b.equivalence.length_cap = j.at("equivalence").at("length_cap").get<std::size_t>();
    b.equivalence.fingerprint_depth = j.at("equivalence").at("fingerprint_depth").get<int>();
    return b;
}

json certificate_report(const MealyAutomaton& a, const Certificate& c, const Budgets& b) {
    json j = header(a);
    j["budgets"] = budgets_to_json(b);
    j["classification"] = classification_to_json(c.classification);
    j["branch"] = branch_name(c.branch);
    j["rationale"] = c.rationale;
    if (c.branch == Certificate::Branch::Rejected)
        j["failed_precondition"] = c.failed_precondition;
    if (c.witness) {
        j["witness"] = {{"word", word_to_json(a, c.witness->word)},
                        {"kind", kind_name(c.witness->kind)},
                        {"labels", c.witness->labels},
                        {"sizes", c.witness->sizes},
                        {"explored_depth", c.witness->explored_depth}};
        j["growth"] = c.growth;
    }
    if (c.jungle) {
        const JungleEvidence& ev = *c.jungle;
        json je{{"jungle_index", ev.jungle_index},
                {"trunk_length", ev.trunk_length},
                {"trunk_labels", ev.trunk_labels},
                {"arity", ev.arity},
                {"classes", ev.classes},
                {"s_eq", ev.s_eq},
                {"p_eq", ev.p_eq},
                {"uniform_bound", ev.uniform_bound}};
        auto& stems = je["stems"] = json::array();
        for (const auto& s : ev.stems) stems.push_back(word_to_json(a, s));
        auto& ws = je["witnesses"] = json::array();
        for (const auto& e : ev.witnesses)
            ws.push_back({{"from", e.from}, {"to", e.to}, {"bridge", word_to_json(a, e.bridge)}});
        auto& rw = je["rewrites"] = json::array();
        for (const auto& [input, rewritten] : ev.rewrites)
            rw.push_back({{"input", word_to_json(a, input)},
                          {"j_word", word_to_json(a, rewritten)}});
        j["jungle"] = std::move(je);
    }
    if (c.branch == Certificate::Branch::Inconclusive) j["budget_report"] = c.budget_report;
    return j;
}

bool reverify_certificate(const json& report, const MealyAutomaton& a, std::string* why) {
    auto fail = [&](const std::string& reason) {
        if (why) *why = reason;
        return false;
    };
    try {
        if (report.at("schema_version") != 1) return fail("unsupported schema_version");
        if (report.at("input_digest") != input_digest(a))
            return fail("input digest does not match the automaton");
        const Classification cls = classify(a);
        const json& jc = report.at("classification");
        if (jc.at("invertible") != cls.invertible || jc.at("reversible") != cls.reversible ||
            jc.at("bireversible") != cls.bireversible || jc.at("connected") != cls.connected ||
            jc.at("size") != cls.size || jc.at("prime_size") != cls.prime_size)
            return fail("classification mismatch");
        const std::string branch = report.at("branch").get<std::string>();

        if (branch == "rejected") {
            const std::string p = report.at("failed_precondition").get<std::string>();
            const bool holds = (p == "invertible" && cls.invertible) ||
                               (p == "reversible" && cls.reversible) ||
                               (p == "connected" && cls.connected) ||
                               (p == "prime_size" && cls.prime_size);
            if (holds) return fail("rejection precondition '" + p + "' actually holds");
            return true;
        }
        if (branch == "not_bireversible") {
            if (cls.bireversible) return fail("automaton is bireversible after all");
            return true;
        }
        if (branch == "infinite_order_element") {
            const json& w = report.at("witness");
            if (w.at("kind") != "active_self_liftable")
                return fail("witness kind is not active_self_liftable");
            StateWord u = word_from_json(a, w.at("word"));
            if (u.empty()) return fail("empty witness word");
            const int depth = w.at("explored_depth").get<int>();
            auto sizes = w.at("sizes").get<std::vector<std::size_t>>();
            auto labels = w.at("labels").get<std::vector<std::uint64_t>>();
            if (static_cast<int>(sizes.size()) != depth ||
                static_cast<int>(labels.size()) != depth)
                return fail("witness arrays do not match the explored depth");
            StateWord prefix;
            std::size_t prev = 1;
            for (int level = 1; level <= depth; ++level) {
                prefix.push_back(u[(level - 1) % u.size()]);
                const std::size_t sz = orbit_closure_size(a, prefix);
                if (sz != sizes[level - 1])
                    return fail("branch size mismatch at level " + std::to_string(level));
                if (sz % prev != 0 || labels[level - 1] != sz / prev)
                    return fail("branch label mismatch at level " + std::to_string(level));
                prev = sz;
            }
            if (is_active(labels, depth) != Activity::Active)
                return fail("witness branch is not active over the explored depth");
            auto growth = report.at("growth").get<std::vector<std::size_t>>();
            auto recomputed =
                power_component_sizes(a, u, static_cast<int>(growth.size()));
            if (growth != recomputed) return fail("growth sequence mismatch");
            return true;
        }
        if (branch == "finite_group_evidence") {
            const Budgets b = budgets_from_json(report.at("budgets"));
            const json& je = report.at("jungle");
            OrbitTree tree = OrbitTree::build(a, b.max_trunk + 2, b.component_cap);
            auto jungles = find_jungle_trees(a, tree, b.max_trunk);
            const int ji = je.at("jungle_index").get<int>();
            if (ji < 0 || ji >= static_cast<int>(jungles.size()))
                return fail("jungle index out of range");
            const JungleTree& jt = jungles[ji];
            if (je.at("trunk_length") != jt.trunk_length() ||
                je.at("trunk_labels").get<std::vector<std::uint64_t>>() != jt.trunk_labels() ||
                je.at("arity") != jt.arity())
                return fail("jungle trunk data mismatch");
            std::vector<StateWord> stems;
            for (const auto& s : je.at("stems")) stems.push_back(word_from_json(a, s));
            if (stems != jt.stems()) return fail("stem list mismatch");

            auto classes = je.at("classes").get<std::vector<std::vector<int>>>();
            std::vector<int> class_of(jt.stem_count(), -1);
            std::size_t covered = 0;
            for (std::size_t ci = 0; ci < classes.size(); ++ci)
                for (int m : classes[ci]) {
                    if (m < 0 || m >= static_cast<int>(jt.stem_count()) || class_of[m] != -1)
                        return fail("classes are not a partition of the stems");
                    class_of[m] = static_cast<int>(ci);
                    ++covered;
                }
            if (covered != jt.stem_count()) return fail("classes do not cover the stems");
            for (const auto& members : classes)
                if (members.size() != classes.front().size())
                    return fail("class sizes are not all equal");

            for (const auto& e : je.at("witnesses")) {
                const int from = e.at("from").get<int>(), to = e.at("to").get<int>();
                StateWord bridge = word_from_json(a, e.at("bridge"));
                StateWord uw = jt.stems().at(from);
                uw.insert(uw.end(), bridge.begin(), bridge.end());
                StateWord uwv = uw;
                const StateWord& v = jt.stems().at(to);
                uwv.insert(uwv.end(), v.begin(), v.end());
                if (!jt.is_j_word(uwv))
                    return fail("witness " + std::to_string(from) + "->" + std::to_string(to) +
                                " is not a j-word bridge");
                if (!is_identity_action(a, uw))
                    return fail("witness " + std::to_string(from) + "->" + std::to_string(to) +
                                " does not act as the identity");
            }

            StemClasses cls2;
            cls2.classes = classes;
            cls2.class_of = class_of;
            SeqPeqTables tables = seq_peq_tables(jt, cls2);
            if (je.at("s_eq").get<std::vector<std::uint64_t>>() != tables.s_eq ||
                je.at("p_eq").get<std::vector<std::uint64_t>>() != tables.p_eq)
                return fail("counting tables mismatch");

            for (const auto& r : je.at("rewrites")) {
                StateWord input = word_from_json(a, r.at("input"));
                StateWord rewritten = word_from_json(a, r.at("j_word"));
                if (!jt.is_j_word(rewritten)) return fail("rewrite output is not a j-word");
                if (!actions_equal(a, input, rewritten, 6))
                    return fail("rewrite output is not action-equal to its input");
            }
            if (je.at("uniform_bound").get<std::uint64_t>() < 1)
                return fail("uniform bound must be at least 1");
            return true;
        }
        if (branch == "inconclusive") {
            if (report.at("budget_report").get<std::string>().empty())
                return fail("inconclusive certificate without a budget report");
            return true;
        }
        return fail("unknown branch '" + branch + "'");
    } catch (const std::exception& e) {
        return fail(std::string("re-verification error: ") + e.what());
    }
}

}  // namespace mealy
