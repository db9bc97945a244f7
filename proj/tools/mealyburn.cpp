// mealyburn: classify Mealy automata, explore orbit trees and jungle trees,
// and certify that prime-size connected invertible-reversible automata do
// not generate infinite Burnside groups.
//
// Exit codes: 0 definitive result, 2 inconclusive (budget), 3 input
// rejected (classification precondition), 4 parse/IO error.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "mealy/burnside.hpp"
#include "mealy/dot.hpp"
#include "mealy/format.hpp"
#include "mealy/reports.hpp"
#include "mealy/version.hpp"

namespace {

constexpr int kExitDefinitive = 0;
constexpr int kExitInconclusive = 2;
constexpr int kExitRejected = 3;
constexpr int kExitParse = 4;

void write_file(const std::string& path, const std::string& text) {
    std::ofstream out(path);
    if (!out) throw mealy::ParseError("cannot write '" + path + "'");
    out << text;
}

void maybe_write_json(const std::string& path, const nlohmann::json& j) {
    if (!path.empty()) write_file(path, j.dump(2) + "\n");
}

struct Options {
    std::string file;
    int depth = 4;
    int max_trunk = 3;
    std::string word;
    std::size_t cap = mealy::kDefaultComponentCap;
    int order_cap = 256;
    std::string dot_path;
    std::string json_path;
    unsigned seed = 12345;
};

int cmd_classify(const mealy::MealyAutomaton& a, const Options& opt) {
    auto c = mealy::classify(a);
    std::cout << "states: " << c.size << (c.prime_size ? " (prime)" : " (not prime)") << "\n"
              << "invertible:   " << (c.invertible ? "yes" : "no") << "\n"
              << "reversible:   " << (c.reversible ? "yes" : "no") << "\n"
              << "bireversible: " << (c.bireversible ? "yes" : "no") << "\n"
              << "connected:    " << (c.connected ? "yes" : "no") << "\n";
    maybe_write_json(opt.json_path, mealy::classification_report(a));
    if (!opt.dot_path.empty()) write_file(opt.dot_path, mealy::export_dot(a));
    return kExitDefinitive;
}

int cmd_orbit_tree(const mealy::MealyAutomaton& a, const Options& opt) {
    auto t = mealy::OrbitTree::build(a, opt.depth, opt.cap);
    for (int level = 1; level <= t.depth(); ++level) {
        std::cout << "level " << level << ":";
        for (int v : t.level_vertices(level)) {
            const auto& vx = t.vertex(v);
            std::cout << "  " << mealy::format_state_word(a, vx.comp.representative()) << "(#"
                      << vx.comp.size() << ", label " << t.edge(vx.parent_edge).label << ")";
        }
        std::cout << "\n";
    }
    maybe_write_json(opt.json_path, mealy::orbit_tree_report(t));
    if (!opt.dot_path.empty()) write_file(opt.dot_path, mealy::export_dot(t));
    return kExitDefinitive;
}

std::vector<mealy::JungleTree> find_jungles(const mealy::MealyAutomaton& a,
                                            const Options& opt) {
    const int depth = std::max(opt.depth, opt.max_trunk + 2);
    auto t = mealy::OrbitTree::build(a, depth, opt.cap);
    return mealy::find_jungle_trees(a, t, opt.max_trunk);
}

int cmd_jungle(const mealy::MealyAutomaton& a, const Options& opt) {
    auto jungles = find_jungles(a, opt);
    if (jungles.empty()) {
        std::cout << "no jungle tree with trunk length <= " << opt.max_trunk << "\n";
        return kExitInconclusive;
    }
    nlohmann::json all = nlohmann::json::array();
    for (const auto& jt : jungles) {
        std::cout << "trunk length " << jt.trunk_length() << ", labels (";
        for (std::size_t i = 0; i < jt.trunk_labels().size(); ++i)
            std::cout << (i ? "," : "") << jt.trunk_labels()[i];
        std::cout << "), arity " << jt.arity() << ", " << jt.stem_count()
                  << " stems, regularity verified " << jt.verified_depth()
                  << " levels below the trunk\n";
        all.push_back(mealy::jungle_report(a, jt));
    }
    maybe_write_json(opt.json_path, all.size() == 1 ? all.front() : all);
    return kExitDefinitive;
}

int cmd_stems(const mealy::MealyAutomaton& a, const Options& opt) {
    auto jungles = find_jungles(a, opt);
    if (jungles.empty()) {
        std::cout << "no jungle tree with trunk length <= " << opt.max_trunk << "\n";
        return kExitInconclusive;
    }
    const auto& jt = jungles.front();
    for (const auto& s : jt.stems())
        std::cout << mealy::format_state_word(a, s, ".") << "\n";
    maybe_write_json(opt.json_path, mealy::jungle_report(a, jt));
    return kExitDefinitive;
}

int cmd_classes(const mealy::MealyAutomaton& a, const Options& opt) {
    auto jungles = find_jungles(a, opt);
    if (jungles.empty()) {
        std::cout << "no jungle tree with trunk length <= " << opt.max_trunk << "\n";
        return kExitInconclusive;
    }
    const auto& jt = jungles.front();
    try {
        auto cls = mealy::stem_classes(jt, {}, static_cast<std::size_t>(opt.order_cap));
        auto tables = mealy::seq_peq_tables(jt, cls);
        for (std::size_t ci = 0; ci < cls.classes.size(); ++ci) {
            std::cout << "class " << ci << ":";
            for (int m : cls.classes[ci])
                std::cout << " " << mealy::format_state_word(a, jt.stems()[m], ".");
            std::cout << "\n";
        }
        std::cout << "s_eq:";
        for (auto v : tables.s_eq) std::cout << " " << v;
        std::cout << "\np_eq:";
        for (auto v : tables.p_eq) std::cout << " " << v;
        std::cout << "\n";
        maybe_write_json(opt.json_path, mealy::jungle_report(a, jt, &cls, &tables));
        return kExitDefinitive;
    } catch (const mealy::IncompletePartition& e) {
        std::cout << "partition incomplete: " << e.what() << "\n";
        return kExitInconclusive;
    }
}

int cmd_order(const mealy::MealyAutomaton& a, const Options& opt) {
    if (opt.word.empty()) {
        std::cerr << "order requires --word\n";
        return kExitParse;
    }
    auto u = mealy::parse_state_word(a, opt.word);
    auto r = mealy::order_of(a, u, opt.order_cap, opt.cap);
    switch (r.verdict) {
        case mealy::OrderResult::Verdict::Finite:
            std::cout << "finite order " << r.order << "\n";
            return kExitDefinitive;
        case mealy::OrderResult::Verdict::InfiniteWitness:
            std::cout << "infinite-order evidence: component sizes along powers:";
            for (auto s : r.growth) std::cout << " " << s;
            std::cout << "\n";
            return kExitDefinitive;
        case mealy::OrderResult::Verdict::ExceedsCap:
            std::cout << "no identity power within cap " << opt.order_cap << "\n";
            return kExitInconclusive;
    }
    return kExitInconclusive;
}

int cmd_certify(const mealy::MealyAutomaton& a, const Options& opt) {
    mealy::Budgets b;
    b.tree_depth = std::max(opt.depth, 6);
    b.max_trunk = opt.max_trunk;
    b.order_cap = opt.order_cap;
    b.component_cap = opt.cap;
    b.rewrite_seed = opt.seed;
    auto c = mealy::certify(a, b);
    const char* names[] = {"rejected", "not bireversible", "infinite-order element",
                           "finite-group evidence", "inconclusive"};
    std::cout << "branch: " << names[static_cast<int>(c.branch)] << "\n"
              << c.rationale << "\n";
    maybe_write_json(opt.json_path, mealy::certificate_report(a, c, b));
    switch (c.branch) {
        case mealy::Certificate::Branch::Rejected: return kExitRejected;
        case mealy::Certificate::Branch::Inconclusive: return kExitInconclusive;
        default: return kExitDefinitive;
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{std::string(mealy::kToolName) + " " + mealy::kToolVersion +
                 " — Mealy automaton orbit trees, jungles, and Burnside certificates"};
    app.require_subcommand(1);
    Options opt;

    auto add_common = [&](CLI::App* cmd) {
        cmd->add_option("file", opt.file, "automaton file (.mealy text or JSON)")->required();
        cmd->add_option("--depth", opt.depth, "orbit tree depth");
        cmd->add_option("--max-trunk", opt.max_trunk, "maximum jungle trunk length");
        cmd->add_option("--word", opt.word, "state word (comma-separated or juxtaposed)");
        cmd->add_option("--cap", opt.cap, "component size cap");
        cmd->add_option("--order-cap", opt.order_cap, "order search cap");
        cmd->add_option("--dot", opt.dot_path, "write DOT output here");
        cmd->add_option("--json", opt.json_path, "write JSON report here");
        cmd->add_option("--seed", opt.seed, "seed for sampled evidence");
        return cmd;
    };
    auto* c_classify = add_common(app.add_subcommand("classify", "classification flags"));
    auto* c_tree = add_common(app.add_subcommand("orbit-tree", "component census per level"));
    auto* c_jungle = add_common(app.add_subcommand("jungle", "find jungle trees"));
    auto* c_stems = add_common(app.add_subcommand("stems", "list the stems of the first jungle"));
    auto* c_classes = add_common(app.add_subcommand("classes", "stem equivalence classes"));
    auto* c_order = add_common(app.add_subcommand("order", "order of the action of --word"));
    auto* c_certify = add_common(app.add_subcommand("certify", "run the certification pipeline"));

    CLI11_PARSE(app, argc, argv);

    try {
        mealy::MealyAutomaton a = mealy::parse_mealy_file(opt.file);
        if (c_classify->parsed()) return cmd_classify(a, opt);
        if (c_tree->parsed()) return cmd_orbit_tree(a, opt);
        if (c_jungle->parsed()) return cmd_jungle(a, opt);
        if (c_stems->parsed()) return cmd_stems(a, opt);
        if (c_classes->parsed()) return cmd_classes(a, opt);
        if (c_order->parsed()) return cmd_order(a, opt);
        if (c_certify->parsed()) return cmd_certify(a, opt);
    } catch (const mealy::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const mealy::ValidationError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitParse;
    } catch (const mealy::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitInconclusive;
    }
    return kExitParse;
}
