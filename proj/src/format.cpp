#include "mealy/format.hpp"

#include <algorithm>
#include <fstream>
#include <iomanip>
#include <map>
#include <sstream>

#include <json.hpp>

namespace mealy {

namespace {

std::vector<std::string> split_ws(const std::string& line) {
    std::istringstream is(line);
    std::vector<std::string> out;
    std::string tok;
    while (is >> tok) out.push_back(tok);
    return out;
}

int lookup(const std::map<std::string, int>& table, const std::string& name,
           const char* what, int line_no) {
    auto it = table.find(name);
    if (it == table.end())
        throw ParseError("unknown " + std::string(what) + " '" + name + "'", line_no);
    return it->second;
}

MealyAutomaton assemble(const std::vector<std::string>& states,
                        const std::vector<std::string>& letters,
                        std::map<std::pair<int, int>, std::pair<int, int>>& trans,
                        int line_no) {
    const std::size_t need = states.size() * letters.size();
    if (trans.size() != need)
        throw ParseError("expected " + std::to_string(need) + " transitions, found " +
                             std::to_string(trans.size()),
                         line_no);
    std::vector<std::uint8_t> delta(need), rho(need);
    for (const auto& [key, val] : trans) {
        const std::size_t idx =
            static_cast<std::size_t>(key.first) * letters.size() + key.second;
        delta[idx] = static_cast<std::uint8_t>(val.first);
        rho[idx] = static_cast<std::uint8_t>(val.second);
    }
    return MealyAutomaton(states, letters, std::move(delta), std::move(rho));
}

}  // namespace

MealyAutomaton parse_mealy_text(const std::string& text) {
    std::istringstream is(text);
    std::string line;
    int line_no = 0;
    std::vector<std::string> states, letters;
    std::map<std::string, int> state_idx, letter_idx;
    std::map<std::pair<int, int>, std::pair<int, int>> trans;
    auto declare = [&](std::vector<std::string>& names, std::map<std::string, int>& idx,
                       const std::vector<std::string>& toks, const char* what) {
        if (!names.empty()) throw ParseError(std::string(what) + " declared twice", line_no);
        if (toks.size() < 2) throw ParseError(std::string(what) + " line needs names", line_no);
        for (std::size_t i = 1; i < toks.size(); ++i) {
            if (!idx.emplace(toks[i], static_cast<int>(names.size())).second)
                throw ParseError("duplicate name '" + toks[i] + "'", line_no);
            names.push_back(toks[i]);
        }
    };
    while (std::getline(is, line)) {
        ++line_no;
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto toks = split_ws(line);
        if (toks.empty()) continue;
        if (toks[0] == "states") {
            declare(states, state_idx, toks, "states");
        } else if (toks[0] == "letters") {
            declare(letters, letter_idx, toks, "letters");
        } else {
            if (states.empty() || letters.empty())
                throw ParseError("transition before states/letters headers", line_no);
            if (toks.size() != 5 || toks[2] != "->")
                throw ParseError("expected '<state> <letter> -> <state> <letter>'", line_no);
            int x = lookup(state_idx, toks[0], "state", line_no);
            int i = lookup(letter_idx, toks[1], "letter", line_no);
            int y = lookup(state_idx, toks[3], "state", line_no);
            int o = lookup(letter_idx, toks[4], "letter", line_no);
            if (!trans.emplace(std::make_pair(x, i), std::make_pair(y, o)).second)
                throw ParseError("duplicate transition for (" + toks[0] + ", " + toks[1] + ")",
                                 line_no);
        }
    }
    if (states.empty()) throw ParseError("missing 'states' header", line_no);
    if (letters.empty()) throw ParseError("missing 'letters' header", line_no);
    return assemble(states, letters, trans, line_no);
}

MealyAutomaton parse_mealy_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParseError("cannot open '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    std::string text = buf.str();
    // Sniff JSON: first non-space character '{'.
    auto pos = text.find_first_not_of(" \t\r\n");
    if (pos != std::string::npos && text[pos] == '{') return parse_mealy_json(text);
    return parse_mealy_text(text);
}

std::string print_mealy_text(const MealyAutomaton& a) {
    std::ostringstream os;
    os << "states";
    for (const auto& s : a.state_names()) os << ' ' << s;
    os << "\nletters";
    for (const auto& l : a.letter_names()) os << ' ' << l;
    os << '\n';
    for (int x = 0; x < a.states(); ++x)
        for (int i = 0; i < a.letters(); ++i)
            os << a.state_names()[x] << ' ' << a.letter_names()[i] << " -> "
               << a.state_names()[a.delta(x, i)] << ' ' << a.letter_names()[a.rho(x, i)]
               << '\n';
    return os.str();
}

MealyAutomaton parse_mealy_json(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(e.what());
    }
    if (!j.is_object()) throw ParseError("top-level JSON value must be an object");
    static const std::vector<std::string> known{"schema_version", "states", "letters",
                                               "transitions"};
    for (const auto& [key, val] : j.items())
        if (std::find(known.begin(), known.end(), key) == known.end())
            throw ParseError("unknown field '" + key + "'");
    if (!j.contains("schema_version") || j["schema_version"] != 1)
        throw ParseError("missing or unsupported schema_version (expected 1)");
    if (!j.contains("states") || !j.contains("letters") || !j.contains("transitions"))
        throw ParseError("states, letters and transitions are required");
    std::vector<std::string> states, letters;
    std::map<std::string, int> state_idx, letter_idx;
    for (const auto& s : j["states"]) {
        if (!state_idx.emplace(s.get<std::string>(), static_cast<int>(states.size())).second)
            throw ParseError("duplicate state '" + s.get<std::string>() + "'");
        states.push_back(s.get<std::string>());
    }
    for (const auto& l : j["letters"]) {
        if (!letter_idx.emplace(l.get<std::string>(), static_cast<int>(letters.size())).second)
            throw ParseError("duplicate letter '" + l.get<std::string>() + "'");
        letters.push_back(l.get<std::string>());
    }
    std::map<std::pair<int, int>, std::pair<int, int>> trans;
    for (const auto& t : j["transitions"]) {
        if (!t.is_object()) throw ParseError("transition entries must be objects");
        static const std::vector<std::string> tknown{"state", "letter", "next", "output"};
        for (const auto& [key, val] : t.items())
            if (std::find(tknown.begin(), tknown.end(), key) == tknown.end())
                throw ParseError("unknown transition field '" + key + "'");
        int x = lookup(state_idx, t.at("state").get<std::string>(), "state", -1);
        int i = lookup(letter_idx, t.at("letter").get<std::string>(), "letter", -1);
        int y = lookup(state_idx, t.at("next").get<std::string>(), "state", -1);
        int o = lookup(letter_idx, t.at("output").get<std::string>(), "letter", -1);
        if (!trans.emplace(std::make_pair(x, i), std::make_pair(y, o)).second)
            throw ParseError("duplicate transition for (" + t.at("state").get<std::string>() +
                             ", " + t.at("letter").get<std::string>() + ")");
    }
    return assemble(states, letters, trans, -1);
}

std::string print_mealy_json(const MealyAutomaton& a) {
    nlohmann::json j;
    j["schema_version"] = 1;
    j["states"] = a.state_names();
    j["letters"] = a.letter_names();
    auto& ts = j["transitions"] = nlohmann::json::array();
    for (int x = 0; x < a.states(); ++x)
        for (int i = 0; i < a.letters(); ++i)
            ts.push_back({{"state", a.state_names()[x]},
                          {"letter", a.letter_names()[i]},
                          {"next", a.state_names()[a.delta(x, i)]},
                          {"output", a.letter_names()[a.rho(x, i)]}});
    return j.dump(2) + "\n";
}

std::string input_digest(const MealyAutomaton& a) {
    const std::string canon = print_mealy_text(a);
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : canon) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream os;
    os << "fnv1a:" << std::hex << std::setw(16) << std::setfill('0') << h;
    return os.str();
}

namespace {

std::vector<std::uint8_t> parse_word(const std::vector<std::string>& names,
                                     const std::string& text, const char* what) {
    std::map<std::string, int> idx;
    for (std::size_t i = 0; i < names.size(); ++i) idx[names[i]] = static_cast<int>(i);
    std::vector<std::uint8_t> out;
    if (text.empty()) return out;
    if (text.find(',') != std::string::npos) {
        std::istringstream is(text);
        std::string field;
        while (std::getline(is, field, ','))
            out.push_back(static_cast<std::uint8_t>(lookup(idx, field, what, -1)));
        return out;
    }
    const bool single = std::all_of(names.begin(), names.end(),
                                    [](const std::string& n) { return n.size() == 1; });
    if (single) {
        for (char c : text)
            out.push_back(static_cast<std::uint8_t>(lookup(idx, std::string(1, c), what, -1)));
        return out;
    }
    out.push_back(static_cast<std::uint8_t>(lookup(idx, text, what, -1)));
    return out;
}

}  // namespace

StateWord parse_state_word(const MealyAutomaton& a, const std::string& text) {
    return parse_word(a.state_names(), text, "state");
}

LetterWord parse_letter_word(const MealyAutomaton& a, const std::string& text) {
    return parse_word(a.letter_names(), text, "letter");
}

}  // namespace mealy
