#include "mealy/dot.hpp"

#include <sstream>

namespace mealy {

std::string export_dot(const MealyAutomaton& a) {
    std::ostringstream os;
    os << "digraph mealy {\n  rankdir=LR;\n  node [shape=circle];\n";
    for (int x = 0; x < a.states(); ++x)
        os << "  q" << x << " [label=\"" << a.state_names()[x] << "\"];\n";
    for (int x = 0; x < a.states(); ++x)
        for (int i = 0; i < a.letters(); ++i)
            os << "  q" << x << " -> q" << int(a.delta(x, i)) << " [label=\""
               << a.letter_names()[i] << "|" << a.letter_names()[a.rho(x, i)] << "\"];\n";
    os << "}\n";
    return os.str();
}

std::string export_dot(const OrbitTree& t) {
    const MealyAutomaton& a = t.automaton();
    std::ostringstream os;
    os << "digraph orbit_tree {\n  node [shape=box];\n";
    for (std::size_t v = 0; v < t.vertices().size(); ++v) {
        const auto& vx = t.vertex(static_cast<int>(v));
        std::string rep = vx.level == 0 ? std::string("e")
                                        : format_state_word(a, vx.comp.representative());
        os << "  v" << v << " [label=\"" << rep << "\\n#" << vx.comp.size() << "\"];\n";
    }
    for (const auto& e : t.edges())
        os << "  v" << e.top << " -> v" << e.bottom << " [label=\"" << e.label << "\"];\n";
    os << "}\n";
    return os.str();
}

}  // namespace mealy
