#include "ptlab/games.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>

namespace ptlab {

const char* party_name(Party p) { return p == Party::alice ? "alice" : "bob"; }

Party other_party(Party p) {
    return p == Party::alice ? Party::bob : Party::alice;
}

std::string question_label(const Question& q) { return q.first + q.second; }

std::string variable_name(const ContextualVariable& v) {
    return std::string(party_name(v.party)) + ":" + v.observable + "|" + v.context;
}

std::size_t Game::predicate_count() const {
    std::size_t n = 0;
    for (const QuestionPair& p : pairs) {
        n += p.predicates.size();
    }
    return n;
}

std::int64_t Game::common_weight_denominator() const {
    std::int64_t den = 1;
    for (const QuestionPair& p : pairs) {
        den = std::lcm(den, p.weight.den());
    }
    return den;
}

std::optional<std::size_t> Game::find_pair(const std::string& pair_name) const {
    const auto colon = pair_name.find(':');
    if (colon == std::string::npos) {
        return std::nullopt;
    }
    const std::string alice_label = pair_name.substr(0, colon);
    const std::string bob_label = pair_name.substr(colon + 1);
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        if (question_label(alice_question(pairs[i])) == alice_label &&
            question_label(bob_question(pairs[i])) == bob_label) {
            return i;
        }
    }
    return std::nullopt;
}

ContextualVariable resolve_factor(const Game& g, const QuestionPair& pair,
                                  const ObservableId& factor) {
    const Question& q = g.question_of(pair, factor.party);
    if (factor.label == q.first) {
        return ContextualVariable{factor.party, factor.label, q.second};
    }
    if (factor.label == q.second) {
        return ContextualVariable{factor.party, factor.label, q.first};
    }
    throw std::invalid_argument("factor " + std::string(party_name(factor.party)) +
                                ":" + factor.label + " is not asked in pair " +
                                question_label(g.alice_question(pair)) + ":" +
                                question_label(g.bob_question(pair)));
}

bool pair_satisfied_by_answers(const Game& g, const QuestionPair& pair,
                               int alice_first, int alice_second, int bob_first,
                               int bob_second) {
    for (const Predicate& pred : pair.predicates) {
        int product = 1;
        for (const ObservableId& f : pred.factors) {
            const Question& q = g.question_of(pair, f.party);
            const int first = f.party == Party::alice ? alice_first : bob_first;
            const int second = f.party == Party::alice ? alice_second : bob_second;
            if (f.label == q.first) {
                product *= first;
            } else if (f.label == q.second) {
                product *= second;
            } else {
                throw std::invalid_argument("factor " + f.label + " not asked");
            }
        }
        if (product != pred.sign) {
            return false;
        }
    }
    return true;
}

namespace {

struct EquationDef {
    const char* id;
    int sign;
    const char* alice_factors; // one char per observable label
    const char* bob_factors;
};

// The 32 built-in winning requirements, in canonical id order.
const EquationDef kEquations[] = {
    {"e01", +1, "X", "Xz"}, {"e02", +1, "Xz", "X"}, {"e03", +1, "z", "z"},
    {"e04", +1, "Xz", "X"}, {"e05", +1, "Xz", "X"}, {"e06", +1, "Zx", "x"},
    {"e07", +1, "x", "Zx"}, {"e08", +1, "Z", "Z"},  {"e09", +1, "Zx", "x"},
    {"e10", +1, "Zx", "x"}, {"e11", +1, "z", "z"},  {"e12", -1, "Y", "Yz"},
    {"e13", -1, "Yz", "Y"}, {"e14", -1, "Yz", "Y"}, {"e15", -1, "Yz", "Y"},
    {"e16", +1, "Z", "Z"},  {"e17", -1, "Zy", "y"}, {"e18", -1, "y", "Zy"},
    {"e19", -1, "Zy", "y"}, {"e20", -1, "Zy", "y"}, {"e21", +1, "X", "Xz"},
    {"e22", +1, "x", "Zx"}, {"e23", +1, "Xx", "Yy"}, {"e24", +1, "X", "Xz"},
    {"e25", -1, "y", "Zy"}, {"e26", +1, "Xy", "Yx"}, {"e27", +1, "x", "Zx"},
    {"e28", -1, "Y", "Yz"}, {"e29", +1, "Yx", "Xy"}, {"e30", -1, "Y", "Yz"},
    {"e31", -1, "y", "Zy"}, {"e32", +1, "Yy", "Xx"},
};

struct CellDef {
    const char* alice_q;
    const char* bob_q;
    std::vector<const char*> equation_ids;
};

Predicate make_predicate(const std::string& id) {
    for (const EquationDef& eq : kEquations) {
        if (id != eq.id) {
            continue;
        }
        Predicate pred;
        pred.id = eq.id;
        pred.sign = eq.sign;
        for (const char* c = eq.alice_factors; *c; ++c) {
            pred.factors.push_back({Party::alice, std::string(1, *c)});
        }
        for (const char* c = eq.bob_factors; *c; ++c) {
            pred.factors.push_back({Party::bob, std::string(1, *c)});
        }
        return pred;
    }
    throw std::logic_error("unknown built-in equation id " + id);
}

Game make_builtin(const std::string& name,
                  const std::vector<const char*>& alice_questions,
                  const std::vector<const char*>& bob_questions,
                  const std::vector<CellDef>& cells) {
    Game g;
    g.name = name;
    for (const char* label : {"X", "Y", "Z", "x", "y", "z"}) {
        g.observables.push_back({Party::alice, label});
    }
    for (const char* label : {"X", "Y", "Z", "x", "y", "z"}) {
        g.observables.push_back({Party::bob, label});
    }

    std::map<std::string, std::size_t> alice_index;
    std::map<std::string, std::size_t> bob_index;
    for (const char* q : alice_questions) {
        alice_index[q] = g.questions.size();
        g.questions.push_back({Party::alice, std::string(1, q[0]), std::string(1, q[1])});
    }
    for (const char* q : bob_questions) {
        bob_index[q] = g.questions.size();
        g.questions.push_back({Party::bob, std::string(1, q[0]), std::string(1, q[1])});
    }

    const Rational weight(1, static_cast<std::int64_t>(cells.size()));
    for (const CellDef& cell : cells) {
        QuestionPair pair;
        pair.alice_q = alice_index.at(cell.alice_q);
        pair.bob_q = bob_index.at(cell.bob_q);
        pair.weight = weight;
        for (const char* id : cell.equation_ids) {
            pair.predicates.push_back(make_predicate(id));
        }
        g.pairs.push_back(std::move(pair));
    }
    return g;
}

} // namespace

Game builtin_full_game() {
    static const std::vector<CellDef> cells = {
        {"Xz", "Xz", {"e01", "e02"}}, {"Xz", "Yz", {"e03"}},
        {"Xz", "Xy", {"e04"}},        {"Xz", "Xx", {"e05"}},
        {"Zx", "Zx", {"e06", "e07"}}, {"Zx", "Zy", {"e08"}},
        {"Zx", "Yx", {"e09"}},        {"Zx", "Xx", {"e10"}},
        {"Yz", "Xz", {"e11"}},        {"Yz", "Yz", {"e12", "e13"}},
        {"Yz", "Yy", {"e14"}},        {"Yz", "Yx", {"e15"}},
        {"Zy", "Zx", {"e16"}},        {"Zy", "Zy", {"e17", "e18"}},
        {"Zy", "Yy", {"e19"}},        {"Zy", "Xy", {"e20"}},
        {"Xx", "Xz", {"e21"}},        {"Xx", "Zx", {"e22"}},
        {"Xx", "Yy", {"e23"}},        {"Xy", "Xz", {"e24"}},
        {"Xy", "Zy", {"e25"}},        {"Xy", "Yx", {"e26"}},
        {"Yx", "Zx", {"e27"}},        {"Yx", "Yz", {"e28"}},
        {"Yx", "Xy", {"e29"}},        {"Yy", "Yz", {"e30"}},
        {"Yy", "Zy", {"e31"}},        {"Yy", "Xx", {"e32"}},
    };
    return make_builtin("full", {"Xz", "Zx", "Yz", "Zy", "Xx", "Xy", "Yx", "Yy"},
                        {"Xz", "Zx", "Yz", "Zy", "Yy", "Yx", "Xy", "Xx"}, cells);
}

Game builtin_simple_game() {
    static const std::vector<CellDef> cells = {
        {"Xz", "Xz", {"e01", "e02"}}, {"Xz", "Yz", {"e03"}},
        {"Xz", "Xy", {"e04"}},        {"Yz", "Xz", {"e11"}},
        {"Yz", "Yz", {"e12", "e13"}}, {"Yz", "Yy", {"e14"}},
        {"Zy", "Yy", {"e19"}},        {"Zy", "Xy", {"e20"}},
        {"Xx", "Xz", {"e21"}},        {"Xx", "Zx", {"e22"}},
        {"Xx", "Yy", {"e23"}},        {"Yx", "Zx", {"e27"}},
        {"Yx", "Yz", {"e28"}},        {"Yx", "Xy", {"e29"}},
    };
    return make_builtin("simple", {"Xz", "Yz", "Zy", "Xx", "Yx"},
                        {"Xz", "Zx", "Yz", "Yy", "Xy"}, cells);
}

std::vector<ContextualVariable> contextual_variables(const Game& g, Party party) {
    std::set<ContextualVariable> seen;
    for (const Question& q : g.questions) {
        if (q.party != party) {
            continue;
        }
        seen.insert({party, q.first, q.second});
        seen.insert({party, q.second, q.first});
    }
    return {seen.begin(), seen.end()};
}

std::vector<std::string> validate(const Game& g) {
    std::vector<std::string> violations;
    auto report = [&](std::string msg) { violations.push_back(std::move(msg)); };

    std::set<ObservableId> labels;
    for (const ObservableId& obs : g.observables) {
        if (obs.label.empty()) {
            report("observable with empty label");
        }
        if (!labels.insert(obs).second) {
            report("duplicate observable " + std::string(party_name(obs.party)) +
                   ":" + obs.label);
        }
    }

    std::set<std::tuple<Party, std::string, std::string>> question_keys;
    for (std::size_t i = 0; i < g.questions.size(); ++i) {
        const Question& q = g.questions[i];
        if (q.first == q.second) {
            report("question " + std::to_string(i) + " repeats observable " + q.first);
        }
        for (const std::string& label : {q.first, q.second}) {
            if (!labels.count({q.party, label})) {
                report("question " + std::to_string(i) + " uses unknown observable " +
                       std::string(party_name(q.party)) + ":" + label);
            }
        }
        if (!question_keys.insert({q.party, q.first, q.second}).second) {
            report("duplicate question " + std::string(party_name(q.party)) + ":" +
                   question_label(q));
        }
    }

    std::set<std::pair<std::size_t, std::size_t>> pair_keys;
    std::set<std::string> predicate_ids;
    Rational weight_sum(0);
    for (std::size_t i = 0; i < g.pairs.size(); ++i) {
        const QuestionPair& pair = g.pairs[i];
        const std::string where = "pair " + std::to_string(i);
        if (pair.alice_q >= g.questions.size() || pair.bob_q >= g.questions.size()) {
            report(where + ": question index out of range");
            continue;
        }
        if (g.questions[pair.alice_q].party != Party::alice) {
            report(where + ": alice index points at a bob question");
            continue;
        }
        if (g.questions[pair.bob_q].party != Party::bob) {
            report(where + ": bob index points at an alice question");
            continue;
        }
        if (!pair_keys.insert({pair.alice_q, pair.bob_q}).second) {
            report(where + ": duplicate question combination " +
                   question_label(g.alice_question(pair)) + ":" +
                   question_label(g.bob_question(pair)));
        }
        if (pair.predicates.empty()) {
            report(where + ": no predicates (absent pairs must be omitted)");
        }
        if (pair.weight < Rational(0)) {
            report(where + ": negative weight " + pair.weight.str());
        }
        weight_sum += pair.weight;

        for (const Predicate& pred : pair.predicates) {
            const std::string pwhere = where + ", predicate " + pred.id;
            if (pred.sign != 1 && pred.sign != -1) {
                report(pwhere + ": sign must be +1 or -1");
            }
            if (pred.factors.size() < 2) {
                report(pwhere + ": fewer than 2 factors");
            }
            if (!predicate_ids.insert(pred.id).second) {
                report(pwhere + ": duplicate predicate id");
            }
            std::set<ObservableId> seen_factors;
            for (const ObservableId& f : pred.factors) {
                if (!seen_factors.insert(f).second) {
                    report(pwhere + ": repeated factor " +
                           std::string(party_name(f.party)) + ":" + f.label);
                }
                try {
                    resolve_factor(g, pair, f);
                } catch (const std::invalid_argument&) {
                    report(pwhere + ": factor " + std::string(party_name(f.party)) +
                           ":" + f.label + " not asked");
                }
            }
        }
    }
    if (g.pairs.empty()) {
        report("game has no question pairs");
    } else if (weight_sum != Rational(1)) {
        report("weights sum to " + weight_sum.str() + ", expected 1");
    }
    return violations;
}

} // namespace ptlab
