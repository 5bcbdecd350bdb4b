#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

#include "ptlab/rational.hpp"

namespace ptlab {

enum class Party { alice, bob };

inline constexpr Party kParties[] = {Party::alice, Party::bob};

const char* party_name(Party p);
Party other_party(Party p);

struct ObservableId {
    Party party;
    std::string label;

    friend bool operator==(const ObservableId&, const ObservableId&) = default;
    friend auto operator<=>(const ObservableId& a, const ObservableId& b) {
        return std::tie(a.party, a.label) <=> std::tie(b.party, b.label);
    }
};

struct Question {
    Party party;
    std::string first;
    std::string second;

    friend bool operator==(const Question&, const Question&) = default;
};

// Question name used on the CLI and in reports: concatenated labels, "Xz".
std::string question_label(const Question& q);

// A winning requirement: the product of the named answers equals sign.
struct Predicate {
    std::string id;
    int sign = 1; // +1 or -1
    std::vector<ObservableId> factors;

    friend bool operator==(const Predicate&, const Predicate&) = default;
};

struct QuestionPair {
    std::size_t alice_q = 0; // indices into Game::questions
    std::size_t bob_q = 0;
    std::vector<Predicate> predicates;
    Rational weight;

    friend bool operator==(const QuestionPair&, const QuestionPair&) = default;
};

// An answer slot v(observable | context): the value a player gives for
// `observable` when it is asked jointly with `context`.
struct ContextualVariable {
    Party party;
    std::string observable;
    std::string context;

    friend bool operator==(const ContextualVariable&, const ContextualVariable&) = default;
    friend auto operator<=>(const ContextualVariable& a, const ContextualVariable& b) {
        return std::tie(a.party, a.observable, a.context) <=>
               std::tie(b.party, b.observable, b.context);
    }
};

std::string variable_name(const ContextualVariable& v);

struct Game {
    std::string name;
    std::vector<ObservableId> observables;
    std::vector<Question> questions;
    std::vector<QuestionPair> pairs;

    friend bool operator==(const Game&, const Game&) = default;

    const Question& alice_question(const QuestionPair& p) const {
        return questions.at(p.alice_q);
    }
    const Question& bob_question(const QuestionPair& p) const {
        return questions.at(p.bob_q);
    }
    const Question& question_of(const QuestionPair& p, Party party) const {
        return party == Party::alice ? alice_question(p) : bob_question(p);
    }

    std::size_t predicate_count() const;
    // lcm of the pair-weight denominators; values render exactly over it.
    std::int64_t common_weight_denominator() const;
    // Pair lookup by "AliceQ:BobQ" name, e.g. "Xz:Xz".
    std::optional<std::size_t> find_pair(const std::string& pair_name) const;
};

// The context a factor resolves to inside a pair: the companion observable in
// that party's asked question. Throws if the factor was not asked.
ContextualVariable resolve_factor(const Game& g, const QuestionPair& pair,
                                  const ObservableId& factor);

// Whether the four answers (+-1, ordered alice first/second then bob
// first/second) satisfy every predicate of the pair.
bool pair_satisfied_by_answers(const Game& g, const QuestionPair& pair,
                               int alice_first, int alice_second, int bob_first,
                               int bob_second);

// Full game: 8 questions per player, 28 allowed pairs, 32 predicates
// (e01..e32), uniform weights 1/28.
Game builtin_full_game();

// Simple game: 5 questions per player, 14 pairs, 16 predicates, all of them
// also present in the full game, uniform weights 1/14.
Game builtin_simple_game();

// All (observable, context) slots of one party, sorted by observable label
// then context label. This order is the canonical bit order for strategies.
std::vector<ContextualVariable> contextual_variables(const Game& g, Party party);

// Invariant checks; empty result means the game is valid.
std::vector<std::string> validate(const Game& g);

class GameParseError : public std::runtime_error {
  public:
    using std::runtime_error::runtime_error;
};

// JSON game description. Throws GameParseError on schema/syntax problems;
// semantic problems are left to validate().
Game parse_game(const std::string& document);
std::string serialize_game(const Game& g);

} // namespace ptlab
