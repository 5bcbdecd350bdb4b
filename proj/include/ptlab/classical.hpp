#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

#include "ptlab/games.hpp"
#include "ptlab/rational.hpp"

namespace ptlab {

// One party's deterministic answers: a +-1 value for every contextual
// variable, packed as bits in canonical variable order. Bit b encodes the
// value (-1)^b, so the all-zero vector answers +1 everywhere.
struct DeterministicStrategy {
    Party party = Party::alice;
    std::vector<ContextualVariable> variables;
    std::uint64_t bits = 0;

    int value(const ContextualVariable& v) const;
    std::string bits_hex() const;

    friend bool operator==(const DeterministicStrategy&,
                           const DeterministicStrategy&) = default;
};

DeterministicStrategy make_strategy(const Game& g, Party party, std::uint64_t bits);
DeterministicStrategy strategy_from_hex(const Game& g, Party party,
                                        const std::string& hex);

struct StrategyPair {
    DeterministicStrategy alice;
    DeterministicStrategy bob;

    friend bool operator==(const StrategyPair&, const StrategyPair&) = default;
};

// GF(2) view of a game: one variable per contextual answer slot (alice block
// first), one equation per predicate. Bit b(v) encodes answer (-1)^b, so a
// predicate "product of answers = sign" becomes "sum of bits = rhs" with
// rhs = 0 for sign +1 and 1 for sign -1.
struct ParityEquation {
    std::string predicate_id;
    std::size_t pair_index = 0;
    std::vector<std::uint64_t> row;
    int rhs = 0;
};

struct ParitySystem {
    std::vector<ContextualVariable> variables;
    std::size_t alice_variable_count = 0;
    std::vector<ParityEquation> equations;

    std::size_t variable_index(const ContextualVariable& v) const;
};

ParitySystem build_parity_system(const Game& g);

// A subset of predicates whose GF(2) rows XOR to zero while the right-hand
// sides XOR to 1: taken together they force +1 = -1, so no deterministic
// strategy satisfies all of them.
struct InfeasibilityCertificate {
    std::vector<std::string> predicate_ids;
};

using FeasibilityResult = std::variant<StrategyPair, InfeasibilityCertificate>;

// Gaussian elimination over GF(2) with row-combination tracking. Consistent
// systems yield a winning strategy pair (free variables answer +1);
// inconsistent ones yield a certificate.
FeasibilityResult perfect_feasibility(const Game& g);

// Re-derives the cited rows from the game and XORs them; independent of the
// elimination that produced the certificate.
bool verify_certificate(const Game& g, const InfeasibilityCertificate& cert);

// True iff the given consistent predicate subset forces a and b (same
// observable, different contexts) to take equal values. Throws if the subset
// is infeasible on its own, since that would imply anything.
bool implied_equality(const Game& g, const std::vector<std::string>& predicate_ids,
                      const ContextualVariable& a, const ContextualVariable& b);

struct PairEvaluation {
    bool satisfied = false;
    std::vector<std::string> failed_predicates;
};

struct EvaluationReport {
    std::vector<PairEvaluation> pairs;
    std::size_t wins = 0;
    Rational value; // sum of satisfied pair weights

    std::vector<std::string> failed_predicates() const;
};

EvaluationReport evaluate(const Game& g, const DeterministicStrategy& alice,
                          const DeterministicStrategy& bob);

struct OptimalResult {
    Rational value;
    StrategyPair witness;
};

// Exact maximum of the weighted win probability over all deterministic
// contextual strategy pairs, by branch-and-bound on the joint bit vector.
// The witness is the lexicographically smallest optimal joint bit vector
// (alice block first); both value and witness are independent of `threads`.
//
// Mixed strategies need no separate search: the win probability of a mixture
// is an average of deterministic values, so its maximum is attained at a
// deterministic pair.
OptimalResult optimal_value(const Game& g, unsigned threads = 1);

// Exact maximum over the remaining party's strategies with one side fixed.
OptimalResult best_response(const Game& g, const DeterministicStrategy& fixed);

// Exact maximum over context-independent strategies: every observable gets
// one value regardless of which companion it is asked with.
OptimalResult noncontextual_optimal(const Game& g);

} // namespace ptlab
