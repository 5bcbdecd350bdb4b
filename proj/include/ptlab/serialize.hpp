#pragma once

#include <json.hpp>

#include "ptlab/classical.hpp"
#include "ptlab/games.hpp"
#include "ptlab/quantum.hpp"

// JSON renderings of results: predicate ids by name, strategy bit vectors as
// hex strings, exact values as "num/den" over the game's common weight
// denominator.

namespace ptlab {

inline std::string pair_name(const Game& g, std::size_t pair_index) {
    const QuestionPair& p = g.pairs.at(pair_index);
    return question_label(g.alice_question(p)) + ":" +
           question_label(g.bob_question(p));
}

inline nlohmann::ordered_json to_json(const Game& g,
                                      const InfeasibilityCertificate& cert) {
    return {{"predicates", cert.predicate_ids},
            {"verified", verify_certificate(g, cert)}};
}

inline nlohmann::ordered_json to_json(const StrategyPair& s) {
    return {{"alice", s.alice.bits_hex()}, {"bob", s.bob.bits_hex()}};
}

inline nlohmann::ordered_json to_json(const Game& g, const EvaluationReport& r) {
    nlohmann::ordered_json pairs = nlohmann::ordered_json::array();
    for (std::size_t p = 0; p < r.pairs.size(); ++p) {
        pairs.push_back({{"pair", pair_name(g, p)},
                         {"satisfied", r.pairs[p].satisfied},
                         {"failed", r.pairs[p].failed_predicates}});
    }
    return {{"wins", r.wins},
            {"value", r.value.str_over(g.common_weight_denominator())},
            {"pairs", std::move(pairs)}};
}

inline nlohmann::ordered_json to_json(const Game& g, const OptimalResult& r) {
    return {{"value", r.value.str_over(g.common_weight_denominator())},
            {"witness", to_json(r.witness)}};
}

inline nlohmann::ordered_json to_json(const std::vector<StabilizerCheck>& checks) {
    nlohmann::ordered_json out = nlohmann::ordered_json::array();
    for (const StabilizerCheck& c : checks) {
        out.push_back({{"relation", c.relation},
                       {"eigenvalue", c.eigenvalue},
                       {"residual", c.residual},
                       {"pass", c.pass()}});
    }
    return out;
}

inline nlohmann::ordered_json to_json(const Game& g, const RoundDistribution& d) {
    nlohmann::ordered_json outcomes = nlohmann::ordered_json::array();
    for (std::size_t o = 0; o < 16; ++o) {
        outcomes.push_back({{"answers", outcome_answers(o)},
                            {"probability", d.probabilities[o]}});
    }
    return {{"pair", pair_name(g, d.pair_index)}, {"outcomes", std::move(outcomes)}};
}

inline nlohmann::ordered_json to_json(const Game& g, const MatchTally& t) {
    nlohmann::ordered_json per_pair = nlohmann::ordered_json::array();
    for (std::size_t p = 0; p < t.per_pair.size(); ++p) {
        per_pair.push_back({{"pair", pair_name(g, p)},
                            {"plays", t.per_pair[p].plays},
                            {"wins", t.per_pair[p].wins}});
    }
    return {{"rounds", t.rounds},
            {"wins", t.wins},
            {"win_rate", t.win_rate()},
            {"seed", t.seed},
            {"per_pair", std::move(per_pair)}};
}

} // namespace ptlab
