// Acceptance suite: one pass/fail line per criterion, nonzero exit if any
// fails. Criteria carry wall-clock budgets that are enforced, not advisory.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "gamegen.hpp"
#include "oracle.hpp"
#include "ptlab/classical.hpp"
#include "ptlab/games.hpp"
#include "ptlab/quantum.hpp"
#include "ptlab/rng.hpp"

using namespace ptlab;

namespace {

int failures = 0;

void criterion(int number, const std::string& name, double budget_seconds,
               const std::function<bool(std::string&)>& body) {
    std::string detail;
    bool ok = false;
    const auto start = std::chrono::steady_clock::now();
    try {
        ok = body(detail);
    } catch (const std::exception& e) {
        detail = std::string("exception: ") + e.what();
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
            .count();
    if (seconds > budget_seconds) {
        ok = false;
        detail += (detail.empty() ? "" : "; ") + std::string("over budget");
    }
    if (!ok) {
        ++failures;
    }
    std::printf("%s  %d %-28s %7.2f s (budget %g s)%s%s\n", ok ? "PASS" : "FAIL",
                number, name.c_str(), seconds, budget_seconds,
                detail.empty() ? "" : " -- ", detail.c_str());
    std::fflush(stdout);
}

ContextualVariable var(Party p, const char* obs, const char* ctx) {
    return {p, std::string(obs), std::string(ctx)};
}

StrategyPair near_perfect_witness(const Game& g) {
    std::uint64_t bob_bits = 0;
    const auto vars = contextual_variables(g, Party::bob);
    for (std::size_t i = 0; i < vars.size(); ++i) {
        if (vars[i].observable == "Y" || vars[i].observable == "y") {
            bob_bits |= std::uint64_t(1) << i;
        }
    }
    return {make_strategy(g, Party::alice, 0), make_strategy(g, Party::bob, bob_bits)};
}

bool check_stabilizers(std::string& detail) {
    const auto checks = verify_stabilizers(builtin_setup());
    if (checks.size() != 14) {
        detail = "expected 14 relations";
        return false;
    }
    double worst = 0.0;
    for (const StabilizerCheck& c : checks) {
        worst = std::max(worst, c.residual);
    }
    std::ostringstream s;
    s << "max residual " << worst;
    detail = s.str();
    return worst <= 1e-12;
}

bool check_quantum_value(std::string& detail) {
    const QuantumSetup setup = builtin_setup();
    for (const Game& g : {builtin_full_game(), builtin_simple_game()}) {
        const double v = quantum_value(setup, g);
        if (std::abs(v - 1.0) > 1e-12) {
            detail = g.name + " value " + std::to_string(v);
            return false;
        }
        for (std::size_t p = 0; p < g.pairs.size(); ++p) {
            const RoundDistribution dist = round_distribution(setup, g, p);
            double losing = 0.0;
            for (std::size_t o = 0; o < 16; ++o) {
                const auto a = outcome_answers(o);
                if (!pair_satisfied_by_answers(g, g.pairs[p], a[0], a[1], a[2],
                                               a[3])) {
                    losing += dist.probabilities[o];
                }
            }
            if (losing > 1e-12) {
                detail = g.name + " pair " + std::to_string(p) + " leaks " +
                         std::to_string(losing);
                return false;
            }
        }
    }
    detail = "value 1 on both games, no losing mass on 28+14 pairs";
    return true;
}

bool check_infeasibility(std::string& detail) {
    for (const Game& g : {builtin_full_game(), builtin_simple_game()}) {
        const FeasibilityResult result = perfect_feasibility(g);
        const auto* cert = std::get_if<InfeasibilityCertificate>(&result);
        if (cert == nullptr) {
            detail = g.name + " reported feasible";
            return false;
        }
        if (!verify_certificate(g, *cert)) {
            detail = g.name + " certificate failed re-verification";
            return false;
        }
        detail += g.name + " certificate of " +
                  std::to_string(cert->predicate_ids.size()) + " predicates; ";
    }
    return true;
}

bool check_implied_equalities(std::string& detail) {
    const Game g = builtin_full_game();
    const Party A = Party::alice;
    const Party B = Party::bob;
    struct Chain {
        std::vector<std::string> subset;
        Party party;
        const char* observable;
        std::vector<const char*> contexts;
    };
    const std::vector<Chain> chains = {
        {{"e01", "e21", "e24"}, A, "X", {"z", "x", "y"}},
        {{"e07", "e22", "e27"}, A, "x", {"Z", "X", "Y"}},
        {{"e12", "e28", "e30"}, A, "Y", {"z", "x", "y"}},
        {{"e18", "e25", "e31"}, A, "y", {"Z", "X", "Y"}},
        {{"e06", "e07", "e16"}, A, "Z", {"x", "y"}},
        {{"e01", "e02", "e11"}, A, "z", {"X", "Y"}},
        {{"e02", "e04", "e05"}, B, "X", {"z", "y", "x"}},
        {{"e06", "e09", "e10"}, B, "x", {"Z", "Y", "X"}},
        {{"e13", "e14", "e15"}, B, "Y", {"z", "y", "x"}},
        {{"e17", "e19", "e20"}, B, "y", {"Z", "Y", "X"}},
        {{"e06", "e07", "e08"}, B, "Z", {"x", "y"}},
        {{"e01", "e02", "e03"}, B, "z", {"X", "Y"}},
    };
    int derivations = 0;
    for (const Chain& chain : chains) {
        for (std::size_t i = 0; i + 1 < chain.contexts.size(); ++i) {
            for (std::size_t j = i + 1; j < chain.contexts.size(); ++j) {
                if (!implied_equality(
                        g, chain.subset,
                        var(chain.party, chain.observable, chain.contexts[i]),
                        var(chain.party, chain.observable, chain.contexts[j]))) {
                    detail = std::string("derivation for ") + chain.observable +
                             " failed";
                    return false;
                }
            }
        }
        ++derivations;
    }
    detail = std::to_string(derivations) + " derivations reproduced";
    return derivations == 12;
}

bool check_optimal_values(std::string& detail) {
    const Game simple = builtin_simple_game();
    const OptimalResult simple_best = optimal_value(simple, 1);
    if (simple_best.value != Rational(13, 14)) {
        detail = "simple optimum " + simple_best.value.str();
        return false;
    }
    const auto brute_start = std::chrono::steady_clock::now();
    const oracle::BruteForceResult brute = oracle::brute_force_optimal(simple);
    const double brute_seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - brute_start)
            .count();
    if (brute.variable_count != 20 ||
        Rational(brute.numerator, brute.denominator) != simple_best.value) {
        detail = "2^20 enumeration disagrees";
        return false;
    }
    if (brute_seconds > 60.0) {
        detail = "2^20 enumeration over its 60 s budget";
        return false;
    }

    const Game full = builtin_full_game();
    const OptimalResult full_best = optimal_value(full, 1);
    if (full_best.value != Rational(26, 28)) {
        detail = "full optimum " + full_best.value.str();
        return false;
    }

    const StrategyPair witness = near_perfect_witness(full);
    const EvaluationReport report = evaluate(full, witness.alice, witness.bob);
    if (report.wins != 26 ||
        report.failed_predicates() != std::vector<std::string>{"e26", "e29"}) {
        detail = "stated witness does not fail exactly e26 and e29";
        return false;
    }
    detail = "simple 13/14 (vs 2^20 enumeration), full 26/28, witness fails {e26,e29}";
    return true;
}

bool check_gap(std::string& detail) {
    const QuantumSetup setup = builtin_setup();
    for (const Game& g : {builtin_full_game(), builtin_simple_game()}) {
        const Rational classical = optimal_value(g, 1).value;
        if (classical != Rational(13, 14)) {
            detail = g.name + " classical " + classical.str();
            return false;
        }
        const double quantum = quantum_value(setup, g);
        if (std::abs(quantum - 1.0) > 1e-12 ||
            !(quantum - 1e-12 > classical.to_double())) {
            detail = g.name + " gap not established";
            return false;
        }
    }
    detail = "1 > 13/14 on both games";
    return true;
}

bool check_monte_carlo(std::string& detail) {
    const QuantumSetup setup = builtin_setup();
    for (const Game& g : {builtin_full_game(), builtin_simple_game()}) {
        for (std::uint64_t seed : {7ull, 0x5EEDull, 424242ull}) {
            const MatchTally tally = play_match(g, setup, 100000, seed);
            if (tally.wins != tally.rounds) {
                detail = g.name + " lost rounds at seed " + std::to_string(seed);
                return false;
            }
        }
    }
    const Game full = builtin_full_game();
    const MatchTally classical =
        play_match(full, near_perfect_witness(full), 100000, 7);
    const double p = 26.0 / 28.0;
    const double sigma = std::sqrt(p * (1.0 - p) / 100000.0);
    const double rate = classical.win_rate();
    std::ostringstream s;
    s << "quantum lossless at 3 seeds/game; classical rate " << rate << " vs "
      << p << " (3 sigma " << 3 * sigma << ")";
    detail = s.str();
    return std::abs(rate - p) <= 3 * sigma;
}

bool check_property_suites(std::string& detail) {
    // algebra invariants on all built-in observables
    const QuantumSetup setup = builtin_setup();
    for (const auto& [id, obs] : setup.operators) {
        if (!obs.is_hermitian() || !obs.is_involutory()) {
            detail = "operator invariant violated";
            return false;
        }
        const Matrix plus = projector(obs, +1);
        const Matrix minus = projector(obs, -1);
        if ((plus + minus).max_abs_diff(Matrix::identity(4)) > 1e-12 ||
            (plus * plus).max_abs_diff(plus) > 1e-12) {
            detail = "projector invariant violated";
            return false;
        }
    }

    // exact solver vs enumeration on 100 random small games
    SplitMix64 rng(20260809);
    for (int trial = 0; trial < 100; ++trial) {
        const Game g = gamegen::random_small_game(rng);
        if (!validate(g).empty()) {
            detail = "generator produced an invalid game";
            return false;
        }
        const oracle::BruteForceResult brute = oracle::brute_force_optimal(g);
        const OptimalResult solved = optimal_value(g, 1);
        const std::uint64_t joint =
            solved.witness.alice.bits |
            (solved.witness.bob.bits << brute.alice_variable_count);
        if (solved.value != Rational(brute.numerator, brute.denominator) ||
            joint != brute.joint_bits) {
            detail = "solver/oracle mismatch on trial " + std::to_string(trial);
            return false;
        }
    }

    // distribution marginals against single-observable expectations
    for (const Game& g : {builtin_full_game(), builtin_simple_game()}) {
        for (std::size_t p = 0; p < g.pairs.size(); ++p) {
            const RoundDistribution dist = round_distribution(setup, g, p);
            const Question& qa = g.alice_question(g.pairs[p]);
            const Question& qb = g.bob_question(g.pairs[p]);
            const std::array<std::pair<Party, std::string>, 4> slots = {{
                {Party::alice, qa.first},
                {Party::alice, qa.second},
                {Party::bob, qb.first},
                {Party::bob, qb.second},
            }};
            for (std::size_t slot = 0; slot < 4; ++slot) {
                const Matrix lifted = lift_operator(
                    setup.op(slots[slot].first, slots[slot].second),
                    slots[slot].first);
                const double plus =
                    expectation(setup.state, projector(lifted, +1)).real();
                double marginal = 0.0;
                for (std::size_t o = 0; o < 16; ++o) {
                    if (outcome_answers(o)[slot] == 1) {
                        marginal += dist.probabilities[o];
                    }
                }
                if (std::abs(marginal - plus) > 1e-12) {
                    detail = "marginal mismatch in " + g.name;
                    return false;
                }
            }
        }
    }

    // (value, witness) independent of the thread count
    for (const Game& g : {builtin_full_game(), builtin_simple_game()}) {
        const OptimalResult one = optimal_value(g, 1);
        const OptimalResult four = optimal_value(g, 4);
        if (one.value != four.value ||
            one.witness.alice.bits != four.witness.alice.bits ||
            one.witness.bob.bits != four.witness.bob.bits) {
            detail = g.name + " result depends on thread count";
            return false;
        }
    }
    detail = "algebra invariants, 100-game solver/oracle equivalence, marginals, "
             "thread invariance";
    return true;
}

} // namespace

int main() {
    criterion(1, "stabilizer-verification", 1.0, check_stabilizers);
    criterion(2, "quantum-value", 5.0, check_quantum_value);
    criterion(3, "classical-infeasibility", 1.0, check_infeasibility);
    criterion(4, "implied-equalities", 1.0, check_implied_equalities);
    criterion(5, "optimal-values", 600.0, check_optimal_values);
    criterion(6, "pseudotelepathy-gap", 60.0, check_gap);
    criterion(7, "monte-carlo", 30.0, check_monte_carlo);
    criterion(8, "property-suites", 120.0, check_property_suites);

    if (failures == 0) {
        std::printf("all 8 acceptance criteria passed\n");
        return 0;
    }
    std::printf("%d acceptance criteria FAILED\n", failures);
    return 1;
}
