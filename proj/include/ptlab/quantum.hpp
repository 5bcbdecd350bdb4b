#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "ptlab/algebra.hpp"
#include "ptlab/classical.hpp"
#include "ptlab/games.hpp"
#include "ptlab/rng.hpp"

namespace ptlab {

// A shared state plus one 4x4 Hermitian involution per (party, observable).
// Single-party operators act on a photon's (polarization x path) factor;
// lift_operator embeds them in the 16-dim two-photon space.
struct QuantumSetup {
    StateVector state;
    std::vector<std::pair<ObservableId, Matrix>> operators;

    const Matrix& op(Party party, const std::string& label) const;
    bool has(Party party, const std::string& label) const;
};

// Basis order: (photon-1 polarization, photon-1 path, photon-2 polarization,
// photon-2 path), with H=0/V=1 and u=0/d=1. Amplitudes 1/2 on |Hu,Hu>,
// |Hd,Hd>, |Vu,Vu> and -1/2 on |Vd,Vd>.
StateVector bell_like_state();

// X,Y,Z act on polarization, x,y,z on path; both parties measure the same
// six observables.
QuantumSetup builtin_setup();

Matrix lift_operator(const Matrix& op, Party party);

// Hermitian/involution checks per operator plus commutation of the two
// observables inside every question of the game.
std::vector<std::string> validate_setup(const QuantumSetup& setup, const Game& g);

struct StabilizerCheck {
    std::string relation;
    int eigenvalue = 1;
    double residual = 0.0;

    bool pass() const { return residual <= kTol; }
};

// The 14 operator-product relations the shared state satisfies; residual is
// the max-norm of (product)|psi> - eigenvalue*|psi>.
std::vector<StabilizerCheck> verify_stabilizers(const QuantumSetup& setup);

// Joint outcome distribution for one question pair. Outcome index bits are
// (alice first, alice second, bob first, bob second), high to low, with bit
// value 0 meaning answer +1; index 0 is (+1,+1,+1,+1).
struct RoundDistribution {
    std::size_t pair_index = 0;
    std::array<double, 16> probabilities{};
};

std::array<int, 4> outcome_answers(std::size_t outcome_index);

RoundDistribution round_distribution(const QuantumSetup& setup, const Game& g,
                                     std::size_t pair_index);

// Weighted probability of satisfying every predicate, summed over pairs.
double quantum_value(const QuantumSetup& setup, const Game& g);

// Inverse-CDF draw over the canonical outcome order, advancing rng.
std::size_t sample_round(const RoundDistribution& dist, SplitMix64& rng);

struct PairTally {
    std::uint64_t plays = 0;
    std::uint64_t wins = 0;
};

struct MatchTally {
    std::uint64_t rounds = 0;
    std::uint64_t wins = 0;
    std::uint64_t seed = 0;
    std::vector<PairTally> per_pair;

    double win_rate() const {
        return rounds == 0 ? 0.0 : static_cast<double>(wins) / static_cast<double>(rounds);
    }
};

// Referees `rounds` rounds: each round draws a question pair by weight, gets
// answers from the strategy, and scores the pair's predicates. Round r uses
// substream(seed, r), so tallies are reproducible and independent of how
// rounds would be partitioned across workers.
MatchTally play_match(const Game& g, const QuantumSetup& setup,
                      std::uint64_t rounds, std::uint64_t seed);
MatchTally play_match(const Game& g, const StrategyPair& strategy,
                      std::uint64_t rounds, std::uint64_t seed);

} // namespace ptlab
