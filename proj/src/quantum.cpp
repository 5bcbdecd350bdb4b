#include "ptlab/quantum.hpp"

#include <cmath>
#include <stdexcept>

namespace ptlab {

const Matrix& QuantumSetup::op(Party party, const std::string& label) const {
    for (const auto& [id, matrix] : operators) {
        if (id.party == party && id.label == label) {
            return matrix;
        }
    }
    throw std::invalid_argument("missing operator " + std::string(party_name(party)) +
                                ":" + label);
}

bool QuantumSetup::has(Party party, const std::string& label) const {
    for (const auto& [id, matrix] : operators) {
        if (id.party == party && id.label == label) {
            return true;
        }
    }
    return false;
}

StateVector bell_like_state() {
    std::vector<Complex> amp(16, Complex(0.0, 0.0));
    amp[0] = Complex(0.5, 0.0);   // |Hu,Hu>
    amp[5] = Complex(0.5, 0.0);   // |Hd,Hd>
    amp[10] = Complex(0.5, 0.0);  // |Vu,Vu>
    amp[15] = Complex(-0.5, 0.0); // |Vd,Vd>
    return StateVector(std::move(amp));
}

QuantumSetup builtin_setup() {
    const Matrix i2 = Matrix::identity(2);
    const Matrix pol_x = tensor(pauli_x(), i2);
    const Matrix pol_y = tensor(pauli_y(), i2);
    const Matrix pol_z = tensor(pauli_z(), i2);
    const Matrix path_x = tensor(i2, pauli_x());
    const Matrix path_y = tensor(i2, pauli_y());
    const Matrix path_z = tensor(i2, pauli_z());

    QuantumSetup setup{bell_like_state(), {}};
    for (Party party : kParties) {
        setup.operators.push_back({{party, "X"}, pol_x});
        setup.operators.push_back({{party, "Y"}, pol_y});
        setup.operators.push_back({{party, "Z"}, pol_z});
        setup.operators.push_back({{party, "x"}, path_x});
        setup.operators.push_back({{party, "y"}, path_y});
        setup.operators.push_back({{party, "z"}, path_z});
    }
    return setup;
}

Matrix lift_operator(const Matrix& op, Party party) {
    const Matrix i4 = Matrix::identity(4);
    return party == Party::alice ? tensor(op, i4) : tensor(i4, op);
}

std::vector<std::string> validate_setup(const QuantumSetup& setup, const Game& g) {
    std::vector<std::string> problems;
    if (setup.state.dim() != 16) {
        problems.push_back("state dimension is not 16");
    }
    for (const auto& [id, matrix] : setup.operators) {
        const std::string name = std::string(party_name(id.party)) + ":" + id.label;
        if (matrix.rows() != 4 || matrix.cols() != 4) {
            problems.push_back("operator " + name + " is not 4x4");
            continue;
        }
        if (!matrix.is_hermitian()) {
            problems.push_back("operator " + name + " is not Hermitian");
        }
        if (!matrix.is_involutory()) {
            problems.push_back("operator " + name + " is not an involution");
        }
    }
    for (const Question& q : g.questions) {
        if (!setup.has(q.party, q.first) || !setup.has(q.party, q.second)) {
            problems.push_back("no operator for question " + question_label(q));
            continue;
        }
        const Matrix& a = setup.op(q.party, q.first);
        const Matrix& b = setup.op(q.party, q.second);
        if ((a * b).max_abs_diff(b * a) > kTol) {
            problems.push_back("observables of question " + question_label(q) +
                               " do not commute");
        }
    }
    return problems;
}

namespace {

struct RelationDef {
    const char* name;
    int eigenvalue;
    // Operators as (party, label), applied right to left; all commute.
    std::vector<std::pair<Party, const char*>> ops;
};

const Party A = Party::alice;
const Party B = Party::bob;

const std::vector<RelationDef>& stabilizer_relations() {
    static const std::vector<RelationDef> relations = {
        {"Z1Z2", +1, {{A, "Z"}, {B, "Z"}}},
        {"z1z2", +1, {{A, "z"}, {B, "z"}}},
        {"X1X2z2", +1, {{A, "X"}, {B, "X"}, {B, "z"}}},
        {"x1Z2x2", +1, {{A, "x"}, {B, "Z"}, {B, "x"}}},
        {"X1z1X2", +1, {{A, "X"}, {A, "z"}, {B, "X"}}},
        {"Z1x1x2", +1, {{A, "Z"}, {A, "x"}, {B, "x"}}},
        {"Y1Y2z2", -1, {{A, "Y"}, {B, "Y"}, {B, "z"}}},
        {"y1Z2y2", -1, {{A, "y"}, {B, "Z"}, {B, "y"}}},
        {"Y1z1Y2", -1, {{A, "Y"}, {A, "z"}, {B, "Y"}}},
        {"Z1y1y2", -1, {{A, "Z"}, {A, "y"}, {B, "y"}}},
        {"X1x1Y2y2", +1, {{A, "X"}, {A, "x"}, {B, "Y"}, {B, "y"}}},
        {"X1y1Y2x2", +1, {{A, "X"}, {A, "y"}, {B, "Y"}, {B, "x"}}},
        {"Y1x1X2y2", +1, {{A, "Y"}, {A, "x"}, {B, "X"}, {B, "y"}}},
        {"Y1y1X2x2", +1, {{A, "Y"}, {A, "y"}, {B, "X"}, {B, "x"}}},
    };
    return relations;
}

} // namespace

std::vector<StabilizerCheck> verify_stabilizers(const QuantumSetup& setup) {
    std::vector<StabilizerCheck> checks;
    for (const RelationDef& rel : stabilizer_relations()) {
        std::vector<Complex> v = setup.state.amplitudes();
        for (auto it = rel.ops.rbegin(); it != rel.ops.rend(); ++it) {
            v = ptlab::apply(lift_operator(setup.op(it->first, it->second), it->first),
                             v);
        }
        double residual = 0.0;
        for (std::size_t i = 0; i < v.size(); ++i) {
            residual = std::max(residual,
                                std::abs(v[i] - setup.state.amplitude(i) *
                                                    Complex(rel.eigenvalue, 0.0)));
        }
        checks.push_back({rel.name, rel.eigenvalue, residual});
    }
    return checks;
}

std::array<int, 4> outcome_answers(std::size_t outcome_index) {
    std::array<int, 4> answers{};
    for (std::size_t slot = 0; slot < 4; ++slot) {
        answers[slot] = ((outcome_index >> (3 - slot)) & 1u) ? -1 : 1;
    }
    return answers;
}

RoundDistribution round_distribution(const QuantumSetup& setup, const Game& g,
                                     std::size_t pair_index) {
    const QuestionPair& pair = g.pairs.at(pair_index);
    const Question& qa = g.alice_question(pair);
    const Question& qb = g.bob_question(pair);

    const std::array<std::pair<Party, std::string>, 4> asked = {{
        {Party::alice, qa.first},
        {Party::alice, qa.second},
        {Party::bob, qb.first},
        {Party::bob, qb.second},
    }};

    // Same-party commutation is what joint measurement needs; cross-party
    // operators commute by construction of the lift.
    for (const Question* q : {&qa, &qb}) {
        const Matrix& a = setup.op(q->party, q->first);
        const Matrix& b = setup.op(q->party, q->second);
        if ((a * b).max_abs_diff(b * a) > kTol) {
            throw std::invalid_argument("observables of question " +
                                        question_label(*q) + " do not commute");
        }
    }

    std::vector<std::array<Matrix, 2>> projectors;
    projectors.reserve(4);
    for (std::size_t slot = 0; slot < 4; ++slot) {
        const Matrix lifted =
            lift_operator(setup.op(asked[slot].first, asked[slot].second),
                          asked[slot].first);
        projectors.push_back({projector(lifted, +1), projector(lifted, -1)});
    }

    RoundDistribution dist;
    dist.pair_index = pair_index;
    double sum = 0.0;
    for (std::size_t o = 0; o < 16; ++o) {
        std::vector<Complex> v = setup.state.amplitudes();
        for (std::size_t slot = 4; slot-- > 0;) {
            v = ptlab::apply(projectors[slot][(o >> (3 - slot)) & 1u], v);
        }
        Complex braket(0.0, 0.0);
        for (std::size_t i = 0; i < v.size(); ++i) {
            braket += std::conj(setup.state.amplitude(i)) * v[i];
        }
        if (std::abs(braket.imag()) > kTol || braket.real() < -kTol) {
            throw std::runtime_error("outcome probability is not a real in [0,1]");
        }
        dist.probabilities[o] = std::max(0.0, braket.real());
        sum += dist.probabilities[o];
    }
    if (std::abs(sum - 1.0) > 16 * kTol) {
        throw std::runtime_error("outcome probabilities do not sum to 1");
    }
    return dist;
}

double quantum_value(const QuantumSetup& setup, const Game& g) {
    double value = 0.0;
    for (std::size_t p = 0; p < g.pairs.size(); ++p) {
        const RoundDistribution dist = round_distribution(setup, g, p);
        double win_mass = 0.0;
        for (std::size_t o = 0; o < 16; ++o) {
            const std::array<int, 4> a = outcome_answers(o);
            if (pair_satisfied_by_answers(g, g.pairs[p], a[0], a[1], a[2], a[3])) {
                win_mass += dist.probabilities[o];
            }
        }
        value += g.pairs[p].weight.to_double() * win_mass;
    }
    return value;
}

std::size_t sample_round(const RoundDistribution& dist, SplitMix64& rng) {
    const double u = rng.next_double();
    double cumulative = 0.0;
    for (std::size_t o = 0; o < 16; ++o) {
        cumulative += dist.probabilities[o];
        if (u < cumulative) {
            return o;
        }
    }
    return 15; // u landed past the accumulated rounding error
}

namespace {

std::size_t draw_pair(const Game& g, double u) {
    double cumulative = 0.0;
    for (std::size_t p = 0; p < g.pairs.size(); ++p) {
        cumulative += g.pairs[p].weight.to_double();
        if (u < cumulative) {
            return p;
        }
    }
    return g.pairs.size() - 1;
}

} // namespace

MatchTally play_match(const Game& g, const QuantumSetup& setup,
                      std::uint64_t rounds, std::uint64_t seed) {
    MatchTally tally;
    tally.rounds = rounds;
    tally.seed = seed;
    tally.per_pair.assign(g.pairs.size(), {});

    std::vector<RoundDistribution> dists;
    dists.reserve(g.pairs.size());
    for (std::size_t p = 0; p < g.pairs.size(); ++p) {
        dists.push_back(round_distribution(setup, g, p));
    }

    for (std::uint64_t r = 0; r < rounds; ++r) {
        SplitMix64 rng = substream(seed, r);
        const std::size_t p = draw_pair(g, rng.next_double());
        const std::size_t o = sample_round(dists[p], rng);
        const std::array<int, 4> a = outcome_answers(o);
        tally.per_pair[p].plays++;
        if (pair_satisfied_by_answers(g, g.pairs[p], a[0], a[1], a[2], a[3])) {
            tally.per_pair[p].wins++;
            tally.wins++;
        }
    }
    return tally;
}

MatchTally play_match(const Game& g, const StrategyPair& strategy,
                      std::uint64_t rounds, std::uint64_t seed) {
    const EvaluationReport report = evaluate(g, strategy.alice, strategy.bob);

    MatchTally tally;
    tally.rounds = rounds;
    tally.seed = seed;
    tally.per_pair.assign(g.pairs.size(), {});
    for (std::uint64_t r = 0; r < rounds; ++r) {
        SplitMix64 rng = substream(seed, r);
        const std::size_t p = draw_pair(g, rng.next_double());
        tally.per_pair[p].plays++;
        if (report.pairs[p].satisfied) {
            tally.per_pair[p].wins++;
            tally.wins++;
        }
    }
    return tally;
}

} // namespace ptlab
