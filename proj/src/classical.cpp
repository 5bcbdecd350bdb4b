#include "ptlab/classical.hpp"

#include <algorithm>
#include <atomic>
#include <bit>
#include <cstdio>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <thread>

namespace ptlab {

namespace {

constexpr std::size_t kJointVariableBudget = 64;
constexpr std::size_t kResponseVariableBudget = 25;
constexpr std::size_t kObservableBudget = 24;

std::size_t word_count(std::size_t bits) { return (bits + 63) / 64; }

bool get_bit(const std::vector<std::uint64_t>& row, std::size_t i) {
    return (row[i / 64] >> (i % 64)) & 1u;
}

void flip_bit(std::vector<std::uint64_t>& row, std::size_t i) {
    row[i / 64] ^= std::uint64_t(1) << (i % 64);
}

void xor_into(std::vector<std::uint64_t>& dst, const std::vector<std::uint64_t>& src) {
    for (std::size_t i = 0; i < dst.size(); ++i) {
        dst[i] ^= src[i];
    }
}

bool all_zero(const std::vector<std::uint64_t>& row) {
    return std::all_of(row.begin(), row.end(),
                       [](std::uint64_t w) { return w == 0; });
}

} // namespace

int DeterministicStrategy::value(const ContextualVariable& v) const {
    const auto it = std::lower_bound(variables.begin(), variables.end(), v);
    if (it == variables.end() || *it != v) {
        throw std::invalid_argument("strategy for " + std::string(party_name(party)) +
                                    " has no variable " + variable_name(v));
    }
    const std::size_t i = static_cast<std::size_t>(it - variables.begin());
    return ((bits >> i) & 1u) ? -1 : 1;
}

std::string DeterministicStrategy::bits_hex() const {
    char buf[20];
    std::snprintf(buf, sizeof(buf), "0x%llx", static_cast<unsigned long long>(bits));
    return buf;
}

DeterministicStrategy make_strategy(const Game& g, Party party, std::uint64_t bits) {
    DeterministicStrategy s;
    s.party = party;
    s.variables = contextual_variables(g, party);
    if (s.variables.size() > kJointVariableBudget) {
        throw std::invalid_argument("variable budget exceeded");
    }
    if (s.variables.size() < 64 && (bits >> s.variables.size()) != 0) {
        throw std::invalid_argument("bit vector has bits beyond the " +
                                    std::to_string(s.variables.size()) +
                                    " contextual variables");
    }
    s.bits = bits;
    return s;
}

DeterministicStrategy strategy_from_hex(const Game& g, Party party,
                                        const std::string& hex) {
    std::string digits = hex;
    if (digits.rfind("0x", 0) == 0 || digits.rfind("0X", 0) == 0) {
        digits = digits.substr(2);
    }
    if (digits.empty() || digits.size() > 16 ||
        digits.find_first_not_of("0123456789abcdefABCDEF") != std::string::npos) {
        throw std::invalid_argument("malformed bit vector \"" + hex + "\"");
    }
    return make_strategy(g, party, std::stoull(digits, nullptr, 16));
}

std::size_t ParitySystem::variable_index(const ContextualVariable& v) const {
    const auto it = std::lower_bound(variables.begin(), variables.end(), v);
    if (it == variables.end() || *it != v) {
        throw std::invalid_argument("unknown contextual variable " + variable_name(v));
    }
    return static_cast<std::size_t>(it - variables.begin());
}

ParitySystem build_parity_system(const Game& g) {
    ParitySystem sys;
    sys.variables = contextual_variables(g, Party::alice);
    sys.alice_variable_count = sys.variables.size();
    const auto bob = contextual_variables(g, Party::bob);
    sys.variables.insert(sys.variables.end(), bob.begin(), bob.end());

    const std::size_t words = word_count(sys.variables.size());
    for (std::size_t p = 0; p < g.pairs.size(); ++p) {
        for (const Predicate& pred : g.pairs[p].predicates) {
            ParityEquation eq;
            eq.predicate_id = pred.id;
            eq.pair_index = p;
            eq.row.assign(words, 0);
            eq.rhs = pred.sign == 1 ? 0 : 1;
            for (const ObservableId& f : pred.factors) {
                flip_bit(eq.row, sys.variable_index(resolve_factor(g, g.pairs[p], f)));
            }
            sys.equations.push_back(std::move(eq));
        }
    }
    return sys;
}

namespace {

struct EliminationOutcome {
    bool consistent = true;
    std::vector<std::size_t> certificate; // original equation indices
    std::vector<std::uint8_t> solution;   // one bit per variable
};

// Row-reduced echelon form with combination tracking, so an inconsistent row
// can name the original equations that XOR to 0 = 1.
EliminationOutcome eliminate(std::size_t nvars,
                             const std::vector<const ParityEquation*>& eqs) {
    struct WorkRow {
        std::vector<std::uint64_t> coeffs;
        std::vector<std::uint64_t> combo;
        int rhs;
    };
    const std::size_t combo_words = word_count(eqs.size());
    std::vector<WorkRow> rows;
    rows.reserve(eqs.size());
    for (std::size_t i = 0; i < eqs.size(); ++i) {
        WorkRow r{eqs[i]->row, std::vector<std::uint64_t>(combo_words, 0), eqs[i]->rhs};
        flip_bit(r.combo, i);
        rows.push_back(std::move(r));
    }

    std::vector<std::pair<std::size_t, std::size_t>> pivots; // (column, row)
    std::size_t next = 0;
    for (std::size_t col = 0; col < nvars && next < rows.size(); ++col) {
        std::size_t found = rows.size();
        for (std::size_t r = next; r < rows.size(); ++r) {
            if (get_bit(rows[r].coeffs, col)) {
                found = r;
                break;
            }
        }
        if (found == rows.size()) {
            continue;
        }
        std::swap(rows[next], rows[found]);
        for (std::size_t r = 0; r < rows.size(); ++r) {
            if (r != next && get_bit(rows[r].coeffs, col)) {
                xor_into(rows[r].coeffs, rows[next].coeffs);
                xor_into(rows[r].combo, rows[next].combo);
                rows[r].rhs ^= rows[next].rhs;
            }
        }
        pivots.push_back({col, next});
        ++next;
    }

    EliminationOutcome out;
    for (std::size_t r = next; r < rows.size(); ++r) {
        if (rows[r].rhs == 1) {
            out.consistent = false;
            for (std::size_t i = 0; i < eqs.size(); ++i) {
                if (get_bit(rows[r].combo, i)) {
                    out.certificate.push_back(i);
                }
            }
            return out;
        }
    }
    out.solution.assign(nvars, 0);
    for (const auto& [col, row] : pivots) {
        out.solution[col] = static_cast<std::uint8_t>(rows[row].rhs);
    }
    return out;
}

std::vector<const ParityEquation*> all_equations(const ParitySystem& sys) {
    std::vector<const ParityEquation*> eqs;
    eqs.reserve(sys.equations.size());
    for (const ParityEquation& eq : sys.equations) {
        eqs.push_back(&eq);
    }
    return eqs;
}

StrategyPair strategies_from_solution(const Game& g, const ParitySystem& sys,
                                      const std::vector<std::uint8_t>& solution) {
    std::uint64_t alice_bits = 0;
    std::uint64_t bob_bits = 0;
    for (std::size_t i = 0; i < sys.variables.size(); ++i) {
        if (!solution[i]) {
            continue;
        }
        if (i < sys.alice_variable_count) {
            alice_bits |= std::uint64_t(1) << i;
        } else {
            bob_bits |= std::uint64_t(1) << (i - sys.alice_variable_count);
        }
    }
    return {make_strategy(g, Party::alice, alice_bits),
            make_strategy(g, Party::bob, bob_bits)};
}

} // namespace

FeasibilityResult perfect_feasibility(const Game& g) {
    const ParitySystem sys = build_parity_system(g);
    if (sys.variables.size() > kJointVariableBudget) {
        throw std::invalid_argument("variable budget exceeded");
    }
    const EliminationOutcome out = eliminate(sys.variables.size(), all_equations(sys));
    if (!out.consistent) {
        InfeasibilityCertificate cert;
        for (std::size_t i : out.certificate) {
            cert.predicate_ids.push_back(sys.equations[i].predicate_id);
        }
        return cert;
    }
    return strategies_from_solution(g, sys, out.solution);
}

bool verify_certificate(const Game& g, const InfeasibilityCertificate& cert) {
    if (cert.predicate_ids.empty()) {
        return false;
    }
    const ParitySystem sys = build_parity_system(g);
    std::map<std::string, const ParityEquation*> by_id;
    for (const ParityEquation& eq : sys.equations) {
        by_id[eq.predicate_id] = &eq;
    }
    std::vector<std::uint64_t> acc(word_count(sys.variables.size()), 0);
    int rhs = 0;
    std::set<std::string> seen;
    for (const std::string& id : cert.predicate_ids) {
        const auto it = by_id.find(id);
        if (it == by_id.end() || !seen.insert(id).second) {
            return false;
        }
        xor_into(acc, it->second->row);
        rhs ^= it->second->rhs;
    }
    return all_zero(acc) && rhs == 1;
}

bool implied_equality(const Game& g, const std::vector<std::string>& predicate_ids,
                      const ContextualVariable& a, const ContextualVariable& b) {
    if (a.party != b.party || a.observable != b.observable || a.context == b.context) {
        throw std::invalid_argument(
            "implied equality needs one observable in two contexts");
    }
    const ParitySystem sys = build_parity_system(g);
    const std::size_t ia = sys.variable_index(a);
    const std::size_t ib = sys.variable_index(b);

    std::vector<const ParityEquation*> subset;
    for (const std::string& id : predicate_ids) {
        bool found = false;
        for (const ParityEquation& eq : sys.equations) {
            if (eq.predicate_id == id) {
                subset.push_back(&eq);
                found = true;
                break;
            }
        }
        if (!found) {
            throw std::invalid_argument("unknown predicate id " + id);
        }
    }
    if (!eliminate(sys.variables.size(), subset).consistent) {
        throw std::invalid_argument("subset itself infeasible");
    }

    // Feasible subset + (a != b) inconsistent <=> the subset forces a = b.
    ParityEquation negation;
    negation.predicate_id = "<negation>";
    negation.row.assign(word_count(sys.variables.size()), 0);
    flip_bit(negation.row, ia);
    flip_bit(negation.row, ib);
    negation.rhs = 1;
    subset.push_back(&negation);
    return !eliminate(sys.variables.size(), subset).consistent;
}

std::vector<std::string> EvaluationReport::failed_predicates() const {
    std::vector<std::string> ids;
    for (const PairEvaluation& p : pairs) {
        ids.insert(ids.end(), p.failed_predicates.begin(), p.failed_predicates.end());
    }
    return ids;
}

EvaluationReport evaluate(const Game& g, const DeterministicStrategy& alice,
                          const DeterministicStrategy& bob) {
    EvaluationReport report;
    report.value = Rational(0);
    for (const QuestionPair& pair : g.pairs) {
        PairEvaluation pe;
        pe.satisfied = true;
        for (const Predicate& pred : pair.predicates) {
            int product = 1;
            for (const ObservableId& f : pred.factors) {
                const ContextualVariable v = resolve_factor(g, pair, f);
                product *= (f.party == Party::alice ? alice : bob).value(v);
            }
            if (product != pred.sign) {
                pe.satisfied = false;
                pe.failed_predicates.push_back(pred.id);
            }
        }
        if (pe.satisfied) {
            ++report.wins;
            report.value += pair.weight;
        }
        report.pairs.push_back(std::move(pe));
    }
    return report;
}

namespace {

// Integer-weight view of a game for exact search: each pair's weight times
// the common denominator, so values compare as int64.
struct SearchProblem {
    struct Pred {
        std::uint64_t mask;
        std::uint8_t rhs;
        std::uint32_t pair;
    };

    std::size_t nvars = 0;
    std::size_t alice_count = 0;
    std::vector<Pred> preds;
    std::vector<std::vector<std::uint32_t>> touching;
    std::vector<std::uint32_t> preds_per_pair;
    std::vector<std::int64_t> weight;
    std::int64_t total = 0;
    std::int64_t denominator = 1;
    std::vector<std::uint32_t> order; // descending predicate-touch count
};

SearchProblem build_search_problem(const Game& g, const ParitySystem& sys) {
    if (sys.variables.size() > kJointVariableBudget) {
        throw std::invalid_argument("variable budget exceeded");
    }
    SearchProblem pb;
    pb.nvars = sys.variables.size();
    pb.alice_count = sys.alice_variable_count;
    pb.denominator = g.common_weight_denominator();
    pb.preds_per_pair.assign(g.pairs.size(), 0);
    pb.weight.resize(g.pairs.size());
    for (std::size_t p = 0; p < g.pairs.size(); ++p) {
        pb.weight[p] = g.pairs[p].weight.num() *
                       (pb.denominator / g.pairs[p].weight.den());
        pb.total += pb.weight[p];
    }
    pb.touching.assign(pb.nvars, {});
    for (const ParityEquation& eq : sys.equations) {
        SearchProblem::Pred pred;
        pred.mask = eq.row[0];
        pred.rhs = static_cast<std::uint8_t>(eq.rhs);
        pred.pair = static_cast<std::uint32_t>(eq.pair_index);
        const std::uint32_t idx = static_cast<std::uint32_t>(pb.preds.size());
        for (std::size_t v = 0; v < pb.nvars; ++v) {
            if ((pred.mask >> v) & 1u) {
                pb.touching[v].push_back(idx);
            }
        }
        pb.preds_per_pair[pred.pair]++;
        pb.preds.push_back(pred);
    }
    pb.order.resize(pb.nvars);
    std::iota(pb.order.begin(), pb.order.end(), 0);
    std::stable_sort(pb.order.begin(), pb.order.end(),
                     [&](std::uint32_t a, std::uint32_t b) {
                         return pb.touching[a].size() > pb.touching[b].size();
                     });
    return pb;
}

struct SearchState {
    const SearchProblem* pb;
    std::vector<std::uint8_t> parity;
    std::vector<std::uint8_t> left;
    std::vector<std::uint16_t> pair_ok;
    std::vector<std::uint16_t> pair_bad;
    std::int64_t won = 0;
    std::int64_t lost = 0;

    explicit SearchState(const SearchProblem& problem) : pb(&problem) {
        parity.assign(pb->preds.size(), 0);
        left.resize(pb->preds.size());
        for (std::size_t i = 0; i < pb->preds.size(); ++i) {
            left[i] = static_cast<std::uint8_t>(std::popcount(pb->preds[i].mask));
        }
        pair_ok.assign(pb->weight.size(), 0);
        pair_bad.assign(pb->weight.size(), 0);
        for (std::size_t p = 0; p < pb->weight.size(); ++p) {
            if (pb->preds_per_pair[p] == 0) {
                won += pb->weight[p]; // vacuously satisfied
            }
        }
    }

    std::int64_t bound() const { return pb->total - lost; }

    void set(std::uint32_t var, int bit) {
        for (std::uint32_t i : pb->touching[var]) {
            const auto& pred = pb->preds[i];
            parity[i] = static_cast<std::uint8_t>(parity[i] ^ bit);
            if (--left[i] == 0) {
                if (parity[i] != pred.rhs) {
                    if (++pair_bad[pred.pair] == 1) {
                        lost += pb->weight[pred.pair];
                    }
                } else if (++pair_ok[pred.pair] == pb->preds_per_pair[pred.pair]) {
                    won += pb->weight[pred.pair];
                }
            }
        }
    }

    void unset(std::uint32_t var, int bit) {
        const auto& touched = pb->touching[var];
        for (auto it = touched.rbegin(); it != touched.rend(); ++it) {
            const std::uint32_t i = *it;
            const auto& pred = pb->preds[i];
            if (left[i] == 0) {
                if (parity[i] != pred.rhs) {
                    if (pair_bad[pred.pair]-- == 1) {
                        lost -= pb->weight[pred.pair];
                    }
                } else {
                    if (pair_ok[pred.pair]-- == pb->preds_per_pair[pred.pair]) {
                        won -= pb->weight[pred.pair];
                    }
                }
            }
            ++left[i];
            parity[i] = static_cast<std::uint8_t>(parity[i] ^ bit);
        }
    }
};

void atomic_max(std::atomic<std::int64_t>& target, std::int64_t value) {
    std::int64_t cur = target.load(std::memory_order_relaxed);
    while (cur < value &&
           !target.compare_exchange_weak(cur, value, std::memory_order_relaxed)) {
    }
}

void dfs_max(SearchState& st, const std::vector<std::uint32_t>& free_vars,
             std::size_t depth, std::atomic<std::int64_t>& incumbent) {
    const std::int64_t b = st.bound();
    if (b <= incumbent.load(std::memory_order_relaxed)) {
        return;
    }
    if (depth == free_vars.size()) {
        atomic_max(incumbent, b); // every pair is decided here, so bound == value
        return;
    }
    const std::uint32_t v = free_vars[depth];
    for (int bit = 0; bit <= 1; ++bit) {
        st.set(v, bit);
        dfs_max(st, free_vars, depth + 1, incumbent);
        st.unset(v, bit);
    }
}

bool dfs_reaches(SearchState& st, const std::vector<std::uint32_t>& free_vars,
                 std::size_t depth, std::int64_t target) {
    if (st.bound() < target) {
        return false;
    }
    if (depth == free_vars.size()) {
        return true;
    }
    const std::uint32_t v = free_vars[depth];
    for (int bit = 0; bit <= 1; ++bit) {
        st.set(v, bit);
        const bool hit = dfs_reaches(st, free_vars, depth + 1, target);
        st.unset(v, bit);
        if (hit) {
            return true;
        }
    }
    return false;
}

std::int64_t solve_max(const SearchProblem& pb, unsigned threads) {
    std::atomic<std::int64_t> incumbent{-1};
    if (threads <= 1 || pb.nvars < 8) {
        SearchState st(pb);
        dfs_max(st, pb.order, 0, incumbent);
        return incumbent.load();
    }

    // Split the top of the tree into prefix tasks; the max-reduction over
    // tasks is order-independent, so the value does not depend on `threads`.
    std::size_t split = 1;
    while ((std::size_t(1) << split) < std::size_t(threads) * 4 &&
           split + 2 < pb.nvars && split < 10) {
        ++split;
    }
    const std::size_t tasks = std::size_t(1) << split;
    std::vector<std::uint32_t> rest(pb.order.begin() + split, pb.order.end());
    std::atomic<std::size_t> next_task{0};

    auto worker = [&] {
        SearchState st(pb);
        for (;;) {
            const std::size_t task = next_task.fetch_add(1);
            if (task >= tasks) {
                return;
            }
            for (std::size_t i = 0; i < split; ++i) {
                st.set(pb.order[i], static_cast<int>((task >> i) & 1));
            }
            dfs_max(st, rest, 0, incumbent);
            for (std::size_t i = split; i-- > 0;) {
                st.unset(pb.order[i], static_cast<int>((task >> i) & 1));
            }
        }
    };
    std::vector<std::thread> pool;
    for (unsigned t = 0; t < threads; ++t) {
        pool.emplace_back(worker);
    }
    for (std::thread& t : pool) {
        t.join();
    }
    return incumbent.load();
}

bool reaches_with_prefix(const SearchProblem& pb,
                         const std::vector<int>& forced, std::int64_t target) {
    SearchState st(pb);
    std::vector<std::uint32_t> free_vars;
    for (std::uint32_t v : pb.order) {
        if (forced[v] < 0) {
            free_vars.push_back(v);
        } else {
            st.set(v, forced[v]);
        }
    }
    return dfs_reaches(st, free_vars, 0, target);
}

OptimalResult result_from_bits(const Game& g, const SearchProblem& pb,
                               std::int64_t value, std::uint64_t joint_bits) {
    const std::uint64_t alice_mask =
        pb.alice_count == 64 ? ~std::uint64_t(0)
                             : ((std::uint64_t(1) << pb.alice_count) - 1);
    OptimalResult out;
    out.value = Rational(value, pb.denominator);
    out.witness.alice = make_strategy(g, Party::alice, joint_bits & alice_mask);
    const std::uint64_t bob_bits =
        pb.alice_count >= 64 ? 0 : joint_bits >> pb.alice_count;
    out.witness.bob = make_strategy(g, Party::bob, bob_bits);
    return out;
}

bool lex_less(std::uint64_t a, std::uint64_t b, std::size_t nbits) {
    for (std::size_t i = 0; i < nbits; ++i) {
        const unsigned ba = (a >> i) & 1u;
        const unsigned bb = (b >> i) & 1u;
        if (ba != bb) {
            return ba < bb;
        }
    }
    return false;
}

} // namespace

OptimalResult optimal_value(const Game& g, unsigned threads) {
    const ParitySystem sys = build_parity_system(g);
    const SearchProblem pb = build_search_problem(g, sys);

    const std::int64_t best = solve_max(pb, threads);

    // Fix canonical bits low-to-high, keeping 0 whenever the optimum stays
    // reachable: yields the lexicographically smallest optimal witness.
    std::vector<int> forced(pb.nvars, -1);
    std::uint64_t joint = 0;
    for (std::size_t i = 0; i < pb.nvars; ++i) {
        forced[i] = 0;
        if (!reaches_with_prefix(pb, forced, best)) {
            forced[i] = 1;
            joint |= std::uint64_t(1) << i;
        }
    }
    return result_from_bits(g, pb, best, joint);
}

OptimalResult best_response(const Game& g, const DeterministicStrategy& fixed) {
    const ParitySystem sys = build_parity_system(g);
    const SearchProblem pb = build_search_problem(g, sys);

    const Party free_party = other_party(fixed.party);
    const std::size_t free_base = free_party == Party::alice ? 0 : pb.alice_count;
    const std::size_t free_count =
        free_party == Party::alice ? pb.alice_count : pb.nvars - pb.alice_count;
    const std::size_t fixed_base = free_party == Party::alice ? pb.alice_count : 0;
    if (free_count > kResponseVariableBudget) {
        throw std::invalid_argument("variable budget exceeded");
    }
    const std::vector<ContextualVariable> expected =
        contextual_variables(g, fixed.party);
    if (fixed.variables != expected) {
        throw std::invalid_argument("fixed strategy does not cover the game");
    }

    struct FlatPred {
        std::uint64_t free_mask;
        unsigned rhs;
    };
    std::vector<FlatPred> preds(pb.preds.size());
    for (std::size_t i = 0; i < pb.preds.size(); ++i) {
        std::uint64_t free_mask = 0;
        unsigned fixed_parity = 0;
        for (std::size_t v = 0; v < pb.nvars; ++v) {
            if (!((pb.preds[i].mask >> v) & 1u)) {
                continue;
            }
            if (v >= free_base && v < free_base + free_count) {
                free_mask |= std::uint64_t(1) << (v - free_base);
            } else {
                fixed_parity ^= (fixed.bits >> (v - fixed_base)) & 1u;
            }
        }
        preds[i] = {free_mask, (pb.preds[i].rhs ^ fixed_parity) & 1u};
    }

    std::int64_t best = -1;
    std::uint64_t best_bits = 0;
    for (std::uint64_t x = 0; x < (std::uint64_t(1) << free_count); ++x) {
        std::int64_t value = 0;
        std::size_t pred_idx = 0;
        for (std::size_t p = 0; p < pb.weight.size(); ++p) {
            bool ok = true;
            for (std::uint32_t k = 0; k < pb.preds_per_pair[p]; ++k, ++pred_idx) {
                if ((std::popcount(preds[pred_idx].free_mask & x) & 1u) !=
                    preds[pred_idx].rhs) {
                    ok = false;
                }
            }
            if (ok) {
                value += pb.weight[p];
            }
        }
        if (value > best || (value == best && lex_less(x, best_bits, free_count))) {
            best = value;
            best_bits = x;
        }
    }

    OptimalResult out;
    out.value = Rational(best, pb.denominator);
    DeterministicStrategy free_strategy = make_strategy(g, free_party, best_bits);
    if (free_party == Party::alice) {
        out.witness = {std::move(free_strategy), fixed};
    } else {
        out.witness = {fixed, std::move(free_strategy)};
    }
    return out;
}

OptimalResult noncontextual_optimal(const Game& g) {
    const ParitySystem sys = build_parity_system(g);
    const SearchProblem pb = build_search_problem(g, sys);

    // One bit per observable that actually appears in a question.
    std::vector<ObservableId> used;
    for (const Question& q : g.questions) {
        used.push_back({q.party, q.first});
        used.push_back({q.party, q.second});
    }
    std::sort(used.begin(), used.end());
    used.erase(std::unique(used.begin(), used.end()), used.end());
    if (used.size() > kObservableBudget) {
        throw std::invalid_argument("variable budget exceeded");
    }

    auto observable_slot = [&](Party party, const std::string& label) {
        const ObservableId key{party, label};
        const auto it = std::lower_bound(used.begin(), used.end(), key);
        return static_cast<std::size_t>(it - used.begin());
    };

    std::vector<std::uint64_t> pred_obs_mask(pb.preds.size(), 0);
    std::vector<std::size_t> var_slot(pb.nvars);
    for (std::size_t v = 0; v < pb.nvars; ++v) {
        var_slot[v] = observable_slot(sys.variables[v].party,
                                      sys.variables[v].observable);
    }
    for (std::size_t i = 0; i < pb.preds.size(); ++i) {
        for (std::size_t v = 0; v < pb.nvars; ++v) {
            if ((pb.preds[i].mask >> v) & 1u) {
                pred_obs_mask[i] |= std::uint64_t(1) << var_slot[v];
            }
        }
    }

    auto expand = [&](std::uint64_t obs_bits) {
        std::uint64_t joint = 0;
        for (std::size_t v = 0; v < pb.nvars; ++v) {
            joint |= ((obs_bits >> var_slot[v]) & std::uint64_t(1)) << v;
        }
        return joint;
    };

    std::int64_t best = -1;
    std::uint64_t best_joint = 0;
    for (std::uint64_t obs_bits = 0; obs_bits < (std::uint64_t(1) << used.size());
         ++obs_bits) {
        std::int64_t value = 0;
        std::size_t pred_idx = 0;
        for (std::size_t p = 0; p < pb.weight.size(); ++p) {
            bool ok = true;
            for (std::uint32_t k = 0; k < pb.preds_per_pair[p]; ++k, ++pred_idx) {
                if ((std::popcount(pred_obs_mask[pred_idx] & obs_bits) & 1u) !=
                    pb.preds[pred_idx].rhs) {
                    ok = false;
                }
            }
            if (ok) {
                value += pb.weight[p];
            }
        }
        if (value < best) {
            continue;
        }
        const std::uint64_t joint = expand(obs_bits);
        if (value > best || lex_less(joint, best_joint, pb.nvars)) {
            best = value;
            best_joint = joint;
        }
    }
    return result_from_bits(g, pb, best, best_joint);
}

} // namespace ptlab
