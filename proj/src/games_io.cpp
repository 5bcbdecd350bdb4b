#include <json.hpp>

#include "ptlab/games.hpp"

namespace ptlab {

namespace {

using nlohmann::json;
using nlohmann::ordered_json;

[[noreturn]] void fail(const std::string& where, const std::string& what) {
    throw GameParseError(where + ": " + what);
}

void check_keys(const json& obj, const std::string& where,
                std::initializer_list<const char*> allowed) {
    for (const auto& item : obj.items()) {
        bool known = false;
        for (const char* key : allowed) {
            if (item.key() == key) {
                known = true;
                break;
            }
        }
        if (!known) {
            fail(where, "unknown key \"" + item.key() + "\"");
        }
    }
}

const json& field(const json& obj, const std::string& where, const char* key) {
    const auto it = obj.find(key);
    if (it == obj.end()) {
        fail(where, std::string("missing key \"") + key + "\"");
    }
    return *it;
}

std::string get_string(const json& obj, const std::string& where, const char* key) {
    const json& v = field(obj, where, key);
    if (!v.is_string()) {
        fail(where + "." + key, "expected a string");
    }
    return v.get<std::string>();
}

Party get_party(const json& obj, const std::string& where, const char* key) {
    const std::string s = get_string(obj, where, key);
    if (s == "alice") {
        return Party::alice;
    }
    if (s == "bob") {
        return Party::bob;
    }
    fail(where + "." + key, "party must be \"alice\" or \"bob\"");
}

std::size_t get_index(const json& obj, const std::string& where, const char* key) {
    const json& v = field(obj, where, key);
    if (!v.is_number_unsigned()) {
        fail(where + "." + key, "expected a nonnegative integer");
    }
    return v.get<std::size_t>();
}

Predicate parse_predicate(const json& jp, const std::string& where,
                          std::size_t pair_index, std::size_t pred_index) {
    if (!jp.is_object()) {
        fail(where, "expected an object");
    }
    check_keys(jp, where, {"id", "sign", "factors"});
    Predicate pred;
    if (jp.contains("id")) {
        pred.id = get_string(jp, where, "id");
    } else {
        pred.id = "p" + std::to_string(pair_index) + "." + std::to_string(pred_index);
    }
    const json& sign = field(jp, where, "sign");
    if (!sign.is_number_integer() ||
        (sign.get<std::int64_t>() != 1 && sign.get<std::int64_t>() != -1)) {
        fail(where + ".sign", "sign must be +1 or -1");
    }
    pred.sign = static_cast<int>(sign.get<std::int64_t>());
    const json& factors = field(jp, where, "factors");
    if (!factors.is_array()) {
        fail(where + ".factors", "expected an array");
    }
    for (std::size_t i = 0; i < factors.size(); ++i) {
        const json& f = factors[i];
        const std::string fwhere = where + ".factors[" + std::to_string(i) + "]";
        if (!f.is_array() || f.size() != 2 || !f[0].is_string() || !f[1].is_string()) {
            fail(fwhere, "expected [party, label]");
        }
        const std::string party = f[0].get<std::string>();
        if (party != "alice" && party != "bob") {
            fail(fwhere, "party must be \"alice\" or \"bob\"");
        }
        pred.factors.push_back(
            {party == "alice" ? Party::alice : Party::bob, f[1].get<std::string>()});
    }
    return pred;
}

} // namespace

Game parse_game(const std::string& document) {
    json j;
    try {
        j = json::parse(document);
    } catch (const json::parse_error& e) {
        throw GameParseError("syntax error at byte " + std::to_string(e.byte) + ": " +
                             e.what());
    }
    if (!j.is_object()) {
        fail("document", "expected a JSON object");
    }
    check_keys(j, "document", {"name", "observables", "questions", "pairs"});

    Game g;
    g.name = get_string(j, "document", "name");

    const json& observables = field(j, "document", "observables");
    if (!observables.is_array()) {
        fail("observables", "expected an array");
    }
    for (std::size_t i = 0; i < observables.size(); ++i) {
        const std::string where = "observables[" + std::to_string(i) + "]";
        const json& jo = observables[i];
        if (!jo.is_object()) {
            fail(where, "expected an object");
        }
        check_keys(jo, where, {"party", "label"});
        g.observables.push_back(
            {get_party(jo, where, "party"), get_string(jo, where, "label")});
    }

    const json& questions = field(j, "document", "questions");
    if (!questions.is_array()) {
        fail("questions", "expected an array");
    }
    for (std::size_t i = 0; i < questions.size(); ++i) {
        const std::string where = "questions[" + std::to_string(i) + "]";
        const json& jq = questions[i];
        if (!jq.is_object()) {
            fail(where, "expected an object");
        }
        check_keys(jq, where, {"party", "first", "second"});
        g.questions.push_back({get_party(jq, where, "party"),
                               get_string(jq, where, "first"),
                               get_string(jq, where, "second")});
    }

    const json& pairs = field(j, "document", "pairs");
    if (!pairs.is_array()) {
        fail("pairs", "expected an array");
    }
    for (std::size_t i = 0; i < pairs.size(); ++i) {
        const std::string where = "pairs[" + std::to_string(i) + "]";
        const json& jp = pairs[i];
        if (!jp.is_object()) {
            fail(where, "expected an object");
        }
        check_keys(jp, where, {"alice", "bob", "predicates", "weight"});
        QuestionPair pair;
        pair.alice_q = get_index(jp, where, "alice");
        pair.bob_q = get_index(jp, where, "bob");
        const auto weight = Rational::parse(get_string(jp, where, "weight"));
        if (!weight) {
            fail(where + ".weight", "expected \"num/den\"");
        }
        pair.weight = *weight;
        const json& preds = field(jp, where, "predicates");
        if (!preds.is_array()) {
            fail(where + ".predicates", "expected an array");
        }
        for (std::size_t k = 0; k < preds.size(); ++k) {
            pair.predicates.push_back(parse_predicate(
                preds[k], where + ".predicates[" + std::to_string(k) + "]", i, k));
        }
        g.pairs.push_back(std::move(pair));
    }
    return g;
}

std::string serialize_game(const Game& g) {
    ordered_json j;
    j["name"] = g.name;
    j["observables"] = ordered_json::array();
    for (const ObservableId& obs : g.observables) {
        j["observables"].push_back(
            {{"party", party_name(obs.party)}, {"label", obs.label}});
    }
    j["questions"] = ordered_json::array();
    for (const Question& q : g.questions) {
        j["questions"].push_back(
            {{"party", party_name(q.party)}, {"first", q.first}, {"second", q.second}});
    }
    j["pairs"] = ordered_json::array();
    for (const QuestionPair& pair : g.pairs) {
        ordered_json jp;
        jp["alice"] = pair.alice_q;
        jp["bob"] = pair.bob_q;
        jp["predicates"] = ordered_json::array();
        for (const Predicate& pred : pair.predicates) {
            ordered_json jpred;
            jpred["id"] = pred.id;
            jpred["sign"] = pred.sign;
            jpred["factors"] = ordered_json::array();
            for (const ObservableId& f : pred.factors) {
                jpred["factors"].push_back({party_name(f.party), f.label});
            }
            jp["predicates"].push_back(std::move(jpred));
        }
        jp["weight"] = pair.weight.str();
        j["pairs"].push_back(std::move(jp));
    }
    return j.dump(2) + "\n";
}

} // namespace ptlab
