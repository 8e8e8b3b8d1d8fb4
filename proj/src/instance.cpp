#include "imc/instance.hpp"

#include <fstream>
#include <stdexcept>

namespace imc {

using nlohmann::json;
using nlohmann::ordered_json;

std::string to_string(CredalModel m) {
    return m == CredalModel::eps_contam ? "eps_contam" : "vertex_hull";
}

std::string to_string(Family f) {
    switch (f) {
        case Family::random: return "random";
        case Family::worst_case: return "worst_case";
        case Family::propagation_chain: return "propagation_chain";
        case Family::example1: return "example1";
        case Family::example2: return "example2";
        case Family::tiebreak: return "tiebreak";
    }
    throw std::logic_error("to_string: unknown family");
}

CredalModel credal_model_from_string(const std::string& s) {
    if (s == "eps_contam" || s == "eps") return CredalModel::eps_contam;
    if (s == "vertex_hull" || s == "hull") return CredalModel::vertex_hull;
    throw std::invalid_argument("unknown credal model '" + s + "'");
}

Family family_from_string(const std::string& s) {
    if (s == "random") return Family::random;
    if (s == "worst_case") return Family::worst_case;
    if (s == "propagation_chain") return Family::propagation_chain;
    if (s == "example1") return Family::example1;
    if (s == "example2") return Family::example2;
    if (s == "tiebreak") return Family::tiebreak;
    throw std::invalid_argument("unknown instance family '" + s + "'");
}

namespace {

ordered_json row_values(const numvec& w) { return ordered_json(w); }

} // namespace

ordered_json credal_to_json(const CredalSet& c) {
    const std::size_t n = c.n_states();
    bool all_vertex = true, all_eps = true;
    for (std::size_t x = 0; x < n; ++x) {
        if (std::holds_alternative<VertexRow>(c.row(x))) all_eps = false;
        else all_vertex = false;
    }
    ordered_json out;
    if (all_vertex) {
        out["kind"] = "vertex_rows";
        ordered_json rows = ordered_json::array();
        for (std::size_t x = 0; x < n; ++x) {
            const auto& vr = std::get<VertexRow>(c.row(x));
            ordered_json vertices = ordered_json::array();
            for (const ProbabilityRow& v : vr.vertices) vertices.push_back(row_values(v.weights()));
            rows.push_back(std::move(vertices));
        }
        out["rows"] = std::move(rows);
        return out;
    }
    if (all_eps) {
        const double eps0 = std::get<EpsContamRow>(c.row(0)).epsilon;
        bool full_support = true;
        ordered_json base = ordered_json::array();
        ordered_json support = ordered_json::array();
        for (std::size_t x = 0; x < n; ++x) {
            const auto& er = std::get<EpsContamRow>(c.row(x));
            if (er.epsilon != eps0)
                throw std::invalid_argument(
                    "credal_to_json: rows carry different epsilons; not representable");
            base.push_back(row_values(er.base.weights()));
            if (er.support.size() != n) full_support = false;
            support.push_back(ordered_json(er.support.members()));
        }
        out["kind"] = "eps_contamination";
        out["epsilon"] = eps0;
        out["base"] = std::move(base);
        if (!full_support) out["support"] = std::move(support);
        return out;
    }
    throw std::invalid_argument("credal_to_json: mixed row kinds are not representable");
}

CredalSet credal_from_json(const json& j, std::size_t n_states) {
    if (!j.is_object() || !j.contains("kind"))
        throw std::invalid_argument("credal JSON: expected an object with a 'kind' field");
    const std::string kind = j.at("kind").get<std::string>();
    std::vector<CredalRow> rows;
    rows.reserve(n_states);
    if (kind == "vertex_rows") {
        const auto& jr = j.at("rows");
        if (jr.size() != n_states)
            throw std::invalid_argument("credal JSON: need one vertex list per state");
        for (const auto& vertices : jr) {
            VertexRow vr;
            for (const auto& v : vertices) vr.vertices.emplace_back(v.get<numvec>());
            rows.emplace_back(std::move(vr));
        }
        return CredalSet(n_states, std::move(rows));
    }
    if (kind == "eps_contamination") {
        const double eps = j.at("epsilon").get<double>();
        const auto& jb = j.at("base");
        if (jb.size() != n_states)
            throw std::invalid_argument("credal JSON: need one base row per state");
        std::vector<sizevec> supports(n_states);
        if (j.contains("support")) {
            const auto& js = j.at("support");
            if (js.size() != n_states)
                throw std::invalid_argument("credal JSON: need one support list per state");
            for (std::size_t x = 0; x < n_states; ++x) supports[x] = js[x].get<sizevec>();
        } else {
            for (std::size_t x = 0; x < n_states; ++x)
                supports[x] = StateSet::full(n_states).members();
        }
        for (std::size_t x = 0; x < n_states; ++x)
            rows.emplace_back(EpsContamRow{ProbabilityRow(jb[x].get<numvec>()), eps,
                                           StateSet(n_states, supports[x])});
        return CredalSet(n_states, std::move(rows));
    }
    throw std::invalid_argument("credal JSON: unknown kind '" + kind + "'");
}

namespace {

ordered_json generator_to_json(const GeneratorMeta& g) {
    ordered_json out;
    out["family"] = to_string(g.family);
    if (g.lambda) out["lambda"] = *g.lambda;
    if (g.model) out["model"] = to_string(*g.model);
    if (g.epsilon) out["epsilon"] = *g.epsilon;
    if (g.seed) out["seed"] = *g.seed;
    if (g.m) out["m"] = *g.m;
    if (g.b) out["b"] = *g.b;
    return out;
}

GeneratorMeta generator_from_json(const json& j) {
    GeneratorMeta g{family_from_string(j.at("family").get<std::string>()), {}, {}, {}, {}, {}, {}};
    if (j.contains("lambda")) g.lambda = j.at("lambda").get<double>();
    if (j.contains("model")) g.model = credal_model_from_string(j.at("model").get<std::string>());
    if (j.contains("epsilon")) g.epsilon = j.at("epsilon").get<double>();
    if (j.contains("seed")) g.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("m")) g.m = j.at("m").get<std::size_t>();
    if (j.contains("b")) g.b = j.at("b").get<double>();
    return g;
}

} // namespace

ordered_json instance_to_json(const InstanceSpec& inst) {
    ordered_json out;
    out["states"] = inst.states;
    if (inst.labels) out["labels"] = *inst.labels;
    out["target"] = ordered_json(inst.target);
    out["credal"] = credal_to_json(inst.credal);
    if (inst.seed) out["seed"] = *inst.seed;
    if (inst.generator) out["generator"] = generator_to_json(*inst.generator);
    return out;
}

InstanceSpec instance_from_json(const json& j) {
    const std::size_t n = j.at("states").get<std::size_t>();
    if (n == 0) throw std::invalid_argument("instance JSON: states must be positive");
    std::optional<std::vector<std::string>> labels;
    if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
    sizevec target = j.at("target").get<sizevec>();
    CredalSet credal = credal_from_json(j.at("credal"), n);
    InstanceSpec inst{n, std::move(labels), std::move(target), std::move(credal), {}, {}};
    if (j.contains("seed")) inst.seed = j.at("seed").get<std::uint64_t>();
    if (j.contains("generator")) inst.generator = generator_from_json(j.at("generator"));
    inst.space();      // validates labels
    inst.target_set(); // validates target
    return inst;
}

std::string instance_to_string(const InstanceSpec& inst) {
    return instance_to_json(inst).dump(2) + "\n";
}

InstanceSpec load_instance(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open instance file '" + path + "'");
    json j;
    in >> j;
    return instance_from_json(j);
}

void save_instance(const InstanceSpec& inst, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot write instance file '" + path + "'");
    out << instance_to_string(inst);
}

} // namespace imc
