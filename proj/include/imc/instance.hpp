#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "imc/credal.hpp"
#include "imc/types.hpp"

namespace imc {

enum class CredalModel { eps_contam, vertex_hull };
enum class Family { random, worst_case, propagation_chain, example1, example2, tiebreak };

std::string to_string(CredalModel m);
std::string to_string(Family f);
CredalModel credal_model_from_string(const std::string& s);
Family family_from_string(const std::string& s);

/// Everything needed to regenerate the instance bit-identically.
struct GeneratorMeta {
    Family family;
    std::optional<double> lambda;
    std::optional<CredalModel> model;
    std::optional<double> epsilon;
    std::optional<std::uint64_t> seed;
    std::optional<std::size_t> m; // worst-case family: number of extreme points
    std::optional<double> b;      // propagation chain: interval upper endpoint
};

/// Serializable problem instance shared by the CLI and the experiment
/// harness.
struct InstanceSpec {
    std::size_t states;
    std::optional<std::vector<std::string>> labels;
    sizevec target;
    CredalSet credal;
    std::optional<std::uint64_t> seed;
    std::optional<GeneratorMeta> generator;

    StateSpace space() const { return StateSpace(states, labels.value_or(std::vector<std::string>{})); }
    TargetSet target_set() const { return TargetSet(states, target); }
};

nlohmann::ordered_json credal_to_json(const CredalSet& c);
CredalSet credal_from_json(const nlohmann::json& j, std::size_t n_states);

nlohmann::ordered_json instance_to_json(const InstanceSpec& inst);
InstanceSpec instance_from_json(const nlohmann::json& j);

/// Canonical textual form (fixed key order, two-space indent, shortest
/// round-trip doubles); byte-identical for equal instances.
std::string instance_to_string(const InstanceSpec& inst);

InstanceSpec load_instance(const std::string& path);
void save_instance(const InstanceSpec& inst, const std::string& path);

} // namespace imc
