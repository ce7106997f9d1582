#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "qplex/designs.hpp"
#include "qplex/geometry.hpp"
#include "qplex/graph.hpp"
#include "qplex/povm.hpp"
#include "qplex/primal.hpp"

namespace qplex::io {

using nlohmann::json;

// POVM interchange format:
//   { "dim": d, "effects": [ [ [re, im], ... d^2 entries row-major ], ... ] }
// or the rank-1 Bloch shorthand for d = 2:
//   { "dim": 2, "bloch": [ [x, y, z], ... ], "weights": [ w_1, ... ] }
// meaning Pi_j = w_j (I + b_j . sigma) / 2 with |b_j| = 1.
Povm povm_from_json(const json& j);
json povm_to_json(const Povm& povm);
Povm load_povm(const std::string& path);
void save_povm(const Povm& povm, const std::string& path);

// { "dim": d, "vectors": [ [ [re, im], ... d entries ], ... ] }
designs::ProjectiveDesign design_from_json(const json& j);
designs::ProjectiveDesign load_design(const std::string& path);

// { "dim": d, "matrix": [ [re, im], ... d^2 entries row-major ] }
ComplexMatrix state_from_json(const json& j);
ComplexMatrix load_state(const std::string& path);
json state_to_json(const ComplexMatrix& rho);

// a bare JSON array or { "p": [ ... ] }
std::vector<double> probability_vector_from_json(const json& j);
std::vector<double> load_probability_vector(const std::string& path);

std::string adjacency_list(const graph::OrthogonalityGraph& g);
json graph_params_json(const graph::OrthogonalityGraph& g, const graph::SrgParameters& params,
                       const graph::CliqueReport& cliques);
json geometry_json(const geom::GeometryReport& report);
json morphophoricity_json(const MorphophoricityReport& report);
std::string joint_csv(const primal::JointDistribution& joint);
std::string vertices_csv(const std::vector<std::vector<double>>& vertices);

std::string read_file(const std::string& path);
void write_file(const std::string& path, const std::string& content);

}  // namespace qplex::io
