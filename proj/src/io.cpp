#include "qplex/io.hpp"

#include <cmath>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qplex::io {

namespace {

cplx entry_from_json(const json& e, const char* where) {
    if (!e.is_array() || e.size() != 2 || !e[0].is_number() || !e[1].is_number())
        throw std::invalid_argument(std::string(where) + ": matrix entry must be [re, im]");
    return {e[0].get<double>(), e[1].get<double>()};
}

ComplexMatrix matrix_from_flat(int dim, const json& flat, const char* where) {
    if (!flat.is_array() || static_cast<int>(flat.size()) != dim * dim)
        throw std::invalid_argument(std::string(where) + ": expected " + std::to_string(dim * dim) +
                                    " row-major entries");
    ComplexMatrix m(dim);
    for (int i = 0; i < dim; ++i)
        for (int j = 0; j < dim; ++j) m(i, j) = entry_from_json(flat[i * dim + j], where);
    return m;
}

json matrix_to_flat(const ComplexMatrix& m) {
    json flat = json::array();
    for (int i = 0; i < m.dim(); ++i)
        for (int j = 0; j < m.dim(); ++j) flat.push_back({m(i, j).real(), m(i, j).imag()});
    return flat;
}

}  // namespace

Povm povm_from_json(const json& j) {
    if (!j.contains("dim") || !j["dim"].is_number_integer())
        throw std::invalid_argument("povm: missing integer field 'dim'");
    const int dim = j["dim"].get<int>();

    if (j.contains("bloch")) {
        if (dim != 2) throw std::invalid_argument("povm: the Bloch shorthand requires dim = 2");
        const json& bloch = j["bloch"];
        if (!j.contains("weights") || !j["weights"].is_array() ||
            j["weights"].size() != bloch.size())
            throw std::invalid_argument("povm: 'bloch' needs a matching 'weights' array");
        std::vector<ComplexMatrix> effects;
        for (std::size_t k = 0; k < bloch.size(); ++k) {
            const json& b = bloch[k];
            if (!b.is_array() || b.size() != 3)
                throw std::invalid_argument("povm: each Bloch vector must have 3 components");
            const double x = b[0].get<double>(), y = b[1].get<double>(), z = b[2].get<double>();
            const double len = std::sqrt(x * x + y * y + z * z);
            if (std::abs(len - 1.0) > 1e-8)
                throw std::invalid_argument("povm: Bloch vector " + std::to_string(k + 1) +
                                            " is not unit (norm " + std::to_string(len) + ")");
            const double w = j["weights"][k].get<double>();
            ComplexMatrix e = ComplexMatrix::identity(2);
            e += x * pauli_x() + y * pauli_y() + z * pauli_z();
            e *= cplx(w / 2.0, 0.0);
            effects.push_back(e);
        }
        return Povm::validate(dim, std::move(effects));
    }

    if (!j.contains("effects") || !j["effects"].is_array())
        throw std::invalid_argument("povm: missing array field 'effects'");
    std::vector<ComplexMatrix> effects;
    int index = 0;
    for (const json& e : j["effects"]) {
        ++index;
        const std::string where = "povm effect " + std::to_string(index);
        ComplexMatrix m = matrix_from_flat(dim, e, where.c_str());
        if (m.hermiticity_error() > 1e-10)
            throw std::invalid_argument(where + ": matrix is not Hermitian (deviation " +
                                        std::to_string(m.hermiticity_error()) + ")");
        effects.push_back(std::move(m));
    }
    return Povm::validate(dim, std::move(effects));
}

json povm_to_json(const Povm& povm) {
    json j;
    j["dim"] = povm.dim();
    j["effects"] = json::array();
    for (const auto& e : povm.effects()) j["effects"].push_back(matrix_to_flat(e));
    return j;
}

Povm load_povm(const std::string& path) {
    return povm_from_json(json::parse(read_file(path)));
}

void save_povm(const Povm& povm, const std::string& path) {
    write_file(path, povm_to_json(povm).dump(2) + "\n");
}

designs::ProjectiveDesign design_from_json(const json& j) {
    if (!j.contains("dim") || !j.contains("vectors"))
        throw std::invalid_argument("design: need fields 'dim' and 'vectors'");
    const int dim = j["dim"].get<int>();
    std::vector<cvec> vectors;
    for (const json& row : j["vectors"]) {
        if (!row.is_array() || static_cast<int>(row.size()) != dim)
            throw std::invalid_argument("design: each vector needs " + std::to_string(dim) +
                                        " [re, im] entries");
        cvec v(dim);
        for (int i = 0; i < dim; ++i) v[i] = entry_from_json(row[i], "design vector");
        vectors.push_back(std::move(v));
    }
    return designs::ProjectiveDesign::from_vectors(dim, std::move(vectors));
}

designs::ProjectiveDesign load_design(const std::string& path) {
    return design_from_json(json::parse(read_file(path)));
}

ComplexMatrix state_from_json(const json& j) {
    if (!j.contains("dim") || !j.contains("matrix"))
        throw std::invalid_argument("state: need fields 'dim' and 'matrix'");
    const int dim = j["dim"].get<int>();
    ComplexMatrix rho = matrix_from_flat(dim, j["matrix"], "state");
    rho = ingest_hermitian(rho);
    if (std::abs(rho.trace().real() - 1.0) > 1e-8)
        throw std::invalid_argument("state: trace must be 1");
    return rho;
}

ComplexMatrix load_state(const std::string& path) {
    return state_from_json(json::parse(read_file(path)));
}

json state_to_json(const ComplexMatrix& rho) {
    json j;
    j["dim"] = rho.dim();
    j["matrix"] = matrix_to_flat(rho);
    return j;
}

std::vector<double> probability_vector_from_json(const json& j) {
    if (!j.is_array() && !(j.is_object() && j.contains("p")))
        throw std::invalid_argument("probability vector: expected a flat array or {\"p\": [...]}");
    const json& arr = j.is_array() ? j : j["p"];
    std::vector<double> p;
    for (const json& x : arr) {
        if (!x.is_number())
            throw std::invalid_argument("probability vector: entries must be numbers");
        p.push_back(x.get<double>());
    }
    return p;
}

std::vector<double> load_probability_vector(const std::string& path) {
    return probability_vector_from_json(json::parse(read_file(path)));
}

std::string adjacency_list(const graph::OrthogonalityGraph& g) {
    std::ostringstream out;
    for (int j = 0; j < g.n; ++j)
        for (int k = j + 1; k < g.n; ++k)
            if (g.edge(j, k)) out << j << ' ' << k << '\n';
    return out.str();
}

json graph_params_json(const graph::OrthogonalityGraph& g, const graph::SrgParameters& params,
                       const graph::CliqueReport& cliques) {
    json j;
    j["n"] = params.n;
    j["kappa"] = params.kappa;
    j["lambda"] = params.lambda;
    j["mu"] = params.mu;
    j["d"] = params.d;
    j["r"] = params.r;
    j["q"] = params.q;
    j["psi"] = params.psi;
    j["c"] = cliques.delsarte ? json(cliques.c) : json("not-delsarte");
    j["f"] = params.f;
    j["g"] = params.g;
    j["a"] = g.a;
    j["welch_levenshtein_a"] = params.welch_levenshtein_a;
    j["identities_ok"] = params.identities_ok;
    j["violations"] = params.violations;
    j["maximal_cliques"] = cliques.maximal_cliques.size();
    j["max_clique_size"] = cliques.max_size;
    return j;
}

json geometry_json(const geom::GeometryReport& report) {
    json j;
    j["alpha"] = report.alpha;
    j["m"] = report.m;
    j["r"] = report.r;
    j["R"] = report.R;
    j["center"] = report.center;
    j["mediality_distances"] = report.mediality_distances;
    j["linear_system_rank"] = report.linear_system_rank;
    j["two_design"] = report.two_design;
    j["homothety_residual"] = report.homothety_residual;
    j["basis_distributions"] = report.basis_distributions;
    return j;
}

json morphophoricity_json(const MorphophoricityReport& report) {
    json j;
    j["morphophoric"] = report.morphophoric;
    j["alpha"] = report.alpha;
    j["alpha_closed_form"] = report.alpha_closed_form;
    j["frame_deviation"] = report.frame_deviation;
    j["frame_spread"] = report.frame_spread;
    j["tight_ic"] = report.tight_ic;
    j["beta"] = report.beta;
    j["beta_closed_form"] = report.beta_closed_form;
    j["informationally_complete"] = report.informationally_complete;
    j["rank_of_span"] = report.rank_of_span;
    return j;
}

std::string joint_csv(const primal::JointDistribution& joint) {
    std::ostringstream out;
    out.precision(17);
    const std::size_t cols = joint.joint.empty() ? 0 : joint.joint.front().size();
    for (std::size_t k = 0; k < cols; ++k) out << (k ? "," : "") << "ground_" << (k + 1);
    out << '\n';
    for (const auto& row : joint.joint) {
        for (std::size_t k = 0; k < row.size(); ++k) out << (k ? "," : "") << row[k];
        out << '\n';
    }
    return out.str();
}

std::string vertices_csv(const std::vector<std::vector<double>>& vertices) {
    std::ostringstream out;
    out.precision(17);
    for (const auto& v : vertices) {
        for (std::size_t k = 0; k < v.size(); ++k) out << (k ? "," : "") << v[k];
        out << '\n';
    }
    return out.str();
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read '" + path + "'");
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write '" + path + "'");
    out << content;
}

}  // namespace qplex::io
