#include "effdiff/grid.hpp"

#include <stdexcept>

namespace effdiff {

long StructuredGrid::total_cells() const {
    long n = 1;
    for (int a = 0; a < dim; ++a) n *= cells[a];
    return n;
}

long StructuredGrid::total_nodes() const {
    long n = 1;
    for (int a = 0; a < dim; ++a) n *= nodes(a);
    return n;
}

void StructuredGrid::validate() const {
    if (dim != 2 && dim != 3)
        throw std::invalid_argument("StructuredGrid: dimension must be 2 or 3");
    for (int a = 0; a < dim; ++a) {
        if (!(extent[a] > 0)) throw std::invalid_argument("StructuredGrid: extent must be > 0");
        if (cells[a] < 1) throw std::invalid_argument("StructuredGrid: need >= 1 cell per axis");
    }
}

bool StructuredGrid::same_layout(const StructuredGrid& other) const {
    if (dim != other.dim) return false;
    for (int a = 0; a < dim; ++a)
        if (cells[a] != other.cells[a] || extent[a] != other.extent[a]) return false;
    return true;
}

ScalarField ScalarField::zero(const StructuredGrid& g) {
    g.validate();
    return {g, std::vector<double>(static_cast<size_t>(g.total_nodes()), 0.0)};
}

ScalarField ScalarField::constant(const StructuredGrid& g, double value) {
    ScalarField f = zero(g);
    for (double& v : f.values) v = value;
    return f;
}

void ScalarField::validate() const {
    grid.validate();
    if (static_cast<long>(values.size()) != grid.total_nodes())
        throw std::invalid_argument("ScalarField: value count does not match grid");
}

TensorField TensorField::uniform(const StructuredGrid& g, const SymTensor& d) {
    g.validate();
    TensorField f;
    f.grid = g;
    f.tensors.assign(static_cast<size_t>(g.total_cells()), d);
    return f;
}

void TensorField::validate() const {
    grid.validate();
    const auto n = static_cast<size_t>(grid.total_cells());
    if (tensors.size() != n)
        throw std::invalid_argument("TensorField: tensor count does not match grid");
    for (const SymTensor& t : tensors) {
        t.validate("TensorField tensor");
        if (t.dim != grid.dim)
            throw std::invalid_argument("TensorField: tensor dimension does not match grid");
    }
    if (!sigma.empty()) {
        if (sigma.size() != n)
            throw std::invalid_argument("TensorField: sigma count does not match grid");
        for (double s : sigma)
            if (!(s > 0)) throw std::invalid_argument("TensorField: sigma must be > 0");
    }
    if (!reaction.empty()) {
        if (reaction.size() != n)
            throw std::invalid_argument("TensorField: reaction count does not match grid");
        for (double r : reaction)
            if (r < 0) throw std::invalid_argument("TensorField: reaction must be >= 0");
    }
}

double TensorField::mean_sigma() const {
    if (sigma.empty()) return 1.0;
    double sum = 0;
    for (double s : sigma) sum += s;
    return sum / static_cast<double>(sigma.size());
}

double capacity_weighted_mass(const TensorField& field, const ScalarField& u) {
    const StructuredGrid& g = field.grid;
    if (!g.same_layout(u.grid))
        throw std::invalid_argument("capacity_weighted_mass: grid mismatch");
    double cell_volume = 1;
    for (int a = 0; a < g.dim; ++a) cell_volume *= g.spacing(a);
    const int nz = g.dim == 3 ? g.cells[2] : 1;
    const int corners = 1 << g.dim;

    double mass = 0;
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < g.cells[1]; ++j)
            for (int i = 0; i < g.cells[0]; ++i) {
                const long c = g.cell_index(i, j, k);
                double avg = 0;
                for (int bits = 0; bits < corners; ++bits) {
                    const int di = bits & 1, dj = (bits >> 1) & 1, dk = (bits >> 2) & 1;
                    avg += u.values[static_cast<size_t>(g.node_index(i + di, j + dj, k + dk))];
                }
                avg /= corners;
                const double s = field.sigma.empty() ? 1.0 : field.sigma[static_cast<size_t>(c)];
                mass += s * cell_volume * avg;
            }
    return mass;
}

}  // namespace effdiff
