#pragma once

#include "effdiff/tensor.hpp"

#include <array>
#include <vector>

namespace effdiff {

/// Uniform tensor-product grid on (0,extent[0]) x ... with cells[a] cells per
/// axis. Nodes and cells are numbered lexicographically, x fastest.
struct StructuredGrid {
    int dim = 2;
    std::array<double, 3> extent{1, 1, 1};
    std::array<int, 3> cells{1, 1, 1};

    double spacing(int axis) const { return extent[axis] / cells[axis]; }
    int nodes(int axis) const { return cells[axis] + 1; }

    long total_cells() const;
    long total_nodes() const;

    long node_index(int i, int j, int k = 0) const {
        long idx = i + static_cast<long>(nodes(0)) * j;
        if (dim == 3) idx += static_cast<long>(nodes(0)) * nodes(1) * k;
        return idx;
    }
    long cell_index(int i, int j, int k = 0) const {
        long idx = i + static_cast<long>(cells[0]) * j;
        if (dim == 3) idx += static_cast<long>(cells[0]) * cells[1] * k;
        return idx;
    }

    void validate() const;
    bool same_layout(const StructuredGrid& other) const;
};

/// Boundary face of the grid box: axis in [0,dim), side 0 = low, 1 = high.
struct Face {
    int axis = 0;
    int side = 0;
};

/// Nodal scalar values (concentration u).
struct ScalarField {
    StructuredGrid grid;
    std::vector<double> values;

    static ScalarField zero(const StructuredGrid& g);
    static ScalarField constant(const StructuredGrid& g, double value);
    void validate() const;
};

/// Piecewise-constant coefficient realization: one tensor per cell, with
/// optional per-cell capacity (sigma) and reaction (r) factors.
struct TensorField {
    StructuredGrid grid;
    std::vector<SymTensor> tensors;
    std::vector<double> sigma;     // empty = 1 everywhere
    std::vector<double> reaction;  // empty = 0 everywhere

    static TensorField uniform(const StructuredGrid& g, const SymTensor& d);
    void validate() const;
    double mean_sigma() const;
};

/// Integral of the multilinear interpolant sigma-weighted over the domain,
/// i.e. the discrete capacity-weighted mass of u.
double capacity_weighted_mass(const TensorField& field, const ScalarField& u);

}  // namespace effdiff
