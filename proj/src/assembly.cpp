#include "effdiff/assembly.hpp"

#include <cmath>
#include <stdexcept>

namespace effdiff {

namespace detail {

namespace {

// 1D linear mass on the unit interval: integral of N_a N_b.
constexpr double mass1(int a, int b) { return a == b ? 1.0 / 3.0 : 1.0 / 6.0; }

double shape_1d(int bit, double xi) { return bit ? xi : 1.0 - xi; }

}  // namespace

ElementKernels make_element_kernels(const StructuredGrid& grid) {
    ElementKernels k;
    k.dim = grid.dim;
    k.corners = 1 << grid.dim;
    double h[3] = {1, 1, 1};
    k.volume = 1;
    for (int a = 0; a < grid.dim; ++a) {
        h[a] = grid.spacing(a);
        k.volume *= h[a];
    }

    // Two-point Gauss per axis (exact for products of multilinear gradients).
    const double gp[2] = {0.5 - 0.5 / std::sqrt(3.0), 0.5 + 0.5 / std::sqrt(3.0)};
    const int n_q = 1 << grid.dim;
    for (int q = 0; q < n_q; ++q) {
        double xi[3] = {0, 0, 0};
        for (int a = 0; a < grid.dim; ++a) xi[a] = gp[(q >> a) & 1];
        const double w = 1.0 / n_q;

        double grad[8][3];  // physical gradient of each shape at this point
        for (int c = 0; c < k.corners; ++c)
            for (int a = 0; a < grid.dim; ++a) {
                double g = ((c >> a) & 1) ? 1.0 : -1.0;
                for (int b = 0; b < grid.dim; ++b)
                    if (b != a) g *= shape_1d((c >> b) & 1, xi[b]);
                grad[c][a] = g / h[a];
            }

        for (int a = 0; a < grid.dim; ++a)
            for (int b = 0; b < grid.dim; ++b)
                for (int ci = 0; ci < k.corners; ++ci)
                    for (int cj = 0; cj < k.corners; ++cj)
                        k.grad_pair[a][b][ci][cj] += w * k.volume * grad[ci][a] * grad[cj][b];
    }

    for (int ci = 0; ci < k.corners; ++ci) {
        for (int cj = 0; cj < k.corners; ++cj) {
            double m = k.volume;
            for (int a = 0; a < grid.dim; ++a) m *= mass1((ci >> a) & 1, (cj >> a) & 1);
            k.mass[ci][cj] = m;
        }
        for (int a = 0; a < grid.dim; ++a)
            k.grad_int[a][ci] = (((ci >> a) & 1) ? 1.0 : -1.0) * k.volume / h[a] /
                                static_cast<double>(1 << (grid.dim - 1));
    }

    for (int axis = 0; axis < grid.dim; ++axis) {
        double area = 1;
        for (int a = 0; a < grid.dim; ++a)
            if (a != axis) area *= h[a];
        k.face_area[axis] = area;
        const int fc = 1 << (grid.dim - 1);
        k.face_load[axis] = area / fc;
        for (int ci = 0; ci < fc; ++ci)
            for (int cj = 0; cj < fc; ++cj) {
                double m = area;
                int bit = 0;
                for (int a = 0; a < grid.dim; ++a) {
                    if (a == axis) continue;
                    m *= mass1((ci >> bit) & 1, (cj >> bit) & 1);
                    ++bit;
                }
                k.face_mass[axis][ci][cj] = m;
            }
    }
    return k;
}

}  // namespace detail

namespace {

// Invokes fn(cell_index, corner_nodes[2^dim]) for every element.
template <typename Fn>
void for_each_element(const StructuredGrid& g, Fn&& fn) {
    const int nz = g.dim == 3 ? g.cells[2] : 1;
    const int corners = 1 << g.dim;
    std::array<long, 8> nodes{};
    for (int kk = 0; kk < nz; ++kk)
        for (int j = 0; j < g.cells[1]; ++j)
            for (int i = 0; i < g.cells[0]; ++i) {
                for (int c = 0; c < corners; ++c)
                    nodes[c] = g.node_index(i + (c & 1), j + ((c >> 1) & 1),
                                            kk + ((c >> 2) & 1));
                fn(g.cell_index(i, j, kk), nodes);
            }
}

// Invokes fn(face_corner_nodes[2^(dim-1)]) for every boundary face element.
template <typename Fn>
void for_each_face_element(const StructuredGrid& g, Face face, Fn&& fn) {
    const int fixed_node = face.side ? g.cells[face.axis] : 0;
    int tang[2] = {-1, -1};
    int nt = 0;
    for (int a = 0; a < g.dim; ++a)
        if (a != face.axis) tang[nt++] = a;

    const int n0 = g.cells[tang[0]];
    const int n1 = nt == 2 ? g.cells[tang[1]] : 1;
    const int fc = 1 << nt;
    std::array<long, 4> nodes{};
    for (int j = 0; j < n1; ++j)
        for (int i = 0; i < n0; ++i) {
            for (int c = 0; c < fc; ++c) {
                int coord[3] = {0, 0, 0};
                coord[face.axis] = fixed_node;
                coord[tang[0]] = i + (c & 1);
                if (nt == 2) coord[tang[1]] = j + ((c >> 1) & 1);
                nodes[c] = g.node_index(coord[0], coord[1], coord[2]);
            }
            fn(nodes);
        }
}

std::vector<std::vector<int>> element_adjacency(const StructuredGrid& g, const DofMap& dofs,
                                                bool cols_are_nodes) {
    std::vector<std::vector<int>> adj(static_cast<size_t>(dofs.n_eq));
    const int corners = 1 << g.dim;
    for_each_element(g, [&](long, const std::array<long, 8>& nodes) {
        for (int ci = 0; ci < corners; ++ci) {
            const int ei = dofs.eq[static_cast<size_t>(nodes[ci])];
            if (ei < 0) continue;
            for (int cj = 0; cj < corners; ++cj) {
                if (cols_are_nodes) {
                    adj[ei].push_back(static_cast<int>(nodes[cj]));
                } else {
                    const int ej = dofs.eq[static_cast<size_t>(nodes[cj])];
                    if (ej >= 0) adj[ei].push_back(ej);
                }
            }
        }
    });
    return adj;
}

}  // namespace

DofMap make_dof_map(const StructuredGrid& grid, const BoundarySetup& boundary) {
    grid.validate();
    DofMap dofs;
    const long n_nodes = grid.total_nodes();
    dofs.eq.assign(static_cast<size_t>(n_nodes), 0);
    dofs.fixed.assign(static_cast<size_t>(n_nodes), 0.0);

    const int nz = grid.dim == 3 ? grid.nodes(2) : 1;
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < grid.nodes(1); ++j)
            for (int i = 0; i < grid.nodes(0); ++i) {
                const long node = grid.node_index(i, j, k);
                const int coord[3] = {i, j, k};
                bool is_dirichlet = false;
                double value = 0;
                for (int a = 0; a < grid.dim; ++a)
                    for (int side = 0; side < 2; ++side) {
                        const FaceCondition& fc = boundary.at({a, side});
                        if (fc.kind != FaceKind::Dirichlet) continue;
                        if (coord[a] != (side ? grid.cells[a] : 0)) continue;
                        is_dirichlet = true;
                        value = fc.value;
                    }
                if (is_dirichlet) {
                    dofs.eq[static_cast<size_t>(node)] = -1;
                    dofs.fixed[static_cast<size_t>(node)] = value;
                } else {
                    dofs.eq[static_cast<size_t>(node)] = dofs.n_eq++;
                }
            }
    return dofs;
}

DofMap make_periodic_dof_map(const StructuredGrid& grid) {
    grid.validate();
    DofMap dofs;
    dofs.periodic = true;
    dofs.eq.assign(static_cast<size_t>(grid.total_nodes()), 0);
    dofs.fixed.assign(static_cast<size_t>(grid.total_nodes()), 0.0);

    long n_eq = 1;
    for (int a = 0; a < grid.dim; ++a) n_eq *= grid.cells[a];
    dofs.n_eq = static_cast<int>(n_eq);

    const int nz = grid.dim == 3 ? grid.nodes(2) : 1;
    for (int k = 0; k < nz; ++k)
        for (int j = 0; j < grid.nodes(1); ++j)
            for (int i = 0; i < grid.nodes(0); ++i) {
                const int wi = i % grid.cells[0];
                const int wj = j % grid.cells[1];
                const int wk = grid.dim == 3 ? k % grid.cells[2] : 0;
                long eq = wi + static_cast<long>(grid.cells[0]) * wj;
                if (grid.dim == 3) eq += static_cast<long>(grid.cells[0]) * grid.cells[1] * wk;
                dofs.eq[static_cast<size_t>(grid.node_index(i, j, k))] = static_cast<int>(eq);
            }
    return dofs;
}

std::shared_ptr<const SparsePattern> build_pattern(const StructuredGrid& grid,
                                                   const DofMap& dofs) {
    return SparsePattern::build(dofs.n_eq, dofs.n_eq, element_adjacency(grid, dofs, false));
}

std::shared_ptr<const SparsePattern> build_eq_by_node_pattern(const StructuredGrid& grid,
                                                              const DofMap& dofs) {
    return SparsePattern::build(dofs.n_eq, static_cast<int>(grid.total_nodes()),
                                element_adjacency(grid, dofs, true));
}

StationarySystem assemble_stationary(const TensorField& field, const BoundarySetup& boundary,
                                     const DofMap& dofs,
                                     std::shared_ptr<const SparsePattern> pattern) {
    const StructuredGrid& g = field.grid;
    const detail::ElementKernels kern = detail::make_element_kernels(g);
    StationarySystem sys{SparseMatrix(std::move(pattern)),
                         std::vector<double>(static_cast<size_t>(dofs.n_eq), 0.0)};

    const int corners = kern.corners;
    for_each_element(g, [&](long cell, const std::array<long, 8>& nodes) {
        const SymTensor& d = field.tensors[static_cast<size_t>(cell)];
        const double r = field.reaction.empty() ? 0.0 : field.reaction[static_cast<size_t>(cell)];

        // Fill the upper triangle and mirror so A = A^t holds bitwise.
        double ke[8][8];
        for (int ci = 0; ci < corners; ++ci)
            for (int cj = ci; cj < corners; ++cj) {
                double v = 0;
                for (int a = 0; a < g.dim; ++a)
                    for (int b = 0; b < g.dim; ++b)
                        v += d(a, b) * kern.grad_pair[a][b][ci][cj];
                if (r != 0) v += r * kern.mass[ci][cj];
                ke[ci][cj] = v;
                ke[cj][ci] = v;
            }

        for (int ci = 0; ci < corners; ++ci) {
            const int ei = dofs.eq[static_cast<size_t>(nodes[ci])];
            if (ei < 0) continue;
            for (int cj = 0; cj < corners; ++cj) {
                const int ej = dofs.eq[static_cast<size_t>(nodes[cj])];
                if (ej >= 0)
                    sys.matrix.add(ei, ej, ke[ci][cj]);
                else
                    sys.rhs[ei] -= ke[ci][cj] * dofs.fixed[static_cast<size_t>(nodes[cj])];
            }
        }
    });

    for (int a = 0; a < g.dim; ++a)
        for (int side = 0; side < 2; ++side) {
            const FaceCondition& fc = boundary.at({a, side});
            if (fc.kind != FaceKind::Robin) continue;
            const int face_corners = 1 << (g.dim - 1);
            for_each_face_element(g, {a, side}, [&](const std::array<long, 4>& nodes) {
                for (int ci = 0; ci < face_corners; ++ci) {
                    const int ei = dofs.eq[static_cast<size_t>(nodes[ci])];
                    if (ei < 0) continue;
                    sys.rhs[ei] += fc.mass_transfer * fc.value * kern.face_load[a];
                    for (int cj = 0; cj < face_corners; ++cj) {
                        const int ej = dofs.eq[static_cast<size_t>(nodes[cj])];
                        const double m = fc.mass_transfer * kern.face_mass[a][ci][cj];
                        if (ej >= 0)
                            sys.matrix.add(ei, ej, m);
                        else
                            sys.rhs[ei] -= m * dofs.fixed[static_cast<size_t>(nodes[cj])];
                    }
                }
            });
        }

    return sys;
}

SparseMatrix assemble_capacity_mass(const TensorField& field, const DofMap& dofs,
                                    std::shared_ptr<const SparsePattern> eq_by_node,
                                    double scale) {
    const StructuredGrid& g = field.grid;
    const detail::ElementKernels kern = detail::make_element_kernels(g);
    SparseMatrix mass(std::move(eq_by_node));

    for_each_element(g, [&](long cell, const std::array<long, 8>& nodes) {
        const double s =
            scale * (field.sigma.empty() ? 1.0 : field.sigma[static_cast<size_t>(cell)]);
        for (int ci = 0; ci < kern.corners; ++ci) {
            const int ei = dofs.eq[static_cast<size_t>(nodes[ci])];
            if (ei < 0) continue;
            for (int cj = 0; cj < kern.corners; ++cj)
                mass.add(ei, static_cast<int>(nodes[cj]), s * kern.mass[ci][cj]);
        }
    });
    return mass;
}

std::vector<double> assemble_cell_rhs(const TensorField& field, const DofMap& dofs,
                                      int direction) {
    const StructuredGrid& g = field.grid;
    if (direction < 0 || direction >= g.dim)
        throw std::invalid_argument("assemble_cell_rhs: direction out of range");
    const detail::ElementKernels kern = detail::make_element_kernels(g);
    std::vector<double> rhs(static_cast<size_t>(dofs.n_eq), 0.0);

    for_each_element(g, [&](long cell, const std::array<long, 8>& nodes) {
        const SymTensor& d = field.tensors[static_cast<size_t>(cell)];
        for (int c = 0; c < kern.corners; ++c) {
            const int e = dofs.eq[static_cast<size_t>(nodes[c])];
            if (e < 0) continue;
            double v = 0;
            for (int a = 0; a < g.dim; ++a) v += d(a, direction) * kern.grad_int[a][c];
            rhs[static_cast<size_t>(e)] += v;
        }
    });
    return rhs;
}

ScalarField expand_solution(const StructuredGrid& grid, const DofMap& dofs,
                            std::span<const double> x) {
    ScalarField u = ScalarField::zero(grid);
    for (size_t node = 0; node < dofs.eq.size(); ++node) {
        const int e = dofs.eq[node];
        u.values[node] = e >= 0 ? x[static_cast<size_t>(e)] : dofs.fixed[node];
    }
    return u;
}

std::vector<double> restrict_to_equations(const DofMap& dofs, const ScalarField& u) {
    std::vector<double> x(static_cast<size_t>(dofs.n_eq), 0.0);
    for (size_t node = 0; node < dofs.eq.size(); ++node) {
        const int e = dofs.eq[node];
        if (e >= 0) x[static_cast<size_t>(e)] = u.values[node];
    }
    return x;
}

}  // namespace effdiff
