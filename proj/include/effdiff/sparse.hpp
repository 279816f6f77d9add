#pragma once

#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace effdiff {

/// Immutable CSR sparsity structure, shareable across assemblies of fields on
/// the same grid (Monte Carlo trials reuse one pattern across threads).
struct SparsePattern {
    int n_rows = 0;
    int n_cols = 0;
    std::vector<int> row_ptr;  // size n_rows + 1
    std::vector<int> col;      // sorted within each row

    /// Flat index of entry (i, j); throws if (i, j) is not in the pattern.
    int find(int i, int j) const;

    static std::shared_ptr<const SparsePattern> build(
        int n_rows, int n_cols, std::vector<std::vector<int>>&& adjacency);
};

/// CSR matrix over a shared pattern.
struct SparseMatrix {
    std::shared_ptr<const SparsePattern> pattern;
    std::vector<double> values;

    explicit SparseMatrix(std::shared_ptr<const SparsePattern> p)
        : pattern(std::move(p)), values(pattern->col.size(), 0.0) {}

    int rows() const { return pattern->n_rows; }
    void add(int i, int j, double v) { values[static_cast<size_t>(pattern->find(i, j))] += v; }
    void matvec(std::span<const double> x, std::span<double> y) const;
    double max_asymmetry() const;
};

struct SolverControl {
    double rel_tol = 1e-10;
    double max_iter_factor = 50.0;  // max iterations = factor * n^(1/grid_dim)
    int max_iterations = 0;         // 0 = derive from factor
    bool project_mean = false;      // deflate the constant nullspace (periodic problems)

    int iteration_limit(int n, int grid_dim) const;
};

struct SolveReport {
    int iterations = 0;
    double rel_residual = 0;
};

class SolveError : public std::runtime_error {
public:
    SolveError(const std::string& msg, int iterations, double rel_residual)
        : std::runtime_error(msg), iterations(iterations), rel_residual(rel_residual) {}
    int iterations;
    double rel_residual;
};

/// Preconditioned conjugate gradients with Jacobi scaling. Convergence is
/// measured on the preconditioned residual norm, ||b - Ax||_{M^-1} relative
/// to ||b||_{M^-1}, and verified against a freshly computed residual before
/// returning; throws SolveError with the achieved residual otherwise. x holds
/// the initial guess on entry.
SolveReport cg_solve(const SparseMatrix& a, std::span<const double> b, std::span<double> x,
                     const SolverControl& control, int grid_dim);

}  // namespace effdiff
