#pragma once

#include <array>
#include <cstddef>

namespace effdiff {

/// Symmetric diffusion tensor in 2 or 3 dimensions (units length^2/time).
/// Packed storage [xx, yy, zz, xy, xz, yz]; the entries outside the active
/// dimension stay zero, so 2D tensors reuse the same layout.
struct SymTensor {
    int dim = 0;
    std::array<double, 6> a{};

    static SymTensor zero(int dim);
    static SymTensor isotropic(int dim, double value);
    static SymTensor diag2(double dxx, double dyy);
    static SymTensor diag3(double dxx, double dyy, double dzz);

    double operator()(int i, int j) const { return a[pack(i, j)]; }
    double& entry(int i, int j) { return a[pack(i, j)]; }

    bool is_diagonal(double tol = 0.0) const;
    bool is_positive_definite() const;
    double trace() const;
    double det() const;

    /// Eigenvalues in ascending order; entries past `dim` are zero.
    std::array<double, 3> eigenvalues() const;

    /// Throws std::invalid_argument unless symmetric storage is consistent,
    /// dim is 2 or 3, and the tensor is positive definite.
    void validate(const char* what = "SymTensor") const;

    static int pack(int i, int j) {
        if (i == j) return i;
        return (i + j) + 2;  // (0,1)->3, (0,2)->4, (1,2)->5
    }
};

SymTensor operator*(const SymTensor& q, double s);
SymTensor operator*(double s, const SymTensor& q);

/// Small dense square matrix (rotations, temporaries). Row-major 3x3 storage,
/// top-left block used in 2D.
struct Matrix {
    int dim = 0;
    std::array<double, 9> m{};

    static Matrix identity(int dim);
    double operator()(int i, int j) const { return m[3 * i + j]; }
    double& entry(int i, int j) { return m[3 * i + j]; }
};

Matrix multiply(const Matrix& a, const Matrix& b);
Matrix transpose(const Matrix& a);
double determinant(const Matrix& a);

/// Max-norm of T*T^t - I; zero for exactly orthogonal T.
double orthogonality_defect(const Matrix& t);

/// Conjugation Q* = T Q T^t. The result is symmetrized against roundoff and
/// shares Q's eigenvalues. Throws on dimension mismatch.
SymTensor rotate_tensor(const Matrix& t, const SymTensor& q);

}  // namespace effdiff
