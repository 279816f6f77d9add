#include "effdiff/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace effdiff {

SymTensor SymTensor::zero(int dim) {
    SymTensor q;
    q.dim = dim;
    return q;
}

SymTensor SymTensor::isotropic(int dim, double value) {
    SymTensor q = zero(dim);
    for (int i = 0; i < dim; ++i) q.a[i] = value;
    return q;
}

SymTensor SymTensor::diag2(double dxx, double dyy) {
    SymTensor q = zero(2);
    q.a[0] = dxx;
    q.a[1] = dyy;
    return q;
}

SymTensor SymTensor::diag3(double dxx, double dyy, double dzz) {
    SymTensor q = zero(3);
    q.a[0] = dxx;
    q.a[1] = dyy;
    q.a[2] = dzz;
    return q;
}

bool SymTensor::is_diagonal(double tol) const {
    return std::abs(a[3]) <= tol && std::abs(a[4]) <= tol && std::abs(a[5]) <= tol;
}

double SymTensor::trace() const {
    double t = 0;
    for (int i = 0; i < dim; ++i) t += a[i];
    return t;
}

double SymTensor::det() const {
    if (dim == 2) return a[0] * a[1] - a[3] * a[3];
    return a[0] * (a[1] * a[2] - a[5] * a[5]) - a[3] * (a[3] * a[2] - a[5] * a[4]) +
           a[4] * (a[3] * a[5] - a[1] * a[4]);
}

bool SymTensor::is_positive_definite() const {
    // Sylvester's criterion on leading principal minors.
    if (dim != 2 && dim != 3) return false;
    if (a[0] <= 0) return false;
    const double m2 = a[0] * a[1] - a[3] * a[3];
    if (m2 <= 0) return false;
    if (dim == 3 && det() <= 0) return false;
    return true;
}

namespace {

// Cyclic Jacobi on the full (dim x dim) matrix; plenty for 2x2/3x3.
std::array<double, 3> jacobi_eigenvalues(const SymTensor& q) {
    double m[3][3] = {};
    for (int i = 0; i < q.dim; ++i)
        for (int j = 0; j < q.dim; ++j) m[i][j] = q(i, j);

    double scale = 0;
    for (int i = 0; i < q.dim; ++i)
        for (int j = 0; j < q.dim; ++j) scale = std::max(scale, std::abs(m[i][j]));
    if (scale == 0) return {0, 0, 0};

    for (int sweep = 0; sweep < 50; ++sweep) {
        double off = 0;
        for (int i = 0; i < q.dim; ++i)
            for (int j = i + 1; j < q.dim; ++j) off = std::max(off, std::abs(m[i][j]));
        if (off <= 1e-15 * scale) break;

        for (int p = 0; p < q.dim; ++p) {
            for (int r = p + 1; r < q.dim; ++r) {
                if (std::abs(m[p][r]) <= 1e-18 * scale) continue;
                const double theta = (m[r][r] - m[p][p]) / (2 * m[p][r]);
                const double t = (theta >= 0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1));
                const double c = 1 / std::sqrt(t * t + 1);
                const double s = t * c;
                for (int k = 0; k < q.dim; ++k) {
                    const double mkp = m[k][p], mkr = m[k][r];
                    m[k][p] = c * mkp - s * mkr;
                    m[k][r] = s * mkp + c * mkr;
                }
                for (int k = 0; k < q.dim; ++k) {
                    const double mpk = m[p][k], mrk = m[r][k];
                    m[p][k] = c * mpk - s * mrk;
                    m[r][k] = s * mpk + c * mrk;
                }
            }
        }
    }

    std::array<double, 3> ev{m[0][0], m[1][1], q.dim == 3 ? m[2][2] : 0.0};
    std::sort(ev.begin(), ev.begin() + q.dim);
    return ev;
}

}  // namespace

std::array<double, 3> SymTensor::eigenvalues() const { return jacobi_eigenvalues(*this); }

void SymTensor::validate(const char* what) const {
    if (dim != 2 && dim != 3)
        throw std::invalid_argument(std::string(what) + ": dimension must be 2 or 3");
    if (!is_positive_definite())
        throw std::invalid_argument(std::string(what) + ": not positive definite");
}

SymTensor operator*(const SymTensor& q, double s) {
    SymTensor r = q;
    for (double& v : r.a) v *= s;
    return r;
}

SymTensor operator*(double s, const SymTensor& q) { return q * s; }

Matrix Matrix::identity(int dim) {
    Matrix t;
    t.dim = dim;
    for (int i = 0; i < dim; ++i) t.entry(i, i) = 1;
    return t;
}

Matrix multiply(const Matrix& a, const Matrix& b) {
    if (a.dim != b.dim) throw std::invalid_argument("Matrix multiply: dimension mismatch");
    Matrix c;
    c.dim = a.dim;
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) {
            double s = 0;
            for (int k = 0; k < a.dim; ++k) s += a(i, k) * b(k, j);
            c.entry(i, j) = s;
        }
    return c;
}

Matrix transpose(const Matrix& a) {
    Matrix t;
    t.dim = a.dim;
    for (int i = 0; i < a.dim; ++i)
        for (int j = 0; j < a.dim; ++j) t.entry(i, j) = a(j, i);
    return t;
}

double determinant(const Matrix& a) {
    if (a.dim == 2) return a(0, 0) * a(1, 1) - a(0, 1) * a(1, 0);
    return a(0, 0) * (a(1, 1) * a(2, 2) - a(1, 2) * a(2, 1)) -
           a(0, 1) * (a(1, 0) * a(2, 2) - a(1, 2) * a(2, 0)) +
           a(0, 2) * (a(1, 0) * a(2, 1) - a(1, 1) * a(2, 0));
}

double orthogonality_defect(const Matrix& t) {
    const Matrix g = multiply(t, transpose(t));
    double defect = 0;
    for (int i = 0; i < t.dim; ++i)
        for (int j = 0; j < t.dim; ++j)
            defect = std::max(defect, std::abs(g(i, j) - (i == j ? 1.0 : 0.0)));
    return defect;
}

SymTensor rotate_tensor(const Matrix& t, const SymTensor& q) {
    if (t.dim != q.dim) throw std::invalid_argument("rotate_tensor: dimension mismatch");
    SymTensor out = SymTensor::zero(q.dim);
    for (int i = 0; i < q.dim; ++i) {
        for (int j = i; j < q.dim; ++j) {
            double sij = 0, sji = 0;
            for (int k = 0; k < q.dim; ++k)
                for (int l = 0; l < q.dim; ++l) {
                    sij += t(i, k) * q(k, l) * t(j, l);
                    sji += t(j, k) * q(k, l) * t(i, l);
                }
            out.entry(i, j) = 0.5 * (sij + sji);
        }
    }
    return out;
}

}  // namespace effdiff
