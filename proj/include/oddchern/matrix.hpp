#pragma once

#include <complex>
#include <random>
#include <stdexcept>
#include <vector>

namespace oddchern {

using cplx = std::complex<double>;

// Default tolerance for the unitary / projection predicates. Overridable per call.
inline constexpr double kPredicateTol = 1e-10;

/// Dense square complex matrix, the carrier for U(n) values, Lie-algebra
/// values and projections. Small dimensions only (desk scale).
class ComplexMatrix {
public:
    ComplexMatrix() = default;
    explicit ComplexMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n) {
        if (n < 0) throw std::invalid_argument("matrix dimension must be >= 0");
    }

    static ComplexMatrix identity(int n) {
        ComplexMatrix m(n);
        for (int i = 0; i < n; ++i) m(i, i) = 1.0;
        return m;
    }
    static ComplexMatrix zero(int n) { return ComplexMatrix(n); }

    int dim() const { return n_; }

    cplx& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
    const cplx& operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

    ComplexMatrix& operator+=(const ComplexMatrix& b);
    ComplexMatrix& operator-=(const ComplexMatrix& b);
    ComplexMatrix& operator*=(cplx s);

    ComplexMatrix adjoint() const;
    cplx trace() const;
    double max_abs() const;

    const std::vector<cplx>& data() const { return a_; }

private:
    int n_ = 0;
    std::vector<cplx> a_;
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(cplx s, ComplexMatrix a);

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

bool is_unitary(const ComplexMatrix& a, double tol = kPredicateTol);
bool is_hermitian(const ComplexMatrix& a, double tol = kPredicateTol);
bool is_skew_hermitian(const ComplexMatrix& a, double tol = kPredicateTol);
bool is_projection(const ComplexMatrix& p, double tol = kPredicateTol);

/// a in the upper-left block, b in the lower-right, zeros elsewhere.
ComplexMatrix block_sum(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product, used by the Clifford generator construction.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);

/// Determinant by LU with partial pivoting.
cplx det(const ComplexMatrix& a);

/// Pairwise anticommuting hermitian involutions (squares = +Id) of dimension
/// 2^floor(m/2), built by the recursive tensor construction; for odd m the
/// last generator is the chirality completion of the first m-1.
std::vector<ComplexMatrix> hermitian_clifford(int m);

/// Generators of the negative-definite Clifford algebra: m even, each gamma
/// is unitary, skew-hermitian, gamma_i gamma_j + gamma_j gamma_i = -2 delta_ij.
std::vector<ComplexMatrix> clifford_generators(int m);

/// Id + (e^{2 pi i t} - 1) P for a projection P; equals e^{2 pi i P t}.
ComplexMatrix projection_exponential(const ComplexMatrix& p, double t,
                                     double tol = kPredicateTol);

/// 2n x 2n block rotation [[cos Id, sin Id], [-sin Id, cos Id]].
ComplexMatrix rotation_block(double theta, int n);

/// The derivative generator J = [[0, Id], [-Id, 0]] with n x n blocks.
ComplexMatrix rotation_generator(int n);

/// Haar-ish random unitary via Gram-Schmidt of a Gaussian matrix.
ComplexMatrix random_unitary(int n, std::mt19937_64& rng);

/// Random rank-r hermitian projection, r columns of a random unitary.
ComplexMatrix random_projection(int n, int rank, std::mt19937_64& rng);

/// Random skew-hermitian matrix with entries of order `scale`.
ComplexMatrix random_skew_hermitian(int n, std::mt19937_64& rng, double scale = 1.0);

/// exp(c K) for skew-hermitian K. Closed form for 1x1 and 2x2 (all that the
/// built-in analytic test maps need).
ComplexMatrix exp_skew(const ComplexMatrix& k, double c);

}  // namespace oddchern
