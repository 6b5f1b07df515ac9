#include "oddchern/matrix.hpp"

#include <cmath>
#include <numbers>

namespace oddchern {

namespace {

void check_same_dim(const ComplexMatrix& a, const ComplexMatrix& b) {
    if (a.dim() != b.dim()) throw std::invalid_argument("matrix dimension mismatch");
}

}  // namespace

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& b) {
    check_same_dim(*this, b);
    for (size_t i = 0; i < a_.size(); ++i) a_[i] += b.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& b) {
    check_same_dim(*this, b);
    for (size_t i = 0; i < a_.size(); ++i) a_[i] -= b.a_[i];
    return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(cplx s) {
    for (auto& v : a_) v *= s;
    return *this;
}

ComplexMatrix ComplexMatrix::adjoint() const {
    ComplexMatrix r(n_);
    for (int i = 0; i < n_; ++i)
        for (int j = 0; j < n_; ++j) r(j, i) = std::conj((*this)(i, j));
    return r;
}

cplx ComplexMatrix::trace() const {
    cplx t = 0.0;
    for (int i = 0; i < n_; ++i) t += (*this)(i, i);
    return t;
}

double ComplexMatrix::max_abs() const {
    double m = 0.0;
    for (const auto& v : a_) m = std::max(m, std::abs(v));
    return m;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_same_dim(a, b);
    const int n = a.dim();
    ComplexMatrix c(n);
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) {
            const cplx aik = a(i, k);
            if (aik == cplx(0.0)) continue;
            for (int j = 0; j < n; ++j) c(i, j) += aik * b(k, j);
        }
    }
    return c;
}

ComplexMatrix operator*(cplx s, ComplexMatrix a) { return a *= s; }

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
    check_same_dim(a, b);
    double m = 0.0;
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
    return m;
}

bool is_unitary(const ComplexMatrix& a, double tol) {
    return max_abs_diff(a * a.adjoint(), ComplexMatrix::identity(a.dim())) < tol;
}

bool is_hermitian(const ComplexMatrix& a, double tol) {
    return max_abs_diff(a, a.adjoint()) < tol;
}

bool is_skew_hermitian(const ComplexMatrix& a, double tol) {
    ComplexMatrix minus = a;
    minus *= -1.0;
    return max_abs_diff(minus, a.adjoint()) < tol;
}

bool is_projection(const ComplexMatrix& p, double tol) {
    return max_abs_diff(p * p, p) < tol && is_hermitian(p, tol);
}

ComplexMatrix block_sum(const ComplexMatrix& a, const ComplexMatrix& b) {
    ComplexMatrix r(a.dim() + b.dim());
    for (int i = 0; i < a.dim(); ++i)
        for (int j = 0; j < a.dim(); ++j) r(i, j) = a(i, j);
    for (int i = 0; i < b.dim(); ++i)
        for (int j = 0; j < b.dim(); ++j) r(a.dim() + i, a.dim() + j) = b(i, j);
    return r;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
    const int na = a.dim(), nb = b.dim();
    ComplexMatrix r(na * nb);
    for (int i = 0; i < na; ++i)
        for (int j = 0; j < na; ++j) {
            if (a(i, j) == cplx(0.0)) continue;
            for (int k = 0; k < nb; ++k)
                for (int l = 0; l < nb; ++l) r(i * nb + k, j * nb + l) = a(i, j) * b(k, l);
        }
    return r;
}

cplx det(const ComplexMatrix& a) {
    const int n = a.dim();
    std::vector<cplx> lu(a.data());
    cplx d = 1.0;
    for (int col = 0; col < n; ++col) {
        int piv = col;
        double best = std::abs(lu[static_cast<size_t>(col) * n + col]);
        for (int r = col + 1; r < n; ++r) {
            double v = std::abs(lu[static_cast<size_t>(r) * n + col]);
            if (v > best) { best = v; piv = r; }
        }
        if (best == 0.0) return 0.0;
        if (piv != col) {
            for (int j = 0; j < n; ++j)
                std::swap(lu[static_cast<size_t>(piv) * n + j], lu[static_cast<size_t>(col) * n + j]);
            d = -d;
        }
        const cplx p = lu[static_cast<size_t>(col) * n + col];
        d *= p;
        for (int r = col + 1; r < n; ++r) {
            const cplx f = lu[static_cast<size_t>(r) * n + col] / p;
            for (int j = col; j < n; ++j)
                lu[static_cast<size_t>(r) * n + j] -= f * lu[static_cast<size_t>(col) * n + j];
        }
    }
    return d;
}

std::vector<ComplexMatrix> hermitian_clifford(int m) {
    if (m < 1 || m > 13) throw std::invalid_argument("hermitian_clifford: m out of range");

    ComplexMatrix s1(2), s2(2), s3(2);
    s1(0, 1) = 1.0; s1(1, 0) = 1.0;
    s2(0, 1) = cplx(0.0, -1.0); s2(1, 0) = cplx(0.0, 1.0);
    s3(0, 0) = 1.0; s3(1, 1) = -1.0;

    if (m == 1) {
        ComplexMatrix one(1);
        one(0, 0) = 1.0;
        return {one};
    }

    // Even count by the tensor recursion: {e_i (x) s3} ++ {Id (x) s1, Id (x) s2}.
    const int meven = (m % 2 == 0) ? m : m - 1;
    std::vector<ComplexMatrix> gen = {s1, s2};
    while (static_cast<int>(gen.size()) < meven) {
        const int d = gen.front().dim();
        std::vector<ComplexMatrix> next;
        next.reserve(gen.size() + 2);
        for (const auto& e : gen) next.push_back(kron(e, s3));
        next.push_back(kron(ComplexMatrix::identity(d), s1));
        next.push_back(kron(ComplexMatrix::identity(d), s2));
        gen = std::move(next);
    }

    if (m % 2 == 1) {
        // Chirality completion: (-i)^k e_1 ... e_{2k} is hermitian with square +Id
        // and anticommutes with the first m-1 generators.
        const int k = meven / 2;
        ComplexMatrix prod = ComplexMatrix::identity(gen.front().dim());
        for (const auto& e : gen) prod = prod * e;
        cplx c = 1.0;
        for (int i = 0; i < k; ++i) c *= cplx(0.0, -1.0);
        prod *= c;
        gen.push_back(prod);
    }
    return gen;
}

std::vector<ComplexMatrix> clifford_generators(int m) {
    if (m < 2 || m % 2 != 0 || m > 12)
        throw std::invalid_argument("clifford_generators: m must be even and in [2, 12]");
    std::vector<ComplexMatrix> gammas = hermitian_clifford(m);
    for (auto& g : gammas) g *= cplx(0.0, 1.0);
    return gammas;
}

ComplexMatrix projection_exponential(const ComplexMatrix& p, double t, double tol) {
    if (!is_projection(p, tol))
        throw std::invalid_argument("projection_exponential: input is not a projection");
    const cplx phase = std::exp(cplx(0.0, 2.0 * std::numbers::pi * t)) - 1.0;
    ComplexMatrix r = ComplexMatrix::identity(p.dim());
    ComplexMatrix scaled = p;
    scaled *= phase;
    r += scaled;
    return r;
}

ComplexMatrix rotation_block(double theta, int n) {
    const double c = std::cos(theta), s = std::sin(theta);
    ComplexMatrix r(2 * n);
    for (int i = 0; i < n; ++i) {
        r(i, i) = c;
        r(i, n + i) = s;
        r(n + i, i) = -s;
        r(n + i, n + i) = c;
    }
    return r;
}

ComplexMatrix rotation_generator(int n) {
    ComplexMatrix j(2 * n);
    for (int i = 0; i < n; ++i) {
        j(i, n + i) = 1.0;
        j(n + i, i) = -1.0;
    }
    return j;
}

ComplexMatrix random_unitary(int n, std::mt19937_64& rng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    ComplexMatrix q(n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) q(i, j) = cplx(gauss(rng), gauss(rng));
    // Modified Gram-Schmidt on columns.
    for (int j = 0; j < n; ++j) {
        for (int k = 0; k < j; ++k) {
            cplx dot = 0.0;
            for (int i = 0; i < n; ++i) dot += std::conj(q(i, k)) * q(i, j);
            for (int i = 0; i < n; ++i) q(i, j) -= dot * q(i, k);
        }
        double norm = 0.0;
        for (int i = 0; i < n; ++i) norm += std::norm(q(i, j));
        norm = std::sqrt(norm);
        if (norm < 1e-12) throw std::runtime_error("random_unitary: degenerate draw");
        for (int i = 0; i < n; ++i) q(i, j) /= norm;
    }
    return q;
}

ComplexMatrix random_projection(int n, int rank, std::mt19937_64& rng) {
    if (rank < 0 || rank > n) throw std::invalid_argument("random_projection: bad rank");
    ComplexMatrix q = random_unitary(n, rng);
    ComplexMatrix p(n);
    for (int k = 0; k < rank; ++k)
        for (int i = 0; i < n; ++i)
            for (int j = 0; j < n; ++j) p(i, j) += q(i, k) * std::conj(q(j, k));
    return p;
}

ComplexMatrix random_skew_hermitian(int n, std::mt19937_64& rng, double scale) {
    std::uniform_real_distribution<double> u(-scale, scale);
    ComplexMatrix k(n);
    for (int i = 0; i < n; ++i) {
        k(i, i) = cplx(0.0, u(rng));
        for (int j = i + 1; j < n; ++j) {
            cplx v(u(rng), u(rng));
            k(i, j) = v;
            k(j, i) = -std::conj(v);
        }
    }
    return k;
}

ComplexMatrix exp_skew(const ComplexMatrix& k, double c) {
    const int n = k.dim();
    if (n == 1) {
        ComplexMatrix r(1);
        r(0, 0) = std::exp(c * k(0, 0));
        return r;
    }
    if (n != 2) throw std::invalid_argument("exp_skew: only dims 1 and 2 supported");
    // K = i (a0 Id + a . sigma), so exp(cK) = e^{i c a0} (cos(c|a|) + i sin(c|a|) a^.sigma).
    const cplx h00 = k(0, 0) / cplx(0.0, 1.0);
    const cplx h11 = k(1, 1) / cplx(0.0, 1.0);
    const cplx h01 = k(0, 1) / cplx(0.0, 1.0);
    const double a0 = 0.5 * (h00.real() + h11.real());
    const double a3 = 0.5 * (h00.real() - h11.real());
    const double a1 = h01.real();
    const double a2 = -h01.imag();
    const double norm = std::sqrt(a1 * a1 + a2 * a2 + a3 * a3);
    const cplx phase = std::exp(cplx(0.0, c * a0));
    ComplexMatrix r(2);
    if (norm < 1e-300) {
        r(0, 0) = phase;
        r(1, 1) = phase;
        return r;
    }
    const double cs = std::cos(c * norm), sn = std::sin(c * norm);
    const cplx isn(0.0, sn / norm);
    r(0, 0) = phase * (cs + isn * a3);
    r(1, 1) = phase * (cs - isn * a3);
    r(0, 1) = phase * isn * cplx(a1, -a2);
    r(1, 0) = phase * isn * cplx(a1, a2);
    return r;
}

}  // namespace oddchern
