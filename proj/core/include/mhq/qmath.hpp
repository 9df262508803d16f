#pragma once

// Dense complex linear algebra for small Hermitian / unitary matrices.

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace mhq {

using Complex = std::complex<double>;
using StateVector = std::vector<Complex>;

inline constexpr Complex kJ{0.0, 1.0};

/// Square complex matrix, row-major.
class Operator {
  public:
    Operator() = default;
    explicit Operator(std::size_t dim) : dim_(dim), data_(dim * dim) {}
    Operator(std::initializer_list<std::initializer_list<Complex>> rows);

    static Operator identity(std::size_t dim);
    static Operator diagonal(std::span<const Complex> diag);
    static Operator diagonal(std::span<const double> diag);

    std::size_t dim() const { return dim_; }

    Complex &operator()(std::size_t r, std::size_t c) { return data_[r * dim_ + c]; }
    const Complex &operator()(std::size_t r, std::size_t c) const { return data_[r * dim_ + c]; }

    std::span<const Complex> entries() const { return data_; }

    Operator &operator+=(const Operator &other);
    Operator &operator-=(const Operator &other);
    Operator &operator*=(Complex s);

    bool operator==(const Operator &) const = default;

  private:
    std::size_t dim_ = 0;
    std::vector<Complex> data_;
};

Operator operator+(Operator a, const Operator &b);
Operator operator-(Operator a, const Operator &b);
Operator operator*(Complex s, Operator a);
Operator operator*(const Operator &a, const Operator &b);
StateVector operator*(const Operator &a, const StateVector &v);

Operator adjoint(const Operator &a);
Complex trace(const Operator &a);
/// a*A + b*B
Operator mix(Complex a, const Operator &A, Complex b, const Operator &B);
Operator commutator(const Operator &a, const Operator &b);
Complex determinant(const Operator &a);

double frobenius_norm(const Operator &a);
double max_abs(const Operator &a);
double max_abs_diff(const Operator &a, const Operator &b);

/// Tr[a b] without forming the product.
Complex trace_product(const Operator &a, const Operator &b);

Operator outer(const StateVector &ket, const StateVector &bra);
Complex inner(const StateVector &bra, const StateVector &ket);
double norm(const StateVector &v);
StateVector normalized(StateVector v);
StateVector basis_vector(std::size_t dim, std::size_t k);

bool is_hermitian(const Operator &a);
bool is_unitary(const Operator &a);
/// Hermitian, idempotent, trace 1 or 2.
bool is_projector(const Operator &a);

struct EigenSystem {
    std::vector<double> values;        // ascending
    std::vector<StateVector> vectors;  // orthonormal, vectors[k] pairs with values[k]
};

/// Eigendecomposition of a Hermitian matrix by cyclic complex Jacobi rotations.
///
/// Each eigenvector is phase-fixed so that its largest-magnitude component is
/// real and positive (ties go to the lowest index). Degenerate eigenvalues are
/// ordered by the lexicographic order of their phase-fixed vectors, so equal
/// inputs always produce bit-identical output.
EigenSystem herm_eig(const Operator &m);

/// exp(-j t M) for Hermitian M.
Operator unitary_exp(const Operator &m, double t);
Operator unitary_exp(const EigenSystem &eig, double t);

/// Rotates v so that its largest-magnitude component is real-positive.
void fix_phase_largest(StateVector &v);

}  // namespace mhq
