#include "mhq/qmath.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "mhq/errors.hpp"
#include "mhq/tolerances.hpp"

namespace mhq {

namespace {

void require_same_dim(const Operator &a, const Operator &b, const char *what) {
    if (a.dim() != b.dim()) {
        throw DimensionMismatch(std::string(what) + ": " + std::to_string(a.dim()) + " vs " +
                                std::to_string(b.dim()));
    }
}

bool all_finite(const Operator &a) {
    return std::all_of(a.entries().begin(), a.entries().end(),
                       [](Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

bool lexicographically_less(const StateVector &a, const StateVector &b) {
    for (std::size_t k = 0; k < a.size(); ++k) {
        if (a[k].real() != b[k].real()) return a[k].real() < b[k].real();
        if (a[k].imag() != b[k].imag()) return a[k].imag() < b[k].imag();
    }
    return false;
}

}  // namespace

Operator::Operator(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()), data_(rows.size() * rows.size()) {
    std::size_t r = 0;
    for (const auto &row : rows) {
        if (row.size() != dim_) throw DimensionMismatch("Operator: ragged initializer");
        std::copy(row.begin(), row.end(), data_.begin() + static_cast<std::ptrdiff_t>(r * dim_));
        ++r;
    }
}

Operator Operator::identity(std::size_t dim) {
    Operator out(dim);
    for (std::size_t k = 0; k < dim; ++k) out(k, k) = 1.0;
    return out;
}

Operator Operator::diagonal(std::span<const Complex> diag) {
    Operator out(diag.size());
    for (std::size_t k = 0; k < diag.size(); ++k) out(k, k) = diag[k];
    return out;
}

Operator Operator::diagonal(std::span<const double> diag) {
    Operator out(diag.size());
    for (std::size_t k = 0; k < diag.size(); ++k) out(k, k) = diag[k];
    return out;
}

Operator &Operator::operator+=(const Operator &other) {
    require_same_dim(*this, other, "operator+");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] += other.data_[k];
    return *this;
}

Operator &Operator::operator-=(const Operator &other) {
    require_same_dim(*this, other, "operator-");
    for (std::size_t k = 0; k < data_.size(); ++k) data_[k] -= other.data_[k];
    return *this;
}

Operator &Operator::operator*=(Complex s) {
    for (auto &z : data_) z *= s;
    return *this;
}

Operator operator+(Operator a, const Operator &b) { return a += b; }
Operator operator-(Operator a, const Operator &b) { return a -= b; }
Operator operator*(Complex s, Operator a) { return a *= s; }

Operator operator*(const Operator &a, const Operator &b) {
    require_same_dim(a, b, "multiply");
    const std::size_t n = a.dim();
    Operator out(n);
    for (std::size_t r = 0; r < n; ++r) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex ark = a(r, k);
            for (std::size_t c = 0; c < n; ++c) out(r, c) += ark * b(k, c);
        }
    }
    return out;
}

StateVector operator*(const Operator &a, const StateVector &v) {
    if (a.dim() != v.size()) throw DimensionMismatch("matrix-vector product");
    StateVector out(v.size());
    for (std::size_t r = 0; r < a.dim(); ++r) {
        Complex acc = 0.0;
        for (std::size_t c = 0; c < a.dim(); ++c) acc += a(r, c) * v[c];
        out[r] = acc;
    }
    return out;
}

Operator adjoint(const Operator &a) {
    Operator out(a.dim());
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t c = 0; c < a.dim(); ++c) out(c, r) = std::conj(a(r, c));
    return out;
}

Complex trace(const Operator &a) {
    Complex acc = 0.0;
    for (std::size_t k = 0; k < a.dim(); ++k) acc += a(k, k);
    return acc;
}

Operator mix(Complex a, const Operator &A, Complex b, const Operator &B) {
    require_same_dim(A, B, "mix");
    Operator out(A.dim());
    for (std::size_t r = 0; r < A.dim(); ++r)
        for (std::size_t c = 0; c < A.dim(); ++c) out(r, c) = a * A(r, c) + b * B(r, c);
    return out;
}

Operator commutator(const Operator &a, const Operator &b) { return a * b - b * a; }

Complex determinant(const Operator &a) {
    const std::size_t n = a.dim();
    Operator m = a;
    Complex det = 1.0;
    for (std::size_t col = 0; col < n; ++col) {
        std::size_t pivot = col;
        for (std::size_t r = col + 1; r < n; ++r)
            if (std::abs(m(r, col)) > std::abs(m(pivot, col))) pivot = r;
        if (m(pivot, col) == Complex{}) return 0.0;
        if (pivot != col) {
            for (std::size_t c = 0; c < n; ++c) std::swap(m(pivot, c), m(col, c));
            det = -det;
        }
        det *= m(col, col);
        for (std::size_t r = col + 1; r < n; ++r) {
            const Complex f = m(r, col) / m(col, col);
            for (std::size_t c = col; c < n; ++c) m(r, c) -= f * m(col, c);
        }
    }
    return det;
}

double frobenius_norm(const Operator &a) {
    double acc = 0.0;
    for (auto z : a.entries()) acc += std::norm(z);
    return std::sqrt(acc);
}

double max_abs(const Operator &a) {
    double out = 0.0;
    for (auto z : a.entries()) out = std::max(out, std::abs(z));
    return out;
}

double max_abs_diff(const Operator &a, const Operator &b) {
    require_same_dim(a, b, "max_abs_diff");
    double out = 0.0;
    for (std::size_t k = 0; k < a.entries().size(); ++k)
        out = std::max(out, std::abs(a.entries()[k] - b.entries()[k]));
    return out;
}

Complex trace_product(const Operator &a, const Operator &b) {
    require_same_dim(a, b, "trace_product");
    Complex acc = 0.0;
    for (std::size_t r = 0; r < a.dim(); ++r)
        for (std::size_t k = 0; k < a.dim(); ++k) acc += a(r, k) * b(k, r);
    return acc;
}

Operator outer(const StateVector &ket, const StateVector &bra) {
    if (ket.size() != bra.size()) throw DimensionMismatch("outer");
    Operator out(ket.size());
    for (std::size_t r = 0; r < ket.size(); ++r)
        for (std::size_t c = 0; c < bra.size(); ++c) out(r, c) = ket[r] * std::conj(bra[c]);
    return out;
}

Complex inner(const StateVector &bra, const StateVector &ket) {
    if (ket.size() != bra.size()) throw DimensionMismatch("inner");
    Complex acc = 0.0;
    for (std::size_t k = 0; k < ket.size(); ++k) acc += std::conj(bra[k]) * ket[k];
    return acc;
}

double norm(const StateVector &v) {
    double acc = 0.0;
    for (auto z : v) acc += std::norm(z);
    return std::sqrt(acc);
}

StateVector normalized(StateVector v) {
    const double n = norm(v);
    for (auto &z : v) z /= n;
    return v;
}

StateVector basis_vector(std::size_t dim, std::size_t k) {
    StateVector v(dim);
    v.at(k) = 1.0;
    return v;
}

bool is_hermitian(const Operator &a) {
    return max_abs_diff(a, adjoint(a)) <= tol::hermitian * std::max(1.0, max_abs(a));
}

bool is_unitary(const Operator &a) {
    return max_abs_diff(adjoint(a) * a, Operator::identity(a.dim())) <= tol::unitary;
}

bool is_projector(const Operator &a) {
    if (!is_hermitian(a)) return false;
    if (max_abs_diff(a * a, a) > tol::projector) return false;
    const double tr = trace(a).real();
    return std::abs(tr - 1.0) <= tol::projector || std::abs(tr - 2.0) <= tol::projector;
}

void fix_phase_largest(StateVector &v) {
    double best = 0.0;
    for (auto z : v) best = std::max(best, std::abs(z));
    if (best == 0.0) return;
    for (auto z : v) {
        if (std::abs(z) >= best - tol::gauge_tie) {
            const Complex phase = std::conj(z) / std::abs(z);
            for (auto &w : v) w *= phase;
            return;
        }
    }
}

EigenSystem herm_eig(const Operator &m) {
    if (!all_finite(m)) throw NonHermitianInput("herm_eig: non-finite entries");
    if (!is_hermitian(m)) throw NonHermitianInput("herm_eig: input is not Hermitian");

    const std::size_t n = m.dim();
    Operator a = m;
    Operator v = Operator::identity(n);
    const double scale = frobenius_norm(m);

    for (int sweep = 0; sweep < tol::eig_max_sweeps; ++sweep) {
        double off = 0.0;
        for (std::size_t p = 0; p < n; ++p)
            for (std::size_t q = p + 1; q < n; ++q) off += std::norm(a(p, q));
        if (std::sqrt(off) <= tol::eig_offdiag * scale || off == 0.0) break;

        for (std::size_t p = 0; p < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const Complex apq = a(p, q);
                const double mag = std::abs(apq);
                if (mag == 0.0) continue;
                const Complex phase = apq / mag;
                const double theta = (a(q, q).real() - a(p, p).real()) / (2.0 * mag);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const Complex gqp = -s * std::conj(phase);
                const Complex gqq = c * std::conj(phase);

                for (std::size_t k = 0; k < n; ++k) {  // A <- A G
                    const Complex akp = a(k, p), akq = a(k, q);
                    a(k, p) = akp * c + akq * gqp;
                    a(k, q) = akp * s + akq * gqq;
                }
                for (std::size_t k = 0; k < n; ++k) {  // A <- G^dag A
                    const Complex apk = a(p, k), aqk = a(q, k);
                    a(p, k) = c * apk + std::conj(gqp) * aqk;
                    a(q, k) = s * apk + std::conj(gqq) * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = a(p, p).real();
                a(q, q) = a(q, q).real();
                for (std::size_t k = 0; k < n; ++k) {  // V <- V G
                    const Complex vkp = v(k, p), vkq = v(k, q);
                    v(k, p) = vkp * c + vkq * gqp;
                    v(k, q) = vkp * s + vkq * gqq;
                }
            }
        }
    }

    struct Pair {
        double value;
        StateVector vector;
    };
    std::vector<Pair> pairs(n);
    for (std::size_t k = 0; k < n; ++k) {
        pairs[k].value = a(k, k).real();
        pairs[k].vector.resize(n);
        for (std::size_t r = 0; r < n; ++r) pairs[k].vector[r] = v(r, k);
        fix_phase_largest(pairs[k].vector);
    }
    std::stable_sort(pairs.begin(), pairs.end(), [](const Pair &x, const Pair &y) { return x.value < y.value; });
    // Within a (near-)degenerate cluster order by the phase-fixed vectors.
    const double cluster = tol::degenerate_value * std::max(1.0, scale);
    for (std::size_t lo = 0; lo < n;) {
        std::size_t hi = lo + 1;
        while (hi < n && pairs[hi].value - pairs[hi - 1].value <= cluster) ++hi;
        std::sort(pairs.begin() + static_cast<std::ptrdiff_t>(lo), pairs.begin() + static_cast<std::ptrdiff_t>(hi),
                  [](const Pair &x, const Pair &y) { return lexicographically_less(x.vector, y.vector); });
        lo = hi;
    }

    EigenSystem out;
    out.values.reserve(n);
    out.vectors.reserve(n);
    for (auto &pr : pairs) {
        out.values.push_back(pr.value);
        out.vectors.push_back(std::move(pr.vector));
    }
    return out;
}

Operator unitary_exp(const EigenSystem &eig, double t) {
    const std::size_t n = eig.values.size();
    Operator out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const Complex phase = std::exp(-kJ * (t * eig.values[k]));
        const StateVector &vk = eig.vectors[k];
        for (std::size_t r = 0; r < n; ++r) {
            const Complex left = phase * vk[r];
            for (std::size_t c = 0; c < n; ++c) out(r, c) += left * std::conj(vk[c]);
        }
    }
    return out;
}

Operator unitary_exp(const Operator &m, double t) { return unitary_exp(herm_eig(m), t); }

}  // namespace mhq
