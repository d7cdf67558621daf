#include "qpke/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "qpke/errors.hpp"

namespace qpke {

namespace {

void check_state_dim(std::size_t dim) {
    if (dim == 0) {
        throw PreconditionError("state vector dimension must be at least 1");
    }
    if (dim > kMaxStateDim) {
        throw SimulationSizeError("state vector dimension exceeds simulation guard", dim,
                                  kMaxStateDim);
    }
}

}  // namespace

// ---------------------------------------------------------------------------
// StateVector

StateVector::StateVector(std::vector<Complex> amplitudes) : amplitudes_(std::move(amplitudes)) {
    check_state_dim(amplitudes_.size());
}

StateVector::StateVector(std::initializer_list<Complex> amplitudes)
    : StateVector(std::vector<Complex>(amplitudes)) {}

StateVector StateVector::basis(std::size_t dim, std::size_t index) {
    if (index >= dim) {
        throw PreconditionError("basis index out of range");
    }
    std::vector<Complex> amps(dim);
    amps[index] = 1.0;
    return StateVector(std::move(amps));
}

double StateVector::norm_squared() const noexcept {
    double sum = 0.0;
    for (const auto& a : amplitudes_) {
        sum += std::norm(a);
    }
    return sum;
}

bool StateVector::is_normalized(double tol) const noexcept {
    return std::abs(norm_squared() - 1.0) <= tol;
}

StateVector StateVector::normalized() const {
    const double n = std::sqrt(norm_squared());
    if (n == 0.0) {
        throw PreconditionError("cannot normalize the zero vector");
    }
    return scaled(1.0 / n);
}

Complex StateVector::inner(const StateVector& other) const {
    if (other.dim() != dim()) {
        throw PreconditionError("inner product of vectors with different dimensions");
    }
    Complex sum = 0.0;
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        sum += std::conj(amplitudes_[i]) * other.amplitudes_[i];
    }
    return sum;
}

StateVector StateVector::scaled(Complex factor) const {
    std::vector<Complex> out(amplitudes_);
    for (auto& a : out) {
        a *= factor;
    }
    return StateVector(std::move(out));
}

bool StateVector::approx_equal(const StateVector& other, double tol) const {
    if (other.dim() != dim()) {
        return false;
    }
    for (std::size_t i = 0; i < amplitudes_.size(); ++i) {
        if (std::abs(amplitudes_[i] - other.amplitudes_[i]) > tol) {
            return false;
        }
    }
    return true;
}

// ---------------------------------------------------------------------------
// Operator

Operator::Operator(std::size_t dim) : dim_(dim), entries_(dim * dim) {
    if (dim == 0) {
        throw PreconditionError("operator dimension must be at least 1");
    }
}

Operator::Operator(std::size_t dim, std::vector<Complex> entries)
    : dim_(dim), entries_(std::move(entries)) {
    if (dim == 0 || entries_.size() != dim * dim) {
        throw PreconditionError("operator entries do not form a square matrix");
    }
}

Operator::Operator(std::initializer_list<std::initializer_list<Complex>> rows)
    : dim_(rows.size()) {
    if (dim_ == 0) {
        throw PreconditionError("operator dimension must be at least 1");
    }
    entries_.reserve(dim_ * dim_);
    for (const auto& row : rows) {
        if (row.size() != dim_) {
            throw PreconditionError("operator rows must all have length equal to the row count");
        }
        entries_.insert(entries_.end(), row.begin(), row.end());
    }
}

Operator Operator::identity(std::size_t dim) {
    Operator out(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        out(i, i) = 1.0;
    }
    return out;
}

Operator Operator::diagonal(std::span<const double> values) {
    Operator out(values.size());
    for (std::size_t i = 0; i < values.size(); ++i) {
        out(i, i) = values[i];
    }
    return out;
}

Operator Operator::outer(const StateVector& ket, const StateVector& bra) {
    if (ket.dim() != bra.dim()) {
        throw PreconditionError("outer product of vectors with different dimensions");
    }
    Operator out(ket.dim());
    for (std::size_t i = 0; i < ket.dim(); ++i) {
        for (std::size_t j = 0; j < bra.dim(); ++j) {
            out(i, j) = ket[i] * std::conj(bra[j]);
        }
    }
    return out;
}

Operator Operator::adjoint() const {
    Operator out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            out(j, i) = std::conj((*this)(i, j));
        }
    }
    return out;
}

Complex Operator::trace() const {
    Complex sum = 0.0;
    for (std::size_t i = 0; i < dim_; ++i) {
        sum += (*this)(i, i);
    }
    return sum;
}

double Operator::max_abs_entry() const {
    double m = 0.0;
    for (const auto& e : entries_) {
        m = std::max(m, std::abs(e));
    }
    return m;
}

bool Operator::is_hermitian(double tol) const {
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = i; j < dim_; ++j) {
            if (std::abs((*this)(i, j) - std::conj((*this)(j, i))) > tol) {
                return false;
            }
        }
    }
    return true;
}

bool Operator::is_unitary(double tol) const {
    const Operator product = adjoint() * (*this);
    for (std::size_t i = 0; i < dim_; ++i) {
        for (std::size_t j = 0; j < dim_; ++j) {
            const Complex expected = (i == j) ? 1.0 : 0.0;
            if (std::abs(product(i, j) - expected) > tol) {
                return false;
            }
        }
    }
    return true;
}

StateVector Operator::apply(const StateVector& v) const {
    if (v.dim() != dim_) {
        throw PreconditionError("operator and state dimensions differ");
    }
    std::vector<Complex> out(dim_);
    for (std::size_t i = 0; i < dim_; ++i) {
        Complex sum = 0.0;
        for (std::size_t j = 0; j < dim_; ++j) {
            sum += (*this)(i, j) * v[j];
        }
        out[i] = sum;
    }
    return StateVector(std::move(out));
}

Operator& Operator::operator+=(const Operator& rhs) {
    if (rhs.dim_ != dim_) {
        throw PreconditionError("operator dimensions differ");
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        entries_[i] += rhs.entries_[i];
    }
    return *this;
}

Operator& Operator::operator-=(const Operator& rhs) {
    if (rhs.dim_ != dim_) {
        throw PreconditionError("operator dimensions differ");
    }
    for (std::size_t i = 0; i < entries_.size(); ++i) {
        entries_[i] -= rhs.entries_[i];
    }
    return *this;
}

Operator& Operator::operator*=(Complex factor) {
    for (auto& e : entries_) {
        e *= factor;
    }
    return *this;
}

Operator operator*(const Operator& lhs, const Operator& rhs) {
    if (lhs.dim() != rhs.dim()) {
        throw PreconditionError("operator dimensions differ");
    }
    const std::size_t n = lhs.dim();
    Operator out(n);
    for (std::size_t i = 0; i < n; ++i) {
        for (std::size_t k = 0; k < n; ++k) {
            const Complex a = lhs(i, k);
            if (a == Complex{}) {
                continue;
            }
            for (std::size_t j = 0; j < n; ++j) {
                out(i, j) += a * rhs(k, j);
            }
        }
    }
    return out;
}

// ---------------------------------------------------------------------------
// Tensor products and register permutations

std::size_t TensorLayout::total_dim() const {
    if (num_registers == 0 || register_dim == 0) {
        throw PreconditionError("tensor layout needs at least one register of dimension >= 1");
    }
    std::size_t total = 1;
    for (std::size_t r = 0; r < num_registers; ++r) {
        if (total > kMaxStateDim / register_dim) {
            throw SimulationSizeError("d^N exceeds simulation guard", kMaxStateDim + 1,
                                      kMaxStateDim);
        }
        total *= register_dim;
    }
    return total;
}

StateVector tensor_product(const StateVector& a, const StateVector& b) {
    if (a.dim() > kMaxStateDim / b.dim()) {
        throw SimulationSizeError("tensor product exceeds simulation guard", kMaxStateDim + 1,
                                  kMaxStateDim);
    }
    std::vector<Complex> out;
    out.reserve(a.dim() * b.dim());
    for (const auto& x : a.amplitudes()) {
        for (const auto& y : b.amplitudes()) {
            out.push_back(x * y);
        }
    }
    return StateVector(std::move(out));
}

Operator tensor_product(const Operator& a, const Operator& b) {
    const std::size_t n = a.dim() * b.dim();
    if (a.dim() > kMaxOperatorDim / b.dim()) {
        throw SimulationSizeError("operator tensor product exceeds dimension guard", n,
                                  kMaxOperatorDim);
    }
    Operator out(n);
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            const Complex aij = a(i, j);
            for (std::size_t k = 0; k < b.dim(); ++k) {
                for (std::size_t l = 0; l < b.dim(); ++l) {
                    out(i * b.dim() + k, j * b.dim() + l) = aij * b(k, l);
                }
            }
        }
    }
    return out;
}

StateVector tensor_power(const StateVector& v, std::size_t count) {
    StateVector out{Complex{1.0}};
    for (std::size_t i = 0; i < count; ++i) {
        out = tensor_product(out, v);
    }
    return out;
}

bool is_permutation(std::span<const std::size_t> perm) {
    std::vector<bool> seen(perm.size(), false);
    for (auto p : perm) {
        if (p >= perm.size() || seen[p]) {
            return false;
        }
        seen[p] = true;
    }
    return true;
}

Permutation inverse_permutation(std::span<const std::size_t> perm) {
    if (!is_permutation(perm)) {
        throw PreconditionError("not a permutation");
    }
    Permutation inv(perm.size());
    for (std::size_t i = 0; i < perm.size(); ++i) {
        inv[perm[i]] = i;
    }
    return inv;
}

std::vector<Permutation> all_permutations(std::size_t n) {
    if (n > kMaxPermutationRegisters) {
        throw SimulationSizeError("permutation enumeration exceeds register guard", n,
                                  kMaxPermutationRegisters);
    }
    Permutation p(n);
    std::iota(p.begin(), p.end(), std::size_t{0});
    std::vector<Permutation> out;
    do {
        out.push_back(p);
    } while (std::next_permutation(p.begin(), p.end()));
    return out;
}

namespace {

// Visits (src, dst) for every basis index, where dst is the index of src after
// permuting registers. Source digit j lands in output register inverse(perm)[j],
// so dst moves by a fixed weight per source digit and can be tracked with an
// odometer instead of re-decoding every index. Buffers are reused across calls.
class PermutedIndexWalker {
public:
    explicit PermutedIndexWalker(const TensorLayout& layout)
        : n_(layout.num_registers),
          d_(layout.register_dim),
          total_(layout.total_dim()),
          stride_(n_),
          weight_(n_),
          digits_(n_) {
        std::size_t s = 1;
        for (std::size_t r = n_; r-- > 0;) {
            stride_[r] = s;
            s *= d_;
        }
    }

    template <typename Visit>
    void walk(std::span<const std::size_t> perm, Visit&& visit) {
        for (std::size_t r = 0; r < n_; ++r) {
            weight_[perm[r]] = stride_[r];
        }
        std::fill(digits_.begin(), digits_.end(), std::size_t{0});
        std::size_t dst = 0;
        for (std::size_t src = 0; src < total_; ++src) {
            visit(src, dst);
            for (std::size_t j = n_; j-- > 0;) {
                if (++digits_[j] < d_) {
                    dst += weight_[j];
                    break;
                }
                digits_[j] = 0;
                dst -= (d_ - 1) * weight_[j];
            }
        }
    }

private:
    std::size_t n_;
    std::size_t d_;
    std::size_t total_;
    std::vector<std::size_t> stride_;
    std::vector<std::size_t> weight_;
    std::vector<std::size_t> digits_;
};

void check_layout(const StateVector& v, const TensorLayout& layout) {
    if (v.dim() != layout.total_dim()) {
        throw PreconditionError("state dimension " + std::to_string(v.dim()) +
                                " does not match layout d^N = " +
                                std::to_string(layout.total_dim()));
    }
}

}  // namespace

StateVector permute_registers(const StateVector& v, const TensorLayout& layout,
                              std::span<const std::size_t> perm) {
    check_layout(v, layout);
    if (perm.size() != layout.num_registers || !is_permutation(perm)) {
        throw PreconditionError("register permutation is not a bijection on the layout");
    }
    std::vector<Complex> out(v.dim());
    PermutedIndexWalker(layout).walk(perm,
                                     [&](std::size_t src, std::size_t dst) { out[dst] = v[src]; });
    return StateVector(std::move(out));
}

StateVector symmetric_projector_apply(const StateVector& v, const TensorLayout& layout) {
    check_layout(v, layout);
    if (layout.num_registers > kMaxPermutationRegisters) {
        throw SimulationSizeError("permutation enumeration exceeds register guard",
                                  layout.num_registers, kMaxPermutationRegisters);
    }
    // Same lexicographic order as all_permutations, without materializing S_N.
    Permutation perm(layout.num_registers);
    std::iota(perm.begin(), perm.end(), std::size_t{0});
    PermutedIndexWalker walker(layout);
    const auto in = v.amplitudes();
    std::vector<Complex> acc(v.dim());
    std::size_t count = 0;
    do {
        walker.walk(perm, [&](std::size_t src, std::size_t dst) { acc[dst] += in[src]; });
        ++count;
    } while (std::next_permutation(perm.begin(), perm.end()));
    const double scale = 1.0 / static_cast<double>(count);
    for (auto& a : acc) {
        a *= scale;
    }
    return StateVector(std::move(acc));
}

// ---------------------------------------------------------------------------
// Hermitian eigensolver

namespace {

double off_diagonal_mass(const Operator& a) {
    double sum = 0.0;
    for (std::size_t i = 0; i < a.dim(); ++i) {
        for (std::size_t j = 0; j < a.dim(); ++j) {
            if (i != j) {
                sum += std::norm(a(i, j));
            }
        }
    }
    return std::sqrt(sum);
}

double frobenius(const Operator& a) {
    double sum = 0.0;
    for (const auto& e : a.entries()) {
        sum += std::norm(e);
    }
    return std::sqrt(sum);
}

}  // namespace

EigenDecomposition hermitian_eigensystem(const Operator& m) {
    const std::size_t n = m.dim();
    if (n > kMaxOperatorDim) {
        throw SimulationSizeError("eigensolver input exceeds dimension guard", n, kMaxOperatorDim);
    }
    if (!m.is_hermitian(kHermitianTolerance)) {
        throw PreconditionError("hermitian_eigensystem requires a Hermitian operator");
    }

    // Work on the exactly Hermitian part so round-off in the input cannot
    // leave imaginary residue on the diagonal.
    Operator a = m;
    for (std::size_t i = 0; i < n; ++i) {
        a(i, i) = a(i, i).real();
        for (std::size_t j = i + 1; j < n; ++j) {
            const Complex avg = 0.5 * (m(i, j) + std::conj(m(j, i)));
            a(i, j) = avg;
            a(j, i) = std::conj(avg);
        }
    }
    Operator v = Operator::identity(n);

    const double threshold = 1e-12 * std::max(1.0, frobenius(a));
    constexpr int kMaxSweeps = 100;
    for (int sweep = 0; sweep < kMaxSweeps && off_diagonal_mass(a) >= threshold; ++sweep) {
        for (std::size_t p = 0; p + 1 < n; ++p) {
            for (std::size_t q = p + 1; q < n; ++q) {
                const double r = std::abs(a(p, q));
                if (r < 1e-300) {
                    continue;
                }
                // U = diag(1, e^{-i phi}) * [[c, s], [-s, c]] makes (p, q) vanish.
                const Complex phase = a(p, q) / r;  // e^{i phi}
                const double app = a(p, p).real();
                const double aqq = a(q, q).real();
                const double theta = (aqq - app) / (2.0 * r);
                const double t = (theta >= 0.0 ? 1.0 : -1.0) /
                                 (std::abs(theta) + std::sqrt(theta * theta + 1.0));
                const double c = 1.0 / std::sqrt(t * t + 1.0);
                const double s = t * c;
                const Complex conj_phase = std::conj(phase);

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex akp = a(k, p);
                    const Complex akq = a(k, q);
                    a(k, p) = c * akp - s * conj_phase * akq;
                    a(k, q) = s * akp + c * conj_phase * akq;
                }
                for (std::size_t k = 0; k < n; ++k) {
                    const Complex apk = a(p, k);
                    const Complex aqk = a(q, k);
                    a(p, k) = c * apk - s * phase * aqk;
                    a(q, k) = s * apk + c * phase * aqk;
                }
                a(p, q) = 0.0;
                a(q, p) = 0.0;
                a(p, p) = app - t * r;
                a(q, q) = aqq + t * r;

                for (std::size_t k = 0; k < n; ++k) {
                    const Complex vkp = v(k, p);
                    const Complex vkq = v(k, q);
                    v(k, p) = c * vkp - s * conj_phase * vkq;
                    v(k, q) = s * vkp + c * conj_phase * vkq;
                }
            }
        }
    }

    std::vector<std::size_t> order(n);
    std::iota(order.begin(), order.end(), std::size_t{0});
    std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) {
        return a(i, i).real() < a(j, j).real();
    });

    EigenDecomposition out{std::vector<double>(n), Operator(n)};
    for (std::size_t col = 0; col < n; ++col) {
        out.values[col] = a(order[col], order[col]).real();
        for (std::size_t row = 0; row < n; ++row) {
            out.vectors(row, col) = v(row, order[col]);
        }
    }
    return out;
}

std::vector<double> hermitian_eigenvalues(const Operator& m) {
    return hermitian_eigensystem(m).values;
}

double trace_norm(const Operator& m) {
    double sum = 0.0;
    for (double lambda : hermitian_eigenvalues(m)) {
        sum += std::abs(lambda);
    }
    return sum;
}

}  // namespace qpke
