// linalg.hpp
// Dense complex linear algebra over small tensor-product spaces.
//
// Index convention: in a product of registers the first factor is the most
// significant digit of the basis index, i.e. |i_0 i_1 ... i_{N-1}> lives at
// i_0 d^{N-1} + i_1 d^{N-2} + ... + i_{N-1}.

#pragma once

#include <complex>
#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace qpke {

using Complex = std::complex<double>;

// Largest state-vector dimension any brute-force path may allocate.
inline constexpr std::size_t kMaxStateDim = std::size_t{1} << 20;
// Largest N for which S_N is enumerated (8! = 40320).
inline constexpr std::size_t kMaxPermutationRegisters = 8;
// Largest operator dimension handed to the eigensolver.
inline constexpr std::size_t kMaxOperatorDim = 1024;

inline constexpr double kNormTolerance = 1e-12;
inline constexpr double kHermitianTolerance = 1e-10;

class StateVector {
public:
    explicit StateVector(std::vector<Complex> amplitudes);
    StateVector(std::initializer_list<Complex> amplitudes);

    static StateVector basis(std::size_t dim, std::size_t index);

    std::size_t dim() const noexcept { return amplitudes_.size(); }
    std::span<const Complex> amplitudes() const noexcept { return amplitudes_; }
    const Complex& operator[](std::size_t i) const { return amplitudes_[i]; }

    double norm_squared() const noexcept;
    bool is_normalized(double tol = kNormTolerance) const noexcept;
    StateVector normalized() const;

    // <this|other>
    Complex inner(const StateVector& other) const;

    StateVector scaled(Complex factor) const;
    bool approx_equal(const StateVector& other, double tol) const;

private:
    std::vector<Complex> amplitudes_;
};

// Row-major dense square matrix.
class Operator {
public:
    explicit Operator(std::size_t dim);
    Operator(std::size_t dim, std::vector<Complex> entries);
    Operator(std::initializer_list<std::initializer_list<Complex>> rows);

    static Operator identity(std::size_t dim);
    static Operator diagonal(std::span<const double> values);
    // |ket><bra|
    static Operator outer(const StateVector& ket, const StateVector& bra);
    static Operator projector(const StateVector& v) { return outer(v, v); }

    std::size_t dim() const noexcept { return dim_; }
    const Complex& operator()(std::size_t row, std::size_t col) const {
        return entries_[row * dim_ + col];
    }
    Complex& operator()(std::size_t row, std::size_t col) { return entries_[row * dim_ + col]; }
    std::span<const Complex> entries() const noexcept { return entries_; }

    Operator adjoint() const;
    Complex trace() const;
    double max_abs_entry() const;

    bool is_hermitian(double tol = kHermitianTolerance) const;
    bool is_unitary(double tol = kNormTolerance) const;

    StateVector apply(const StateVector& v) const;

    Operator& operator+=(const Operator& rhs);
    Operator& operator-=(const Operator& rhs);
    Operator& operator*=(Complex factor);

    friend Operator operator+(Operator lhs, const Operator& rhs) { return lhs += rhs; }
    friend Operator operator-(Operator lhs, const Operator& rhs) { return lhs -= rhs; }
    friend Operator operator*(Operator lhs, Complex factor) { return lhs *= factor; }
    friend Operator operator*(Complex factor, Operator rhs) { return rhs *= factor; }
    friend Operator operator*(const Operator& lhs, const Operator& rhs);

private:
    std::size_t dim_;
    std::vector<Complex> entries_;
};

struct TensorLayout {
    std::size_t num_registers = 1;
    std::size_t register_dim = 2;

    // d^N; throws SimulationSizeError above kMaxStateDim.
    std::size_t total_dim() const;
};

// Kronecker product; a is the most significant factor.
StateVector tensor_product(const StateVector& a, const StateVector& b);
Operator tensor_product(const Operator& a, const Operator& b);
// v^{\otimes count}; count == 0 gives the scalar state (1).
StateVector tensor_power(const StateVector& v, std::size_t count);

using Permutation = std::vector<std::size_t>;

bool is_permutation(std::span<const std::size_t> perm);
Permutation inverse_permutation(std::span<const std::size_t> perm);
// All of S_N in lexicographic order. N is capped by kMaxPermutationRegisters.
std::vector<Permutation> all_permutations(std::size_t n);

// Output amplitude at (i_{perm(0)}, ..., i_{perm(N-1)}) equals the input
// amplitude at (i_0, ..., i_{N-1}).
StateVector permute_registers(const StateVector& v, const TensorLayout& layout,
                              std::span<const std::size_t> perm);

// (1/N!) sum_{sigma in S_N} sigma(v).
StateVector symmetric_projector_apply(const StateVector& v, const TensorLayout& layout);

struct EigenDecomposition {
    std::vector<double> values;  // ascending
    Operator vectors;            // column j is the eigenvector of values[j]
};

// Cyclic complex Jacobi; the input must be Hermitian within kHermitianTolerance.
EigenDecomposition hermitian_eigensystem(const Operator& m);
std::vector<double> hermitian_eigenvalues(const Operator& m);
// Sum of absolute eigenvalues.
double trace_norm(const Operator& m);

}  // namespace qpke
