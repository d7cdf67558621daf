#include <doctest.h>

#include <Eigen/Eigenvalues>
#include <cmath>
#include <numbers>

#include "qpke/errors.hpp"
#include "qpke/keys.hpp"
#include "qpke/linalg.hpp"
#include "qpke/rng.hpp"

using namespace qpke;

namespace {

StateVector random_vector(std::size_t dim, RngStream& rng) { return random_state(dim, rng); }

Operator random_hermitian(std::size_t dim, RngStream& rng) {
    Operator m(dim);
    for (std::size_t i = 0; i < dim; ++i) {
        m(i, i) = rng.normal();
        for (std::size_t j = i + 1; j < dim; ++j) {
            const Complex z{rng.normal(), rng.normal()};
            m(i, j) = z;
            m(j, i) = std::conj(z);
        }
    }
    return m;
}

}  // namespace

TEST_SUITE("linalg") {

TEST_CASE("tensor_product of basis states") {
    const StateVector zero{1.0, 0.0};
    const StateVector one{0.0, 1.0};
    CHECK(tensor_product(zero, one).approx_equal(StateVector{0.0, 1.0, 0.0, 0.0}, 0.0));
    CHECK(tensor_product(zero, zero).approx_equal(StateVector{1.0, 0.0, 0.0, 0.0}, 0.0));

    const double h = 1.0 / std::sqrt(2.0);
    const StateVector plus{h, h};
    CHECK(tensor_product(plus, zero).approx_equal(StateVector{h, 0.0, h, 0.0}, 1e-15));
}

TEST_CASE("tensor_power of zero factors is the scalar state") {
    const StateVector v{0.6, 0.8};
    CHECK(tensor_power(v, 0).dim() == 1);
    CHECK(tensor_power(v, 3).dim() == 8);
    CHECK(tensor_power(v, 3).norm_squared() == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("tensor_product trips the simulation guard") {
    const StateVector big(std::vector<Complex>(std::size_t{1} << 11, Complex{}));
    CHECK_THROWS_AS(tensor_product(big, big), SimulationSizeError);
}

TEST_CASE("permute_registers basics") {
    const TensorLayout two_qubits{2, 2};
    const StateVector ket01 = StateVector::basis(4, 1);
    const Permutation swap{1, 0};
    const Permutation identity{0, 1};

    CHECK(permute_registers(ket01, two_qubits, identity).approx_equal(ket01, 0.0));
    CHECK(permute_registers(ket01, two_qubits, swap).approx_equal(StateVector::basis(4, 2), 0.0));

    RngStream rng(7);
    const StateVector v = random_vector(4, rng);
    const StateVector twice = permute_registers(permute_registers(v, two_qubits, swap), two_qubits, swap);
    CHECK(twice.approx_equal(v, 1e-14));
}

TEST_CASE("permute_registers moves register digits as documented") {
    // |i0 i1 i2> with d = 3; output digit r is input digit perm[r].
    const TensorLayout layout{3, 3};
    const Permutation perm{2, 0, 1};
    const std::size_t src = 0 * 9 + 1 * 3 + 2;  // |0 1 2>
    const std::size_t dst = 2 * 9 + 0 * 3 + 1;  // |2 0 1>
    const StateVector out = permute_registers(StateVector::basis(27, src), layout, perm);
    CHECK(std::abs(out[dst] - Complex{1.0}) == 0.0);
}

TEST_CASE("permute_registers rejects bad input") {
    const TensorLayout layout{2, 2};
    CHECK_THROWS_AS(permute_registers(StateVector::basis(8, 0), layout, Permutation{1, 0}),
                    PreconditionError);
    CHECK_THROWS_AS(permute_registers(StateVector::basis(4, 0), layout, Permutation{0, 0}),
                    PreconditionError);
}

TEST_CASE("permute_registers then its inverse is the identity and preserves norm") {
    RngStream rng(11);
    for (std::size_t n = 2; n <= 5; ++n) {
        for (std::size_t d : {2u, 3u}) {
            const TensorLayout layout{n, d};
            const StateVector v = random_vector(layout.total_dim(), rng);
            for (const auto& perm : all_permutations(n)) {
                const StateVector moved = permute_registers(v, layout, perm);
                CHECK(std::abs(moved.norm_squared() - v.norm_squared()) <= 1e-14);
                const StateVector back = permute_registers(moved, layout, inverse_permutation(perm));
                CHECK(back.approx_equal(v, 1e-14));
            }
        }
    }
}

TEST_CASE("all_permutations is lexicographic and guarded") {
    const auto perms = all_permutations(3);
    REQUIRE(perms.size() == 6);
    CHECK(perms.front() == Permutation{0, 1, 2});
    CHECK(perms[1] == Permutation{0, 2, 1});
    CHECK(perms.back() == Permutation{2, 1, 0});
    CHECK(all_permutations(8).size() == 40320);
    CHECK_THROWS_AS(all_permutations(9), SimulationSizeError);
}

TEST_CASE("symmetric projector examples") {
    const TensorLayout layout{2, 2};
    const StateVector ket00 = StateVector::basis(4, 0);
    CHECK(symmetric_projector_apply(ket00, layout).approx_equal(ket00, 0.0));

    const StateVector projected = symmetric_projector_apply(StateVector::basis(4, 1), layout);
    CHECK(projected.approx_equal(StateVector{0.0, 0.5, 0.5, 0.0}, 1e-15));
    CHECK(projected.norm_squared() == doctest::Approx(0.5).epsilon(1e-15));

    // |xi>|chi> for an orthogonal qutrit pair.
    const StateVector xi{0.0, 0.6, 0.8};
    const StateVector chi{1.0, 0.0, 0.0};
    const StateVector in = tensor_product(xi, chi);
    CHECK(symmetric_projector_apply(in, TensorLayout{2, 3}).norm_squared() ==
          doctest::Approx(0.5).epsilon(1e-14));
}

TEST_CASE("symmetric projector is idempotent and permutation invariant") {
    RngStream rng(23);
    for (std::size_t n = 2; n <= 5; ++n) {
        for (std::size_t d : {2u, 3u}) {
            const TensorLayout layout{n, d};
            const StateVector v = random_vector(layout.total_dim(), rng);
            const StateVector once = symmetric_projector_apply(v, layout);
            const StateVector twice = symmetric_projector_apply(once, layout);
            CHECK(twice.approx_equal(once, 1e-12));
            for (const auto& perm : all_permutations(n)) {
                CHECK(permute_registers(once, layout, perm).approx_equal(once, 1e-12));
            }
        }
    }
}

TEST_CASE("symmetric projector guard") {
    const TensorLayout layout{9, 2};
    CHECK_THROWS_AS(symmetric_projector_apply(StateVector::basis(512, 0), layout),
                    SimulationSizeError);
}

TEST_CASE("hermitian_eigenvalues examples") {
    const std::vector<double> diag{1.0, 2.0, 3.0};
    const auto values = hermitian_eigenvalues(Operator::diagonal(diag));
    CHECK(values == diag);

    const Operator pauli_x{{0.0, 1.0}, {1.0, 0.0}};
    const auto x_values = hermitian_eigenvalues(pauli_x);
    CHECK(x_values[0] == doctest::Approx(-1.0).epsilon(1e-14));
    CHECK(x_values[1] == doctest::Approx(1.0).epsilon(1e-14));

    // (I + n.sigma)/2 for n = (sin a cos b, sin a sin b, cos a): rank-one projector.
    const double a = 0.7;
    const double b = 1.9;
    const double nx = std::sin(a) * std::cos(b);
    const double ny = std::sin(a) * std::sin(b);
    const double nz = std::cos(a);
    const Operator bloch{{0.5 * (1.0 + nz), 0.5 * Complex{nx, -ny}},
                         {0.5 * Complex{nx, ny}, 0.5 * (1.0 - nz)}};
    // Idempotent by direct multiplication, so the spectrum is {0, 1}.
    const Operator square = bloch * bloch;
    for (std::size_t i = 0; i < 2; ++i) {
        for (std::size_t j = 0; j < 2; ++j) {
            CHECK(std::abs(square(i, j) - bloch(i, j)) < 1e-15);
        }
    }
    const auto p_values = hermitian_eigenvalues(bloch);
    CHECK(std::abs(p_values[0]) < 1e-14);
    CHECK(p_values[1] == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("hermitian_eigensystem rejects non-Hermitian input") {
    const Operator m{{0.0, 1.0}, {0.0, 0.0}};
    CHECK_THROWS_AS(hermitian_eigenvalues(m), PreconditionError);
}

TEST_CASE("eigendecomposition reconstructs random Hermitian matrices") {
    RngStream rng(31);
    for (std::size_t dim : {1u, 2u, 3u, 5u, 8u, 16u, 33u}) {
        const Operator m = random_hermitian(dim, rng);
        const auto eig = hermitian_eigensystem(m);

        double trace = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            trace += m(i, i).real();
        }
        double value_sum = 0.0;
        for (std::size_t i = 0; i < dim; ++i) {
            value_sum += eig.values[i];
            if (i > 0) {
                CHECK(eig.values[i - 1] <= eig.values[i]);
            }
        }
        CHECK(std::abs(value_sum - trace) <= 1e-9);

        // V diag(values) V^dagger == m entrywise, and V is unitary.
        const Operator rebuilt = eig.vectors * Operator::diagonal(eig.values) * eig.vectors.adjoint();
        CHECK((rebuilt - m).max_abs_entry() <= 1e-9);
        CHECK(eig.vectors.is_unitary(1e-10));
    }
}

TEST_CASE("eigenvalues agree with Eigen's self-adjoint solver") {
    RngStream rng(37);
    for (std::size_t dim : {2u, 4u, 7u, 16u, 40u}) {
        const Operator m = random_hermitian(dim, rng);
        Eigen::MatrixXcd reference(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
        for (std::size_t i = 0; i < dim; ++i) {
            for (std::size_t j = 0; j < dim; ++j) {
                reference(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j);
            }
        }
        const Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(reference,
                                                                     Eigen::EigenvaluesOnly);
        const auto values = hermitian_eigenvalues(m);
        for (std::size_t i = 0; i < dim; ++i) {
            CHECK(std::abs(values[i] - solver.eigenvalues()(static_cast<Eigen::Index>(i))) <= 1e-9);
        }
    }
}

TEST_CASE("degenerate spectra are handled") {
    const Operator m = Operator::identity(6) * Complex{2.5};
    const auto eig = hermitian_eigensystem(m);
    for (double v : eig.values) {
        CHECK(v == doctest::Approx(2.5));
    }
    const Operator rank_two = Operator::projector(StateVector{1.0, 0.0, 0.0, 0.0}) +
                              Operator::projector(StateVector{0.0, 0.5, 0.5, std::sqrt(0.5)});
    const auto values = hermitian_eigenvalues(rank_two);
    CHECK(std::abs(values[0]) < 1e-12);
    CHECK(std::abs(values[1]) < 1e-12);
    CHECK(values[2] == doctest::Approx(1.0).epsilon(1e-12));
    CHECK(values[3] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("trace_norm examples") {
    CHECK(trace_norm(Operator(3)) == 0.0);

    RngStream rng(41);
    const StateVector psi = random_state(3, rng);
    const Operator rho = Operator::projector(psi);
    CHECK(trace_norm(rho - rho) == 0.0);

    const Operator diff = Operator::projector(StateVector{1.0, 0.0}) * Complex{0.5} -
                          Operator::projector(StateVector{0.0, 1.0}) * Complex{0.5};
    const auto values = hermitian_eigenvalues(diff);
    CHECK(values[0] == doctest::Approx(-0.5));
    CHECK(values[1] == doctest::Approx(0.5));
    CHECK(trace_norm(diff) == doctest::Approx(1.0).epsilon(1e-14));
}

TEST_CASE("trace_norm obeys the triangle inequality") {
    RngStream rng(43);
    for (int trial = 0; trial < 50; ++trial) {
        const std::size_t dim = 2 + static_cast<std::size_t>(rng.below(7));
        const Operator a = random_hermitian(dim, rng);
        const Operator b = random_hermitian(dim, rng);
        CHECK(trace_norm(a + b) <= trace_norm(a) + trace_norm(b) + 1e-9);
    }
}

TEST_CASE("operator flags") {
    const double c = std::cos(0.3);
    const double s = std::sin(0.3);
    const Operator rotation{{c, -s}, {s, c}};
    CHECK(rotation.is_unitary());
    CHECK_FALSE((rotation * Complex{1.01}).is_unitary());
    CHECK(Operator::identity(4).is_hermitian());
    CHECK_FALSE(rotation.is_hermitian());
}

}  // TEST_SUITE
