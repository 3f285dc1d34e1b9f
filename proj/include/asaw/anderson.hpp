#pragma once

#include <Eigen/Dense>
#include <complex>
#include <cstdint>
#include <memory>
#include <vector>

#include "asaw/graph.hpp"

namespace asaw {

enum class DensityKind { uniform_unit }; // density 1 on [0,1]

/// Single-site disorder law: bounded density with compact support, plus the
/// coupling strength that multiplies it in the Hamiltonian.
struct DisorderModel {
    DensityKind kind = DensityKind::uniform_unit;
    double density_sup_norm = 1.0; // ||rho||_inf
    double support_max_abs = 1.0;  // max |u| over supp(rho)
    double lambda = 1.0;

    static DisorderModel uniform_unit(double lambda);
};

/// One i.i.d. draw of the on-site potentials, fully determined by
/// (seed, draw_index) through the counter-based generator.
struct DisorderRealization {
    std::vector<double> omega;
    std::uint64_t seed = 0;
    std::uint64_t draw_index = 0;
};

DisorderRealization sample_disorder(const DisorderModel& model, const Graph& g,
                                    std::uint64_t seed, std::uint64_t draw_index);

/// z = E + i*eta with eta != 0, so the resolvent exists.
struct ComplexEnergy {
    double real = 0.0;
    double imag = 0.0;
    ComplexEnergy(double e, double eta);
    std::complex<double> value() const { return {real, imag}; }
};

/// Realized Hamiltonian H = T + lambda*omega for one disorder draw, with all
/// edges incident to the depletion prefix removed from the hopping term.
/// Depletion is kept as a prefix list and applied at assembly time, since a
/// single walk-sum evaluation touches many depleted variants.
class AndersonOperator {
public:
    AndersonOperator(const Graph& g, DisorderRealization disorder, double lambda);

    /// Same operator with the given depletion prefix (distinct vertices).
    AndersonOperator depleted(const std::vector<int>& prefix) const;

    const Graph& graph() const { return *graph_; }
    double lambda() const { return lambda_; }
    const DisorderRealization& disorder() const { return disorder_; }
    const std::vector<int>& depleted_prefix() const { return prefix_; }

    /// Dense real-symmetric matrix of the operator.
    Eigen::MatrixXd matrix() const;

private:
    const Graph* graph_;
    DisorderRealization disorder_;
    double lambda_;
    std::vector<int> prefix_;
};

/// G(x,y;z) = <x|(H - z)^{-1}|y> via one dense complex LU solve.
std::complex<double> greens_function(const AndersonOperator& op, int x, int y,
                                     ComplexEnergy z);

/// Factorization of (H - z) reused across many entry queries; solved columns
/// are cached. Confine an instance to one thread.
class Resolvent {
public:
    Resolvent(const AndersonOperator& op, ComplexEnergy z);
    std::complex<double> entry(int x, int y);

private:
    Eigen::PartialPivLU<Eigen::MatrixXcd> lu_;
    std::vector<Eigen::VectorXcd> columns_;
    std::vector<char> have_column_;
    int n_;
};

/// The walk-sum form of the Green's function: over all depletion-consistent
/// SAWs [v0..vd] from x with d = distance(x,y), the product of diagonal
/// resolvent entries of the successively depleted operators times the final
/// off-diagonal entry toward y. Equals greens_function exactly.
std::complex<double> saw_representation(const AndersonOperator& op, int x, int y,
                                        ComplexEnergy z);

} // namespace asaw
