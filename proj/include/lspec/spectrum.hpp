#pragma once

#include "lspec/common.hpp"

#include <vector>

namespace lspec {

/// Full eigendecomposition of a Hamiltonian. Column n of `vectors` is
/// eigenstate |n> in the Fock basis; energies ascend. Eigenvector phases are
/// fixed (largest-magnitude component real positive) so serialized output is
/// reproducible; |<sigma|n>|^2 never depends on the phase.
struct Spectrum {
    VectorXd energies;
    MatrixXcd vectors;

    /// cluster[n]: id of the degeneracy cluster containing level n. Levels
    /// n, n+1 share a cluster when E_{n+1}-E_n < 1e-9 * bandwidth. Exact
    /// long-time limits (mbl) consume these.
    std::vector<int> cluster;
    int n_clusters = 0;

    int dim() const { return static_cast<int>(energies.size()); }
    double bandwidth() const { return energies(dim() - 1) - energies(0); }
    bool has_degeneracies() const { return n_clusters < dim(); }
};

Spectrum diagonalize(const HermitianMatrix& h);

/// M_{sigma n} = |<sigma|n>|^2: real, nonnegative, bistochastic. The
/// constructor-check enforces row and column sums of 1 within 1e-10.
struct WeightMatrix {
    MatrixXd m;
    int dim() const { return static_cast<int>(m.rows()); }
};

WeightMatrix weights_matrix(const Spectrum& s);

/// A_n = <n|A|n>, aligned with the Spectrum ordering.
VectorXd eigen_expectations(const Spectrum& s, const HermitianMatrix& a);

} // namespace lspec
