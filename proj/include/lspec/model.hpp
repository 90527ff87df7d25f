#pragma once

#include "lspec/common.hpp"

#include <cstdint>
#include <string_view>
#include <vector>

namespace lspec {

enum class ModelKind { IsingZ, XXZ };

/// Spin-1/2 chain with open boundaries, S = sigma/2 normalization.
///
/// IsingZ:  H = -j_z sum S^z S^z - h_x sum S^x - h_z sum S^z - sum h_l S^z_l
/// XXZ:     H = sum [ j_z S^z S^z + j (S^x S^x + S^y S^y) ]
///              - h_z sum S^z - sum h_l S^z_l            (h_x must be 0)
///
/// Disorder fields h_l are uniform in [-r_z/2, r_z/2], drawn from `seed`.
struct ModelSpec {
    ModelKind kind = ModelKind::IsingZ;
    int L = 1;
    double j_z = 1.0;
    double j = 0.0;   // XXZ only
    double h_x = 0.0;
    double h_z = 0.0;
    double r_z = 0.0;
    std::uint64_t seed = 0;

    int dim() const { return 1 << L; }
    void validate() const; // throws validation_error
};

/// Fock basis convention: index = sum_l b_l 2^l, bit l encodes site l,
/// b = 0 is up (S^z = +1/2), site 0 is the least significant bit.
struct FockState {
    std::uint32_t index = 0;
    int L = 1;

    /// S^z eigenvalue (+-1/2) of site `site`.
    double sz(int site) const { return (index >> site) & 1u ? -0.5 : 0.5; }

    /// Parse a pattern like "uudd..."; leftmost character is site 0.
    static FockState from_pattern(std::string_view pattern);
    std::string pattern() const;
};

/// Uniform disorder fields in [-r_z/2, r_z/2]; reproducible and
/// platform-independent (mt19937_64 with an explicit 53-bit mapping).
std::vector<double> draw_disorder(double r_z, int count, std::uint64_t seed);

HermitianMatrix build_hamiltonian(const ModelSpec& spec);

/// A = 1/(L-1) sum_l S^z_l S^z_{l+1}, diagonal in the Fock basis.
HermitianMatrix build_observable_zz(int L);

} // namespace lspec
