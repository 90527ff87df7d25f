#include "lspec/model.hpp"

#include <cmath>
#include <random>

namespace lspec {

HermitianMatrix::HermitianMatrix(MatrixXcd m) : m_(std::move(m)) {
    if (m_.rows() != m_.cols())
        throw validation_error("HermitianMatrix: matrix is not square");
    if (hermiticity_defect(m_) > 1e-12)
        throw validation_error("HermitianMatrix: conjugate-transpose defect exceeds 1e-12");
}

double HermitianMatrix::hermiticity_defect(const MatrixXcd& m) {
    return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

bool HermitianMatrix::is_real() const {
    return (m_.imag().array() == 0.0).all();
}

void ModelSpec::validate() const {
    if (L < 1 || L > 16)
        throw validation_error("ModelSpec: L must be in [1, 16], got " + std::to_string(L));
    for (double c : {j_z, j, h_x, h_z, r_z})
        if (!std::isfinite(c))
            throw validation_error("ModelSpec: non-finite coupling");
    if (r_z < 0.0)
        throw validation_error("ModelSpec: r_z must be >= 0");
    if (kind == ModelKind::XXZ && h_x != 0.0)
        throw validation_error("ModelSpec: XXZ takes no transverse field (h_x must be 0)");
}

FockState FockState::from_pattern(std::string_view pattern) {
    if (pattern.empty() || pattern.size() > 16)
        throw validation_error("FockState: pattern length must be in [1, 16]");
    FockState f;
    f.L = static_cast<int>(pattern.size());
    for (int site = 0; site < f.L; ++site) {
        char c = pattern[static_cast<std::size_t>(site)];
        if (c == 'd' || c == 'D')
            f.index |= 1u << site;
        else if (c != 'u' && c != 'U')
            throw validation_error("FockState: pattern may contain only 'u' and 'd'");
    }
    return f;
}

std::string FockState::pattern() const {
    std::string out(static_cast<std::size_t>(L), 'u');
    for (int site = 0; site < L; ++site)
        if ((index >> site) & 1u) out[static_cast<std::size_t>(site)] = 'd';
    return out;
}

std::vector<double> draw_disorder(double r_z, int count, std::uint64_t seed) {
    if (r_z < 0.0 || !std::isfinite(r_z))
        throw validation_error("draw_disorder: r_z must be finite and >= 0");
    if (count < 0)
        throw validation_error("draw_disorder: negative count");
    std::vector<double> fields(static_cast<std::size_t>(count), 0.0);
    if (r_z == 0.0) return fields;
    std::mt19937_64 rng(seed);
    for (double& h : fields) {
        // top 53 bits -> [0,1); not relying on distribution internals keeps
        // the stream identical across standard libraries
        double u = static_cast<double>(rng() >> 11) * 0x1.0p-53;
        h = (u - 0.5) * r_z;
    }
    return fields;
}

namespace {

// s_l s_{l+1} bond sum for basis state `idx`, s = +-1/2
double bond_sz_sum(std::uint32_t idx, int L) {
    double acc = 0.0;
    for (int l = 0; l + 1 < L; ++l) {
        double sa = (idx >> l) & 1u ? -0.5 : 0.5;
        double sb = (idx >> (l + 1)) & 1u ? -0.5 : 0.5;
        acc += sa * sb;
    }
    return acc;
}

double field_sz_sum(std::uint32_t idx, int L, double h_z, const std::vector<double>& h_l) {
    double acc = 0.0;
    for (int l = 0; l < L; ++l) {
        double s = (idx >> l) & 1u ? -0.5 : 0.5;
        acc += (h_z + (h_l.empty() ? 0.0 : h_l[static_cast<std::size_t>(l)])) * s;
    }
    return acc;
}

} // namespace

HermitianMatrix build_hamiltonian(const ModelSpec& spec) {
    spec.validate();
    const int L = spec.L;
    const int d = spec.dim();
    std::vector<double> h_l;
    if (spec.r_z > 0.0) h_l = draw_disorder(spec.r_z, L, spec.seed);

    MatrixXd h = MatrixXd::Zero(d, d);
    const double bond_sign = spec.kind == ModelKind::IsingZ ? -1.0 : 1.0;
    for (std::uint32_t idx = 0; idx < static_cast<std::uint32_t>(d); ++idx) {
        h(idx, idx) = bond_sign * spec.j_z * bond_sz_sum(idx, L)
                      - field_sz_sum(idx, L, spec.h_z, h_l);
        if (spec.kind == ModelKind::IsingZ) {
            // -h_x S^x_l flips bit l with amplitude 1/2
            if (spec.h_x != 0.0)
                for (int l = 0; l < L; ++l)
                    h(idx ^ (1u << l), idx) += -0.5 * spec.h_x;
        } else {
            // J (S^x S^x + S^y S^y) exchanges antiparallel neighbors, element J/2
            if (spec.j != 0.0)
                for (int l = 0; l + 1 < L; ++l) {
                    std::uint32_t pair = 3u << l;
                    std::uint32_t bits = (idx >> l) & 3u;
                    if (bits == 1u || bits == 2u)
                        h(idx ^ pair, idx) += 0.5 * spec.j;
                }
        }
    }
    return HermitianMatrix(h.cast<Complex>());
}

HermitianMatrix build_observable_zz(int L) {
    if (L < 2)
        throw validation_error("build_observable_zz: needs L >= 2");
    const int d = 1 << L;
    MatrixXd a = MatrixXd::Zero(d, d);
    for (std::uint32_t idx = 0; idx < static_cast<std::uint32_t>(d); ++idx)
        a(idx, idx) = bond_sz_sum(idx, L) / (L - 1);
    return HermitianMatrix(a.cast<Complex>());
}

} // namespace lspec
