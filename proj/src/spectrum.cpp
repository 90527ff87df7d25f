#include "lspec/spectrum.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <string>

namespace lspec {

namespace {

void fix_phases(MatrixXcd& v) {
    for (Eigen::Index n = 0; n < v.cols(); ++n) {
        Eigen::Index imax = 0;
        v.col(n).cwiseAbs().maxCoeff(&imax);
        Complex pivot = v(imax, n);
        double mag = std::abs(pivot);
        if (mag > 0.0) v.col(n) *= std::conj(pivot) / mag;
    }
}

std::vector<int> cluster_levels(const VectorXd& e, int& n_clusters) {
    const int d = static_cast<int>(e.size());
    std::vector<int> cluster(static_cast<std::size_t>(d), 0);
    double tol = 1e-9 * (e(d - 1) - e(0));
    int id = 0;
    for (int n = 1; n < d; ++n) {
        if (e(n) - e(n - 1) >= tol) ++id;
        cluster[static_cast<std::size_t>(n)] = id;
    }
    n_clusters = id + 1;
    return cluster;
}

} // namespace

Spectrum diagonalize(const HermitianMatrix& h) {
    Spectrum s;
    if (h.is_real()) {
        // both model kinds land here; the real path is ~4x cheaper
        Eigen::SelfAdjointEigenSolver<MatrixXd> es(h.mat().real());
        if (es.info() != Eigen::Success)
            throw numeric_error("diagonalize: eigensolver failed to converge (dim=" +
                                std::to_string(h.dim()) +
                                ", |H|_max=" + std::to_string(h.mat().cwiseAbs().maxCoeff()) + ")");
        s.energies = es.eigenvalues();
        s.vectors = es.eigenvectors().cast<Complex>();
    } else {
        Eigen::SelfAdjointEigenSolver<MatrixXcd> es(h.mat());
        if (es.info() != Eigen::Success)
            throw numeric_error("diagonalize: eigensolver failed to converge (dim=" +
                                std::to_string(h.dim()) +
                                ", |H|_max=" + std::to_string(h.mat().cwiseAbs().maxCoeff()) + ")");
        s.energies = es.eigenvalues();
        s.vectors = es.eigenvectors();
    }
    fix_phases(s.vectors);
    if (s.dim() > 1 && s.bandwidth() > 0.0)
        s.cluster = cluster_levels(s.energies, s.n_clusters);
    else {
        s.cluster.assign(static_cast<std::size_t>(s.dim()), 0);
        s.n_clusters = 1;
    }
    return s;
}

WeightMatrix weights_matrix(const Spectrum& s) {
    WeightMatrix w{s.vectors.cwiseAbs2()};
    const double tol = 1e-10;
    for (int i = 0; i < w.dim(); ++i) {
        if (std::abs(w.m.row(i).sum() - 1.0) > tol)
            throw numeric_error("weights_matrix: row " + std::to_string(i) +
                                " is not stochastic");
        if (std::abs(w.m.col(i).sum() - 1.0) > tol)
            throw numeric_error("weights_matrix: column " + std::to_string(i) +
                                " is not stochastic");
    }
    return w;
}

VectorXd eigen_expectations(const Spectrum& s, const HermitianMatrix& a) {
    if (a.dim() != s.dim())
        throw validation_error("eigen_expectations: dimension mismatch");
    const MatrixXcd av = a.mat() * s.vectors;
    VectorXd out(s.dim());
    for (int n = 0; n < s.dim(); ++n)
        out(n) = s.vectors.col(n).dot(av.col(n)).real();

    double max_a = a.mat().cwiseAbs().maxCoeff();
    double defect = std::abs(out.sum() - a.mat().trace().real());
    if (defect > 1e-9 * s.dim() * std::max(max_a, 1.0))
        throw numeric_error("eigen_expectations: sum(A_n) drifted from Tr A");
    return out;
}

} // namespace lspec
