#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>
#include <string>

namespace lspec {

using Complex = std::complex<double>;
using Eigen::MatrixXcd;
using Eigen::MatrixXd;
using Eigen::VectorXcd;
using Eigen::VectorXd;

/// Bad arguments or violated preconditions (maps to CLI exit code 3 unless
/// raised during config parsing).
struct validation_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// A numerical contract failed (non-convergence, positivity, normalization).
struct numeric_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Config-file problems; message carries "file:line:" anchors where known.
struct config_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Dense Hermitian matrix; the constructor enforces conjugate-transpose
/// symmetry to 1e-12 absolute entrywise.
class HermitianMatrix {
  public:
    explicit HermitianMatrix(MatrixXcd m);

    const MatrixXcd& mat() const { return m_; }
    Eigen::Index dim() const { return m_.rows(); }

    /// True when every imaginary part is exactly zero (both model kinds
    /// produce real symmetric matrices in the Fock basis).
    bool is_real() const;

    /// Max |A - A^dagger| entrywise, exposed for tests.
    static double hermiticity_defect(const MatrixXcd& m);

  private:
    MatrixXcd m_;
};

} // namespace lspec
