#pragma once

#include <Eigen/Dense>

#include "rml/errors.hpp"

namespace rml {

/// Dense real symmetric matrix. Only the upper triangle is authoritative:
/// every constructor mirrors it into the lower triangle, so entry(i,j) ==
/// entry(j,i) holds exactly, never just up to rounding.
class SymmetricMatrix {
public:
    explicit SymmetricMatrix(int dim);

    /// Builds from the upper triangle of `m` (entries below the diagonal are
    /// ignored).
    static SymmetricMatrix from_upper(const Eigen::MatrixXd& m);

    /// Symmetrizes a nearly-symmetric matrix: (m + m^T)/2, then mirrors.
    static SymmetricMatrix symmetrized(const Eigen::MatrixXd& m);

    static SymmetricMatrix identity(int dim);
    static SymmetricMatrix diagonal(const Eigen::VectorXd& d);

    /// v v^T, symmetric by construction.
    static SymmetricMatrix outer(const Eigen::VectorXd& v);

    int dim() const { return static_cast<int>(m_.rows()); }
    double operator()(int i, int j) const { return m_(i, j); }
    const Eigen::MatrixXd& dense() const { return m_; }

    bool is_finite() const { return m_.allFinite(); }
    double frobenius_norm() const { return m_.norm(); }

    /// this += c * other (entrywise on the symmetric storage).
    void add_scaled(const SymmetricMatrix& other, double c);

    SymmetricMatrix scaled(double c) const;
    SymmetricMatrix operator-() const { return scaled(-1.0); }

    Eigen::VectorXd apply(const Eigen::VectorXd& v) const { return m_ * v; }

private:
    Eigen::MatrixXd m_;
};

struct EigenDecomposition {
    Eigen::VectorXd eigenvalues;   // nondecreasing
    Eigen::MatrixXd eigenvectors;  // column k pairs with eigenvalue k
};

/// Full symmetric eigendecomposition. Throws InvalidInputError on non-finite
/// entries.
EigenDecomposition eigendecompose(const SymmetricMatrix& m);

/// Frobenius-nearest projection onto the PSD cone: clip negative eigenvalues
/// to zero and reconstruct.
SymmetricMatrix psd_project(const SymmetricMatrix& m);

/// Entrywise inner product; equals tr(a b) for symmetric a, b.
double frobenius_inner(const SymmetricMatrix& a, const SymmetricMatrix& b);

}  // namespace rml
