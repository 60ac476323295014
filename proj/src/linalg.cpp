#include "rml/linalg.hpp"

namespace rml {

namespace {

void mirror_upper(Eigen::MatrixXd& m) {
    const int d = static_cast<int>(m.rows());
    for (int i = 0; i < d; ++i) {
        for (int j = 0; j < i; ++j) {
            m(i, j) = m(j, i);
        }
    }
}

}  // namespace

SymmetricMatrix::SymmetricMatrix(int dim) {
    if (dim < 1) {
        throw InvalidInputError("SymmetricMatrix: dim must be >= 1");
    }
    m_ = Eigen::MatrixXd::Zero(dim, dim);
}

SymmetricMatrix SymmetricMatrix::from_upper(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw InvalidInputError("SymmetricMatrix: input must be square");
    }
    SymmetricMatrix s(static_cast<int>(m.rows()));
    s.m_ = m;
    mirror_upper(s.m_);
    return s;
}

SymmetricMatrix SymmetricMatrix::symmetrized(const Eigen::MatrixXd& m) {
    if (m.rows() != m.cols() || m.rows() < 1) {
        throw InvalidInputError("SymmetricMatrix: input must be square");
    }
    return from_upper(0.5 * (m + m.transpose()));
}

SymmetricMatrix SymmetricMatrix::identity(int dim) {
    SymmetricMatrix s(dim);
    s.m_ = Eigen::MatrixXd::Identity(dim, dim);
    return s;
}

SymmetricMatrix SymmetricMatrix::diagonal(const Eigen::VectorXd& d) {
    SymmetricMatrix s(static_cast<int>(d.size()));
    s.m_ = d.asDiagonal();
    return s;
}

SymmetricMatrix SymmetricMatrix::outer(const Eigen::VectorXd& v) {
    const int d = static_cast<int>(v.size());
    SymmetricMatrix s(d);
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            s.m_(i, j) = v(i) * v(j);
            s.m_(j, i) = s.m_(i, j);
        }
    }
    return s;
}

void SymmetricMatrix::add_scaled(const SymmetricMatrix& other, double c) {
    if (other.dim() != dim()) {
        throw DimensionError("add_scaled: dimension mismatch");
    }
    m_ += c * other.m_;
    mirror_upper(m_);  // keeps symmetry exact even if c*other rounds unevenly
}

SymmetricMatrix SymmetricMatrix::scaled(double c) const {
    SymmetricMatrix s(dim());
    s.m_ = c * m_;
    mirror_upper(s.m_);
    return s;
}

EigenDecomposition eigendecompose(const SymmetricMatrix& m) {
    if (!m.is_finite()) {
        throw InvalidInputError("eigendecompose: non-finite entries");
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(m.dense());
    if (solver.info() != Eigen::Success) {
        throw InvalidInputError("eigendecompose: solver failed to converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

SymmetricMatrix psd_project(const SymmetricMatrix& m) {
    EigenDecomposition ed = eigendecompose(m);
    const Eigen::VectorXd clipped = ed.eigenvalues.cwiseMax(0.0);
    Eigen::MatrixXd rebuilt =
        ed.eigenvectors * clipped.asDiagonal() * ed.eigenvectors.transpose();
    return SymmetricMatrix::symmetrized(rebuilt);
}

double frobenius_inner(const SymmetricMatrix& a, const SymmetricMatrix& b) {
    if (a.dim() != b.dim()) {
        throw DimensionError("frobenius_inner: dimension mismatch");
    }
    return a.dense().cwiseProduct(b.dense()).sum();
}

}  // namespace rml
