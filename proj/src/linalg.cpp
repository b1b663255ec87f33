#include "specbio/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <sstream>

#include "specbio/errors.hpp"

namespace specbio {

namespace {

void require_finite(const Matrix& m, const char* what) {
    for (double v : m.data()) {
        if (!std::isfinite(v)) {
            throw InputError(std::string(what) + ": non-finite entry");
        }
    }
}

double offdiag_frobenius(const Matrix& w) {
    double s = 0.0;
    for (std::size_t i = 0; i < w.rows(); ++i)
        for (std::size_t j = 0; j < w.cols(); ++j)
            if (i != j) s += w(i, j) * w(i, j);
    return std::sqrt(s);
}

}  // namespace

SymMatrix::SymMatrix(std::size_t dim) : m_(dim, dim) {
    if (dim < 1) throw InputError("SymMatrix: dim must be >= 1");
    if (dim > kMaxDim) throw InputError("SymMatrix: dimension exceeds dense capacity (5000)");
}

SymMatrix SymMatrix::from_dense(const Matrix& a) {
    if (a.rows() != a.cols()) throw InputError("SymMatrix: matrix is not square");
    require_finite(a, "SymMatrix");
    SymMatrix s(a.rows());
    const double scale = std::max(1.0, max_abs(a));
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = i; j < a.cols(); ++j) {
            const double asym = std::fabs(a(i, j) - a(j, i));
            if (asym > 1e-9 * scale) {
                std::ostringstream os;
                os << "SymMatrix: asymmetry " << asym << " at (" << i << "," << j
                   << ") exceeds tolerance";
                throw InputError(os.str());
            }
            s.set(i, j, 0.5 * (a(i, j) + a(j, i)));
        }
    }
    return s;
}

SymMatrix SymMatrix::identity(std::size_t dim) {
    SymMatrix s(dim);
    for (std::size_t i = 0; i < dim; ++i) s.set(i, i, 1.0);
    return s;
}

SymMatrix SymMatrix::diagonal(const std::vector<double>& d) {
    SymMatrix s(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) s.set(i, i, d[i]);
    return s;
}

double SymMatrix::trace() const {
    double t = 0.0;
    for (std::size_t i = 0; i < dim(); ++i) t += m_(i, i);
    return t;
}

double SymMatrix::frobenius_norm() const {
    double s = 0.0;
    for (double v : m_.data()) s += v * v;
    return std::sqrt(s);
}

SymMatrix operator+(const SymMatrix& a, const SymMatrix& b) {
    if (a.dim() != b.dim()) throw InputError("SymMatrix: dimension mismatch in +");
    SymMatrix c(a.dim());
    for (std::size_t i = 0; i < c.m_.data().size(); ++i)
        c.m_.data()[i] = a.m_.data()[i] + b.m_.data()[i];
    return c;
}

SymMatrix operator-(const SymMatrix& a, const SymMatrix& b) {
    if (a.dim() != b.dim()) throw InputError("SymMatrix: dimension mismatch in -");
    SymMatrix c(a.dim());
    for (std::size_t i = 0; i < c.m_.data().size(); ++i)
        c.m_.data()[i] = a.m_.data()[i] - b.m_.data()[i];
    return c;
}

SymMatrix operator*(double c, const SymMatrix& a) {
    SymMatrix b(a.dim());
    for (std::size_t i = 0; i < b.m_.data().size(); ++i) b.m_.data()[i] = c * a.m_.data()[i];
    return b;
}

EigenSystem symmetric_eigendecompose(const SymMatrix& a) {
    const std::size_t p = a.dim();
    Matrix w = a.dense();
    Matrix v = Matrix::identity(p);

    double norm_f = a.frobenius_norm();
    const double target = 1e-12 * norm_f;

    if (norm_f > 0.0) {
        bool converged = false;
        for (int sweep = 0; sweep < 100; ++sweep) {
            if (offdiag_frobenius(w) <= target) {
                converged = true;
                break;
            }
            for (std::size_t i = 0; i + 1 < p; ++i) {
                for (std::size_t j = i + 1; j < p; ++j) {
                    const double apq = w(i, j);
                    if (apq == 0.0) continue;
                    const double tau = (w(j, j) - w(i, i)) / (2.0 * apq);
                    double t;
                    if (tau >= 0.0)
                        t = 1.0 / (tau + std::sqrt(1.0 + tau * tau));
                    else
                        t = -1.0 / (-tau + std::sqrt(1.0 + tau * tau));
                    const double c = 1.0 / std::sqrt(1.0 + t * t);
                    const double s = t * c;

                    const double aii = w(i, i), ajj = w(j, j);
                    w(i, i) = aii - t * apq;
                    w(j, j) = ajj + t * apq;
                    w(i, j) = 0.0;
                    w(j, i) = 0.0;
                    for (std::size_t k = 0; k < p; ++k) {
                        if (k == i || k == j) continue;
                        const double aik = w(i, k), ajk = w(j, k);
                        w(i, k) = c * aik - s * ajk;
                        w(k, i) = w(i, k);
                        w(j, k) = s * aik + c * ajk;
                        w(k, j) = w(j, k);
                    }
                    for (std::size_t k = 0; k < p; ++k) {
                        const double vki = v(k, i), vkj = v(k, j);
                        v(k, i) = c * vki - s * vkj;
                        v(k, j) = s * vki + c * vkj;
                    }
                }
            }
        }
        if (!converged && offdiag_frobenius(w) > target) {
            std::ostringstream os;
            os << "Jacobi eigensolver did not converge in 100 sweeps; off-diagonal residual "
               << offdiag_frobenius(w) << " (target " << target << ")";
            throw NumericalError(os.str());
        }
    }

    // Sort descending; stable so exact ties keep their column order.
    std::vector<std::size_t> order(p);
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(),
                     [&](std::size_t x, std::size_t y) { return w(x, x) > w(y, y); });

    EigenSystem es;
    es.values.resize(p);
    es.vectors = Matrix(p, p);
    for (std::size_t k = 0; k < p; ++k) {
        const std::size_t src = order[k];
        es.values[k] = w(src, src);
        // Sign convention: largest-magnitude entry (first on ties) non-negative.
        std::size_t imax = 0;
        double amax = -1.0;
        for (std::size_t r = 0; r < p; ++r) {
            const double av = std::fabs(v(r, src));
            if (av > amax) {
                amax = av;
                imax = r;
            }
        }
        const double sign = v(imax, src) < 0.0 ? -1.0 : 1.0;
        for (std::size_t r = 0; r < p; ++r) es.vectors(r, k) = sign * v(r, src);
    }
    return es;
}

Svd small_svd(const Matrix& m) {
    const std::size_t p = m.rows(), r = m.cols();
    if (r > p) throw InputError("small_svd: expected a tall matrix (cols <= rows)");
    require_finite(m, "small_svd");

    // Gram matrix route: eigenpairs of M^T M give V and sigma^2.
    Matrix g(r, r);
    for (std::size_t i = 0; i < r; ++i) {
        for (std::size_t j = i; j < r; ++j) {
            double s = 0.0;
            for (std::size_t k = 0; k < p; ++k) s += m(k, i) * m(k, j);
            g(i, j) = s;
            g(j, i) = s;
        }
    }
    EigenSystem es = symmetric_eigendecompose(SymMatrix::from_dense(g));

    Svd out;
    out.singular_values.resize(r);
    out.right = es.vectors;
    out.left = Matrix(p, r);
    const double smax = std::sqrt(std::max(es.values.empty() ? 0.0 : es.values[0], 0.0));
    const double floor = std::max(smax, 1.0) * 1e-12;
    for (std::size_t k = 0; k < r; ++k) {
        const double sv = std::sqrt(std::max(es.values[k], 0.0));
        out.singular_values[k] = sv;
        if (sv > floor) {
            for (std::size_t i = 0; i < p; ++i) {
                double s = 0.0;
                for (std::size_t j = 0; j < r; ++j) s += m(i, j) * es.vectors(j, k);
                out.left(i, k) = s / sv;
            }
        } else {
            // Null direction: complete the basis from standard vectors.
            for (std::size_t cand = 0; cand < p; ++cand) {
                std::vector<double> u(p, 0.0);
                u[cand] = 1.0;
                for (std::size_t prev = 0; prev < k; ++prev) {
                    double dot = 0.0;
                    for (std::size_t i = 0; i < p; ++i) dot += u[i] * out.left(i, prev);
                    for (std::size_t i = 0; i < p; ++i) u[i] -= dot * out.left(i, prev);
                }
                double nrm = 0.0;
                for (double x : u) nrm += x * x;
                nrm = std::sqrt(nrm);
                if (nrm > 0.5) {
                    for (std::size_t i = 0; i < p; ++i) out.left(i, k) = u[i] / nrm;
                    break;
                }
            }
        }
    }
    // One pass of modified Gram-Schmidt to tighten left-orthogonality.
    for (std::size_t k = 0; k < r; ++k) {
        for (std::size_t prev = 0; prev < k; ++prev) {
            double dot = 0.0;
            for (std::size_t i = 0; i < p; ++i) dot += out.left(i, k) * out.left(i, prev);
            for (std::size_t i = 0; i < p; ++i) out.left(i, k) -= dot * out.left(i, prev);
        }
        double nrm = 0.0;
        for (std::size_t i = 0; i < p; ++i) nrm += out.left(i, k) * out.left(i, k);
        nrm = std::sqrt(nrm);
        if (nrm > 0.0)
            for (std::size_t i = 0; i < p; ++i) out.left(i, k) /= nrm;
    }
    return out;
}

Matrix cholesky(const SymMatrix& a) {
    const std::size_t p = a.dim();
    double max_diag = 0.0;
    for (std::size_t i = 0; i < p; ++i) max_diag = std::max(max_diag, std::fabs(a(i, i)));
    const double tol = 1e-12 * std::max(1.0, max_diag);

    Matrix l(p, p);
    for (std::size_t j = 0; j < p; ++j) {
        double d = a(j, j);
        for (std::size_t k = 0; k < j; ++k) d -= l(j, k) * l(j, k);
        if (d <= tol) {
            std::ostringstream os;
            os << "cholesky: non-positive-definite pivot " << d << " at index " << j;
            throw NumericalError(os.str());
        }
        l(j, j) = std::sqrt(d);
        for (std::size_t i = j + 1; i < p; ++i) {
            double s = a(i, j);
            for (std::size_t k = 0; k < j; ++k) s -= l(i, k) * l(j, k);
            l(i, j) = s / l(j, j);
        }
    }
    return l;
}

double spectral_norm(const SymMatrix& a) {
    EigenSystem es = symmetric_eigendecompose(a);
    double m = 0.0;
    for (double v : es.values) m = std::max(m, std::fabs(v));
    return m;
}

std::vector<double> solve_lower(const Matrix& l, const std::vector<double>& b) {
    const std::size_t n = l.rows();
    std::vector<double> x(n);
    for (std::size_t i = 0; i < n; ++i) {
        double s = b[i];
        for (std::size_t k = 0; k < i; ++k) s -= l(i, k) * x[k];
        x[i] = s / l(i, i);
    }
    return x;
}

std::vector<double> solve_lower_transposed(const Matrix& l, const std::vector<double>& b) {
    const std::size_t n = l.rows();
    std::vector<double> x(n);
    for (std::size_t ii = n; ii-- > 0;) {
        double s = b[ii];
        for (std::size_t k = ii + 1; k < n; ++k) s -= l(k, ii) * x[k];
        x[ii] = s / l(ii, ii);
    }
    return x;
}

Matrix solve_lower(const Matrix& l, const Matrix& b) {
    Matrix x(b.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j)
        x.set_column(j, solve_lower(l, b.column(j)));
    return x;
}

Matrix solve_lower_transposed(const Matrix& l, const Matrix& b) {
    Matrix x(b.rows(), b.cols());
    for (std::size_t j = 0; j < b.cols(); ++j)
        x.set_column(j, solve_lower_transposed(l, b.column(j)));
    return x;
}

}  // namespace specbio
