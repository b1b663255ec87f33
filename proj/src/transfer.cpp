#include "specbio/transfer.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "specbio/errors.hpp"

namespace specbio {

namespace {

void require_orthonormal(const Matrix& q, const char* which) {
    for (std::size_t i = 0; i < q.cols(); ++i) {
        for (std::size_t j = i; j < q.cols(); ++j) {
            double dot = 0.0;
            for (std::size_t r = 0; r < q.rows(); ++r) dot += q(r, i) * q(r, j);
            const double expect = i == j ? 1.0 : 0.0;
            if (std::fabs(dot - expect) > 1e-8) {
                std::ostringstream os;
                os << which << " basis is not orthonormal: |<q" << i << ",q" << j
                   << "> - " << expect << "| = " << std::fabs(dot - expect);
                throw InputError(os.str());
            }
        }
    }
}

Matrix leading_columns(const EigenSystem& es, std::size_t r) {
    Matrix q(es.vectors.rows(), r);
    for (std::size_t k = 0; k < r; ++k)
        for (std::size_t i = 0; i < es.vectors.rows(); ++i) q(i, k) = es.vectors(i, k);
    return q;
}

}  // namespace

std::vector<double> principal_angles(const Matrix& qs, const Matrix& qt) {
    if (qs.rows() != qt.rows() || qs.cols() != qt.cols())
        throw InputError("principal_angles: basis shapes differ");
    if (qs.cols() > qs.rows())
        throw InputError("principal_angles: rank exceeds ambient dimension");
    require_orthonormal(qs, "source");
    require_orthonormal(qt, "target");

    Matrix c = matmul(qs.transposed(), qt);
    Svd svd = small_svd(c);
    std::vector<double> theta(c.cols());
    for (std::size_t k = 0; k < theta.size(); ++k)
        theta[k] = std::acos(std::clamp(svd.singular_values[k], 0.0, 1.0));
    std::sort(theta.begin(), theta.end());
    return theta;
}

double subspace_distance(const std::vector<double>& angles) {
    double s = 0.0;
    for (double t : angles) {
        const double st = std::sin(t);
        s += st * st;
    }
    return std::sqrt(s);
}

double transfer_bound(double m, double theta1) {
    if (m < 0.0) throw InputError("transfer_bound: norm cap must be >= 0");
    return m * 2.0 * std::sin(theta1 / 2.0);
}

TransferDiagnostics transfer_verdict(const SpectralModel& hs, const SpectralModel& ht,
                                     std::size_t r, const TransferPolicy& policy) {
    if (hs.p() != ht.p()) throw InputError("transfer_verdict: dimension mismatch");
    if (hs.biomarker_names != ht.biomarker_names)
        throw InputError("transfer_verdict: biomarker names differ");
    if (r < 1 || r > hs.p()) throw InputError("transfer_verdict: rank r out of range");

    TransferDiagnostics diag;
    diag.r = r;
    diag.principal_angles =
        principal_angles(leading_columns(hs.eigen, r), leading_columns(ht.eigen, r));
    diag.subspace_distance = subspace_distance(diag.principal_angles);
    diag.leading_bound = 2.0 * std::sin(diag.principal_angles.front() / 2.0);

    const double gap = hs.p() > 1 ? hs.eigen.values[0] - hs.eigen.values[1] : 0.0;
    if (gap <= 1e-9) {
        diag.verdict = TransferVerdict::ill_conditioned;
        diag.reason = "degenerate source eigengap";
        return diag;
    }

    const double ratio = spectral_norm(hs.H - ht.H) / gap;
    diag.dk_ratio = ratio;
    diag.dk_vacuous = ratio > 1.0;
    const double theta1 = diag.principal_angles.front();
    if (ratio <= 1.0 && std::sin(theta1) > ratio + 1e-9) {
        std::ostringstream os;
        os << "transfer Davis-Kahan certificate violation: sin(theta1) " << std::sin(theta1)
           << " exceeds ratio " << ratio;
        throw CertificateError(os.str());
    }

    if (diag.dk_vacuous || theta1 > policy.theta1_ill_rad) {
        diag.verdict = TransferVerdict::ill_conditioned;
        diag.reason = diag.dk_vacuous ? "vacuous Davis-Kahan ratio" : "leading angle too large";
    } else if (ratio <= policy.dk_ratio_well && theta1 <= policy.theta1_well_rad) {
        diag.verdict = TransferVerdict::well_conditioned;
        diag.reason = "small perturbation and tight leading angle";
    } else {
        diag.verdict = TransferVerdict::marginal;
        diag.reason = "between well- and ill-conditioned thresholds";
    }
    return diag;
}

const char* to_string(TransferVerdict v) {
    switch (v) {
        case TransferVerdict::well_conditioned: return "well_conditioned";
        case TransferVerdict::marginal: return "marginal";
        case TransferVerdict::ill_conditioned: return "ill_conditioned";
    }
    return "unknown";
}

}  // namespace specbio
