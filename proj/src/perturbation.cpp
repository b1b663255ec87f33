#include "specbio/perturbation.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "specbio/errors.hpp"

namespace specbio {

namespace {

void require_aligned(const SpectralModel& h0, const SpectralModel& hd) {
    if (h0.p() != hd.p()) {
        std::ostringstream os;
        os << "model alignment error: dimensions differ (" << h0.p() << " vs " << hd.p() << ")";
        throw InputError(os.str());
    }
    if (h0.biomarker_names != hd.biomarker_names) {
        std::ostringstream os;
        os << "model alignment error: biomarker names differ;";
        for (std::size_t i = 0; i < h0.p(); ++i) {
            if (h0.biomarker_names[i] != hd.biomarker_names[i])
                os << " [" << i << "] " << h0.biomarker_names[i] << " vs "
                   << hd.biomarker_names[i];
        }
        throw InputError(os.str());
    }
}

double mode_angle(const SpectralModel& h0, const SpectralModel& hd, std::size_t k0) {
    double dot = 0.0;
    for (std::size_t r = 0; r < h0.p(); ++r)
        dot += h0.eigen.vectors(r, k0) * hd.eigen.vectors(r, k0);
    // Sign-invariant: eigenvector orientation is a convention, not data.
    return std::acos(std::clamp(std::fabs(dot), 0.0, 1.0));
}

}  // namespace

SymMatrix perturbation_delta(const SpectralModel& h0, const SpectralModel& hd) {
    require_aligned(h0, hd);
    return hd.H - h0.H;
}

WeylResult weyl_check(const SpectralModel& h0, const SpectralModel& hd) {
    require_aligned(h0, hd);
    WeylResult res;
    res.delta_norm = spectral_norm(hd.H - h0.H);
    res.shifts.resize(h0.p());
    for (std::size_t k = 0; k < h0.p(); ++k) {
        res.shifts[k] = hd.eigen.values[k] - h0.eigen.values[k];
        if (std::fabs(res.shifts[k]) > res.delta_norm + 1e-9) {
            std::ostringstream os;
            os << "Weyl certificate violation at mode " << (k + 1) << ": |shift| "
               << std::fabs(res.shifts[k]) << " exceeds ||dH||_2 " << res.delta_norm
               << " (residual " << std::fabs(res.shifts[k]) - res.delta_norm << ")";
            throw CertificateError(os.str());
        }
    }
    return res;
}

double disruption_index(const SpectralModel& h0, const SpectralModel& hd) {
    require_aligned(h0, hd);
    const double l0 = h0.eigen.values[0];
    if (l0 <= 1e-12)
        throw InputError("disruption_index: degenerate reference (lambda1 <= 1e-12)");
    return (hd.eigen.values[0] - l0) / l0;
}

DkResult davis_kahan_check(const SpectralModel& h0, const SpectralModel& hd, std::size_t k) {
    require_aligned(h0, hd);
    const std::size_t p = h0.p();
    if (k < 1 || k > p) throw InputError("davis_kahan_check: mode index out of range");
    const std::size_t idx = k - 1;

    DkResult res;
    res.angle = mode_angle(h0, hd, idx);

    const auto& lam = h0.eigen.values;
    double gap;
    if (p == 1) {
        gap = 0.0;  // single mode: no spectral separation to speak of
    } else if (idx == 0) {
        gap = lam[0] - lam[1];
    } else if (idx == p - 1) {
        gap = lam[p - 2] - lam[p - 1];
        res.extended = true;
    } else {
        gap = std::min(lam[idx - 1] - lam[idx], lam[idx] - lam[idx + 1]);
        res.extended = true;
    }

    if (gap <= 1e-9) {
        res.status = DkStatus::inapplicable;
        return res;
    }

    const double ratio = spectral_norm(hd.H - h0.H) / gap;
    res.bound = ratio;
    if (ratio > 1.0) {
        res.status = DkStatus::vacuous;
        return res;
    }
    res.status = DkStatus::certified;
    if (idx == 0 && std::sin(res.angle) > ratio + 1e-9) {
        std::ostringstream os;
        os << "Davis-Kahan certificate violation at leading mode: sin(angle) "
           << std::sin(res.angle) << " exceeds bound " << ratio;
        throw CertificateError(os.str());
    }
    return res;
}

PerturbationReport fingerprint(const SpectralModel& h0, const SpectralModel& hd) {
    require_aligned(h0, hd);
    const std::size_t p = h0.p();

    PerturbationReport rep;
    rep.delta_H = hd.H - h0.H;
    rep.delta_norm = spectral_norm(rep.delta_H);
    rep.eigengap0 = p > 1 ? h0.eigen.values[0] - h0.eigen.values[1] : 0.0;
    rep.phi = disruption_index(h0, hd);
    rep.phi_bound = rep.delta_norm / h0.eigen.values[0];

    constexpr double pi = std::numbers::pi;
    rep.modes.resize(p);
    for (std::size_t k = 0; k < p; ++k) {
        ModeRecord& m = rep.modes[k];
        m.mode = k + 1;
        m.lambda0 = h0.eigen.values[k];
        m.lambdad = hd.eigen.values[k];
        m.shift = m.lambdad - m.lambda0;
        m.weyl_bound = rep.delta_norm;
        if (std::fabs(m.shift) > rep.delta_norm + 1e-9) {
            std::ostringstream os;
            os << "Weyl certificate violation at mode " << (k + 1);
            throw CertificateError(os.str());
        }
        DkResult dk = davis_kahan_check(h0, hd, k + 1);
        m.angle = dk.angle;
        m.dk_bound = dk.bound;
        m.dk_status = dk.status;
        m.dk_extended = dk.extended;

        // Rank pairing can mislead when eigenvalues cross: flag modes whose
        // rank-paired angle is large while some off-rank pairing is tight.
        if (m.angle > pi / 3.0) {
            for (std::size_t j = 0; j < p && !m.crossing_suspected; ++j) {
                if (j == k) continue;
                double dot = 0.0;
                for (std::size_t r = 0; r < p; ++r)
                    dot += h0.eigen.vectors(r, k) * hd.eigen.vectors(r, j);
                if (std::acos(std::clamp(std::fabs(dot), 0.0, 1.0)) < pi / 6.0)
                    m.crossing_suspected = true;
            }
        }
    }
    return rep;
}

}  // namespace specbio
