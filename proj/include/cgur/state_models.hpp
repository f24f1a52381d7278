#pragma once

#include <complex>
#include <cstdint>
#include <variant>
#include <vector>

#include "cgur/errors.hpp"

namespace cgur {

enum class StateKind { GaussianSqueezed, TruncatedGaussian, NumericWavefunction };

struct GaussianSqueezedParams {
    double sigma_x;
    double sigma_p;
    double mean_x = 0.0;
    double mean_p = 0.0;
};

struct TruncatedGaussianParams {
    double kappa;  // may be negative (inverted bump) or zero (uniform)
    double width;  // support is [-width/2, width/2]
};

// Internal representation of a user-supplied wavefunction on a uniform grid.
// psi is renormalized at construction; the momentum grid is the discrete
// Fourier transform of psi on the conjugate (Nyquist-limited) grid.
struct NumericWavefunctionData {
    std::vector<std::complex<double>> psi;
    double x_min = 0.0;
    double dx = 0.0;
    std::vector<double> pdf_x;  // |psi|^2 at the nodes
    std::vector<double> cdf_x;  // exact integral of the linear interpolant up to each node
    std::vector<double> pdf_p;  // renormalized |phi|^2 on the conjugate grid
    std::vector<double> cdf_p;
    double p_min = 0.0;
    double dp = 0.0;
    double mean_x = 0.0, var_x = 0.0;
    double mean_p = 0.0, var_p = 0.0;
};

/// A continuous-variable state exposing its position/momentum probability
/// densities, exact moments, differential entropies, and inverse-CDF
/// samplers. Immutable after construction; safe to share across threads.
class StateModel {
public:
    static StateModel gaussian_squeezed(double sigma_x, double sigma_p, double mean_x = 0.0,
                                        double mean_p = 0.0, double hbar = 1.0);
    /// Minimum-uncertainty symmetric Gaussian: sigma_x = sigma_p = sqrt(hbar/2).
    static StateModel ground_state(double hbar = 1.0);
    static StateModel truncated_gaussian(double kappa, double width, double hbar = 1.0);
    static StateModel numeric_wavefunction(std::vector<std::complex<double>> psi,
                                           double spacing, double x_min, double hbar = 1.0);

    StateKind kind() const { return kind_; }
    double hbar() const { return hbar_; }
    bool has_momentum_side() const { return kind_ != StateKind::TruncatedGaussian; }

    double position_pdf(double x) const;
    /// Throws MomentumUndefined for kinds without a momentum-side density.
    double momentum_pdf(double p) const;

    double mean_x() const;
    double mean_p() const;
    double exact_variance_x() const;
    double exact_variance_p() const;

    /// Differential entropy -Integral(pdf ln pdf), computed by quadrature.
    double entropy_x() const;
    double entropy_p() const;

    /// Interval holding all but mass_tol of the probability mass.
    Interval support_x(double mass_tol) const;
    Interval support_p(double mass_tol) const;

    /// n i.i.d. draws via inverse-CDF on a tabulated CDF; deterministic per seed.
    std::vector<double> sample_x(std::uint64_t seed, std::size_t n) const;
    std::vector<double> sample_p(std::uint64_t seed, std::size_t n) const;

    /// CDF of the piecewise-linear pdf, exact; NumericWavefunction kind only.
    double numeric_position_cdf(double x) const;
    double numeric_momentum_cdf(double p) const;

    // Parameter access for serialization; null when the kind does not match.
    const GaussianSqueezedParams* gaussian_params() const;
    const TruncatedGaussianParams* truncated_params() const;
    const NumericWavefunctionData* numeric_data() const;

private:
    struct TruncatedGaussianData {
        TruncatedGaussianParams params;
        double inv_norm;  // 1 / Integral exp(-kappa x^2) over the support
    };

    StateModel(StateKind kind, double hbar,
               std::variant<GaussianSqueezedParams, TruncatedGaussianData,
                            NumericWavefunctionData>
                   data)
        : kind_(kind), hbar_(hbar), data_(std::move(data)) {}

    void require_momentum_side() const;

    StateKind kind_;
    double hbar_;
    std::variant<GaussianSqueezedParams, TruncatedGaussianData, NumericWavefunctionData> data_;
};

}  // namespace cgur
