#pragma once

#include <functional>
#include <map>

#include "cgur/errors.hpp"
#include "cgur/state_models.hpp"

namespace cgur {

/// Uniform binning of the real line. Bin j covers the half-open interval
/// [(j-1/2)*width + offset, (j+1/2)*width + offset), so every point belongs
/// to exactly one bin; the center of bin j is j*width + offset.
struct BinGrid {
    double width;
    double offset;

    explicit BinGrid(double width_, double offset_ = 0.0) : width(width_), offset(offset_) {
        if (!(width > 0.0)) throw std::invalid_argument("BinGrid: width must be > 0");
    }

    long index_of(double z) const {
        return static_cast<long>(std::floor((z - offset) / width + 0.5));
    }
    double center(long j) const { return static_cast<double>(j) * width + offset; }
    double lower_edge(long j) const { return (static_cast<double>(j) - 0.5) * width + offset; }
    double upper_edge(long j) const { return (static_cast<double>(j) + 0.5) * width + offset; }

    /// Grid whose nearest bin center coincides with `mean` (offset in [-w/2, w/2)).
    static BinGrid centered_on(double width, double mean);
};

/// Probabilities over a BinGrid's bins, with the un-enumerated remainder
/// tracked as tail_mass. probs are >= 0 and sum + tail_mass == 1 (to 1e-9).
class DiscreteDist {
public:
    DiscreteDist(BinGrid grid, std::map<long, double> probs, double tail_mass);

    const BinGrid& grid() const { return grid_; }
    const std::map<long, double>& probs() const { return probs_; }
    double tail_mass() const { return tail_mass_; }
    double prob(long j) const {
        const auto it = probs_.find(j);
        return it == probs_.end() ? 0.0 : it->second;
    }

private:
    BinGrid grid_;
    std::map<long, double> probs_;
    double tail_mass_;
};

/// Integrates the pdf over every bin meeting the pdf's mass interval
/// (located by tail_bound_interval around center_hint).
DiscreteDist bin_probabilities(const std::function<double(double)>& pdf, const BinGrid& grid,
                               double mass_tol = 1e-12, double center_hint = 0.0);

/// State-aware binning; uses the state's own support interval.
DiscreteDist bin_position(const StateModel& state, const BinGrid& grid,
                          double mass_tol = 1e-12);
DiscreteDist bin_momentum(const StateModel& state, const BinGrid& grid,
                          double mass_tol = 1e-12);

/// Mean/variance/entropy of the bin-center-valued distribution, with probs
/// renormalized by 1 - tail_mass. Entropy uses 0*ln(0) = 0.
double discrete_mean(const DiscreteDist& d);
double discrete_variance(const DiscreteDist& d);
double discrete_entropy(const DiscreteDist& d);

/// Histogram density: probs[j]/width on bin j, zero on un-enumerated bins.
/// Integrates to 1 - tail_mass.
class CoarsePDF {
public:
    explicit CoarsePDF(DiscreteDist source) : source_(std::move(source)) {}

    const DiscreteDist& source() const { return source_; }
    double width() const { return source_.grid().width; }
    double density(double z) const {
        return source_.prob(source_.grid().index_of(z)) / width();
    }
    double integral() const { return 1.0 - source_.tail_mass(); }

private:
    DiscreteDist source_;
};

CoarsePDF coarse_pdf(DiscreteDist d);

/// Variance of the histogram density. Computed two independent ways — direct
/// moment quadrature of the piecewise-constant density, and
/// discrete_variance + width^2/12 — which must agree to 1e-8
/// (InternalInconsistency otherwise). Returns the direct value.
double coarse_variance(const CoarsePDF& w);

/// Differential entropy of the histogram density; direct quadrature
/// cross-checked against discrete_entropy + ln(width) at 1e-8. Returns the
/// direct value.
double coarse_entropy(const CoarsePDF& w);

}  // namespace cgur
