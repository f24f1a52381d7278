#include "cgur/state_models.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "cgur/numerics.hpp"

namespace cgur {
namespace {

constexpr double kTwoPi = 2.0 * std::numbers::pi;

double gaussian_density(double z, double mean, double sigma) {
    const double t = (z - mean) / sigma;
    return std::exp(-0.5 * t * t) / (sigma * std::sqrt(kTwoPi));
}

// 53-bit uniform in (0,1) from raw engine output; does not depend on the
// standard library's (implementation-defined) distribution adaptors.
double uniform01(std::mt19937_64& eng) {
    return (static_cast<double>(eng() >> 11) + 0.5) * 0x1.0p-53;
}

// Exact moments (m0, m1, m2) of a piecewise-linear density given at uniform
// grid nodes.
struct CellMoments {
    double m0 = 0.0, m1 = 0.0, m2 = 0.0;
};

CellMoments interpolant_moments(const std::vector<double>& pdf, double x_min, double dx) {
    CellMoments m;
    for (std::size_t i = 0; i + 1 < pdf.size(); ++i) {
        const double pa = pdf[i];
        const double pb = pdf[i + 1];
        const double x0 = x_min + static_cast<double>(i) * dx;
        const double s0 = dx * (pa + pb) / 2.0;
        const double s1 = dx * dx * (pa + 2.0 * pb) / 6.0;          // Integral u*p du
        const double s2 = dx * dx * dx * (pa / 12.0 + pb / 4.0);    // Integral u^2*p du
        m.m0 += s0;
        m.m1 += x0 * s0 + s1;
        m.m2 += x0 * x0 * s0 + 2.0 * x0 * s1 + s2;
    }
    return m;
}

double interpolate(const std::vector<double>& v, double z0, double dz, double z) {
    const double span = dz * static_cast<double>(v.size() - 1);
    if (z < z0 || z > z0 + span) return 0.0;
    double t = (z - z0) / dz;
    auto i = static_cast<std::size_t>(t);
    if (i + 1 >= v.size()) i = v.size() - 2;
    t -= static_cast<double>(i);
    return v[i] + t * (v[i + 1] - v[i]);
}

// CDF of the interpolant, exact within each cell (quadratic in z).
double interpolant_cdf(const std::vector<double>& pdf, const std::vector<double>& cdf,
                       double z0, double dz, double z) {
    const double span = dz * static_cast<double>(pdf.size() - 1);
    if (z <= z0) return 0.0;
    if (z >= z0 + span) return cdf.back();
    auto i = static_cast<std::size_t>((z - z0) / dz);
    if (i + 1 >= pdf.size()) i = pdf.size() - 2;
    const double u = z - (z0 + static_cast<double>(i) * dz);
    const double pa = pdf[i];
    const double pb = pdf[i + 1];
    return cdf[i] + pa * u + (pb - pa) * u * u / (2.0 * dz);
}

std::vector<double> trapezoid_cdf(const std::vector<double>& pdf, double dz) {
    std::vector<double> cdf(pdf.size());
    cdf[0] = 0.0;
    for (std::size_t i = 0; i + 1 < pdf.size(); ++i) {
        cdf[i + 1] = cdf[i] + dz * (pdf[i] + pdf[i + 1]) / 2.0;
    }
    return cdf;
}

double entropy_integrand(double density) {
    return density > 0.0 ? -density * std::log(density) : 0.0;
}

num::QuadratureSpec tight_spec() { return {1e-12, 1e-12, 4000}; }

// Entropy of a gridded density: 15-point Kronrod per cell (the integrand is
// smooth inside each cell; adaptive splitting across ~10^3 knots is wasteful).
double interpolant_entropy(const std::vector<double>& pdf, double z0, double dz) {
    static constexpr double kN[8] = {
        0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
        0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
        0.586087235467691130294144838258730, 0.405845151377397166906606412076961,
        0.207784955007898467600689403773245, 0.0};
    static constexpr double kW[8] = {
        0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
        0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
        0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
        0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
    double total = 0.0;
    const double half = dz / 2.0;
    for (std::size_t i = 0; i + 1 < pdf.size(); ++i) {
        const double pa = pdf[i];
        const double pb = pdf[i + 1];
        const auto value_at = [&](double t) {  // t in [-1,1] across the cell
            return entropy_integrand(pa + (pb - pa) * (t + 1.0) / 2.0);
        };
        double acc = kW[7] * value_at(0.0);
        for (int k = 0; k < 7; ++k) {
            acc += kW[k] * (value_at(-kN[k]) + value_at(kN[k]));
        }
        total += acc * half;
    }
    return total;
}

}  // namespace

StateModel StateModel::gaussian_squeezed(double sigma_x, double sigma_p, double mean_x,
                                         double mean_p, double hbar) {
    if (!(hbar > 0.0) || !std::isfinite(hbar)) {
        throw std::invalid_argument("StateModel: hbar must be positive");
    }
    if (!(sigma_x > 0.0) || !(sigma_p > 0.0) || !std::isfinite(sigma_x) ||
        !std::isfinite(sigma_p) || !std::isfinite(mean_x) || !std::isfinite(mean_p)) {
        throw std::invalid_argument("StateModel: Gaussian parameters must be finite, sigmas > 0");
    }
    if (sigma_x * sigma_p < 0.5 * hbar * (1.0 - 1e-12)) {
        throw std::invalid_argument(
            "StateModel: sigma_x*sigma_p < hbar/2 is not a physical state");
    }
    return StateModel(StateKind::GaussianSqueezed, hbar,
                      GaussianSqueezedParams{sigma_x, sigma_p, mean_x, mean_p});
}

StateModel StateModel::ground_state(double hbar) {
    const double s = std::sqrt(0.5 * hbar);
    return gaussian_squeezed(s, s, 0.0, 0.0, hbar);
}

StateModel StateModel::truncated_gaussian(double kappa, double width, double hbar) {
    if (!(hbar > 0.0) || !(width > 0.0) || !std::isfinite(kappa) || !std::isfinite(width)) {
        throw std::invalid_argument("StateModel: truncated Gaussian needs width > 0, finite kappa");
    }
    // Normalize numerically; for kappa > 0 this agrees with
    // sqrt(pi/kappa)*erf(width*sqrt(kappa)/2) (checked in tests).
    const double z = num::integrate([kappa](double x) { return std::exp(-kappa * x * x); },
                                    -width / 2.0, width / 2.0, tight_spec())
                         .value;
    return StateModel(StateKind::TruncatedGaussian, hbar,
                      TruncatedGaussianData{{kappa, width}, 1.0 / z});
}

StateModel StateModel::numeric_wavefunction(std::vector<std::complex<double>> psi,
                                            double spacing, double x_min, double hbar) {
    if (!(hbar > 0.0) || !(spacing > 0.0) || !std::isfinite(x_min)) {
        throw std::invalid_argument("StateModel: bad wavefunction grid parameters");
    }
    if (psi.size() < 8) {
        throw std::invalid_argument("StateModel: wavefunction needs at least 8 samples");
    }
    for (const auto& c : psi) {
        if (!std::isfinite(c.real()) || !std::isfinite(c.imag())) {
            throw std::invalid_argument("StateModel: wavefunction samples must be finite");
        }
    }
    NumericWavefunctionData d;
    d.x_min = x_min;
    d.dx = spacing;

    const std::size_t n = psi.size();
    d.pdf_x.resize(n);
    for (std::size_t i = 0; i < n; ++i) d.pdf_x[i] = std::norm(psi[i]);
    d.cdf_x = trapezoid_cdf(d.pdf_x, spacing);
    const double norm = d.cdf_x.back();
    if (!(norm > 0.0)) throw std::invalid_argument("StateModel: wavefunction has zero norm");
    for (auto& v : d.pdf_x) v /= norm;
    for (auto& v : d.cdf_x) v /= norm;
    const double amp = 1.0 / std::sqrt(norm);
    for (auto& c : psi) c *= amp;
    d.psi = std::move(psi);

    // Momentum grid: discrete Fourier transform with kernel
    // exp(-i p x / hbar)/sqrt(2 pi hbar) on the conjugate (Nyquist) grid.
    const auto ln = static_cast<long>(n);
    const long n_lo = -(ln / 2);
    d.dp = kTwoPi * hbar / (static_cast<double>(n) * spacing);
    d.p_min = static_cast<double>(n_lo) * d.dp;
    d.pdf_p.resize(n);
    const double prefactor = spacing / std::sqrt(kTwoPi * hbar);
    for (long k = 0; k < ln; ++k) {
        const double p = d.p_min + static_cast<double>(k) * d.dp;
        const std::complex<double> step = std::polar(1.0, -p * spacing / hbar);
        std::complex<double> phase = std::polar(1.0, -p * x_min / hbar);
        std::complex<double> acc = 0.0;
        for (std::size_t m = 0; m < n; ++m) {
            acc += d.psi[m] * phase;
            phase *= step;
        }
        d.pdf_p[static_cast<std::size_t>(k)] = std::norm(acc * prefactor);
    }
    d.cdf_p = trapezoid_cdf(d.pdf_p, d.dp);
    const double pnorm = d.cdf_p.back();
    if (!(pnorm > 0.0)) throw std::invalid_argument("StateModel: degenerate momentum grid");
    for (auto& v : d.pdf_p) v /= pnorm;
    for (auto& v : d.cdf_p) v /= pnorm;

    const CellMoments mx = interpolant_moments(d.pdf_x, d.x_min, d.dx);
    d.mean_x = mx.m1 / mx.m0;
    d.var_x = mx.m2 / mx.m0 - d.mean_x * d.mean_x;
    const CellMoments mp = interpolant_moments(d.pdf_p, d.p_min, d.dp);
    d.mean_p = mp.m1 / mp.m0;
    d.var_p = mp.m2 / mp.m0 - d.mean_p * d.mean_p;

    return StateModel(StateKind::NumericWavefunction, hbar, std::move(d));
}

void StateModel::require_momentum_side() const {
    if (!has_momentum_side()) {
        throw MomentumUndefined("truncated_gaussian defines no momentum-side distribution");
    }
}

double StateModel::position_pdf(double x) const {
    switch (kind_) {
        case StateKind::GaussianSqueezed: {
            const auto& g = std::get<GaussianSqueezedParams>(data_);
            return gaussian_density(x, g.mean_x, g.sigma_x);
        }
        case StateKind::TruncatedGaussian: {
            const auto& t = std::get<TruncatedGaussianData>(data_);
            if (std::abs(x) > t.params.width / 2.0) return 0.0;
            return std::exp(-t.params.kappa * x * x) * t.inv_norm;
        }
        case StateKind::NumericWavefunction: {
            const auto& d = std::get<NumericWavefunctionData>(data_);
            return interpolate(d.pdf_x, d.x_min, d.dx, x);
        }
    }
    return 0.0;
}

double StateModel::momentum_pdf(double p) const {
    require_momentum_side();
    if (kind_ == StateKind::GaussianSqueezed) {
        const auto& g = std::get<GaussianSqueezedParams>(data_);
        return gaussian_density(p, g.mean_p, g.sigma_p);
    }
    const auto& d = std::get<NumericWavefunctionData>(data_);
    return interpolate(d.pdf_p, d.p_min, d.dp, p);
}

double StateModel::mean_x() const {
    switch (kind_) {
        case StateKind::GaussianSqueezed:
            return std::get<GaussianSqueezedParams>(data_).mean_x;
        case StateKind::TruncatedGaussian:
            return 0.0;  // even density
        case StateKind::NumericWavefunction:
            return std::get<NumericWavefunctionData>(data_).mean_x;
    }
    return 0.0;
}

double StateModel::mean_p() const {
    require_momentum_side();
    if (kind_ == StateKind::GaussianSqueezed) {
        return std::get<GaussianSqueezedParams>(data_).mean_p;
    }
    return std::get<NumericWavefunctionData>(data_).mean_p;
}

double StateModel::exact_variance_x() const {
    switch (kind_) {
        case StateKind::GaussianSqueezed: {
            const double s = std::get<GaussianSqueezedParams>(data_).sigma_x;
            return s * s;
        }
        case StateKind::TruncatedGaussian: {
            const auto& t = std::get<TruncatedGaussianData>(data_);
            const double k = t.params.kappa;
            const double w = t.params.width;
            if (k > 0.0) {
                return 0.5 / k - (w / (2.0 * std::sqrt(k * std::numbers::pi))) *
                                     std::exp(-k * w * w / 4.0) /
                                     num::erf(w * std::sqrt(k) / 2.0);
            }
            // kappa <= 0: no erf form without erfi; quadrature instead
            return num::integrate([this](double x) { return x * x * position_pdf(x); },
                                  -w / 2.0, w / 2.0, tight_spec())
                .value;
        }
        case StateKind::NumericWavefunction:
            return std::get<NumericWavefunctionData>(data_).var_x;
    }
    return 0.0;
}

double StateModel::exact_variance_p() const {
    require_momentum_side();
    if (kind_ == StateKind::GaussianSqueezed) {
        const double s = std::get<GaussianSqueezedParams>(data_).sigma_p;
        return s * s;
    }
    return std::get<NumericWavefunctionData>(data_).var_p;
}

double StateModel::entropy_x() const {
    if (kind_ == StateKind::NumericWavefunction) {
        const auto& d = std::get<NumericWavefunctionData>(data_);
        return interpolant_entropy(d.pdf_x, d.x_min, d.dx);
    }
    const Interval s = support_x(1e-13);
    return num::integrate([this](double x) { return entropy_integrand(position_pdf(x)); },
                          s.lo, s.hi, tight_spec())
        .value;
}

double StateModel::entropy_p() const {
    require_momentum_side();
    if (kind_ == StateKind::NumericWavefunction) {
        const auto& d = std::get<NumericWavefunctionData>(data_);
        return interpolant_entropy(d.pdf_p, d.p_min, d.dp);
    }
    const Interval s = support_p(1e-13);
    return num::integrate([this](double p) { return entropy_integrand(momentum_pdf(p)); },
                          s.lo, s.hi, tight_spec())
        .value;
}

Interval StateModel::support_x(double mass_tol) const {
    switch (kind_) {
        case StateKind::GaussianSqueezed: {
            const auto& g = std::get<GaussianSqueezedParams>(data_);
            return num::tail_bound_interval(
                [this](double x) { return position_pdf(x); }, g.mean_x, mass_tol, {},
                4.0 * g.sigma_x);
        }
        case StateKind::TruncatedGaussian: {
            const double w = std::get<TruncatedGaussianData>(data_).params.width;
            return {-w / 2.0, w / 2.0};
        }
        case StateKind::NumericWavefunction: {
            const auto& d = std::get<NumericWavefunctionData>(data_);
            return {d.x_min, d.x_min + d.dx * static_cast<double>(d.pdf_x.size() - 1)};
        }
    }
    return {};
}

Interval StateModel::support_p(double mass_tol) const {
    require_momentum_side();
    if (kind_ == StateKind::GaussianSqueezed) {
        const auto& g = std::get<GaussianSqueezedParams>(data_);
        return num::tail_bound_interval([this](double p) { return momentum_pdf(p); }, g.mean_p,
                                        mass_tol, {}, 4.0 * g.sigma_p);
    }
    const auto& d = std::get<NumericWavefunctionData>(data_);
    return {d.p_min, d.p_min + d.dp * static_cast<double>(d.pdf_p.size() - 1)};
}

namespace {

std::vector<double> sample_tabulated(const std::function<double(double)>& pdf,
                                     const Interval& support, std::uint64_t seed,
                                     std::size_t n) {
    constexpr std::size_t kCells = 16384;
    const double step = support.length() / static_cast<double>(kCells);
    std::vector<double> cdf(kCells + 1);
    cdf[0] = 0.0;
    double prev = pdf(support.lo);
    for (std::size_t i = 1; i <= kCells; ++i) {
        const double cur = pdf(support.lo + step * static_cast<double>(i));
        cdf[i] = cdf[i - 1] + step * (prev + cur) / 2.0;
        prev = cur;
    }
    const double total = cdf.back();
    if (!(total > 0.0)) throw std::invalid_argument("sample: pdf has no mass on its support");
    for (auto& c : cdf) c /= total;

    std::mt19937_64 eng(seed);
    std::vector<double> out(n);
    for (std::size_t k = 0; k < n; ++k) {
        const double u = uniform01(eng);
        const auto it = std::upper_bound(cdf.begin(), cdf.end(), u);
        const auto i = static_cast<std::size_t>(std::distance(cdf.begin(), it)) - 1;
        const double frac = (u - cdf[i]) / (cdf[i + 1] - cdf[i]);
        out[k] = support.lo + step * (static_cast<double>(i) + frac);
    }
    return out;
}

}  // namespace

std::vector<double> StateModel::sample_x(std::uint64_t seed, std::size_t n) const {
    if (n < 1) throw std::invalid_argument("sample_x: n must be >= 1");
    return sample_tabulated([this](double x) { return position_pdf(x); }, support_x(1e-12),
                            seed, n);
}

std::vector<double> StateModel::sample_p(std::uint64_t seed, std::size_t n) const {
    if (n < 1) throw std::invalid_argument("sample_p: n must be >= 1");
    require_momentum_side();
    return sample_tabulated([this](double p) { return momentum_pdf(p); }, support_p(1e-12),
                            seed, n);
}

double StateModel::numeric_position_cdf(double x) const {
    const auto* d = numeric_data();
    if (d == nullptr) {
        throw std::logic_error("numeric_position_cdf: state is not a numeric wavefunction");
    }
    return interpolant_cdf(d->pdf_x, d->cdf_x, d->x_min, d->dx, x);
}

double StateModel::numeric_momentum_cdf(double p) const {
    const auto* d = numeric_data();
    if (d == nullptr) {
        throw std::logic_error("numeric_momentum_cdf: state is not a numeric wavefunction");
    }
    return interpolant_cdf(d->pdf_p, d->cdf_p, d->p_min, d->dp, p);
}

const GaussianSqueezedParams* StateModel::gaussian_params() const {
    return std::get_if<GaussianSqueezedParams>(&data_);
}

const TruncatedGaussianParams* StateModel::truncated_params() const {
    const auto* d = std::get_if<TruncatedGaussianData>(&data_);
    return d != nullptr ? &d->params : nullptr;
}

const NumericWavefunctionData* StateModel::numeric_data() const {
    return std::get_if<NumericWavefunctionData>(&data_);
}

}  // namespace cgur
