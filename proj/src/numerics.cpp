#include "cgur/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <vector>

namespace cgur::num {
namespace {

// (G7,K15) nodes and weights on [-1,1], QUADPACK dqk15 values. Odd-index
// Kronrod nodes are the embedded Gauss-7 nodes.
constexpr double kNodes[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000,
};
constexpr double kWeightK[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714,
};
constexpr double kWeightG[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327,
};

struct Segment {
    double a;
    double b;
    double value;
    double err;
    // max-heap on error
    bool operator<(const Segment& o) const { return err < o.err; }
};

Segment evaluate_segment(const std::function<double(double)>& f, double a, double b) {
    const double mid = 0.5 * (a + b);
    const double half = 0.5 * (b - a);

    double fv[15];
    const double fc = f(mid);
    double resk = kWeightK[7] * fc;
    double resg = kWeightG[3] * fc;
    double resabs = kWeightK[7] * std::abs(fc);
    fv[14] = fc;
    for (int i = 0; i < 7; ++i) {
        const double dx = half * kNodes[i];
        const double f1 = f(mid - dx);
        const double f2 = f(mid + dx);
        fv[2 * i] = f1;
        fv[2 * i + 1] = f2;
        resk += kWeightK[i] * (f1 + f2);
        resabs += kWeightK[i] * (std::abs(f1) + std::abs(f2));
        if (i % 2 == 1) resg += kWeightG[i / 2] * (f1 + f2);
    }

    // QUADPACK-style error estimate from the scaled |f - mean| sum.
    const double mean = 0.5 * resk;
    double resasc = kWeightK[7] * std::abs(fc - mean);
    for (int i = 0; i < 7; ++i) {
        resasc += kWeightK[i] * (std::abs(fv[2 * i] - mean) + std::abs(fv[2 * i + 1] - mean));
    }
    resasc *= half;

    double err = std::abs((resk - resg) * half);
    if (resasc != 0.0 && err != 0.0) {
        err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
    }
    const double eps_floor = 50.0 * std::numeric_limits<double>::epsilon() * resabs * half;
    err = std::max(err, eps_floor);

    return {a, b, resk * half, err};
}

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a, double b,
                           const QuadratureSpec& spec) {
    if (!std::isfinite(a) || !std::isfinite(b) || !(a < b)) {
        throw std::invalid_argument("integrate: requires finite bounds with a < b");
    }
    if (spec.max_subdivisions < 1) {
        throw std::invalid_argument("integrate: max_subdivisions must be >= 1");
    }

    std::vector<Segment> heap;
    heap.push_back(evaluate_segment(f, a, b));
    double total_value = heap[0].value;
    double total_err = heap[0].err;

    const auto resum = [&heap](double& v, double& e) {
        v = 0.0;
        e = 0.0;
        for (const Segment& s : heap) {
            v += s.value;
            e += s.err;
        }
    };

    while (total_err > std::max(spec.abs_tol, spec.rel_tol * std::abs(total_value))) {
        if (!std::isfinite(total_value)) {
            throw std::invalid_argument("integrate: integrand produced a non-finite value");
        }
        if (static_cast<int>(heap.size()) >= spec.max_subdivisions) {
            resum(total_value, total_err);
            throw ToleranceNotMet("integrate: subdivision budget exhausted", total_value,
                                  total_err);
        }
        std::pop_heap(heap.begin(), heap.end());
        const Segment worst = heap.back();
        heap.pop_back();

        const double mid = 0.5 * (worst.a + worst.b);
        if (!(worst.a < mid && mid < worst.b)) {
            // interval no longer splittable in double precision
            heap.push_back(worst);
            resum(total_value, total_err);
            throw ToleranceNotMet("integrate: interval at floating-point resolution",
                                  total_value, total_err);
        }
        const Segment left = evaluate_segment(f, worst.a, mid);
        const Segment right = evaluate_segment(f, mid, worst.b);
        total_value += left.value + right.value - worst.value;
        total_err += left.err + right.err - worst.err;
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end());
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end());
    }

    resum(total_value, total_err);
    if (!std::isfinite(total_value)) {
        throw std::invalid_argument("integrate: integrand produced a non-finite value");
    }
    return {total_value, total_err};
}

double erf(double x) {
    const double v = std::erf(std::abs(x));
    return std::signbit(x) ? -v : v;
}

Interval tail_bound_interval(const std::function<double(double)>& pdf, double center,
                             double mass_tol, const QuadratureSpec& spec,
                             double initial_half_width) {
    if (!(mass_tol > 0.0)) {
        throw std::invalid_argument("tail_bound_interval: mass_tol must be > 0");
    }
    if (!std::isfinite(center) || !(initial_half_width > 0.0)) {
        throw std::invalid_argument("tail_bound_interval: bad center or initial width");
    }

    QuadratureSpec qs = spec;
    qs.abs_tol = std::min(spec.abs_tol, 0.01 * mass_tol);

    double half = initial_half_width;
    double mass = 0.0;
    constexpr int kMaxDoublings = 64;
    for (int i = 0; i < kMaxDoublings; ++i) {
        const Interval iv{center - half, center + half};
        mass = integrate(pdf, iv.lo, iv.hi, qs).value;
        if (mass >= 1.0 - mass_tol) return iv;
        half *= 2.0;
    }
    throw ToleranceNotMet("tail_bound_interval: expansion cap reached", mass, 1.0 - mass);
}

}  // namespace cgur::num
