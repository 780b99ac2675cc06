#pragma once

#include <functional>
#include <stdexcept>
#include <vector>

#include "vvb/field.hpp"

namespace vvb {

/// A field-valued function of time sampled on a graded grid
/// {0 = t_0 < t_1 < ... < t_M = T}, graded so that t_1 <= T/M^2.
struct Timeline {
    std::vector<double> times;
    std::vector<SpectralField> snapshots;

    double horizon() const { return times.empty() ? 0.0 : times.back(); }
    std::size_t nodes() const { return times.size(); }

    void validate() const {
        if (times.size() < 2) throw std::invalid_argument("Timeline: need at least two nodes");
        if (times.size() != snapshots.size())
            throw std::invalid_argument("Timeline: times/snapshots size mismatch");
        if (times.front() != 0.0) throw std::invalid_argument("Timeline: first node must be 0");
        for (std::size_t i = 1; i < times.size(); ++i)
            if (!(times[i] > times[i - 1])) throw std::invalid_argument("Timeline: times must increase");
        const std::size_t M = times.size() - 1;
        if (times[1] > horizon() / static_cast<double>(M * M) * (1.0 + 1e-12))
            throw std::invalid_argument("Timeline: grading violated, t_1 > T/M^2");
        for (std::size_t i = 1; i < snapshots.size(); ++i)
            if (!(snapshots[i].grid == snapshots[0].grid) || snapshots[i].components != snapshots[0].components)
                throw std::invalid_argument("Timeline: inconsistent snapshot shapes");
    }

    /// Index of the interval [t_j, t_{j+1}] containing t.
    std::size_t interval_of(double t) const {
        if (t < 0.0 || t > horizon() * (1.0 + 1e-12))
            throw std::invalid_argument("Timeline: t outside [0, T]");
        std::size_t j = 0;
        while (j + 2 < times.size() && times[j + 1] < t) ++j;
        return j;
    }

    /// Linear interpolation between snapshots.
    SpectralField interpolate(double t) const {
        const std::size_t j = interval_of(t);
        const double tau = times[j + 1] - times[j];
        const double w = (t - times[j]) / tau;
        SpectralField out = snapshots[j];
        out *= (1.0 - w);
        SpectralField right = snapshots[j + 1];
        right *= w;
        out += right;
        return out;
    }
};

/// Power-graded node set t_i = T (i/M)^power; power >= 2 keeps t_1 <= T/M^2.
inline std::vector<double> graded_times(double horizon, int intervals, double power = 2.0) {
    if (intervals < 2) throw std::invalid_argument("graded_times: need at least 2 intervals");
    if (power < 2.0) throw std::invalid_argument("graded_times: power < 2 breaks the grading invariant");
    std::vector<double> t(intervals + 1);
    for (int i = 0; i <= intervals; ++i)
        t[i] = horizon * std::pow(static_cast<double>(i) / intervals, power);
    t[0] = 0.0;
    t[intervals] = horizon;
    return t;
}

/// Sample an analytic field path on a node set.
inline Timeline sample_timeline(const std::vector<double>& times,
                                const std::function<SpectralField(double)>& sampler) {
    Timeline tl;
    tl.times = times;
    tl.snapshots.reserve(times.size());
    for (double t : times) tl.snapshots.push_back(sampler(t));
    tl.validate();
    return tl;
}

/// Constant-in-time path.
inline Timeline constant_timeline(const std::vector<double>& times, const SpectralField& f) {
    return sample_timeline(times, [&](double) { return f; });
}

}  // namespace vvb
