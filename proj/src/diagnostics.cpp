#include "lionman/diagnostics.hpp"

#include <cmath>

#include "lionman/errors.hpp"

namespace lionman {

namespace {

std::int64_t moment_index(const Trace& trace, double tau) {
    const double eps = trace.config.epsilon;
    const double k = std::round(tau / eps);
    if (std::abs(tau - k * eps) > 1e-9 * std::max(1.0, std::abs(tau)) || k < 0.0) {
        throw UsageError("time " + std::to_string(tau) + " is not a correction moment");
    }
    const auto i = static_cast<std::int64_t>(k);
    if (i >= static_cast<std::int64_t>(trace.moments.size())) {
        throw UsageError("moment " + std::to_string(i) + " is beyond the end of the trace");
    }
    return i;
}

const Moment& moment_at(const Trace& trace, std::int64_t i) {
    if (i < 0 || i >= static_cast<std::int64_t>(trace.moments.size())) {
        throw UsageError("moment " + std::to_string(i) + " is not in the trace");
    }
    return trace.moments[static_cast<std::size_t>(i)];
}

void observe(GoodCurveItem& item, double margin, double tol, std::int64_t where) {
    if (margin < item.worst_margin) item.worst_margin = margin;
    if (margin < -tol && item.pass) {
        item.pass = false;
        item.first_failure = where;
    }
}

}  // namespace

double rho(const MetricSpace& space, const PointPair& p, const PointPair& q) {
    return std::max(space.distance(p.first, q.first), space.distance(p.second, q.second));
}

GoodCurveReport validate_good_curve(const MetricSpace& space, const Trace& trace, double tau_a,
                                    double tau_b, double tol) {
    const std::int64_t a = moment_index(trace, tau_a);
    const std::int64_t b = moment_index(trace, tau_b);
    if (a >= b) throw UsageError("good-curve interval must satisfy tau_a < tau_b");

    GoodCurveReport report;
    report.tau_a = trace.moments[static_cast<std::size_t>(a)].tau;
    report.tau_b = trace.moments[static_cast<std::size_t>(b)].tau;
    const double eps = trace.config.epsilon;
    const std::int64_t n = trace.config.substeps_per_interval;

    const std::int64_t first = a * n;
    const std::int64_t last = std::min<std::int64_t>(b * n, static_cast<std::int64_t>(trace.samples.size()) - 1);
    for (std::int64_t k = first; k < last; ++k) {
        const auto& s = trace.samples[static_cast<std::size_t>(k)];
        const auto& next = trace.samples[static_cast<std::size_t>(k + 1)];
        const double dt = next.t - s.t;
        observe(report.lipschitz, dt - space.distance(s.lion, next.lion), tol, k);
        observe(report.lipschitz, dt - space.distance(s.man, next.man), tol, k);
    }

    for (std::int64_t i = a; i <= b; ++i) {
        const auto& m = moment_at(trace, i);
        observe(report.separation, space.distance(m.lion, m.man) - eps, tol, i);
        if (i == b) break;
        const auto& next = moment_at(trace, i + 1);
        observe(report.aim, -std::abs(between_residual(space, m.lion, next.lion, m.man)), tol, i);
        observe(report.step, -std::abs(space.distance(m.lion, next.lion) - eps), tol, i);
    }
    return report;
}

std::int64_t last_good_moment(const Trace& trace) {
    std::int64_t last = -1;
    for (const auto& s : trace.moments) {
        const auto& i = s.index;
        const auto& sample = trace.samples[static_cast<std::size_t>(i * trace.config.substeps_per_interval)];
        if (sample.d < trace.config.epsilon) break;
        last = i;
    }
    return last;
}

MonotoneReport check_distance_monotone(const Trace& trace, double tol) {
    MonotoneReport report;
    const std::int64_t n = trace.config.substeps_per_interval;
    for (std::size_t i = 0; i + 1 < trace.moments.size(); ++i) {
        const double d0 = trace.samples[i * static_cast<std::size_t>(n)].d;
        const double d1 = trace.samples[(i + 1) * static_cast<std::size_t>(n)].d;
        const double increase = d1 - d0;
        if (!report.worst_index || increase > report.worst_increase) {
            report.worst_increase = increase;
            report.worst_index = static_cast<std::int64_t>(i);
        }
    }
    report.pass = report.worst_increase <= tol;
    return report;
}

StepClassification classify_constant_step(const MetricSpace& space, const Trace& trace,
                                          std::int64_t i, double tol) {
    const auto& m0 = moment_at(trace, i);
    const auto& m1 = moment_at(trace, i + 1);
    const double eps = trace.config.epsilon;
    const std::int64_t n = trace.config.substeps_per_interval;

    StepClassification out;
    const double d0 = space.distance(m0.lion, m0.man);
    const double d1 = space.distance(m1.lion, m1.man);

    for (std::int64_t k = i * n; k <= (i + 1) * n; ++k) {
        const auto& s = trace.samples[static_cast<std::size_t>(k)];
        out.deviation1 = std::max(out.deviation1, std::abs(space.distance(s.lion, s.man) - d0));
    }
    out.deviation2 = std::abs(d1 - d0);
    out.deviation3 = std::max(std::abs(space.distance(m0.man, m1.man) - eps),
                              std::abs(between_residual(space, m0.lion, m0.man, m1.man)));
    out.stmt1 = out.deviation1 <= tol;
    out.stmt2 = out.deviation2 <= tol;
    out.stmt3 = out.deviation3 <= tol;
    return out;
}

LionGeodesicReport check_lion_geodesic(const MetricSpace& space, const Trace& trace,
                                       std::int64_t i, std::int64_t j, double tol) {
    if (i >= j) throw UsageError("check_lion_geodesic needs i < j");
    const auto& mi = moment_at(trace, i);
    const auto& mj = moment_at(trace, j);
    LionGeodesicReport out;
    out.arc_length = static_cast<double>(j - i) * trace.config.epsilon;
    out.endpoint_distance = space.distance(mi.lion, mj.lion);
    out.applicable =
        std::abs(space.distance(mi.lion, mi.man) - space.distance(mj.lion, mj.man)) <= tol;
    out.is_geodesic = out.applicable && std::abs(out.endpoint_distance - out.arc_length) <= tol;
    return out;
}

std::vector<RoundRecord> detect_rounds(const MetricSpace& space, std::span<const Moment> moments,
                                       const PointPair& center, double radius, double epsilon) {
    if (!(radius < epsilon / 2.0)) {
        throw ValidationError("round radius must be below epsilon/2 so consecutive moments "
                              "cannot share the ball");
    }
    std::vector<RoundRecord> out;
    std::optional<std::int64_t> previous;
    for (const auto& m : moments) {
        if (rho(space, {m.lion, m.man}, center) > radius) continue;
        if (previous && m.index - *previous > 1) {
            out.push_back({*previous, m.index, center, radius});
        }
        previous = m.index;
    }
    return out;
}

PointPair most_revisited_center(const MetricSpace& space, std::span<const Moment> moments,
                                double radius) {
    if (moments.empty()) throw UsageError("no moments to choose a center from");
    constexpr std::size_t kMaxCandidates = 512;
    const std::size_t stride = (moments.size() + kMaxCandidates - 1) / kMaxCandidates;
    std::size_t best = 0;
    std::size_t best_count = 0;
    for (std::size_t c = 0; c < moments.size(); c += stride) {
        const PointPair z{moments[c].lion, moments[c].man};
        std::size_t count = 0;
        for (const auto& m : moments) {
            if (rho(space, {m.lion, m.man}, z) <= radius) ++count;
        }
        if (count > best_count) {
            best_count = count;
            best = c;
        }
    }
    return {moments[best].lion, moments[best].man};
}

}  // namespace lionman
