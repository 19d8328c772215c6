#include "ltlab/grid.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ltlab/errors.hpp"

namespace ltlab {

TimeGrid make_time_grid(double t_end, std::size_t n_steps) {
    if (!(t_end > 0.0) || !std::isfinite(t_end)) {
        throw InvalidArgument("time grid: t_end must be positive and finite");
    }
    if (n_steps == 0) {
        throw InvalidArgument("time grid: n_steps must be at least 1");
    }
    return TimeGrid(t_end, n_steps);
}

std::vector<double> TimeGrid::points() const {
    std::vector<double> out(n_points());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = point(i);
    return out;
}

std::size_t TimeGrid::index_of(double t) const {
    const double scaled = t / t_end_ * static_cast<double>(n_steps_);
    const double rounded = std::round(scaled);
    if (!std::isfinite(t) || rounded < 0.0 || rounded > static_cast<double>(n_steps_) ||
        std::abs(point(static_cast<std::size_t>(rounded)) - t) > 1e-9 * t_end_) {
        std::ostringstream msg;
        msg << "time " << t << " is not a point of the time grid";
        throw InvalidArgument(msg.str());
    }
    return static_cast<std::size_t>(rounded);
}

SpaceGrid::SpaceGrid(double x_min, double x_max, std::size_t n_bins)
    : x_min_(x_min), x_max_(x_max), n_bins_(n_bins), width_(0.0) {
    if (!std::isfinite(x_min) || !std::isfinite(x_max) || !(x_min < x_max)) {
        throw InvalidArgument("space grid: require finite x_min < x_max");
    }
    if (n_bins == 0) {
        throw InvalidArgument("space grid: n_bins must be at least 1");
    }
    width_ = (x_max - x_min) / static_cast<double>(n_bins);
}

double SpaceGrid::edge(std::size_t j) const {
    if (j == n_bins_) return x_max_;
    return x_min_ + static_cast<double>(j) * width_;
}

std::size_t SpaceGrid::bin_of(double x) const {
    if (!contains(x)) {
        std::ostringstream msg;
        msg << "value " << x << " outside space grid [" << x_min_ << ", " << x_max_ << ")";
        throw RangeError(msg.str());
    }
    auto j = static_cast<std::size_t>(std::floor((x - x_min_) / width_));
    j = std::min(j, n_bins_ - 1);
    // Floor of the quotient can be off by one near edges; settle against edge().
    while (j > 0 && x < edge(j)) --j;
    while (j + 1 < n_bins_ && x >= edge(j + 1)) ++j;
    return j;
}

SpaceGrid SpaceGrid::snapped(double lo, double hi, double width, std::size_t pad_bins) {
    if (!(width > 0.0) || !std::isfinite(width)) {
        throw InvalidArgument("space grid: bin width must be positive");
    }
    if (!(lo <= hi)) {
        throw InvalidArgument("space grid: require lo <= hi");
    }
    const double pad = static_cast<double>(pad_bins);
    const double first = std::floor(lo / width) - pad;
    const double last = std::floor(hi / width) + 1.0 + pad;  // exclusive upper edge index
    const auto n = static_cast<std::size_t>(last - first);
    return SpaceGrid(first * width, last * width, n);
}

Path::Path(TimeGrid g, std::vector<double> v, std::vector<double> q)
    : grid(g), values(std::move(v)), qv(std::move(q)) {
    if (values.size() != grid.n_points() || qv.size() != grid.n_points()) {
        throw InvalidArgument("path: values and qv must have n_steps + 1 entries");
    }
    if (qv[0] != 0.0) {
        throw InvalidArgument("path: qv[0] must be 0");
    }
    for (std::size_t i = 1; i < qv.size(); ++i) {
        if (!(qv[i] >= qv[i - 1])) throw InvalidArgument("path: qv must be nondecreasing");
    }
}

std::vector<double> realized_qv(std::span<const double> values) {
    if (values.empty()) throw InvalidArgument("realized_qv: empty input");
    std::vector<double> qv(values.size());
    qv[0] = 0.0;
    double acc = 0.0;
    for (std::size_t i = 1; i < values.size(); ++i) {
        const double d = values[i] - values[i - 1];
        acc += d * d;
        qv[i] = acc;
    }
    return qv;
}

std::pair<double, double> path_range(const Path& path) {
    return path_range(path, path.values.size() - 1);
}

std::pair<double, double> path_range(const Path& path, std::size_t last) {
    const auto end = path.values.begin() + static_cast<std::ptrdiff_t>(last + 1);
    const auto [lo, hi] = std::minmax_element(path.values.begin(), end);
    return {*lo, *hi};
}

}  // namespace ltlab
