#pragma once

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace ltlab {

/// Uniform time grid s_i = i * t_end / n_steps, i = 0..n_steps.
class TimeGrid {
public:
    TimeGrid() = default;

    double t_end() const { return t_end_; }
    std::size_t n_steps() const { return n_steps_; }
    double dt() const { return t_end_ / static_cast<double>(n_steps_); }
    std::size_t n_points() const { return n_steps_ + 1; }

    double point(std::size_t i) const {
        return t_end_ * static_cast<double>(i) / static_cast<double>(n_steps_);
    }
    std::vector<double> points() const;

    /// Index of the grid point equal to t (relative tolerance 1e-9 of t_end).
    /// Throws InvalidArgument if t is not a grid point.
    std::size_t index_of(double t) const;

    bool operator==(const TimeGrid&) const = default;

private:
    friend TimeGrid make_time_grid(double t_end, std::size_t n_steps);
    TimeGrid(double t_end, std::size_t n_steps) : t_end_(t_end), n_steps_(n_steps) {}

    double t_end_ = 1.0;
    std::size_t n_steps_ = 1;
};

TimeGrid make_time_grid(double t_end, std::size_t n_steps);

/// Uniform space grid of left-closed, right-open bins [x_j, x_j + width).
class SpaceGrid {
public:
    SpaceGrid(double x_min, double x_max, std::size_t n_bins);

    double x_min() const { return x_min_; }
    double x_max() const { return x_max_; }
    std::size_t n_bins() const { return n_bins_; }
    double width() const { return width_; }

    /// Left edge x_j = x_min + j * width. j == n_bins gives x_max.
    double edge(std::size_t j) const;

    bool contains(double x) const { return x >= x_min_ && x < x_max_; }

    /// Bin holding x, consistent with edge(): edge(j) <= x < edge(j + 1).
    /// Throws RangeError when x lies outside [x_min, x_max).
    std::size_t bin_of(double x) const;

    /// Grid with the given bin width whose edges are integer multiples of it
    /// and which covers [lo, hi] with at least `pad_bins` empty bins on each side.
    static SpaceGrid snapped(double lo, double hi, double width, std::size_t pad_bins = 1);

    bool operator==(const SpaceGrid&) const = default;

private:
    double x_min_;
    double x_max_;
    std::size_t n_bins_;
    double width_;
};

/// A sampled path with its cumulative quadratic variation.
/// values.size() == qv.size() == grid.n_points(); qv[0] == 0; qv nondecreasing.
struct Path {
    TimeGrid grid;
    std::vector<double> values;
    std::vector<double> qv;

    Path() = default;
    Path(TimeGrid g, std::vector<double> v, std::vector<double> q);

    /// qv[i + 1] - qv[i]
    double qv_increment(std::size_t i) const { return qv[i + 1] - qv[i]; }
};

/// qv[i] = sum_{k<i} (values[k+1] - values[k])^2.
std::vector<double> realized_qv(std::span<const double> values);

/// (min, max) of the sampled values.
std::pair<double, double> path_range(const Path& path);

/// (min, max) of values[0..last] inclusive.
std::pair<double, double> path_range(const Path& path, std::size_t last);

}  // namespace ltlab
