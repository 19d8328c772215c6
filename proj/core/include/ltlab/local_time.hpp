#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "ltlab/grid.hpp"

namespace ltlab {

/// Occupation-density estimate of x -> L_t^x, one value per bin of `space`.
struct LocalTimeField {
    SpaceGrid space;
    double t = 0.0;
    std::vector<double> values;

    /// Value of the bin whose left edge is x_j.
    double at_bin(std::size_t j) const { return values[j]; }
    /// Value of the bin containing level a.
    double at_level(double a) const { return values[space.bin_of(a)]; }
    /// sum_j values[j] * width
    double total_mass() const;
};

/// L_s^x on the space grid at increasing checkpoint times s_0 = 0 < s_1 < ... < s_R.
///
/// Stored sparsely: each bin keeps the rows at which it changed, so a sheet
/// with a checkpoint at every grid step costs O(n_steps + n_bins) memory.
class LocalTimeSheet {
public:
    /// Occupation mass (qv units) added to one bin over [s_row, s_{row+1}).
    struct Increment {
        std::size_t row;
        std::size_t bin;
        double mass;
    };

    const SpaceGrid& space() const { return space_; }
    const std::vector<double>& checkpoints() const { return times_; }
    std::size_t n_rows() const { return times_.size(); }

    /// L at checkpoint row k, bin j.
    double value(std::size_t row, std::size_t bin) const;
    std::vector<double> row(std::size_t k) const;
    LocalTimeField field(std::size_t k) const;

    /// All nonzero time increments, ordered by (row, bin).
    const std::vector<Increment>& increments() const { return increments_; }

    /// Time increment of L over [s_row, s_{row+1}) in bin j, in local-time units.
    double time_increment(std::size_t row, std::size_t bin) const;

private:
    friend LocalTimeSheet local_time_sheet(const Path&, const SpaceGrid&, std::span<const double>);
    explicit LocalTimeSheet(SpaceGrid space) : space_(space) {}

    struct Change {
        std::size_t row;
        double cumulative_mass;
    };

    SpaceGrid space_;
    std::vector<double> times_;
    std::vector<std::vector<Change>> changes_;  // per bin, rows ascending
    std::vector<Increment> increments_;
};

/// L_t^{x_j} = (1/width) * sum_{s_i < t} 1{X_{s_i} in [x_j, x_j + width)} * (qv[i+1] - qv[i]).
/// Throws RangeError if any value X_{s_0..t} lies outside the grid and
/// InvalidArgument if t is not a grid point.
LocalTimeField occupation_local_time(const Path& path, const SpaceGrid& space, double t);

/// Rows are occupation_local_time at each checkpoint. Checkpoints must be
/// strictly increasing grid points starting at 0.
LocalTimeSheet local_time_sheet(const Path& path, const SpaceGrid& space,
                                std::span<const double> checkpoints);

/// Sheet with a checkpoint at every grid point up to t.
LocalTimeSheet dense_local_time_sheet(const Path& path, const SpaceGrid& space, double t);

/// Tanaka cross-check at the path's final time:
/// |X_t - a| - |X_0 - a| - sum_i sgn(X_{s_i} - a) (X_{s_{i+1}} - X_{s_i}), sgn(0) = -1.
double tanaka_local_time(const Path& path, double a);

/// |sum_j values[j] * width - qv_t|
double conservation_defect(const LocalTimeField& field, double qv_t);

/// Merge bins pairwise (width -> 2 width); requires an even bin count.
LocalTimeField coarsen(const LocalTimeField& field);

}  // namespace ltlab
