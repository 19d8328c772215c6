#include "ltlab/local_time.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "ltlab/detail/compensated_sum.hpp"
#include "ltlab/errors.hpp"

namespace ltlab {
namespace {

void require_covered(const Path& path, const SpaceGrid& space, std::size_t last) {
    const auto [lo, hi] = path_range(path, last);
    if (!space.contains(lo) || !space.contains(hi)) {
        std::ostringstream msg;
        msg << "space grid [" << space.x_min() << ", " << space.x_max()
            << ") does not cover path range [" << lo << ", " << hi << "]";
        throw RangeError(msg.str());
    }
}

}  // namespace

double LocalTimeField::total_mass() const {
    detail::CompensatedSum sum;
    for (double v : values) sum.add(v * space.width());
    return sum.value();
}

LocalTimeField occupation_local_time(const Path& path, const SpaceGrid& space, double t) {
    const std::size_t k = path.grid.index_of(t);
    require_covered(path, space, k);
    std::vector<detail::CompensatedSum> acc(space.n_bins());
    for (std::size_t i = 0; i < k; ++i) {
        acc[space.bin_of(path.values[i])].add(path.qv_increment(i));
    }
    LocalTimeField field{space, path.grid.point(k), std::vector<double>(space.n_bins())};
    for (std::size_t j = 0; j < acc.size(); ++j) field.values[j] = acc[j].value() / space.width();
    return field;
}

LocalTimeSheet local_time_sheet(const Path& path, const SpaceGrid& space,
                                std::span<const double> checkpoints) {
    if (checkpoints.empty()) throw InvalidArgument("local_time_sheet: no checkpoints");
    std::vector<std::size_t> idx(checkpoints.size());
    for (std::size_t k = 0; k < checkpoints.size(); ++k) {
        idx[k] = path.grid.index_of(checkpoints[k]);
        if (k == 0 && idx[k] != 0) throw InvalidArgument("local_time_sheet: checkpoints must start at 0");
        if (k > 0 && idx[k] <= idx[k - 1]) {
            throw InvalidArgument("local_time_sheet: checkpoints must be strictly increasing");
        }
    }
    require_covered(path, space, idx.back());

    LocalTimeSheet sheet(space);
    sheet.times_.reserve(idx.size());
    for (std::size_t i : idx) sheet.times_.push_back(path.grid.point(i));
    sheet.changes_.resize(space.n_bins());

    std::vector<detail::CompensatedSum> acc(space.n_bins());
    std::vector<double> interval(space.n_bins(), 0.0);
    std::vector<std::size_t> touched;

    for (std::size_t row = 0; row + 1 < idx.size(); ++row) {
        for (std::size_t i = idx[row]; i < idx[row + 1]; ++i) {
            const std::size_t j = space.bin_of(path.values[i]);
            const double dq = path.qv_increment(i);
            if (dq == 0.0) continue;
            if (interval[j] == 0.0) touched.push_back(j);
            acc[j].add(dq);
            interval[j] += dq;
        }
        std::sort(touched.begin(), touched.end());
        for (std::size_t j : touched) {
            sheet.increments_.push_back({row, j, interval[j]});
            sheet.changes_[j].push_back({row + 1, acc[j].value()});
            interval[j] = 0.0;
        }
        touched.clear();
    }
    return sheet;
}

LocalTimeSheet dense_local_time_sheet(const Path& path, const SpaceGrid& space, double t) {
    const std::size_t k = path.grid.index_of(t);
    std::vector<double> cps(k + 1);
    for (std::size_t i = 0; i <= k; ++i) cps[i] = path.grid.point(i);
    return local_time_sheet(path, space, cps);
}

double LocalTimeSheet::value(std::size_t row, std::size_t bin) const {
    const auto& ch = changes_.at(bin);
    auto it = std::upper_bound(ch.begin(), ch.end(), row,
                               [](std::size_t r, const Change& c) { return r < c.row; });
    if (it == ch.begin()) return 0.0;
    return std::prev(it)->cumulative_mass / space_.width();
}

std::vector<double> LocalTimeSheet::row(std::size_t k) const {
    if (k >= n_rows()) throw InvalidArgument("local time sheet: row out of range");
    std::vector<double> out(space_.n_bins());
    for (std::size_t j = 0; j < out.size(); ++j) out[j] = value(k, j);
    return out;
}

LocalTimeField LocalTimeSheet::field(std::size_t k) const {
    return LocalTimeField{space_, times_.at(k), row(k)};
}

double LocalTimeSheet::time_increment(std::size_t row, std::size_t bin) const {
    auto it = std::lower_bound(increments_.begin(), increments_.end(), std::pair{row, bin},
                               [](const Increment& inc, const std::pair<std::size_t, std::size_t>& key) {
                                   return std::pair{inc.row, inc.bin} < key;
                               });
    if (it == increments_.end() || it->row != row || it->bin != bin) return 0.0;
    return it->mass / space_.width();
}

double tanaka_local_time(const Path& path, double a) {
    const auto& x = path.values;
    detail::CompensatedSum ito;
    for (std::size_t i = 0; i + 1 < x.size(); ++i) {
        const double sgn = x[i] > a ? 1.0 : -1.0;
        ito.add(sgn * (x[i + 1] - x[i]));
    }
    return std::abs(x.back() - a) - std::abs(x.front() - a) - ito.value();
}

double conservation_defect(const LocalTimeField& field, double qv_t) {
    return std::abs(field.total_mass() - qv_t);
}

LocalTimeField coarsen(const LocalTimeField& field) {
    const std::size_t n = field.space.n_bins();
    if (n % 2 != 0) throw InvalidArgument("coarsen: bin count must be even");
    LocalTimeField out{SpaceGrid(field.space.x_min(), field.space.x_max(), n / 2), field.t,
                       std::vector<double>(n / 2)};
    for (std::size_t j = 0; j < n / 2; ++j) {
        out.values[j] = 0.5 * (field.values[2 * j] + field.values[2 * j + 1]);
    }
    return out;
}

}  // namespace ltlab
