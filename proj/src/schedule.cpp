#include "qsde/schedule.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

namespace qsde {

namespace {

void validate_knots(const std::vector<std::pair<double, double>>& knots) {
    if (knots.size() < 2)
        throw std::invalid_argument("Schedule: piecewise kinds need at least two knots");
    for (std::size_t i = 1; i < knots.size(); ++i)
        if (!(knots[i].first > knots[i - 1].first))
            throw std::invalid_argument("Schedule: knot times must be strictly increasing");
}

}  // namespace

Schedule::Schedule(Kind kind, std::vector<std::pair<double, double>> knots)
    : kind_(kind), knots_(std::move(knots)) {}

Schedule Schedule::constant(double value) {
    return Schedule(Kind::Constant, {{0.0, value}});
}

Schedule Schedule::piecewise_linear(std::vector<std::pair<double, double>> knots) {
    validate_knots(knots);
    return Schedule(Kind::PiecewiseLinear, std::move(knots));
}

Schedule Schedule::piecewise_constant(std::vector<std::pair<double, double>> knots) {
    validate_knots(knots);
    return Schedule(Kind::PiecewiseConstant, std::move(knots));
}

double Schedule::value_at(double t) const {
    if (kind_ == Kind::Constant) return knots_[0].second;
    const double t0 = knots_.front().first;
    const double t1 = knots_.back().first;
    const double slack = 1e-12 * std::max(1.0, std::abs(t1));
    if (t < t0 - slack || t > t1 + slack)
        throw std::out_of_range("Schedule: t = " + std::to_string(t) + " outside [" +
                                std::to_string(t0) + ", " + std::to_string(t1) + "]");
    t = std::clamp(t, t0, t1);
    // Segment [knots[i], knots[i+1]) owning t; t == t1 lands in the last one.
    auto it = std::upper_bound(knots_.begin(), knots_.end(), t,
                               [](double v, const auto& k) { return v < k.first; });
    std::size_t i = static_cast<std::size_t>(it - knots_.begin());
    i = (i == 0) ? 0 : i - 1;
    if (i + 1 >= knots_.size()) i = knots_.size() - 2;
    if (kind_ == Kind::PiecewiseConstant) return knots_[i].second;
    return value_on_segment(i, t);
}

double Schedule::integral_square(double a, double b) const {
    if (b < a) throw std::invalid_argument("integral_square: b < a");
    if (kind_ == Kind::Constant) {
        const double v = knots_[0].second;
        return v * v * (b - a);
    }
    const double t0 = knots_.front().first;
    const double t1 = knots_.back().first;
    const double slack = 1e-12 * std::max(1.0, std::abs(t1));
    if (a < t0 - slack || b > t1 + slack)
        throw std::out_of_range("integral_square: [a, b] outside the schedule domain");
    a = std::clamp(a, t0, t1);
    b = std::clamp(b, t0, t1);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < knots_.size(); ++i) {
        const double sa = std::max(a, knots_[i].first);
        const double sb = std::min(b, knots_[i + 1].first);
        if (sb <= sa) continue;
        if (kind_ == Kind::PiecewiseConstant) {
            const double v = knots_[i].second;
            total += v * v * (sb - sa);
        } else {
            // Value is affine on the segment, so value^2 is quadratic and
            // Simpson is exact.
            const double va = value_on_segment(i, sa);
            const double vm = value_on_segment(i, 0.5 * (sa + sb));
            const double vb = value_on_segment(i, sb);
            total += (sb - sa) / 6.0 * (va * va + 4.0 * vm * vm + vb * vb);
        }
    }
    return total;
}

double Schedule::value_on_segment(std::size_t i, double t) const {
    const auto& [ta, va] = knots_[i];
    const auto& [tb, vb] = knots_[i + 1];
    return va + (t - ta) / (tb - ta) * (vb - va);
}

bool Schedule::covers(double total_time) const {
    if (kind_ == Kind::Constant) return true;
    const double slack = 1e-9 * std::max(1.0, total_time);
    return knots_.front().first <= slack && knots_.back().first >= total_time - slack;
}

Schedule Schedule::scaled(double factor) const {
    Schedule out = *this;
    for (auto& [t, v] : out.knots_) v *= factor;
    return out;
}

}  // namespace qsde
