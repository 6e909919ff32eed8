#pragma once

#include <utility>
#include <vector>

namespace qsde {

// Time-dependent real coefficient on [0, T]: constant, piecewise-linear, or
// piecewise-constant (left-closed segments). Squares of these are piecewise
// polynomials of degree <= 2, so integral_square is exact.
class Schedule {
public:
    enum class Kind { Constant, PiecewiseLinear, PiecewiseConstant };

    Schedule() : Schedule(Kind::Constant, {{0.0, 0.0}}) {}  // constant zero

    static Schedule constant(double value);
    static Schedule piecewise_linear(std::vector<std::pair<double, double>> knots);
    static Schedule piecewise_constant(std::vector<std::pair<double, double>> knots);

    Kind kind() const { return kind_; }
    const std::vector<std::pair<double, double>>& knots() const { return knots_; }

    // Constant schedules cover any t >= 0; piecewise kinds require
    // knots.front().first <= t <= knots.back().first.
    double value_at(double t) const;
    double operator()(double t) const { return value_at(t); }

    // Exact integral of value^2 over [a, b].
    double integral_square(double a, double b) const;

    // True when the schedule is defined on all of [0, T].
    bool covers(double total_time) const;

    Schedule scaled(double factor) const;  // multiplies all values

    bool operator==(const Schedule& other) const = default;

private:
    Schedule(Kind kind, std::vector<std::pair<double, double>> knots);
    double value_on_segment(std::size_t i, double t) const;  // affine interpolation

    Kind kind_;
    std::vector<std::pair<double, double>> knots_;  // single (0, v) knot for Constant
};

}  // namespace qsde
