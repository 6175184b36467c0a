#pragma once

#include <initializer_list>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace vecwp {

using Vector = Eigen::VectorXd;
using Matrix = Eigen::MatrixXd;

inline Vector vec(std::initializer_list<double> values) {
    Vector v(static_cast<Eigen::Index>(values.size()));
    Eigen::Index i = 0;
    for (double x : values) v[i++] = x;
    return v;
}

inline Vector vec(const std::vector<double>& values) {
    return Eigen::Map<const Vector>(values.data(), static_cast<Eigen::Index>(values.size()));
}

inline std::vector<double> to_std(const Vector& v) {
    return {v.data(), v.data() + v.size()};
}

// Comma separated, shortest round-trip-ish formatting used in reports.
std::string format_vector(const Vector& v);
std::string format_double(double x);

}  // namespace vecwp
