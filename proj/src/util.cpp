#include <cstdio>
#include <string>

#include "vecwp/errors.hpp"
#include "vecwp/linalg.hpp"

namespace vecwp {

std::string format_double(double x) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string format_vector(const Vector& v) {
    std::string out;
    for (Eigen::Index i = 0; i < v.size(); ++i) {
        if (i) out += ',';
        out += format_double(v[i]);
    }
    return out;
}

std::string_view to_string(ErrorKind kind) {
    switch (kind) {
        case ErrorKind::input: return "InputError";
        case ErrorKind::parse: return "ParseError";
        case ErrorKind::unknown_label: return "UnknownLabel";
        case ErrorKind::not_interior_point: return "NotInteriorPoint";
        case ErrorKind::numerical_failure: return "NumericalFailure";
        case ErrorKind::precondition: return "PreconditionError";
        case ErrorKind::hypothesis_not_met: return "HypothesisNotMet";
        case ErrorKind::no_bounding_functional: return "NoBoundingFunctional";
        case ErrorKind::certificate_failure: return "CertificateFailure";
    }
    return "Error";
}

}  // namespace vecwp
