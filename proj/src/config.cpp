#include "vecwp/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

#include "vecwp/errors.hpp"
#include "vecwp/expression.hpp"

namespace vecwp {
namespace {

using nlohmann::json;

Vector read_vector(const json& j, const char* what) {
    if (!j.is_array()) fail(ErrorKind::parse, std::string(what) + " must be an array of numbers");
    Vector v(static_cast<Eigen::Index>(j.size()));
    for (std::size_t i = 0; i < j.size(); ++i) {
        if (!j[i].is_number()) fail(ErrorKind::parse, std::string(what) + " must contain numbers only");
        v[static_cast<Eigen::Index>(i)] = j[i].get<double>();
    }
    return v;
}

std::vector<Vector> read_vectors(const json& j, const char* what) {
    if (!j.is_array() || j.empty()) fail(ErrorKind::parse, std::string(what) + " must be a nonempty array of vectors");
    std::vector<Vector> out;
    for (const auto& e : j) out.push_back(read_vector(e, what));
    return out;
}

std::size_t read_count(const json& doc, const char* key) {
    if (!doc.contains(key) || !doc[key].is_number_integer() || doc[key].get<long long>() < 1)
        fail(ErrorKind::parse, std::string("\"") + key + "\" must be a positive integer");
    return static_cast<std::size_t>(doc[key].get<long long>());
}

}  // namespace

VectorProblem problem_from_json_text(const std::string& text) {
    json doc;
    try {
        doc = json::parse(text);
    } catch (const json::parse_error& e) {
        fail(ErrorKind::parse, std::string("problem file is not valid JSON: ") + e.what());
    }
    if (!doc.is_object()) fail(ErrorKind::parse, "problem file must hold a JSON object");

    const std::string label = doc.value("label", std::string("config"));
    const std::size_t d = read_count(doc, "decision_dim");
    const std::size_t m = read_count(doc, "objective_dim");

    if (!doc.contains("domain") || !doc["domain"].is_object()) fail(ErrorKind::parse, "\"domain\" block is missing");
    const Vector lower = read_vector(doc["domain"].value("lower", json()), "domain.lower");
    const Vector upper = read_vector(doc["domain"].value("upper", json()), "domain.upper");
    if (static_cast<std::size_t>(lower.size()) != d || static_cast<std::size_t>(upper.size()) != d)
        fail(ErrorKind::input, "domain bounds must have decision_dim entries");

    std::shared_ptr<const OrderingCone> cone;
    if (doc.contains("cone")) {
        const json& c = doc["cone"];
        if (!c.is_object() || !c.contains("generators")) fail(ErrorKind::parse, "\"cone\" block needs \"generators\"");
        std::optional<Vector> k0;
        std::optional<std::vector<Vector>> duals;
        if (c.contains("k0")) k0 = read_vector(c["k0"], "cone.k0");
        if (c.contains("dual_generators")) duals = read_vectors(c["dual_generators"], "cone.dual_generators");
        cone = std::make_shared<const OrderingCone>(read_vectors(c["generators"], "cone.generators"), k0, duals);
    } else {
        cone = std::make_shared<const OrderingCone>(OrderingCone::orthant(m));
    }
    if (cone->ambient_dim() != m) fail(ErrorKind::input, "cone dimension does not match objective_dim");

    if (!doc.contains("objectives") || !doc["objectives"].is_array()) fail(ErrorKind::parse, "\"objectives\" must be an array of strings");
    std::vector<Expression> exprs;
    for (const auto& e : doc["objectives"]) {
        if (!e.is_string()) fail(ErrorKind::parse, "objectives must be strings");
        exprs.push_back(Expression::parse(e.get<std::string>(), d));
    }
    if (exprs.size() != m) fail(ErrorKind::input, "number of objectives must equal objective_dim");

    VectorMap f = [exprs](const Vector& x) {
        Vector y(static_cast<Eigen::Index>(exprs.size()));
        for (std::size_t i = 0; i < exprs.size(); ++i) y[static_cast<Eigen::Index>(i)] = exprs[i](x);
        return y;
    };
    VectorProblem p(label, Box(lower, upper), cone, m, std::move(f));
    p.set_continuous(doc.value("continuous", true)).set_c_lsc(doc.value("c_lsc", true));
    return p;
}

VectorProblem load_problem_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) fail(ErrorKind::input, "cannot open problem file " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return problem_from_json_text(ss.str());
}

}  // namespace vecwp
