#include "vecwp/report.hpp"

namespace vecwp {

Record& Record::add(const std::string& key, const std::string& value) {
    fields_.emplace_back(key, value);
    return *this;
}

Record& Record::add(const std::string& key, double value) {
    return add(key, format_double(value));
}

Record& Record::add(const std::string& key, const Vector& value) {
    return add(key, format_vector(value));
}

Record& Record::add(const std::string& key, bool value) {
    return add(key, std::string(value ? "true" : "false"));
}

Record& Record::add(const std::string& key, std::size_t value) {
    return add(key, std::to_string(value));
}

Record& Record::add(const std::string& key, int value) {
    return add(key, std::to_string(value));
}

void write_records(std::ostream& out, const std::vector<Record>& records) {
    for (std::size_t i = 0; i < records.size(); ++i) {
        if (i) out << '\n';
        out << "record=" << records[i].kind() << '\n';
        for (const auto& [k, v] : records[i].fields()) out << k << '=' << v << '\n';
    }
}

void write_curve_csv(std::ostream& out, const WellPosednessReport& report) {
    out << "level,direction_index,diameter\n";
    for (const auto& p : report.diam_curve)
        out << format_double(p.level) << ',' << p.direction_index << ',' << format_double(p.diameter) << '\n';
}

Record well_posedness_record(const WellPosednessReport& report) {
    Record r(report.kind == WellPosednessReport::Kind::tykhonov ? "tykhonov" : "dh");
    if (report.point) r.add("point", *report.point);
    r.add("verdict", to_string(report.verdict));
    r.add("grid_resolution", report.grid_resolution);
    r.add("lattice_spacing", report.lattice_spacing);
    r.add("threshold", report.threshold);
    r.add("tol_abs", report.tol_abs);
    r.add("decay_ratio", report.decay_ratio);
    if (report.kind == WellPosednessReport::Kind::tykhonov) {
        r.add("infimum", report.infimum);
        if (report.argmin) r.add("argmin", *report.argmin);
    }
    for (std::size_t j = 0; j < report.direction_verdicts.size(); ++j) {
        const std::string prefix = "direction." + std::to_string(j);
        if (j < report.directions.size()) r.add(prefix + ".vector", report.directions[j]);
        r.add(prefix + ".verdict", to_string(report.direction_verdicts[j]));
        const auto c = report.curve(j);
        r.add(prefix + ".diameters", vec(c));
    }
    r.add("schedule", vec(report.schedule));
    return r;
}

}  // namespace vecwp
