#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "vecwp/diagnostics.hpp"
#include "vecwp/linalg.hpp"

namespace vecwp {

/// A block of key=value lines opened by "record=<kind>".
class Record {
public:
    explicit Record(std::string kind) : kind_(std::move(kind)) {}

    Record& add(const std::string& key, const std::string& value);
    Record& add(const std::string& key, const char* value) { return add(key, std::string(value)); }
    Record& add(const std::string& key, std::string_view value) { return add(key, std::string(value)); }
    Record& add(const std::string& key, double value);
    Record& add(const std::string& key, const Vector& value);
    Record& add(const std::string& key, bool value);
    Record& add(const std::string& key, std::size_t value);
    Record& add(const std::string& key, int value);

    const std::string& kind() const { return kind_; }
    const std::vector<std::pair<std::string, std::string>>& fields() const { return fields_; }

private:
    std::string kind_;
    std::vector<std::pair<std::string, std::string>> fields_;
};

void write_records(std::ostream& out, const std::vector<Record>& records);

/// level,direction_index,diameter
void write_curve_csv(std::ostream& out, const WellPosednessReport& report);

/// Verdict, threshold and per-level diameters of a well-posedness report.
Record well_posedness_record(const WellPosednessReport& report);

}  // namespace vecwp
