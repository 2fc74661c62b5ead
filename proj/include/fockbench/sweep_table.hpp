#pragma once

#include <cmath>
#include <cstdio>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

namespace fockbench {

/// Named-column numeric table; the unit of CLI output. Serialization is
/// deterministic: fixed 12-significant-digit formatting and fixed row order,
/// so identical invocations produce byte-identical files.
struct SweepTable {
    std::vector<std::string> column_names;
    std::vector<std::vector<double>> rows;
    std::vector<std::pair<std::string, std::string>> params; // provenance comments

    void validate() const {
        for (const auto& r : rows) {
            if (r.size() != column_names.size())
                throw std::runtime_error("SweepTable: row arity mismatch");
            for (double v : r)
                if (!std::isfinite(v))
                    throw std::runtime_error("SweepTable: non-finite value");
        }
    }

    static std::string format_value(double v) {
        char buf[40];
        std::snprintf(buf, sizeof(buf), "%.12g", v);
        return std::string(buf);
    }

    void write_csv(std::ostream& os) const {
        validate();
        for (const auto& [k, v] : params) os << "# " << k << "=" << v << "\n";
        for (std::size_t i = 0; i < column_names.size(); ++i)
            os << (i ? "," : "") << column_names[i];
        os << "\n";
        for (const auto& r : rows) {
            for (std::size_t i = 0; i < r.size(); ++i)
                os << (i ? "," : "") << format_value(r[i]);
            os << "\n";
        }
    }

    void write_json(std::ostream& os) const {
        validate();
        nlohmann::ordered_json j;
        nlohmann::ordered_json p = nlohmann::ordered_json::object();
        for (const auto& [k, v] : params) p[k] = v;
        j["params"] = std::move(p);
        j["columns"] = column_names;
        nlohmann::ordered_json jr = nlohmann::ordered_json::array();
        for (const auto& r : rows) jr.push_back(r);
        j["rows"] = std::move(jr);
        os << j.dump(1) << "\n";
    }
};

} // namespace fockbench
