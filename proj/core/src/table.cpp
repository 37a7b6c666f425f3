#include "extrobin/table.hpp"

#include <cmath>
#include <cstdio>
#include <nlohmann/json.hpp>
#include <sstream>

#include "extrobin/errors.hpp"

namespace extrobin {

namespace {

std::string csv_escape(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char c : s) {
        if (c == '"') out += '"';
        out += c;
    }
    return out + "\"";
}

std::string cell_text(const Cell& c) {
    struct {
        std::string operator()(std::monostate) const { return {}; }
        std::string operator()(double x) const { return format_number(x); }
        std::string operator()(long long x) const { return std::to_string(x); }
        std::string operator()(bool x) const { return x ? "true" : "false"; }
        std::string operator()(const std::string& s) const { return csv_escape(s); }
    } visitor;
    return std::visit(visitor, c);
}

nlohmann::json cell_json(const Cell& c) {
    struct {
        nlohmann::json operator()(std::monostate) const { return nullptr; }
        nlohmann::json operator()(double x) const {
            if (!std::isfinite(x)) return nullptr;
            // Round through the CSV text so both formats carry the same digits.
            return std::stod(format_number(x));
        }
        nlohmann::json operator()(long long x) const { return x; }
        nlohmann::json operator()(bool x) const { return x; }
        nlohmann::json operator()(const std::string& s) const { return s; }
    } visitor;
    return std::visit(visitor, c);
}

}  // namespace

void Table::add_row(std::vector<Cell> row) {
    if (row.size() != columns.size())
        throw InternalError("Table::add_row: " + std::to_string(row.size()) + " cells for " +
                            std::to_string(columns.size()) + " columns");
    rows.push_back(std::move(row));
}

std::size_t Table::column(const std::string& name) const {
    for (std::size_t i = 0; i < columns.size(); ++i)
        if (columns[i] == name) return i;
    throw DomainError("Table: no column '" + name + "'");
}

std::string format_number(double x) {
    if (std::isnan(x)) return "nan";
    if (std::isinf(x)) return x > 0 ? "inf" : "-inf";
    if (x == 0.0) return "0";
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.12g", x);
    return buf;
}

std::string to_csv(const Table& table, const Provenance& provenance) {
    std::ostringstream os;
    os << "# command: " << provenance.command_line << '\n';
    os << "# seed: " << (provenance.seed ? std::to_string(*provenance.seed) : "none") << '\n';
    os << "# version: " << provenance.version << '\n';
    for (std::size_t i = 0; i < table.columns.size(); ++i)
        os << (i ? "," : "") << csv_escape(table.columns[i]);
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t i = 0; i < row.size(); ++i) os << (i ? "," : "") << cell_text(row[i]);
        os << '\n';
    }
    return os.str();
}

std::string to_json(const Table& table, const Provenance& provenance) {
    nlohmann::ordered_json doc;
    doc["provenance"]["command"] = provenance.command_line;
    doc["provenance"]["seed"] = provenance.seed ? nlohmann::ordered_json(*provenance.seed) : nlohmann::ordered_json();
    doc["provenance"]["version"] = provenance.version;
    doc["columns"] = table.columns;
    doc["rows"] = nlohmann::ordered_json::array();
    for (const auto& row : table.rows) {
        nlohmann::ordered_json obj = nlohmann::ordered_json::object();
        for (std::size_t i = 0; i < row.size(); ++i) obj[table.columns[i]] = cell_json(row[i]);
        doc["rows"].push_back(std::move(obj));
    }
    return doc.dump(2) + "\n";
}

std::string plot_script(const std::string& data_file, const std::string& x, const std::vector<std::string>& y,
                        const std::string& group) {
    std::ostringstream os;
    os << "import sys\n"
       << "import pandas as pd\n"
       << "import matplotlib.pyplot as plt\n\n"
       << "data = pd.read_csv(" << nlohmann::json(data_file).dump() << ", comment=\"#\")\n"
       << "fig, ax = plt.subplots()\n";
    for (const auto& col : y) {
        const std::string ycol = nlohmann::json(col).dump();
        const std::string xcol = nlohmann::json(x).dump();
        if (group.empty()) {
            os << "ax.plot(data[" << xcol << "], data[" << ycol << "], marker=\"o\", label=" << ycol << ")\n";
        } else {
            os << "for key, part in data.groupby(" << nlohmann::json(group).dump() << "):\n"
               << "    ax.plot(part[" << xcol << "], part[" << ycol << "], marker=\"o\", label=f\"" << col
               << " {key}\")\n";
        }
    }
    os << "ax.set_xlabel(" << nlohmann::json(x).dump() << ")\n"
       << "ax.legend()\n"
       << "fig.savefig(sys.argv[1] if len(sys.argv) > 1 else "
       << nlohmann::json(data_file + ".png").dump() << ")\n";
    return os.str();
}

}  // namespace extrobin
