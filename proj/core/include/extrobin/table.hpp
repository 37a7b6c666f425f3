#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

namespace extrobin {

/// Empty cells are written as an empty CSV field and as JSON null.
using Cell = std::variant<std::monostate, double, long long, bool, std::string>;

struct Provenance {
    std::string command_line;
    std::optional<unsigned> seed;
    std::string version;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;

    void add_row(std::vector<Cell> row);
    std::size_t column(const std::string& name) const;
};

/// 12 significant digits; "nan", "inf", "-inf" for non-finite values.
std::string format_number(double x);

/// Provenance as "# key: value" lines, then the header and rows.
std::string to_csv(const Table& table, const Provenance& provenance);
/// {"provenance": {...}, "columns": [...], "rows": [{column: value, ...}, ...]}
std::string to_json(const Table& table, const Provenance& provenance);

/// Python/matplotlib script that reads `data_file` (CSV) and plots y against x, one line
/// per distinct value of `group` when given. Never executed by the library.
std::string plot_script(const std::string& data_file, const std::string& x, const std::vector<std::string>& y,
                        const std::string& group = {});

}  // namespace extrobin
