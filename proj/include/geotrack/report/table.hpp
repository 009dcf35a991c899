#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include <json.hpp>

namespace geotrack::report {

// A printed cell and, for numeric cells, the unrounded value behind it.
struct Cell {
    std::string text;
    std::optional<double> value;

    static Cell str(std::string s) { return {std::move(s), std::nullopt}; }
    static Cell num(std::string text, double v) { return {std::move(text), v}; }
};

struct Table {
    std::string name;   // file stem under tables/
    std::string title;
    std::vector<std::string> columns;
    std::vector<std::vector<Cell>> rows;
    std::vector<std::string> notes;
};

// Fixed-width text: text cells left-aligned, numeric cells right-aligned.
void render_text(std::ostream& out, const Table& table);
// Printed cells, RFC 4180 quoting.
void render_csv(std::ostream& out, const Table& table);
// {"title", "columns", "rows": printed cells, "values": raw numbers or null}
nlohmann::json table_json(const Table& table);

}  // namespace geotrack::report
