#include "geotrack/report/table.hpp"

#include <algorithm>
#include <sstream>

namespace geotrack::report {

void render_text(std::ostream& out, const Table& table) {
    std::vector<std::size_t> width(table.columns.size());
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        width[c] = table.columns[c].size();
        for (const auto& row : table.rows) {
            width[c] = std::max(width[c], row[c].text.size());
        }
    }
    auto emit = [&out](const std::ostringstream& line) {
        std::string s = line.str();
        s.erase(s.find_last_not_of(' ') + 1);
        out << s << '\n';
    };
    auto cell_text = [](const std::string& s, std::size_t w, bool right) {
        const std::string fill(w - s.size(), ' ');
        return right ? fill + s : s + fill;
    };

    out << table.title << '\n' << std::string(table.title.size(), '=') << '\n';
    std::ostringstream header;
    std::ostringstream rule;
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        const bool right = !table.rows.empty() && table.rows.front()[c].value.has_value();
        header << (c ? "  " : "") << cell_text(table.columns[c], width[c], right);
        rule << (c ? "  " : "") << std::string(width[c], '-');
    }
    emit(header);
    emit(rule);
    for (const auto& row : table.rows) {
        std::ostringstream line;
        for (std::size_t c = 0; c < row.size(); ++c) {
            line << (c ? "  " : "") << cell_text(row[c].text, width[c], row[c].value.has_value());
        }
        emit(line);
    }
    for (const auto& note : table.notes) {
        out << "note: " << note << '\n';
    }
    out << '\n';
}

namespace {

std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\r\n") == std::string::npos) {
        return s;
    }
    std::string out = "\"";
    for (char c : s) {
        out += c;
        if (c == '"') {
            out += '"';
        }
    }
    return out + '"';
}

}  // namespace

void render_csv(std::ostream& out, const Table& table) {
    for (std::size_t c = 0; c < table.columns.size(); ++c) {
        out << (c ? "," : "") << csv_cell(table.columns[c]);
    }
    out << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            out << (c ? "," : "") << csv_cell(row[c].text);
        }
        out << '\n';
    }
}

nlohmann::json table_json(const Table& table) {
    nlohmann::json rows = nlohmann::json::array();
    nlohmann::json values = nlohmann::json::array();
    for (const auto& row : table.rows) {
        nlohmann::json r = nlohmann::json::array();
        nlohmann::json v = nlohmann::json::array();
        for (const auto& cell : row) {
            r.push_back(cell.text);
            v.push_back(cell.value ? nlohmann::json(*cell.value) : nlohmann::json(nullptr));
        }
        rows.push_back(std::move(r));
        values.push_back(std::move(v));
    }
    return {{"title", table.title},
            {"columns", table.columns},
            {"rows", std::move(rows)},
            {"values", std::move(values)},
            {"notes", table.notes}};
}

}  // namespace geotrack::report
