#include "tfmn/csv.hpp"

#include <fstream>
#include <sstream>

#include "tfmn/core.hpp"

namespace tfmn {

std::vector<CsvRow> parse_csv(std::string_view text) {
    std::vector<CsvRow> rows;
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    bool row_started = false;
    int line = 1;
    int row_line = 1;

    const auto end_field = [&] {
        fields.push_back(std::move(field));
        field.clear();
    };
    const auto end_row = [&] {
        end_field();
        rows.push_back({std::move(fields), row_line});
        fields.clear();
        row_started = false;
    };

    for (size_t i = 0; i < text.size(); ++i) {
        const char c = text[i];
        if (!row_started) {
            row_started = true;
            row_line = line;
        }
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field += '"';
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                if (c == '\n') ++line;
                field += c;
            }
        } else if (c == '"') {
            if (!field.empty()) {
                throw ValidationError("malformed csv: stray quote at line " + std::to_string(line));
            }
            in_quotes = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\r') {
            // handled with the following \n; a bare \r ends the row too
            if (i + 1 < text.size() && text[i + 1] == '\n') ++i;
            ++line;
            end_row();
        } else if (c == '\n') {
            ++line;
            end_row();
        } else {
            field += c;
        }
    }
    if (in_quotes) throw ValidationError("malformed csv: unterminated quote");
    if (row_started || !field.empty() || !fields.empty()) end_row();
    return rows;
}

std::string csv_escape(std::string_view field) {
    const bool needs_quotes =
        field.find_first_of(",\"\r\n") != std::string_view::npos;
    if (!needs_quotes) return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"') out += '"';
        out += c;
    }
    out += '"';
    return out;
}

std::string csv_join(const std::vector<std::string>& fields) {
    std::string out;
    for (size_t i = 0; i < fields.size(); ++i) {
        if (i > 0) out += ',';
        out += csv_escape(fields[i]);
    }
    return out;
}

std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw ValidationError("cannot open file: " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_file(const std::string& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw RuntimeError("cannot write file: " + path);
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out) throw RuntimeError("short write: " + path);
}

}  // namespace tfmn
