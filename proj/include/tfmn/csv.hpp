#ifndef TFMN_CSV_HPP
#define TFMN_CSV_HPP

#include <string>
#include <string_view>
#include <vector>

namespace tfmn {

// RFC-4180 parsing: quoted fields may contain commas, newlines, and doubled
// quotes. Rows keep their 1-based line number (of the row's first line) for
// error messages.
struct CsvRow {
    std::vector<std::string> fields;
    int line = 0;
};

std::vector<CsvRow> parse_csv(std::string_view text);

// Quotes a field when it contains comma, quote, CR, or LF.
std::string csv_escape(std::string_view field);

std::string csv_join(const std::vector<std::string>& fields);

// Reads a whole file; throws ValidationError when missing/unreadable.
std::string read_file(const std::string& path);

void write_file(const std::string& path, std::string_view content);

}  // namespace tfmn

#endif
