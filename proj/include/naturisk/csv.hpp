#pragma once

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace naturisk::csv {

// Header row plus data rows, all fields kept as text. Quoting follows the
// usual rules: fields containing ',' '"' or newlines are wrapped in double
// quotes, embedded quotes doubled.
struct File {
    std::vector<std::string> header;
    std::vector<std::vector<std::string>> rows;
};

File read_file(const std::filesystem::path& path);
File parse(std::string_view text, const std::string& origin = "<memory>");

std::string escape_field(std::string_view field);

// Renders a double with the shortest digit string that round-trips, so a
// written dataset reloads bit-identically.
std::string format_double(double v);

class Writer {
public:
    explicit Writer(std::vector<std::string> header);

    void add_row(std::vector<std::string> fields);

    std::string to_csv() const;
    std::string to_json() const; // array of objects keyed by header

    const std::vector<std::string>& header() const { return header_; }
    const std::vector<std::vector<std::string>>& rows() const { return rows_; }

private:
    std::vector<std::string> header_;
    std::vector<std::vector<std::string>> rows_;
};

void write_text_file(const std::filesystem::path& path, std::string_view content);

} // namespace naturisk::csv
