#include "naturisk/csv.hpp"

#include "naturisk/errors.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

#include <json.hpp>

namespace naturisk::csv {

namespace {

// RFC-4180 style field scanner over the whole file content.
std::vector<std::vector<std::string>> split_records(std::string_view text, const std::string& origin) {
    std::vector<std::vector<std::string>> records;
    std::vector<std::string> fields;
    std::string field;
    bool in_quotes = false;
    bool field_started = false;

    auto end_field = [&] {
        fields.push_back(std::move(field));
        field.clear();
        field_started = false;
    };
    auto end_record = [&] {
        end_field();
        // skip blank lines
        if (!(fields.size() == 1 && fields[0].empty()))
            records.push_back(std::move(fields));
        fields.clear();
    };

    for (size_t i = 0; i < text.size(); ++i) {
        char c = text[i];
        if (in_quotes) {
            if (c == '"') {
                if (i + 1 < text.size() && text[i + 1] == '"') {
                    field.push_back('"');
                    ++i;
                } else {
                    in_quotes = false;
                }
            } else {
                field.push_back(c);
            }
        } else if (c == '"' && !field_started) {
            in_quotes = true;
            field_started = true;
        } else if (c == ',') {
            end_field();
        } else if (c == '\n') {
            if (!field.empty() && field.back() == '\r')
                field.pop_back();
            end_record();
        } else {
            field.push_back(c);
            field_started = true;
        }
    }
    if (in_quotes)
        raise(Errc::schema_violation, origin + ": unterminated quoted field");
    if (!field.empty() && field.back() == '\r')
        field.pop_back();
    if (field_started || !field.empty() || !fields.empty())
        end_record();
    return records;
}

} // namespace

File parse(std::string_view text, const std::string& origin) {
    auto records = split_records(text, origin);
    if (records.empty())
        raise(Errc::schema_violation, origin + ": missing header row");
    File f;
    f.header = std::move(records.front());
    const size_t width = f.header.size();
    for (size_t i = 1; i < records.size(); ++i) {
        if (records[i].size() != width)
            raise(Errc::schema_violation, origin + ": row " + std::to_string(i + 1) + " has " +
                                              std::to_string(records[i].size()) + " fields, expected " +
                                              std::to_string(width));
        f.rows.push_back(std::move(records[i]));
    }
    return f;
}

File read_file(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        raise(Errc::missing_file, path.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return parse(buf.str(), path.filename().string());
}

std::string escape_field(std::string_view field) {
    bool needs_quotes = field.find_first_of(",\"\n\r") != std::string_view::npos;
    if (!needs_quotes)
        return std::string(field);
    std::string out = "\"";
    for (char c : field) {
        if (c == '"')
            out += "\"\"";
        else
            out.push_back(c);
    }
    out.push_back('"');
    return out;
}

std::string format_double(double v) {
    char buf[64];
    auto res = std::to_chars(buf, buf + sizeof(buf), v);
    return std::string(buf, res.ptr);
}

Writer::Writer(std::vector<std::string> header) : header_(std::move(header)) {}

void Writer::add_row(std::vector<std::string> fields) {
    if (fields.size() != header_.size())
        raise(Errc::io_error, "row width does not match header");
    rows_.push_back(std::move(fields));
}

std::string Writer::to_csv() const {
    std::string out;
    for (size_t i = 0; i < header_.size(); ++i) {
        if (i)
            out.push_back(',');
        out += escape_field(header_[i]);
    }
    out.push_back('\n');
    for (const auto& row : rows_) {
        for (size_t i = 0; i < row.size(); ++i) {
            if (i)
                out.push_back(',');
            out += escape_field(row[i]);
        }
        out.push_back('\n');
    }
    return out;
}

std::string Writer::to_json() const {
    nlohmann::ordered_json arr = nlohmann::ordered_json::array();
    for (const auto& row : rows_) {
        nlohmann::ordered_json obj;
        for (size_t i = 0; i < header_.size(); ++i)
            obj[header_[i]] = row[i];
        arr.push_back(std::move(obj));
    }
    return arr.dump(2) + "\n";
}

void write_text_file(const std::filesystem::path& path, std::string_view content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        raise(Errc::io_error, "cannot open for writing: " + path.string());
    out.write(content.data(), static_cast<std::streamsize>(content.size()));
    if (!out)
        raise(Errc::io_error, "write failed: " + path.string());
}

} // namespace naturisk::csv
