#include "fracdisp/io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

#include "fracdisp/errors.hpp"

namespace fracdisp::io {

namespace {

void rename_or_throw(const std::string& tmp, const std::string& path) {
    if (std::rename(tmp.c_str(), path.c_str()) != 0) {
        std::remove(tmp.c_str());
        throw Error("atomic rename failed for " + path);
    }
}

} // namespace

void write_text_atomic(const std::string& path, const std::string& content) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("cannot open " + tmp);
        os << content;
        if (!os) throw Error("short write to " + tmp);
    }
    rename_or_throw(tmp, path);
}

void write_binary_atomic(const std::string& path, const char* data, std::size_t bytes) {
    const std::string tmp = path + ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("cannot open " + tmp);
        os.write(data, static_cast<std::streamsize>(bytes));
        if (!os) throw Error("short write to " + tmp);
    }
    rename_or_throw(tmp, path);
}

void write_json_atomic(const std::string& path, const Json& j) {
    write_text_atomic(path, j.dump(2) + "\n");
}

Json read_json(const std::string& path) {
    std::ifstream is(path);
    if (!is) throw ConfigError("cannot open " + path);
    Json j;
    try {
        is >> j;
    } catch (const std::exception& e) {
        throw ConfigError("malformed JSON in " + path + ": " + e.what());
    }
    return j;
}

void read_binary(const std::string& path, char* data, std::size_t bytes) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot open " + path);
    is.read(data, static_cast<std::streamsize>(bytes));
    if (static_cast<std::size_t>(is.gcount()) != bytes) throw Error("short read from " + path);
}

CsvWriter::CsvWriter(std::vector<std::string> header) : columns_(header.size()) {
    std::ostringstream os;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) os << ',';
        os << header[i];
    }
    os << '\n';
    buffer_ = os.str();
}

void CsvWriter::add_row(const std::vector<double>& values) {
    if (values.size() != columns_) throw Error("csv row width mismatch");
    std::ostringstream os;
    os.precision(17);
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) os << ',';
        os << values[i];
    }
    os << '\n';
    buffer_ += os.str();
}

void CsvWriter::add_row_text(const std::vector<std::string>& values) {
    if (values.size() != columns_) throw Error("csv row width mismatch");
    std::ostringstream os;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i) os << ',';
        os << values[i];
    }
    os << '\n';
    buffer_ += os.str();
}

std::string CsvWriter::str() const { return buffer_; }

void CsvWriter::save(const std::string& path) const { write_text_atomic(path, buffer_); }

} // namespace fracdisp::io
