#ifndef FRACDISP_IO_HPP
#define FRACDISP_IO_HPP

#include <string>
#include <vector>

#include <json.hpp>

namespace fracdisp::io {

using Json = nlohmann::json;

// Atomic file writes: temp file in the same directory, then rename.
void write_text_atomic(const std::string& path, const std::string& content);
void write_binary_atomic(const std::string& path, const char* data, std::size_t bytes);
void write_json_atomic(const std::string& path, const Json& j);

Json read_json(const std::string& path);
void read_binary(const std::string& path, char* data, std::size_t bytes);

// CSV with '.' decimals, ',' separators, one header row.
class CsvWriter {
public:
    explicit CsvWriter(std::vector<std::string> header);
    void add_row(const std::vector<double>& values);
    void add_row_text(const std::vector<std::string>& values);
    std::string str() const;
    void save(const std::string& path) const;

private:
    std::string buffer_;
    std::size_t columns_;
};

} // namespace fracdisp::io

#endif
