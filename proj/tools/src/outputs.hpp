#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include <json.hpp>

namespace qtool {

using ordered_json = nlohmann::ordered_json;

// fixed %.17g rendering so reruns are byte-identical and round-trip exactly
std::string num(double v);

struct CsvWriter {
    explicit CsvWriter(const std::filesystem::path& path, const std::vector<std::string>& header);
    void row(const std::vector<std::string>& cells);
    void close();

  private:
    std::string buffer_;
    std::filesystem::path path_;
    std::size_t columns_;
    bool closed_ = false;
};

void write_json(const std::filesystem::path& path, const ordered_json& doc);

} // namespace qtool
