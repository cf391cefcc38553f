#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "cologic/json_io.hpp"

namespace cologic::cli {

std::string sha256_hex(std::string_view bytes);

enum class Format { json, text };

/// Machine-readable run record. Contains no timestamps or timings, so
/// identical inputs give byte-identical output.
class RunReport {
public:
    RunReport(std::string command, std::vector<std::string> arguments);

    /// Records an input by name with the SHA-256 of its bytes.
    void add_input(const std::string& name, std::string_view bytes);
    /// Reads and records a file; returns its contents.
    std::string add_input_file(const std::string& path);

    void set_verdict(bool verdict) { verdict_ = verdict; }
    Json& results() { return results_; }
    void add_trace(Json entry) { traces_.push_back(std::move(entry)); }

    Json to_json() const;
    void write(std::ostream& out, Format format) const;

private:
    std::string command_;
    std::vector<std::string> arguments_;
    std::vector<std::pair<std::string, std::string>> inputs_;
    std::optional<bool> verdict_;
    Json results_ = Json::object();
    Json traces_ = Json::array();
};

} // namespace cologic::cli
