#include "report.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>

#include <openssl/evp.h>

namespace cologic::cli {

std::string sha256_hex(std::string_view bytes)
{
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(bytes.data(), bytes.size(), digest, &length, EVP_sha256(), nullptr) != 1) {
        throw std::runtime_error("SHA-256 computation failed");
    }
    std::ostringstream out;
    for (unsigned int i = 0; i < length; ++i) {
        out << std::hex << std::setw(2) << std::setfill('0') << static_cast<int>(digest[i]);
    }
    return out.str();
}

RunReport::RunReport(std::string command, std::vector<std::string> arguments)
    : command_(std::move(command)), arguments_(std::move(arguments))
{
}

void RunReport::add_input(const std::string& name, std::string_view bytes)
{
    inputs_.emplace_back(name, sha256_hex(bytes));
}

std::string RunReport::add_input_file(const std::string& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in) {
        throw InputError(path + ": cannot open file");
    }
    std::ostringstream buffer;
    buffer << in.rdbuf();
    std::string bytes = buffer.str();
    add_input(path, bytes);
    return bytes;
}

Json RunReport::to_json() const
{
    Json files = Json::array();
    std::string combined;
    for (const auto& [name, hash] : inputs_) {
        files.push_back({{"name", name}, {"sha256", hash}});
        combined += name;
        combined += '\0';
        combined += hash;
        combined += '\n';
    }
    Json out{{"command", command_},
             {"arguments", arguments_},
             {"inputs", {{"digest", sha256_hex(combined)}, {"items", std::move(files)}}}};
    out["verdict"] = verdict_ ? Json(*verdict_) : Json(nullptr);
    out["results"] = results_;
    out["traces"] = traces_;
    return out;
}

namespace {

void render(std::ostream& out, const Json& j, const std::string& prefix)
{
    if (j.is_object()) {
        for (const auto& [key, value] : j.items()) {
            render(out, value, prefix.empty() ? key : prefix + "." + key);
        }
        return;
    }
    if (j.is_array() && !j.empty() && (j.front().is_object() || j.front().is_array())) {
        for (std::size_t k = 0; k < j.size(); ++k) {
            render(out, j[k], prefix + "[" + std::to_string(k) + "]");
        }
        return;
    }
    out << prefix << ": " << (j.is_string() ? j.get<std::string>() : j.dump()) << '\n';
}

} // namespace

void RunReport::write(std::ostream& out, Format format) const
{
    const Json j = to_json();
    if (format == Format::json) {
        out << j.dump(2) << '\n';
        return;
    }
    out << "command: " << command_ << '\n';
    out << "verdict: " << (verdict_ ? (*verdict_ ? "true" : "false") : "n/a") << '\n';
    out << "inputs digest: " << j["inputs"]["digest"].get<std::string>() << '\n';
    render(out, results_, "");
    for (std::size_t k = 0; k < traces_.size(); ++k) {
        render(out, traces_[k], "trace[" + std::to_string(k) + "]");
    }
}

} // namespace cologic::cli
