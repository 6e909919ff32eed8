#include "qsde/output.hpp"

#include <openssl/evp.h>

#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace qsde::out {

std::string sha1_hex(std::string_view data) {
    unsigned char digest[EVP_MAX_MD_SIZE];
    unsigned int length = 0;
    if (EVP_Digest(data.data(), data.size(), digest, &length, EVP_sha1(), nullptr) != 1)
        throw std::runtime_error("sha1_hex: digest failed");
    static const char hex[] = "0123456789abcdef";
    std::string result;
    result.reserve(2 * length);
    for (unsigned int i = 0; i < length; ++i) {
        result.push_back(hex[digest[i] >> 4]);
        result.push_back(hex[digest[i] & 0xF]);
    }
    return result;
}

std::string git_blob_hash(std::string_view content) {
    std::string prefixed = "blob " + std::to_string(content.size());
    prefixed.push_back('\0');
    prefixed.append(content);
    return sha1_hex(prefixed);
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    const std::filesystem::path tmp = path.string() + ".tmp";
    {
        std::ofstream f(tmp, std::ios::binary | std::ios::trunc);
        if (!f) throw std::runtime_error("cannot write " + tmp.string());
        f.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!f) throw std::runtime_error("short write to " + tmp.string());
    }
    std::filesystem::rename(tmp, path);
}

std::string serialize_summary(nlohmann::ordered_json summary) {
    summary.erase("content_hash");
    const std::string body = summary.dump(2);
    summary["content_hash"] = git_blob_hash(body);
    return summary.dump(2) + "\n";
}

void write_summary(const std::filesystem::path& path, nlohmann::ordered_json summary) {
    write_file_atomic(path, serialize_summary(std::move(summary)));
}

std::string format_double(double v) {
    char buffer[64];
    std::snprintf(buffer, sizeof(buffer), "%.17g", v);
    return buffer;
}

void write_csv(const std::filesystem::path& path, const std::string& header,
               const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream body;
    body << header << '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i > 0) body << ',';
            body << row[i];
        }
        body << '\n';
    }
    write_file_atomic(path, body.str());
}

}  // namespace qsde::out
