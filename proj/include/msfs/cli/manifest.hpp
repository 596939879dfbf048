#pragma once

#include <chrono>
#include <cstdio>
#include <ctime>
#include <string>
#include <vector>

#include <openssl/sha.h>

#include "msfs/cli/config.hpp"

namespace msfs::cli {

inline std::string hex(const unsigned char* d, std::size_t n) {
    static const char* digits = "0123456789abcdef";
    std::string s;
    for (std::size_t i = 0; i < n; ++i) {
        s += digits[d[i] >> 4];
        s += digits[d[i] & 15];
    }
    return s;
}

inline std::string sha1_hex(const std::string& bytes) {
    unsigned char md[SHA_DIGEST_LENGTH];
    SHA1(reinterpret_cast<const unsigned char*>(bytes.data()), bytes.size(), md);
    return hex(md, sizeof md);
}

// Same id `git hash-object` gives the file.
inline std::string git_blob_hash(const std::string& content) {
    std::string blob = "blob " + std::to_string(content.size());
    blob.push_back('\0');
    return sha1_hex(blob + content);
}

inline std::string utc_timestamp() {
    const std::time_t now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

struct OutputFile {
    std::string file;
    std::size_t rows = 0;
    std::string sha1;
};

struct RunManifest {
    std::string config_path, output_dir, case_study, experiment;
    std::string config_hash;     // git blob id of the config file
    std::string effective_hash;  // git blob id of the canonical effective config
    std::uint64_t seed = 0;
    int jobs = 1;
    bool full_trace = false;
    std::string timestamp;
    json effective;
    std::vector<OutputFile> outputs;

    // The timestamp is the only field that varies between identical runs.
    json to_json() const {
        json out = json::array();
        for (const auto& o : outputs) out.push_back({{"file", o.file}, {"rows", o.rows}, {"sha1", o.sha1}});
        return {{"config_path", config_path},   {"output_dir", output_dir}, {"case_study", case_study},
                {"experiment", experiment},     {"config_hash", config_hash}, {"effective_config_hash", effective_hash},
                {"seed", seed},                 {"jobs", jobs},             {"full_trace", full_trace},
                {"timestamp", timestamp},       {"effective_config", effective}, {"outputs", out}};
    }
};

}  // namespace msfs::cli
