// SPDX-License-Identifier: Apache-2.0
#pragma once

// Run manifest: resolved configuration, seed, version, wall-clock and the
// SHA-256 of every output. The configuration block is valid key=value input,
// so passing the manifest back as --config replays the run.

#include <adsim/config.hpp>
#include <adsim/error.hpp>

#include <openssl/evp.h>

#include <array>
#include <chrono>
#include <cstdio>
#include <ctime>
#include <filesystem>
#include <fstream>
#include <memory>
#include <string>
#include <vector>

namespace adsim {

inline constexpr const char* artifact_version = "1.0.0";

inline std::string sha256_hex(const std::string& bytes)
{
    std::unique_ptr<EVP_MD_CTX, decltype(&EVP_MD_CTX_free)> ctx(EVP_MD_CTX_new(), &EVP_MD_CTX_free);
    std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
    unsigned int len = 0;
    if (!ctx || EVP_DigestInit_ex(ctx.get(), EVP_sha256(), nullptr) != 1 ||
        EVP_DigestUpdate(ctx.get(), bytes.data(), bytes.size()) != 1 ||
        EVP_DigestFinal_ex(ctx.get(), md.data(), &len) != 1)
        throw std::runtime_error("sha256 failed");
    std::string hex;
    char buf[3];
    for (unsigned int i = 0; i < len; ++i) {
        std::snprintf(buf, sizeof buf, "%02x", md[i]);
        hex += buf;
    }
    return hex;
}

inline std::string read_file_bytes(const std::filesystem::path& path)
{
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw IoError("cannot read '" + path.string() + "'");
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

struct RunManifest {
    std::string command;
    ConfigFile config;
    std::string wall_clock_utc;
    std::vector<std::pair<std::filesystem::path, std::string>> digests;
};

inline std::string utc_now()
{
    const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
    std::tm tm{};
    gmtime_r(&now, &tm);
    char buf[32];
    std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
    return buf;
}

inline RunManifest make_manifest(std::string command, const ConfigFile& config,
                                 const std::vector<std::filesystem::path>& outputs)
{
    RunManifest m{std::move(command), config, utc_now(), {}};
    for (const auto& p : outputs)
        m.digests.emplace_back(p, sha256_hex(read_file_bytes(p)));
    return m;
}

inline std::string to_text(const RunManifest& m)
{
    std::string out = "# adsim run manifest\n";
    out += "# command " + m.command + "\n";
    out += "# artifact_version " + std::string(artifact_version) + "\n";
    out += "# wall_clock " + m.wall_clock_utc + "\n";
    for (const auto& [path, hex] : m.digests)
        out += "# sha256 " + hex + " " + path.filename().string() + "\n";
    out += to_config_text(m.config);
    return out;
}

} // namespace adsim
