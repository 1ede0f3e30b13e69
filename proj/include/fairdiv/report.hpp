#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include <nlohmann/json.hpp>
#include <openssl/evp.h>

#include "fairdiv/errors.hpp"
#include "fairdiv/search.hpp"

namespace fairdiv {

/// Lowercase hex SHA-256 of `data`.
inline std::string sha256_hex(std::string_view data) {
  std::array<unsigned char, EVP_MAX_MD_SIZE> md{};
  unsigned int len = 0;
  if (EVP_Digest(data.data(), data.size(), md.data(), &len, EVP_sha256(), nullptr) != 1) {
    throw Error("SHA-256 computation failed");
  }
  static constexpr char kHex[] = "0123456789abcdef";
  std::string out;
  for (unsigned int k = 0; k < len; ++k) {
    out += kHex[md[k] >> 4];
    out += kHex[md[k] & 0xF];
  }
  return out;
}

enum class ReportVerdict { Yes, No, Unknown, Success, Error };

inline const char* to_string(ReportVerdict v) {
  switch (v) {
    case ReportVerdict::Yes: return "yes";
    case ReportVerdict::No: return "no";
    case ReportVerdict::Unknown: return "unknown";
    case ReportVerdict::Success: return "success";
    case ReportVerdict::Error: return "error";
  }
  return "?";
}

inline ReportVerdict report_verdict(Verdict v) {
  switch (v) {
    case Verdict::Yes: return ReportVerdict::Yes;
    case Verdict::No: return ReportVerdict::No;
    case Verdict::Unknown: return ReportVerdict::Unknown;
  }
  return ReportVerdict::Error;
}

struct InputDigest {
  std::string path;
  std::string sha256;
};

/// Machine-readable result of one CLI command.
struct Report {
  std::string command;
  ReportVerdict verdict = ReportVerdict::Error;
  nlohmann::json witness;  // null when absent
  std::uint64_t nodes = 0;
  double wall_ms = 0;
  std::vector<InputDigest> inputs;
  nlohmann::json payload = nlohmann::json::object();

  nlohmann::json to_json() const {
    nlohmann::json in = nlohmann::json::array();
    for (const auto& d : inputs) in.push_back({{"path", d.path}, {"sha256", d.sha256}});
    return {{"command", command},
            {"verdict", to_string(verdict)},
            {"witness", witness},
            {"stats", {{"nodes", nodes}, {"wall_ms", wall_ms}}},
            {"provenance", {{"tool", "fairdiv"}, {"inputs", std::move(in)}}},
            {"payload", payload}};
  }
};

/// 0 yes/success, 1 no, 2 unknown, 3 error.
inline int exit_code_for(ReportVerdict v) {
  switch (v) {
    case ReportVerdict::Yes:
    case ReportVerdict::Success: return 0;
    case ReportVerdict::No: return 1;
    case ReportVerdict::Unknown: return 2;
    case ReportVerdict::Error: return 3;
  }
  return 3;
}

inline int exit_code_for(const Report& report) { return exit_code_for(report.verdict); }

}  // namespace fairdiv
