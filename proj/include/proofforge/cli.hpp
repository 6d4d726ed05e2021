#pragma once

#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

namespace proofforge {

inline constexpr int kExitOk = 0;
inline constexpr int kExitFailure = 1;
inline constexpr int kExitExhausted = 2;
inline constexpr int kExitUsage = 64;
inline constexpr int kExitFile = 66;

inline constexpr int kMachineFormat = 1;
inline constexpr int kProofFormat = 1;
inline constexpr int kTheoryFormat = 1;

const char* tool_version();

/// Everything that determines an artifact. Rendered as leading '#' lines.
struct RunManifest {
    std::string command;
    std::vector<std::pair<std::string, std::string>> flags;     // sorted by name
    std::vector<std::pair<std::string, std::string>> digests;   // path -> sha256 hex
    std::string version;
    std::string mode;
    std::vector<std::pair<std::string, std::string>> caps;

    std::vector<std::string> lines() const;
    std::string comment_block() const;
};

std::string sha256_hex(const std::string& bytes);

/// Writes via a temporary file in the same directory and renames it into place.
void write_atomic(const std::string& path, const std::string& contents);

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);
int run_cli(int argc, char** argv);

}  // namespace proofforge
