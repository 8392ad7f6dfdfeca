#pragma once

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

#include "vtag/diff.hpp"

namespace testutil {

namespace fs = std::filesystem;

class TempDir {
public:
    TempDir() {
        fs::path base = fs::temp_directory_path();
        std::random_device rd;
        for (int i = 0; i < 64; ++i) {
            fs::path candidate = base / ("vtag_test_" + std::to_string(rd()));
            std::error_code ec;
            if (fs::create_directory(candidate, ec)) {
                path_ = candidate;
                return;
            }
        }
        throw std::runtime_error("cannot create a temp directory");
    }
    ~TempDir() {
        std::error_code ec;
        fs::remove_all(path_, ec);
    }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;

    const fs::path& path() const { return path_; }

private:
    fs::path path_;
};

inline std::string read_file(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + p.string());
    std::ostringstream buf;
    buf << in.rdbuf();
    return std::move(buf).str();
}

inline void write_file(const fs::path& p, std::string_view content) {
    std::ofstream out(p, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + p.string());
    out << content;
}

// Independent quadratic LCS, deliberately written apart from the library
// (plain nested vectors, direct string compares) to serve as the oracle.
inline std::size_t oracle_lcs(const vtag::Tokens& a, const vtag::Tokens& b) {
    std::vector<std::vector<std::size_t>> t(a.size() + 1,
                                            std::vector<std::size_t>(b.size() + 1, 0));
    for (std::size_t i = 1; i <= a.size(); ++i) {
        for (std::size_t j = 1; j <= b.size(); ++j) {
            if (a[i - 1] == b[j - 1]) {
                t[i][j] = t[i - 1][j - 1] + 1;
            } else {
                t[i][j] = std::max(t[i - 1][j], t[i][j - 1]);
            }
        }
    }
    return t[a.size()][b.size()];
}

inline std::size_t oracle_edit_distance(const vtag::Tokens& a, const vtag::Tokens& b) {
    return a.size() + b.size() - 2 * oracle_lcs(a, b);
}

// Small alphabet so random sequences share plenty of tokens.
inline vtag::Tokens random_tokens(std::mt19937_64& rng, std::size_t len,
                                  std::size_t alphabet = 6) {
    static const char* const kWords[] = {"alpha", "beta",  "gamma", "delta",
                                         "eps",   "zeta",  "eta",   "theta",
                                         "iota",  "kappa", "mu",    "nu"};
    if (alphabet > std::size(kWords)) alphabet = std::size(kWords);
    vtag::Tokens tokens;
    tokens.reserve(len);
    for (std::size_t i = 0; i < len; ++i) {
        tokens.push_back(kWords[rng() % alphabet]);
    }
    return tokens;
}

struct CliResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

inline std::string cli_path() {
    const char* p = std::getenv("VTAG_CLI");
    return p ? std::string(p) : std::string();
}

// Runs the CLI binary with `args`, capturing stdout/stderr in tmp files.
inline CliResult run_cli(const std::string& args, const fs::path& scratch) {
    std::string cli = cli_path();
    if (cli.empty()) throw std::runtime_error("VTAG_CLI is not set");
    fs::path out_file = scratch / "cli.out";
    fs::path err_file = scratch / "cli.err";
    std::string cmd = cli + " " + args + " >" + out_file.string() + " 2>" +
                      err_file.string();
    int status = std::system(cmd.c_str());
    CliResult result;
    result.exit_code = (status >= 0 && (status & 0x7F) == 0) ? ((status >> 8) & 0xFF) : -1;
    result.out = read_file(out_file);
    result.err = read_file(err_file);
    return result;
}

}  // namespace testutil
