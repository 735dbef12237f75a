#pragma once

// Shared helpers for the test binaries: scratch directories, process
// spawning for CLI checks, and a minimal XML well-formedness scan.

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include <sys/wait.h>
#include <unistd.h>

namespace testutil {

namespace fs = std::filesystem;

class TempDir {
public:
    explicit TempDir(const std::string& tag) {
        static int counter = 0;
        path_ = fs::temp_directory_path() /
                ("redbench-" + tag + "-" + std::to_string(::getpid()) + "-" +
                 std::to_string(counter++));
        fs::create_directories(path_);
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

inline std::string read_file(const fs::path& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

inline void write_file(const fs::path& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    out << content;
}

struct RunResult {
    int exit_code = -1;
    std::string out;
    std::string err;
};

inline std::string shell_quote(const std::string& arg) {
    std::string quoted = "'";
    for (char c : arg) {
        if (c == '\'') {
            quoted += "'\\''";
        } else {
            quoted.push_back(c);
        }
    }
    quoted += "'";
    return quoted;
}

// Runs a command line, capturing stdout/stderr and the exit code.
inline RunResult run_command(const std::vector<std::string>& args,
                             const fs::path& scratch) {
    fs::path out_path = scratch / "cmd.out";
    fs::path err_path = scratch / "cmd.err";
    std::string cmd;
    for (const auto& a : args) {
        cmd += shell_quote(a);
        cmd.push_back(' ');
    }
    cmd += "> " + shell_quote(out_path.string()) + " 2> " +
           shell_quote(err_path.string());
    int status = std::system(cmd.c_str());
    RunResult result;
    if (status == -1) {
        result.exit_code = -1;
    } else if (WIFEXITED(status)) {
        result.exit_code = WEXITSTATUS(status);
    } else {
        result.exit_code = 128;
    }
    result.out = read_file(out_path);
    result.err = read_file(err_path);
    return result;
}

// Path of the CLI under test, provided by the build via an env var.
inline std::string cli_path() {
    const char* env = std::getenv("REDBENCH_CLI");
    return env != nullptr ? env : "";
}

inline std::size_t count_occurrences(const std::string& haystack,
                                     const std::string& needle) {
    std::size_t count = 0;
    std::size_t pos = 0;
    while ((pos = haystack.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

// Minimal well-formedness scan: every open tag must be closed in order,
// attribute values must be quoted, and the document must end with the root
// tag closed. Good enough to catch broken SVG emission.
inline bool xml_well_formed(const std::string& text) {
    std::vector<std::string> stack;
    std::size_t i = 0;
    auto skip_until = [&](const std::string& end) {
        std::size_t pos = text.find(end, i);
        if (pos == std::string::npos) return false;
        i = pos + end.size();
        return true;
    };
    while (i < text.size()) {
        if (text[i] != '<') {
            ++i;
            continue;
        }
        if (text.compare(i, 2, "<?") == 0) {
            if (!skip_until("?>")) return false;
            continue;
        }
        if (text.compare(i, 4, "<!--") == 0) {
            if (!skip_until("-->")) return false;
            continue;
        }
        std::size_t close = text.find('>', i);
        if (close == std::string::npos) return false;
        std::string tag = text.substr(i + 1, close - i - 1);
        i = close + 1;
        if (tag.empty()) return false;
        if (tag[0] == '/') {
            if (stack.empty()) return false;
            std::string name = tag.substr(1);
            if (stack.back() != name) return false;
            stack.pop_back();
            continue;
        }
        bool self_closing = tag.back() == '/';
        if (self_closing) tag.pop_back();
        std::size_t name_end = tag.find_first_of(" \t\n");
        std::string name =
            (name_end == std::string::npos) ? tag : tag.substr(0, name_end);
        if (name.empty()) return false;
        // Quote balance inside the tag.
        std::size_t quotes = 0;
        for (char c : tag) {
            if (c == '"') ++quotes;
        }
        if (quotes % 2 != 0) return false;
        if (!self_closing) stack.push_back(name);
    }
    return stack.empty();
}

}  // namespace testutil
