#pragma once

// File helpers. Writes go through a temp file + rename so a failed run never
// leaves a partial artifact behind.

#include "bpd/core.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

namespace bpd {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error(errc::io, "cannot open '" + path + "' for reading");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw error(errc::io, "read failure on '" + path + "'");
    return ss.str();
}

inline void write_file_atomic(const std::string& path, const std::string& content) {
    std::string tmp = path + ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        if (!out) throw error(errc::io, "cannot open '" + tmp + "' for writing");
        out << content;
        out.flush();
        if (!out) {
            out.close();
            std::remove(tmp.c_str());
            throw error(errc::io, "write failure on '" + tmp + "'");
        }
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::remove(tmp.c_str());
        throw error(errc::io, "cannot move '" + tmp + "' to '" + path + "'");
    }
}

}  // namespace bpd
