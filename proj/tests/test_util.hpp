#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

// Set by the build; points at the checked-in corpus directory.
#ifndef REPAIRFORGE_CORPUS_DIR
#error "REPAIRFORGE_CORPUS_DIR must be defined"
#endif

inline std::string corpus_path(const std::string& name) {
    return std::string(REPAIRFORGE_CORPUS_DIR) + "/" + name;
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot read " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}
