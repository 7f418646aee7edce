#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "gentle/quiver.hpp"

namespace testutil {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

inline gentle::GentleQuiver load_fixture(const std::string& name) {
    return gentle::parse_quiver(read_file(std::string(FIXTURE_DIR) + "/" + name));
}

}  // namespace testutil
