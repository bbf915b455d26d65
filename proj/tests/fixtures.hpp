#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

#include "hra/ir.hpp"

namespace hra::testing {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline Program load_fixture(const std::string& name) {
    return parse_program(read_file(std::string(HRA_FIXTURE_DIR) + "/" + name));
}

}  // namespace hra::testing
