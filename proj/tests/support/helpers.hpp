#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace test_support {

inline std::string fixture_path(const std::string& name) {
    return std::string(SOAPFORGE_FIXTURE_DIR) + "/" + name;
}

inline std::string read_fixture(const std::string& name) {
    std::ifstream in(fixture_path(name), std::ios::binary);
    if (!in) throw std::runtime_error("cannot open fixture " + name);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

}  // namespace test_support
