#pragma once

#include <sstream>
#include <string>

#include "decomp/model_io.hpp"

namespace decomp::test {

inline std::string fixture_path(const std::string& name) {
    return std::string(DECOMP_FIXTURES_DIR) + "/" + name;
}

inline ModelDocument fixture(const std::string& name) {
    return load_model(fixture_path(name));
}

/// "e1 e2 a" -> {"e1","e2","a"}
inline Word word(const std::string& text) {
    Word w;
    std::istringstream in(text);
    std::string token;
    while (in >> token) {
        w.push_back(token);
    }
    return w;
}

inline std::set<Event> events(const std::string& text) {
    Word w = word(text);
    return {w.begin(), w.end()};
}

}  // namespace decomp::test
