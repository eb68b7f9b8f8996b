#pragma once

#include <fstream>
#include <sstream>
#include <string>

#include "concord/document.hpp"

namespace concord::testing {

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

inline std::string fixture_path(const std::string& name) {
    return std::string(CONCORD_FIXTURE_DIR) + "/" + name;
}

inline Document load_fixture_corpus() {
    return load_document(read_file(fixture_path("sglt2i_corpus.json")));
}

inline AxiomSet load_fixture_axioms(const Document& doc) {
    return load_axioms(read_file(fixture_path("sglt2i_axioms.json")), doc);
}

} // namespace concord::testing
