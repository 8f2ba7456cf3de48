#pragma once

#include <string>

#include "aba/frontend.hpp"

#ifndef ABA_CORPUS
#define ABA_CORPUS "corpus"
#endif

namespace support {

inline std::string corpus(const std::string& name) { return std::string(ABA_CORPUS) + "/" + name; }

inline aba::Framework framework(const std::string& name) {
    return aba::parse_framework(aba::load_document(corpus(name)).text);
}

inline aba::ExampleSets examples(const std::string& name) {
    return aba::parse_examples(aba::load_document(corpus(name)).text);
}

inline aba::GroundAtom atom(const std::string& text) { return aba::parse_ground_atom(text); }

inline aba::Rule rule(const std::string& text) { return aba::parse_rule(text); }

inline aba::AtomSet atoms(std::initializer_list<const char*> texts) {
    aba::AtomSet out;
    for (const char* t : texts) out.insert(atom(t));
    return out;
}

}  // namespace support
