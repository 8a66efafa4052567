#pragma once

#include <string>

#include "tcg/autom.hpp"
#include "tcg/nilgroup.hpp"

// JSON documents for specs and automorphisms and the comma-separated element
// format used on the command line. Every load validates before returning;
// serialization is deterministic (sorted keys, compact layout).

namespace tcg {

GroupSpec spec_from_json(const std::string& text);
std::string spec_to_json(const GroupSpec& s);

Automorphism automorphism_from_json(const GroupSpec& s, const std::string& text);
std::string automorphism_to_json(const Automorphism& psi);

// "a1,…,ak,c" with c in H_ω center units; must satisfy the parity condition.
Element element_from_string(const GroupSpec& s, const std::string& text);
std::string element_to_string(const Element& g);

}  // namespace tcg
