#pragma once

#include <iosfwd>
#include <string>

#include "limid/model.hpp"

namespace limid {

struct ParseError : std::runtime_error {
    std::string code;  // "syntax-error" or "semantic-error"
    ParseError(std::string c, const std::string& msg)
        : std::runtime_error(c + ": " + msg), code(std::move(c)) {}
};

// Parses the LIMID file format. Throws ParseError with code "syntax-error"
// (with byte position) on malformed input and "semantic-error" when
// validate() reports diagnostics.
Limid parse_limid(std::istream& in);
Limid parse_limid_string(const std::string& text);
Limid load_limid(const std::string& path);

// Canonical serialization; table values round-trip bit-exactly.
std::string serialize_limid(const Limid& limid);
void save_limid(const Limid& limid, const std::string& path);

}  // namespace limid
