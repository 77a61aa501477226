#pragma once

// Minimal RFC-style CSV support: comma separator, UTF-8, '.' decimal point,
// double-quote escaping. Enough for the interchange files; not a general
// CSV library.

#include <istream>
#include <optional>
#include <string>
#include <vector>

namespace peereff::csv {

// Reads one record (possibly spanning quoted newlines). Returns nullopt at
// end of input. Handles \r\n line endings.
std::optional<std::vector<std::string>> read_record(std::istream& in);

// Quotes a field iff it contains a comma, quote or newline.
std::string escape(const std::string& field);

std::string join(const std::vector<std::string>& fields);

}  // namespace peereff::csv
