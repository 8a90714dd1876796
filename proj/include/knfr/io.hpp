#pragma once

#include <string>
#include <vector>

namespace knfr {

// %.17g: parses back to the identical double, and identical runs emit
// identical bytes.
std::string format_double(double v);

// RFC 4180: quote fields containing commas, quotes, or newlines.
std::string csv_field(const std::string& raw);
std::string csv_row(const std::vector<std::string>& fields);

void write_text_file(const std::string& path, const std::string& content);

}  // namespace knfr
