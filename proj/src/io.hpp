#pragma once

#include <string>
#include <vector>

#include "errors.hpp"

namespace stablefast {

// Minimal CSV table: header row plus numeric body. Doubles are written with
// %.17g so reruns of the same build produce byte-identical bodies.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    std::string to_string() const;
    void write(const std::string& path) const;
    static CsvTable parse(const std::string& text);
    static CsvTable read(const std::string& path);
};

// key=value configuration text; '#' starts a comment, blank lines ignored.
// Returns pairs in file order; malformed lines raise ConfigError with the
// line number.
std::vector<std::pair<std::string, std::string>> parse_key_value_file(
    const std::string& path);

std::string format_double(double v);

}  // namespace stablefast
