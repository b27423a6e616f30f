#include "io.hpp"

#include <cstdio>
#include <fstream>
#include <sstream>

namespace stablefast {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof buf, "%.17g", v);
    return buf;
}

std::string CsvTable::to_string() const {
    std::string out;
    for (std::size_t i = 0; i < header.size(); ++i) {
        if (i) out += ',';
        out += header[i];
    }
    out += '\n';
    for (const auto& row : rows) {
        for (std::size_t i = 0; i < row.size(); ++i) {
            if (i) out += ',';
            out += format_double(row[i]);
        }
        out += '\n';
    }
    return out;
}

void CsvTable::write(const std::string& path) const {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw Error("cannot write " + path);
    f << to_string();
}

CsvTable CsvTable::parse(const std::string& text) {
    CsvTable table;
    std::istringstream in(text);
    std::string line;
    if (!std::getline(in, line)) throw Error("CSV: empty input");
    std::istringstream hs(line);
    std::string cell;
    while (std::getline(hs, cell, ',')) table.header.push_back(cell);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<double> row;
        std::istringstream ls(line);
        while (std::getline(ls, cell, ',')) {
            std::size_t pos = 0;
            row.push_back(std::stod(cell, &pos));
        }
        if (row.size() != table.header.size())
            throw Error("CSV: row width differs from header");
        table.rows.push_back(std::move(row));
    }
    return table;
}

CsvTable CsvTable::read(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw Error("cannot read " + path);
    std::ostringstream ss;
    ss << f.rdbuf();
    return parse(ss.str());
}

std::vector<std::pair<std::string, std::string>> parse_key_value_file(
    const std::string& path) {
    std::ifstream f(path);
    if (!f) throw ConfigError("cannot read config file " + path);
    std::vector<std::pair<std::string, std::string>> pairs;
    std::string line;
    int line_no = 0;
    while (std::getline(f, line)) {
        ++line_no;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        auto strip = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            if (b == std::string::npos) return std::string();
            const auto e = s.find_last_not_of(" \t\r");
            return s.substr(b, e - b + 1);
        };
        line = strip(line);
        if (line.empty()) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": expected key=value, got '" + line + "'");
        std::string key = strip(line.substr(0, eq));
        std::string value = strip(line.substr(eq + 1));
        if (key.empty())
            throw ConfigError("config line " + std::to_string(line_no) +
                              ": empty key");
        pairs.emplace_back(std::move(key), std::move(value));
    }
    return pairs;
}

}  // namespace stablefast
