#include "smoothtrim/io.hpp"

#include <cctype>
#include <cstdlib>
#include <fstream>
#include <sstream>

#include "smoothtrim/error.hpp"

namespace smoothtrim {

namespace {

std::string trimmed(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool parse_token(const std::string& token, double& out) {
    if (token.empty()) return false;
    char* end = nullptr;
    out = std::strtod(token.c_str(), &end);
    return end == token.c_str() + token.size();
}

}  // namespace

std::vector<double> read_numeric_csv(std::istream& in, const std::string& name) {
    std::vector<double> out;
    std::string line;
    std::size_t lineno = 0;
    bool first_content_line = true;
    while (std::getline(in, line)) {
        ++lineno;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trimmed(line).empty()) continue;

        std::vector<double> row;
        bool row_ok = true;
        std::stringstream tokens(line);
        std::string token;
        while (std::getline(tokens, token, ',')) {
            token = trimmed(token);
            if (token.empty()) continue;
            double v = 0.0;
            if (!parse_token(token, v)) {
                if (first_content_line) {
                    row_ok = false;  // header line
                    break;
                }
                throw ParameterError(name + ": line " + std::to_string(lineno) +
                                     ": non-numeric value '" + token + "'");
            }
            row.push_back(v);
        }
        if (row_ok) out.insert(out.end(), row.begin(), row.end());
        first_content_line = false;
    }
    if (out.empty()) throw ParameterError(name + ": no numeric data");
    return out;
}

std::vector<double> read_numeric_csv_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw ParameterError("cannot open input file '" + path + "'");
    return read_numeric_csv(in, path);
}

}  // namespace smoothtrim
