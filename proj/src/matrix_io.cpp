#include "spt/matrix_io.hpp"

#include <fstream>
#include <sstream>
#include <stdexcept>

namespace spt {

RMatrix parse_matrix(std::istream& in) {
    std::vector<std::vector<Rational>> rows;
    std::string line;
    while (std::getline(in, line)) {
        auto hash = line.find('#');
        if (hash != std::string::npos) line.erase(hash);
        std::istringstream ls(line);
        std::vector<Rational> row;
        std::string tok;
        while (ls >> tok) row.push_back(parse_rational(tok));
        if (row.empty()) continue;
        if (!rows.empty() && row.size() != rows.front().size())
            throw std::invalid_argument("ragged matrix row");
        rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument("empty matrix");
    RMatrix a(rows.size(), rows.front().size());
    for (std::size_t i = 0; i < rows.size(); ++i)
        for (std::size_t j = 0; j < rows[i].size(); ++j) a(i, j) = rows[i][j];
    return a;
}

RMatrix parse_matrix(const std::string& text) {
    std::istringstream in(text);
    return parse_matrix(in);
}

RMatrix load_matrix(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::invalid_argument("cannot open " + path);
    return parse_matrix(in);
}

std::string format_matrix(const RMatrix& a) {
    std::ostringstream out;
    for (std::size_t i = 0; i < a.rows(); ++i) {
        for (std::size_t j = 0; j < a.cols(); ++j) {
            if (j) out << ' ';
            out << to_string(a(i, j));
        }
        out << '\n';
    }
    return out.str();
}

}  // namespace spt
