#pragma once

#include <fstream>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace protolab {

/// |C| x |V| non-negative integer matrix; entry (i,j) counts parallel edges
/// between check i and variable j.
struct BaseMatrix {
    int rows = 0;  // check nodes |C|
    int cols = 0;  // variable nodes |V|
    std::vector<int> entries;  // row-major

    BaseMatrix() = default;
    BaseMatrix(int r, int c) : rows(r), cols(c), entries(static_cast<size_t>(r) * c, 0) {}
    BaseMatrix(std::initializer_list<std::initializer_list<int>> init) {
        rows = static_cast<int>(init.size());
        cols = rows > 0 ? static_cast<int>(init.begin()->size()) : 0;
        for (const auto& row : init) {
            if (static_cast<int>(row.size()) != cols)
                throw std::invalid_argument("BaseMatrix: ragged initializer");
            entries.insert(entries.end(), row.begin(), row.end());
        }
    }

    int& at(int r, int c) { return entries[static_cast<size_t>(r) * cols + c]; }
    int at(int r, int c) const { return entries[static_cast<size_t>(r) * cols + c]; }

    int row_sum(int r) const {
        int s = 0;
        for (int c = 0; c < cols; ++c) s += at(r, c);
        return s;
    }
    int col_sum(int c) const {
        int s = 0;
        for (int r = 0; r < rows; ++r) s += at(r, c);
        return s;
    }
    int edge_count() const {
        int s = 0;
        for (int v : entries) s += v;
        return s;
    }

    // Basic validity: shape, non-negative entries, no all-zero row or column.
    void validate() const {
        if (rows <= 0 || cols <= 0) throw std::invalid_argument("base matrix: empty");
        for (int v : entries)
            if (v < 0) throw std::invalid_argument("base matrix: negative entry");
        for (int r = 0; r < rows; ++r)
            if (row_sum(r) == 0)
                throw std::invalid_argument("base matrix: all-zero row " + std::to_string(r + 1));
        for (int c = 0; c < cols; ++c)
            if (col_sum(c) == 0)
                throw std::invalid_argument("base matrix: all-zero column " + std::to_string(c + 1));
    }

    // Design candidates additionally need minimum bit-node degree 2.
    bool design_ok() const {
        for (int c = 0; c < cols; ++c)
            if (col_sum(c) < 2) return false;
        return true;
    }

    std::string to_text() const {
        std::ostringstream os;
        for (int r = 0; r < rows; ++r) {
            for (int c = 0; c < cols; ++c) {
                if (c) os << ' ';
                os << at(r, c);
            }
            os << '\n';
        }
        return os.str();
    }

    friend bool operator==(const BaseMatrix&, const BaseMatrix&) = default;
};

/// Parses whitespace-separated integer rows; '#' starts a comment, blank lines skipped.
inline BaseMatrix parse_base_matrix(std::string_view text) {
    std::vector<std::vector<int>> rows;
    std::istringstream in{std::string(text)};
    std::string line;
    while (std::getline(in, line)) {
        if (auto pos = line.find('#'); pos != std::string::npos) line.erase(pos);
        std::istringstream ls(line);
        std::vector<int> row;
        std::string tok;
        while (ls >> tok) {
            size_t used = 0;
            long val = 0;
            try {
                val = std::stol(tok, &used);
            } catch (const std::exception&) {
                throw std::invalid_argument("base matrix: non-integer entry '" + tok + "'");
            }
            if (used != tok.size())
                throw std::invalid_argument("base matrix: non-integer entry '" + tok + "'");
            if (val < 0) throw std::invalid_argument("base matrix: negative entry '" + tok + "'");
            row.push_back(static_cast<int>(val));
        }
        if (!row.empty()) rows.push_back(std::move(row));
    }
    if (rows.empty()) throw std::invalid_argument("base matrix: empty input");
    BaseMatrix b(static_cast<int>(rows.size()), static_cast<int>(rows[0].size()));
    for (size_t r = 0; r < rows.size(); ++r) {
        if (rows[r].size() != rows[0].size())
            throw std::invalid_argument("base matrix: ragged row " + std::to_string(r + 1));
        for (size_t c = 0; c < rows[r].size(); ++c) b.at(static_cast<int>(r), static_cast<int>(c)) = rows[r][c];
    }
    b.validate();
    return b;
}

inline BaseMatrix load_base_matrix_file(const std::string& path) {
    std::ifstream f(path);
    if (!f) throw std::runtime_error("cannot open base matrix file: " + path);
    std::ostringstream buf;
    buf << f.rdbuf();
    return parse_base_matrix(buf.str());
}

}  // namespace protolab
