#include "rough/csv.hpp"

#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "rough/errors.hpp"

namespace rough {

std::string format_value(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

void write_sampled_path_csv(std::ostream& os, const SampledPath& x) {
    os << "t";
    for (std::size_t c = 1; c <= x.dim(); ++c) os << ",x" << c;
    os << "\n";
    for (std::size_t k = 0; k < x.grid_size(); ++k) {
        os << format_value(x.times()[k]);
        for (std::size_t c = 0; c < x.dim(); ++c) os << "," << format_value(x.value(k, c));
        os << "\n";
    }
}

SampledPath read_sampled_path_csv(std::istream& is) {
    std::string line;
    if (!std::getline(is, line)) throw ShapeError("path CSV: missing header");
    std::size_t dim = 0;
    {
        std::stringstream header(line);
        std::string col;
        bool first = true;
        while (std::getline(header, col, ',')) {
            if (first) {
                if (col != "t") throw ShapeError("path CSV: first column must be t");
                first = false;
            } else {
                ++dim;
            }
        }
        if (dim == 0) throw ShapeError("path CSV: no value columns");
    }
    std::vector<double> times, values;
    std::size_t lineno = 1;
    while (std::getline(is, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream row(line);
        std::string cell;
        std::vector<double> fields;
        while (std::getline(row, cell, ',')) {
            try {
                std::size_t used = 0;
                fields.push_back(std::stod(cell, &used));
                if (used != cell.size()) throw std::invalid_argument(cell);
            } catch (const std::exception&) {
                throw ShapeError("path CSV: bad number at line " + std::to_string(lineno));
            }
        }
        if (fields.size() != dim + 1)
            throw ShapeError("path CSV: wrong field count at line " + std::to_string(lineno));
        times.push_back(fields[0]);
        values.insert(values.end(), fields.begin() + 1, fields.end());
    }
    return SampledPath(std::move(times), std::move(values), dim);
}

void write_rough_path_csv(std::ostream& os, const RoughPath& X) {
    const std::size_t d = X.dim();
    os << "t";
    for (std::size_t i = 1; i <= d; ++i) os << ",g1_" << i;
    for (std::size_t i = 1; i <= d; ++i)
        for (std::size_t j = 1; j <= d; ++j) os << ",g2_" << i << "_" << j;
    if (X.level() >= 3)
        for (std::size_t i = 1; i <= d; ++i)
            for (std::size_t j = 1; j <= d; ++j)
                for (std::size_t k = 1; k <= d; ++k) os << ",g3_" << i << "_" << j << "_" << k;
    os << "\n";
    for (std::size_t k = 0; k < X.grid_size(); ++k) {
        os << format_value(X.times()[k]);
        const auto& b = X.basepoint(k);
        for (int lvl = 1; lvl <= X.level(); ++lvl)
            for (double v : b.degree(lvl)) os << "," << format_value(v);
        os << "\n";
    }
}

void write_signature_csv(std::ostream& os, const Signature& sig) {
    os << "degree,word,value\n";
    const std::size_t d = sig.tensor.dim();
    for (int k = 1; k <= sig.tensor.level(); ++k) {
        const auto& block = sig.tensor.degree(k);
        for (std::size_t flat = 0; flat < block.size(); ++flat) {
            // decode the flat index into 1-based digits, most significant first
            std::string word(static_cast<std::size_t>(k), '1');
            std::size_t rem = flat;
            for (int pos = k - 1; pos >= 0; --pos) {
                word[static_cast<std::size_t>(pos)] =
                    static_cast<char>('1' + static_cast<int>(rem % d));
                rem /= d;
            }
            os << k << "," << word << "," << format_value(block[flat]) << "\n";
        }
    }
}

void write_table_csv(std::ostream& os, const std::vector<std::string>& header,
                     const std::vector<std::vector<double>>& rows) {
    for (std::size_t c = 0; c < header.size(); ++c) os << (c ? "," : "") << header[c];
    os << "\n";
    for (const auto& row : rows) {
        for (std::size_t c = 0; c < row.size(); ++c)
            os << (c ? "," : "") << format_value(row[c]);
        os << "\n";
    }
}

}  // namespace rough
