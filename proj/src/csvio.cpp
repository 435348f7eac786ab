#include "hawkes/csvio.hpp"

#include <cstdio>
#include <sstream>

#include "hawkes/errors.hpp"

namespace hawkes {

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

namespace {
std::vector<std::string> split_csv_line(const std::string& line) {
    std::vector<std::string> cells;
    std::string cur;
    for (char c : line) {
        if (c == ',') {
            cells.push_back(cur);
            cur.clear();
        } else if (c != '\r') {
            cur.push_back(c);
        }
    }
    cells.push_back(cur);
    return cells;
}

std::string trim(const std::string& s) {
    std::size_t a = s.find_first_not_of(" \t");
    std::size_t b = s.find_last_not_of(" \t");
    if (a == std::string::npos) return "";
    return s.substr(a, b - a + 1);
}
}

std::vector<std::vector<double>> read_csv_columns(const std::string& path,
                                                  const std::vector<std::string>& names) {
    std::ifstream in(path);
    if (!in) throw ValidationError("cannot open CSV file: " + path);
    std::string line;
    std::vector<std::string> header;
    while (std::getline(in, line)) {
        if (line.empty() || line[0] == '#') continue;
        header = split_csv_line(line);
        break;
    }
    if (header.empty()) throw ValidationError("CSV file has no header row: " + path);
    std::vector<std::size_t> idx;
    for (const auto& want : names) {
        bool found = false;
        for (std::size_t i = 0; i < header.size(); ++i) {
            if (trim(header[i]) == want) {
                idx.push_back(i);
                found = true;
                break;
            }
        }
        if (!found)
            throw ValidationError("CSV file " + path + " is missing column '" + want + "'");
    }
    std::vector<std::vector<double>> cols(names.size());
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty() || line[0] == '#') continue;
        auto cells = split_csv_line(line);
        for (std::size_t j = 0; j < idx.size(); ++j) {
            if (idx[j] >= cells.size())
                throw ValidationError("CSV file " + path + ": short row at line " +
                                      std::to_string(lineno));
            try {
                cols[j].push_back(std::stod(trim(cells[idx[j]])));
            } catch (const std::exception&) {
                throw ValidationError("CSV file " + path + ": bad number at line " +
                                      std::to_string(lineno));
            }
        }
    }
    return cols;
}

CsvWriter::CsvWriter(const std::string& path) : out_(path, std::ios::binary) {
    if (!out_) throw ValidationError("cannot open output file: " + path);
}

void CsvWriter::comment(const std::string& line) { out_ << "# " << line << "\n"; }

void CsvWriter::header(const std::vector<std::string>& names) { row(names); }

void CsvWriter::row(const std::vector<std::string>& cells) {
    for (std::size_t i = 0; i < cells.size(); ++i) {
        if (i) out_ << ",";
        out_ << cells[i];
    }
    out_ << "\n";
}

void CsvWriter::row_doubles(const std::vector<double>& cells) {
    std::vector<std::string> s;
    s.reserve(cells.size());
    for (double v : cells) s.push_back(format_double(v));
    row(s);
}

}
