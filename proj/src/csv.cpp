#include "vekua/csv.hpp"

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace vekua {

namespace {

std::vector<std::string> split(const std::string& line, char sep) {
    std::vector<std::string> out;
    std::string cur;
    for (char c : line) {
        if (c == sep) {
            out.push_back(cur);
            cur.clear();
        } else {
            cur.push_back(c);
        }
    }
    out.push_back(cur);
    return out;
}

double parse_double(const std::string& tok) {
    char* end = nullptr;
    const double v = std::strtod(tok.c_str(), &end);
    if (end == tok.c_str() || *end != '\0')
        throw std::runtime_error("csv: bad numeric field '" + tok + "'");
    return v;
}

struct Table {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

Table read_table(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open " + path);
    Table t;
    std::string line;
    if (!std::getline(in, line))
        throw std::runtime_error("empty csv: " + path);
    t.header = split(line, ',');
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        std::vector<std::string> toks = split(line, ',');
        if (toks.size() != t.header.size())
            throw std::runtime_error("csv: ragged row in " + path);
        std::vector<double> row;
        row.reserve(toks.size());
        for (const std::string& tok : toks) row.push_back(parse_double(tok));
        t.rows.push_back(std::move(row));
    }
    return t;
}

// Leading columns named x0, x1, ... form the coordinates; exactly one value
// column follows.
std::size_t coord_count(const std::vector<std::string>& header,
                        const std::string& path) {
    std::size_t d = 0;
    while (d < header.size() &&
           header[d] == "x" + std::to_string(d))
        ++d;
    if (d < 1 || d > 2 || d + 1 != header.size())
        throw std::runtime_error("csv: unexpected header in " + path);
    return d;
}

} // namespace

std::string format_double(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

std::string format_row(const std::vector<double>& values) {
    std::string out;
    for (std::size_t i = 0; i < values.size(); ++i) {
        if (i > 0) out.push_back(',');
        out += format_double(values[i]);
    }
    return out;
}

void write_samples_csv(const std::string& path, const SampleSet& samples) {
    std::ostringstream out;
    out << (samples.dim() == 1 ? "x0,y" : "x0,x1,y") << "\n";
    for (std::size_t i = 0; i < samples.size(); ++i) {
        std::vector<double> row;
        for (std::size_t a = 0; a < samples.dim(); ++a)
            row.push_back(samples.x(i, a));
        row.push_back(samples.y[i]);
        out << format_row(row) << "\n";
    }
    write_text_file(path, out.str());
}

SampleSet read_samples_csv(const std::string& path) {
    Table t = read_table(path);
    const std::size_t d = coord_count(t.header, path);
    if (t.header.back() != "y")
        throw std::runtime_error("csv: expected trailing 'y' column in " + path);
    SampleSet s;
    s.x = DenseMatrix(t.rows.size(), d);
    s.y.resize(t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        for (std::size_t a = 0; a < d; ++a) s.x(i, a) = t.rows[i][a];
        s.y[i] = t.rows[i][d];
    }
    return s;
}

void write_grid_csv(const std::string& path, const EvalGrid& grid) {
    const std::size_t d = grid.x.cols;
    std::ostringstream out;
    out << (d == 1 ? "x0,y_true" : "x0,x1,y_true") << "\n";
    for (std::size_t i = 0; i < grid.x.rows; ++i) {
        std::vector<double> row;
        for (std::size_t a = 0; a < d; ++a) row.push_back(grid.x(i, a));
        row.push_back(grid.y_true[i]);
        out << format_row(row) << "\n";
    }
    write_text_file(path, out.str());
}

EvalGrid read_grid_csv(const std::string& path) {
    Table t = read_table(path);
    const std::size_t d = coord_count(t.header, path);
    if (t.header.back() != "y_true")
        throw std::runtime_error("csv: expected trailing 'y_true' column in " +
                                 path);
    EvalGrid g;
    g.x = DenseMatrix(t.rows.size(), d);
    g.y_true.resize(t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        for (std::size_t a = 0; a < d; ++a) g.x(i, a) = t.rows[i][a];
        g.y_true[i] = t.rows[i][d];
    }
    if (d == 1) {
        g.resolution = t.rows.size();
    } else {
        const std::size_t r = static_cast<std::size_t>(
            std::llround(std::sqrt(static_cast<double>(t.rows.size()))));
        if (r * r != t.rows.size())
            throw std::runtime_error("csv: 2D grid row count not a square in " +
                                     path);
        g.resolution = r;
    }
    return g;
}

ValueTable read_value_table(const std::string& path) {
    Table t = read_table(path);
    const std::size_t d = coord_count(t.header, path);
    ValueTable v;
    v.dim = d;
    v.x = DenseMatrix(t.rows.size(), d);
    v.values.resize(t.rows.size());
    for (std::size_t i = 0; i < t.rows.size(); ++i) {
        for (std::size_t a = 0; a < d; ++a) v.x(i, a) = t.rows[i][a];
        v.values[i] = t.rows[i][d];
    }
    return v;
}

void write_value_table(const std::string& path, const std::string& value_name,
                       const DenseMatrix& x,
                       const std::vector<double>& values) {
    const std::size_t d = x.cols;
    std::ostringstream out;
    out << (d == 1 ? "x0," : "x0,x1,") << value_name << "\n";
    for (std::size_t i = 0; i < x.rows; ++i) {
        std::vector<double> row;
        for (std::size_t a = 0; a < d; ++a) row.push_back(x(i, a));
        row.push_back(values[i]);
        out << format_row(row) << "\n";
    }
    write_text_file(path, out.str());
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("cannot open " + path);
    std::ostringstream out;
    out << in.rdbuf();
    return out.str();
}

void write_text_file(const std::string& path, const std::string& contents) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("cannot write " + path);
    out << contents;
    if (!out) throw std::runtime_error("write failed: " + path);
}

} // namespace vekua
