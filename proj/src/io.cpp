#include "hyperq/io.hpp"

#include <cerrno>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <iomanip>
#include <istream>
#include <limits>
#include <set>
#include <sstream>

namespace hyperq {

namespace {

struct Line {
    std::size_t number;
    std::vector<std::string> tokens;
};

/// Content lines (non-blank, not starting with '#') split on whitespace.
std::vector<Line> content_lines(std::istream& in) {
    std::vector<Line> out;
    std::string text;
    std::size_t number = 0;
    while (std::getline(in, text)) {
        ++number;
        const auto first = text.find_first_not_of(" \t\r");
        if (first == std::string::npos || text[first] == '#') continue;
        std::istringstream ss(text);
        Line line{number, {}};
        for (std::string tok; ss >> tok;) line.tokens.push_back(tok);
        out.push_back(std::move(line));
    }
    return out;
}

double parse_real(const std::string& tok, std::size_t line) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    errno = 0;
    const double v = std::strtod(begin, &end);
    if (end == begin || *end != '\0' || errno == ERANGE || !std::isfinite(v))
        throw ParseError(line, "expected a finite real number, got '" + tok + "'");
    return v;
}

long long parse_integer(const std::string& tok, std::size_t line) {
    const char* begin = tok.c_str();
    char* end = nullptr;
    errno = 0;
    const long long v = std::strtoll(begin, &end, 10);
    if (end == begin || *end != '\0' || errno == ERANGE)
        throw ParseError(line, "expected an integer, got '" + tok + "'");
    return v;
}

Index parse_dimension(const std::string& tok, std::size_t line) {
    const long long n = parse_integer(tok, line);
    if (n < 1) throw ParseError(line, "dimension must be positive");
    if (n > 100000) throw ParseError(line, "dimension " + tok + " is unreasonably large");
    return static_cast<Index>(n);
}

}  // namespace

MatrixFile parse_matrix(std::istream& in) {
    const auto lines = content_lines(in);
    if (lines.empty()) throw ParseError(1, "empty matrix file");
    const auto& head = lines.front();
    if (head.tokens.size() != 1)
        throw ParseError(head.number, "matrix header must be a single integer N");
    const Index n = parse_dimension(head.tokens[0], head.number);
    if (lines.size() < std::size_t(n) + 1)
        throw ParseError(lines.back().number, "expected " + std::to_string(n) + " matrix rows, found " +
                                                  std::to_string(lines.size() - 1));

    MatrixFile out;
    out.B.resize(n, n);
    out.T = Vector<double>::Zero(n);
    for (Index i = 0; i < n; ++i) {
        const auto& line = lines[std::size_t(i) + 1];
        if (!line.tokens.empty() && line.tokens[0].rfind("T:", 0) == 0)
            throw ParseError(line.number, "threshold section before all " + std::to_string(n) +
                                              " matrix rows were read");
        if (line.tokens.size() != std::size_t(n))
            throw ParseError(line.number, "row " + std::to_string(i) + " has " +
                                              std::to_string(line.tokens.size()) + " entries, expected " +
                                              std::to_string(n));
        for (Index j = 0; j < n; ++j) out.B(i, j) = parse_real(line.tokens[std::size_t(j)], line.number);
    }

    std::size_t next = std::size_t(n) + 1;
    if (next == lines.size()) return out;

    const auto& tline = lines[next];
    if (tline.tokens[0].rfind("T:", 0) != 0)
        throw ParseError(tline.number, "unexpected content after matrix rows (expected 'T:')");
    std::vector<std::pair<std::string, std::size_t>> values;
    if (tline.tokens[0].size() > 2) values.push_back({tline.tokens[0].substr(2), tline.number});
    for (std::size_t k = 1; k < tline.tokens.size(); ++k) values.push_back({tline.tokens[k], tline.number});
    for (++next; next < lines.size(); ++next)
        for (const auto& tok : lines[next].tokens) values.push_back({tok, lines[next].number});
    if (values.size() != std::size_t(n))
        throw ParseError(tline.number, "threshold section has " + std::to_string(values.size()) +
                                           " values, expected " + std::to_string(n));
    for (Index i = 0; i < n; ++i) {
        const auto& [tok, no] = values[std::size_t(i)];
        out.T(i) = parse_real(tok, no);
    }
    out.has_thresholds = true;
    return out;
}

Graph parse_edge_list(std::istream& in) {
    const auto lines = content_lines(in);
    if (lines.empty()) throw ParseError(1, "empty edge list");
    const auto& head = lines.front();
    if (head.tokens.size() != 2) throw ParseError(head.number, "edge list header must be 'N M'");
    const Index n = parse_dimension(head.tokens[0], head.number);
    const long long m = parse_integer(head.tokens[1], head.number);
    if (m < 0) throw ParseError(head.number, "edge count must be nonnegative");
    if (lines.size() != std::size_t(m) + 1)
        throw ParseError(lines.back().number, "expected " + std::to_string(m) + " edge lines, found " +
                                                  std::to_string(lines.size() - 1));
    std::vector<Edge> edges;
    std::set<std::pair<Index, Index>> seen;
    for (std::size_t k = 1; k < lines.size(); ++k) {
        const auto& line = lines[k];
        if (line.tokens.size() != 3) throw ParseError(line.number, "edge line must be 'u v w'");
        Index u = static_cast<Index>(parse_integer(line.tokens[0], line.number));
        Index v = static_cast<Index>(parse_integer(line.tokens[1], line.number));
        const double w = parse_real(line.tokens[2], line.number);
        if (u < 0 || v < 0 || u >= n || v >= n) throw ParseError(line.number, "vertex index out of range");
        if (u == v) throw ParseError(line.number, "self loops are not allowed");
        if (u > v) std::swap(u, v);
        if (!seen.emplace(u, v).second)
            throw ParseError(line.number, "duplicate edge (" + std::to_string(u) + ", " + std::to_string(v) + ")");
        edges.push_back({u, v, w});
    }
    return Graph(n, std::move(edges));
}

std::vector<SpinState> parse_patterns(std::istream& in) {
    std::vector<SpinState> out;
    for (const auto& line : content_lines(in)) {
        Eigen::VectorXi v(static_cast<Index>(line.tokens.size()));
        for (std::size_t k = 0; k < line.tokens.size(); ++k) {
            const long long s = parse_integer(line.tokens[k], line.number);
            if (s != 1 && s != -1) throw ParseError(line.number, "pattern entries must be +1 or -1");
            v(Index(k)) = int(s);
        }
        if (!out.empty() && v.size() != out.front().size())
            throw ParseError(line.number, "pattern length differs from the first pattern");
        out.emplace_back(std::move(v));
    }
    return out;
}

std::vector<Vector<double>> parse_vectors(std::istream& in) {
    std::vector<Vector<double>> out;
    for (const auto& line : content_lines(in)) {
        Vector<double> v(static_cast<Index>(line.tokens.size()));
        for (std::size_t k = 0; k < line.tokens.size(); ++k) v(Index(k)) = parse_real(line.tokens[k], line.number);
        out.push_back(std::move(v));
    }
    return out;
}

FileFormat detect_format(std::istream& in) {
    std::string text;
    std::size_t number = 0;
    while (std::getline(in, text)) {
        ++number;
        const auto first = text.find_first_not_of(" \t\r");
        if (first == std::string::npos || text[first] == '#') continue;
        std::istringstream ss(text);
        std::size_t count = 0;
        for (std::string tok; ss >> tok;) ++count;
        if (count == 1) return FileFormat::matrix;
        if (count == 2) return FileFormat::edge_list;
        throw ParseError(number, "cannot detect format: header must be 'N' or 'N M'");
    }
    throw ParseError(number == 0 ? 1 : number, "empty input");
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) throw InvalidInput("cannot open '" + path.string() + "'");
    std::ostringstream ss;
    ss << f.rdbuf();
    return ss.str();
}

void write_matrix(std::ostream& out, const Matrix<double>& B, const std::optional<Vector<double>>& T) {
    const auto old = out.precision(std::numeric_limits<double>::max_digits10);
    out << B.rows() << '\n';
    for (Index i = 0; i < B.rows(); ++i) {
        for (Index j = 0; j < B.cols(); ++j) out << (j ? " " : "") << B(i, j);
        out << '\n';
    }
    if (T) {
        out << "T:";
        for (Index i = 0; i < T->size(); ++i) out << ' ' << (*T)(i);
        out << '\n';
    }
    out.precision(old);
}

}  // namespace hyperq
