#pragma once

// Text formats.
//
// Matrix file:   "N", then N rows of N reals, optionally "T:" followed by N reals.
// Edge list:     "N M", then M lines "u v w" (0-indexed).
// Pattern file:  one corner per line, entries +1 / -1.
// Vector file:   one real vector per line.
// Lines starting with '#' are ignored everywhere.

#include "hyperq/graphcut.hpp"

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace hyperq {

class ParseError : public InvalidInput {
public:
    ParseError(std::size_t line, const std::string& what)
        : InvalidInput("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

struct MatrixFile {
    Matrix<double> B;
    Vector<double> T;  // zeros when the file has no "T:" section
    bool has_thresholds = false;
};

enum class FileFormat { matrix, edge_list };

MatrixFile parse_matrix(std::istream& in);
Graph parse_edge_list(std::istream& in);
std::vector<SpinState> parse_patterns(std::istream& in);
std::vector<Vector<double>> parse_vectors(std::istream& in);

/// One integer on the first content line is a matrix file, two is an edge list.
FileFormat detect_format(std::istream& in);

/// Reads the whole file; throws InvalidInput if it cannot be opened.
std::string read_file(const std::filesystem::path& path);

void write_matrix(std::ostream& out, const Matrix<double>& B,
                  const std::optional<Vector<double>>& T = std::nullopt);

}  // namespace hyperq
