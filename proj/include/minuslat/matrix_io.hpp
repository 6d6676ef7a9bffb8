#pragma once

#include <string>

#include <json.hpp>

#include <minuslat/types.hpp>

namespace minuslat {

/// On-disk matrix format: {"dim": n, "data": [[[re, im], ...], ...]} with
/// data a dim x dim nested array of [re, im] pairs, row-major. Entries are
/// always numeric pairs, never strings, and round-trip at full double
/// precision.
nlohmann::json matrix_to_json(const ComplexMatrix& m);

/// Strict parse of the format above; anything else throws ParseError.
/// Non-finite entries throw InvalidMatrix.
ComplexMatrix matrix_from_json(const nlohmann::json& j);

struct LoadedMatrix {
    ComplexMatrix matrix;
    std::string digest;  // fnv1a-64 of the file bytes, hex
};

LoadedMatrix load_matrix_file(const std::string& path);
void write_matrix_file(const std::string& path, const ComplexMatrix& m);

std::string fnv1a_hex(const std::string& bytes);

}  // namespace minuslat
