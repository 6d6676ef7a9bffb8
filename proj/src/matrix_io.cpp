#include <minuslat/matrix_io.hpp>

#include <fstream>
#include <sstream>

namespace minuslat {

nlohmann::json matrix_to_json(const ComplexMatrix& m) {
    nlohmann::json rows = nlohmann::json::array();
    for (Index i = 0; i < m.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (Index j = 0; j < m.cols(); ++j)
            row.push_back({m(i, j).real(), m(i, j).imag()});
        rows.push_back(std::move(row));
    }
    return {{"dim", m.rows()}, {"data", std::move(rows)}};
}

ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("dim") || !j.contains("data"))
        throw Error(Errc::ParseError, "matrix file must be an object with 'dim' and 'data'");
    if (!j["dim"].is_number_integer())
        throw Error(Errc::ParseError, "'dim' must be an integer");
    const long long dim = j["dim"].get<long long>();
    if (dim <= 0) throw Error(Errc::ParseError, "'dim' must be positive");

    const auto& data = j["data"];
    if (!data.is_array() || static_cast<long long>(data.size()) != dim)
        throw Error(Errc::ParseError, "'data' must be an array of dim rows");

    ComplexMatrix m(dim, dim);
    for (long long i = 0; i < dim; ++i) {
        const auto& row = data[i];
        if (!row.is_array() || static_cast<long long>(row.size()) != dim)
            throw Error(Errc::ParseError, "row " + std::to_string(i) + " must have dim entries");
        for (long long k = 0; k < dim; ++k) {
            const auto& cell = row[k];
            if (!cell.is_array() || cell.size() != 2 || !cell[0].is_number() ||
                !cell[1].is_number())
                throw Error(Errc::ParseError, "entry (" + std::to_string(i) + "," +
                                                  std::to_string(k) +
                                                  ") must be a [re, im] number pair");
            m(i, k) = Complex(cell[0].get<double>(), cell[1].get<double>());
        }
    }
    require_finite(m, "matrix file");
    return m;
}

std::string fnv1a_hex(const std::string& bytes) {
    std::uint64_t h = 0xcbf29ce484222325ULL;
    for (unsigned char c : bytes) {
        h ^= c;
        h *= 0x100000001b3ULL;
    }
    std::ostringstream out;
    out << std::hex << h;
    return out.str();
}

LoadedMatrix load_matrix_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw Error(Errc::ParseError, "cannot open " + path);
    std::ostringstream buf;
    buf << in.rdbuf();
    const std::string bytes = buf.str();

    nlohmann::json j;
    try {
        j = nlohmann::json::parse(bytes);
    } catch (const nlohmann::json::exception& e) {
        throw Error(Errc::ParseError, path + ": " + e.what());
    }
    return {matrix_from_json(j), fnv1a_hex(bytes)};
}

void write_matrix_file(const std::string& path, const ComplexMatrix& m) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw Error(Errc::ParseError, "cannot open " + path + " for writing");
    out << matrix_to_json(m).dump(2) << "\n";
}

}  // namespace minuslat
