//
// Project     : tpn
// Module      : io
// Description : JSON matrix and superoperator files.  Entries are explicit
//               [re, im] pairs, row-major; superoperator files must declare
//               the column-stacking vec convention.
//

#ifndef TPN_IO_HPP
#define TPN_IO_HPP

#include <filesystem>
#include <fstream>
#include <optional>
#include <vector>

#include <json.hpp>

#include <tpn/errors.hpp>
#include <tpn/matrix.hpp>
#include <tpn/preserver.hpp>

namespace tpn {

struct MatrixFile {
    ComplexMatrix matrix;
    std::optional<std::vector<std::size_t>> shape;   // factor dimensions, if declared
};

inline nlohmann::json matrix_to_json(const ComplexMatrix& a) {
    nlohmann::json data = nlohmann::json::array();
    for (std::size_t i = 0; i < a.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (std::size_t j = 0; j < a.cols(); ++j)
            row.push_back({a(i, j).real(), a(i, j).imag()});
        data.push_back(std::move(row));
    }
    return {{"rows", a.rows()}, {"cols", a.cols()}, {"data", std::move(data)}};
}

inline ComplexMatrix matrix_from_json(const nlohmann::json& j) {
    if (!j.is_object() || !j.contains("rows") || !j.contains("cols") || !j.contains("data"))
        throw io_error("matrix file: need rows, cols and data fields");
    if (!j["rows"].is_number_unsigned() || !j["cols"].is_number_unsigned())
        throw io_error("matrix file: rows/cols must be positive integers");
    const std::size_t rows = j["rows"].get<std::size_t>();
    const std::size_t cols = j["cols"].get<std::size_t>();
    if (rows == 0 || cols == 0)
        throw io_error("matrix file: rows/cols must be positive");
    const auto& data = j["data"];
    if (!data.is_array() || data.size() != rows)
        throw io_error("matrix file: data must hold one array per row");
    ComplexMatrix a(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        const auto& row = data[i];
        if (!row.is_array() || row.size() != cols)
            throw io_error("matrix file: row length differs from cols");
        for (std::size_t jj = 0; jj < cols; ++jj) {
            const auto& entry = row[jj];
            if (!entry.is_array() || entry.size() != 2 ||
                !entry[0].is_number() || !entry[1].is_number())
                throw io_error("matrix file: entries must be [re, im] pairs");
            a(i, jj) = cplx{entry[0].get<double>(), entry[1].get<double>()};
        }
    }
    if (!a.is_finite())
        throw io_error("matrix file: non-finite entry");
    return a;
}

inline nlohmann::json parse_json_file(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in)
        throw io_error("cannot open " + path.string());
    nlohmann::json j = nlohmann::json::parse(in, nullptr, false);
    if (j.is_discarded())
        throw io_error("malformed JSON in " + path.string());
    return j;
}

inline MatrixFile load_matrix_file(const std::filesystem::path& path) {
    const nlohmann::json j = parse_json_file(path);
    MatrixFile file;
    file.matrix = matrix_from_json(j);
    if (j.contains("shape")) {
        if (!j["shape"].is_array())
            throw io_error("matrix file: shape must be an array of factor dimensions");
        std::vector<std::size_t> dims;
        std::size_t product = 1;
        for (const auto& d : j["shape"]) {
            if (!d.is_number_unsigned() || d.get<std::size_t>() < 2)
                throw io_error("matrix file: shape entries must be integers >= 2");
            dims.push_back(d.get<std::size_t>());
            product *= dims.back();
        }
        if (product != file.matrix.rows() || file.matrix.rows() != file.matrix.cols())
            throw io_error("matrix file: shape product must equal rows = cols");
        file.shape = std::move(dims);
    }
    return file;
}

inline void save_matrix_file(const std::filesystem::path& path, const ComplexMatrix& a,
                             const std::optional<std::vector<std::size_t>>& shape = std::nullopt) {
    nlohmann::json j = matrix_to_json(a);
    if (shape) j["shape"] = *shape;
    std::ofstream out(path);
    if (!out)
        throw io_error("cannot write " + path.string());
    out << j.dump(1) << '\n';
}

// Superoperator files carry the matrix of the map plus "vec": "column";
// any other declared convention is rejected.  The tensor shape comes from
// the file or from the caller, and must agree when both are present.
inline SuperOperator load_superoperator_file(
    const std::filesystem::path& path,
    const std::optional<std::vector<std::size_t>>& shape_override = std::nullopt) {
    const nlohmann::json j = parse_json_file(path);
    if (!j.contains("vec") || !j["vec"].is_string() || j["vec"].get<std::string>() != "column")
        throw io_error("superoperator file: must declare \"vec\": \"column\"");
    const ComplexMatrix m = matrix_from_json(j);

    std::optional<std::vector<std::size_t>> dims = shape_override;
    if (j.contains("shape")) {
        std::vector<std::size_t> file_dims;
        for (const auto& d : j["shape"]) {
            if (!d.is_number_unsigned())
                throw io_error("superoperator file: bad shape entry");
            file_dims.push_back(d.get<std::size_t>());
        }
        if (dims && *dims != file_dims)
            throw io_error("superoperator file: shape in file conflicts with requested shape");
        if (!dims) dims = std::move(file_dims);
    }
    if (!dims)
        throw io_error("superoperator file: no tensor shape declared or supplied");

    TensorShape shape(*dims);
    const std::size_t n2 = shape.total() * shape.total();
    if (m.rows() != n2 || m.cols() != n2)
        throw io_error("superoperator file: matrix must be N² x N² for the declared shape");
    return SuperOperator(std::move(shape), m);
}

inline void save_superoperator_file(const std::filesystem::path& path,
                                    const SuperOperator& phi) {
    nlohmann::json j = matrix_to_json(phi.matrix());
    j["vec"] = "column";
    j["shape"] = phi.shape().dims;
    std::ofstream out(path);
    if (!out)
        throw io_error("cannot write " + path.string());
    out << j.dump(1) << '\n';
}

} // namespace tpn

#endif // TPN_IO_HPP
