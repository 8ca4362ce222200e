#include "heisenlab/io.hpp"

#include <bit>
#include <fstream>

static_assert(std::endian::native == std::endian::little,
              "raw grid-function files are little-endian");

namespace heisenlab::io {

json matrix_to_json(const Matrix& m) {
    json rows = json::array();
    for (std::size_t i = 0; i < m.rows(); ++i) {
        json row = json::array();
        for (std::size_t j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
        rows.push_back(std::move(row));
    }
    return rows;
}

Matrix matrix_from_json(const json& j) {
    if (!j.is_array() || j.empty()) throw std::invalid_argument("matrix_from_json: bad shape");
    const std::size_t rows = j.size();
    const std::size_t cols = j[0].size();
    Matrix m(rows, cols);
    for (std::size_t i = 0; i < rows; ++i) {
        if (j[i].size() != cols) throw std::invalid_argument("matrix_from_json: ragged rows");
        for (std::size_t c = 0; c < cols; ++c) m(i, c) = j[i][c].get<double>();
    }
    return m;
}

json measure_to_json(const DiscreteMeasure& m) {
    json atoms = json::array();
    for (const Atom& a : m.atoms) {
        json row = json::array();
        for (double c : a.y) row.push_back(c);
        row.push_back(a.s);
        row.push_back(a.w);
        atoms.push_back(std::move(row));
    }
    return json{{"description", m.description}, {"n", m.n}, {"atoms", std::move(atoms)}};
}

DiscreteMeasure measure_from_json(const json& j) {
    DiscreteMeasure m;
    m.description = j.at("description").get<std::string>();
    m.n = j.at("n").get<int>();
    const std::size_t axes = 2 * static_cast<std::size_t>(m.n);
    for (const auto& row : j.at("atoms")) {
        if (row.size() != axes + 2) throw std::invalid_argument("measure_from_json: bad atom");
        Atom a;
        a.y.resize(axes);
        for (std::size_t i = 0; i < axes; ++i) a.y[i] = row[i].get<double>();
        a.s = row[axes].get<double>();
        a.w = row[axes + 1].get<double>();
        m.atoms.push_back(std::move(a));
    }
    return m;
}

void write_grid_function(const GridFunction& f, const std::string& path_prefix,
                         const std::string& precision) {
    const GridSpec& spec = f.spec();
    json shape = json::array();
    for (int a = 0; a < spec.spatial.axes(); ++a) shape.push_back(spec.spatial.points);
    shape.push_back(spec.t_points);
    json sidecar{{"shape", shape},
                 {"n", spec.spatial.n},
                 {"spatial_halfwidth", spec.spatial.halfwidth},
                 {"t_halfwidth", spec.t_halfwidth},
                 {"precision", precision},
                 {"layout", "row-major, t innermost, little-endian interleaved re/im"}};
    {
        std::ofstream side(path_prefix + ".json");
        if (!side) throw std::runtime_error("write_grid_function: cannot open sidecar");
        side << sidecar.dump(2) << "\n";
    }
    std::ofstream raw(path_prefix + ".raw", std::ios::binary);
    if (!raw) throw std::runtime_error("write_grid_function: cannot open raw file");
    if (precision == "complex128") {
        raw.write(reinterpret_cast<const char*>(f.values().data()),
                  static_cast<std::streamsize>(f.values().size() * sizeof(Complex)));
    } else if (precision == "complex64") {
        std::vector<float> buf;
        buf.reserve(f.values().size() * 2);
        for (const Complex& c : f.values()) {
            buf.push_back(static_cast<float>(c.real()));
            buf.push_back(static_cast<float>(c.imag()));
        }
        raw.write(reinterpret_cast<const char*>(buf.data()),
                  static_cast<std::streamsize>(buf.size() * sizeof(float)));
    } else {
        throw std::invalid_argument("write_grid_function: precision must be complex64/complex128");
    }
}

GridFunction read_grid_function(const std::string& path_prefix) {
    json sidecar;
    {
        std::ifstream side(path_prefix + ".json");
        if (!side) throw std::runtime_error("read_grid_function: missing sidecar");
        side >> sidecar;
    }
    const int n = sidecar.at("n").get<int>();
    const auto shape = sidecar.at("shape");
    const int points = shape[0].get<int>();
    const int t_points = shape[shape.size() - 1].get<int>();
    GridSpec spec(n, sidecar.at("spatial_halfwidth").get<double>(), points,
                  sidecar.at("t_halfwidth").get<double>(), t_points);
    GridFunction f(spec);
    std::ifstream raw(path_prefix + ".raw", std::ios::binary);
    if (!raw) throw std::runtime_error("read_grid_function: missing raw file");
    const std::string precision = sidecar.at("precision").get<std::string>();
    if (precision == "complex128") {
        raw.read(reinterpret_cast<char*>(f.values().data()),
                 static_cast<std::streamsize>(f.values().size() * sizeof(Complex)));
    } else {
        std::vector<float> buf(f.values().size() * 2);
        raw.read(reinterpret_cast<char*>(buf.data()),
                 static_cast<std::streamsize>(buf.size() * sizeof(float)));
        for (std::size_t i = 0; i < f.values().size(); ++i)
            f.values()[i] = Complex(buf[2 * i], buf[2 * i + 1]);
    }
    if (!raw) throw std::runtime_error("read_grid_function: truncated raw file");
    if (!f.all_finite()) throw std::runtime_error("read_grid_function: non-finite samples");
    return f;
}

}  // namespace heisenlab::io
