#include "parobs/core/serialize.hpp"

#include "parobs/core/error.hpp"

#include <cstdint>
#include <cstring>
#include <fstream>
#include <sstream>

namespace parobs {

namespace {

constexpr char kMagic[8] = {'P', 'A', 'R', 'O', 'B', 'S', 'F', '1'};

void append_u64(std::string& out, std::uint64_t v) {
    for (int b = 0; b < 8; ++b) out.push_back(static_cast<char>((v >> (8 * b)) & 0xff));
}

std::uint64_t read_u64(const char* p) {
    std::uint64_t v = 0;
    for (int b = 7; b >= 0; --b) v = (v << 8) | static_cast<unsigned char>(p[b]);
    return v;
}

}  // namespace

nlohmann::json grid_to_json(const Grid& grid) {
    nlohmann::json j;
    j["dim"] = grid.dim;
    j["geometry"] = to_string(grid.geometry);
    j["n_space"] = grid.n_space;
    j["h"] = grid.h;
    j["n_time"] = grid.n_time;
    j["dt"] = grid.dt;
    j["t0"] = grid.t0;
    j["extent"] = nlohmann::json::array();
    for (int a = 0; a < grid.dim; ++a) j["extent"].push_back({grid.extent[a].lo, grid.extent[a].hi});
    return j;
}

Grid grid_from_json(const nlohmann::json& j) {
    try {
        const int dim = j.at("dim").get<int>();
        std::array<Interval, 2> ext{};
        for (int a = 0; a < dim; ++a) {
            ext[a] = {j.at("extent").at(a).at(0).get<double>(), j.at("extent").at(a).at(1).get<double>()};
        }
        const int n_time = j.at("n_time").get<int>();
        const double dt = j.at("dt").get<double>();
        Grid g = make_grid(dim, geometry_from_string(j.at("geometry").get<std::string>().c_str()),
                           j.at("n_space").get<int>(), n_time, std::span<const Interval>(ext.data(), dim),
                           dt * (n_time - 1), j.value("t0", 0.0));
        // keep the stored spacings bit-exact rather than recomputing them
        g.dt = dt;
        g.h = j.at("h").get<double>();
        return g;
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Io, std::string("grid JSON: ") + e.what());
    }
}

void write_file_atomic(const std::filesystem::path& path, const std::string& contents) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    auto tmp = path;
    tmp += ".tmp";
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error(ErrorKind::Io, "cannot open " + tmp.string() + " for writing");
        os.write(contents.data(), static_cast<std::streamsize>(contents.size()));
        if (!os) throw Error(ErrorKind::Io, "short write to " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) throw Error(ErrorKind::Io, "rename " + tmp.string() + " -> " + path.string() + ": " + ec.message());
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error(ErrorKind::Io, "cannot open " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

std::string encode_field(const ScalarField& field) {
    field.check_shape();
    nlohmann::json header;
    header["grid"] = grid_to_json(field.grid);
    header["label"] = field.label;
    header["count"] = field.values.size();
    header["dtype"] = "f64le";
    const std::string hs = header.dump();

    std::string out(kMagic, sizeof kMagic);
    append_u64(out, hs.size());
    out += hs;
    const std::size_t at = out.size();
    out.resize(at + field.values.size() * sizeof(double));
    std::memcpy(out.data() + at, field.values.data(), field.values.size() * sizeof(double));
    return out;
}

ScalarField decode_field(const std::string& bytes) {
    if (bytes.size() < 16 || std::memcmp(bytes.data(), kMagic, sizeof kMagic) != 0) {
        throw Error(ErrorKind::Io, "not a field container (bad magic)");
    }
    const std::uint64_t hlen = read_u64(bytes.data() + 8);
    if (16 + hlen > bytes.size()) throw Error(ErrorKind::Io, "truncated field header");
    nlohmann::json header;
    try {
        header = nlohmann::json::parse(bytes.substr(16, hlen));
    } catch (const nlohmann::json::exception& e) {
        throw Error(ErrorKind::Io, std::string("field header: ") + e.what());
    }
    ScalarField f(grid_from_json(header.at("grid")), header.value("label", std::string{}));
    const std::size_t count = header.at("count").get<std::size_t>();
    if (count != f.values.size() || 16 + hlen + count * sizeof(double) != bytes.size()) {
        throw Error(ErrorKind::ShapeMismatch, "field payload does not match its grid");
    }
    std::memcpy(f.values.data(), bytes.data() + 16 + hlen, count * sizeof(double));
    return f;
}

void write_field_binary(const std::filesystem::path& path, const ScalarField& field) {
    write_file_atomic(path, encode_field(field));
}

ScalarField read_field_binary(const std::filesystem::path& path) { return decode_field(read_file(path)); }

std::string field_to_csv(const ScalarField& field) {
    field.check_shape();
    const Grid& g = field.grid;
    std::ostringstream os;
    os.precision(17);
    os << (g.dim == 2 ? "t,x1,x2,value\n" : "t,x1,value\n");
    for (int k = 0; k < g.n_time; ++k) {
        const double t = g.time(k);
        for (int n = 0; n < g.nodes(); ++n) {
            os << t << ',' << g.x1(n) << ',';
            if (g.dim == 2) os << g.x2(n) << ',';
            os << field.at(k, n) << '\n';
        }
    }
    return os.str();
}

void write_field_csv(const std::filesystem::path& path, const ScalarField& field) {
    write_file_atomic(path, field_to_csv(field));
}

}  // namespace parobs
