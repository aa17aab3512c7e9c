#include "reach/io.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>
#include <vector>

#include <unistd.h>

#include "reach/error.hpp"

namespace reach::io {

namespace {

std::pair<std::size_t, std::size_t> line_col(std::string_view text, std::size_t byte) {
    std::size_t line = 1, col = 1;
    for (std::size_t k = 0; k < byte && k < text.size(); ++k) {
        if (text[k] == '\n') {
            ++line;
            col = 1;
        } else {
            ++col;
        }
    }
    return {line, col};
}

const json& field(const json& j, const char* key) {
    if (!j.is_object()) throw Error(std::string("expected an object with key \"") + key + "\"");
    auto it = j.find(key);
    if (it == j.end()) throw Error(std::string("missing key \"") + key + "\"");
    return *it;
}

double number(const json& j, const char* what) {
    if (!j.is_number()) throw Error(std::string(what) + " must be a number");
    return j.get<double>();
}

double value_or_inf(const json& v) {
    if (v.is_string()) {
        if (v.get<std::string>() == "inf") return kInf;
        throw Error("value strings other than \"inf\" are not allowed: \"" + v.get<std::string>() + "\"");
    }
    return number(v, "value");
}

json encode_value(double v) {
    if (v == kInf) return "inf";
    return v;
}

Point point_from_json(const json& j) {
    if (j.is_number()) return {j.get<double>(), 0.0};
    if (!j.is_array() || j.empty() || j.size() > 2) throw Error("point must be a number or an array of 1 or 2 numbers");
    Point p{number(j[0], "coordinate"), 0.0};
    if (j.size() == 2) p[1] = number(j[1], "coordinate");
    return p;
}

double parse_double(std::string_view s, const std::string& source, std::size_t line) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t')) s.remove_prefix(1);
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
    if (s == "inf" || s == "+inf") return kInf;
    double v = 0.0;
    auto [ptr, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || ptr != s.data() + s.size() || !std::isfinite(v))
        throw ParseError(source + ":" + std::to_string(line) + ": bad number \"" + std::string(s) + "\"", line, 1);
    return v;
}

}  // namespace

json parse_json(std::string_view text, const std::string& source) {
    try {
        return json::parse(text.begin(), text.end());
    } catch (const json::parse_error& e) {
        const std::size_t byte = e.byte > 0 ? e.byte - 1 : 0;
        auto [line, col] = line_col(text, byte);
        std::string msg = e.what();
        // Drop the library's "[json.exception.parse_error.101] " prefix.
        if (auto p = msg.find("] "); p != std::string::npos) msg = msg.substr(p + 2);
        // ...and its own "parse error at line L, column C: "; we print ours.
        if (msg.starts_with("parse error at line ")) {
            if (auto p = msg.find(": "); p != std::string::npos) msg = "parse error: " + msg.substr(p + 2);
        }
        throw ParseError(source + ":" + std::to_string(line) + ":" + std::to_string(col) + ": " + msg, line, col);
    }
}

json read_json(const std::filesystem::path& path) { return parse_json(read_file(path), path.string()); }

json to_json(const Grid& g) {
    json axes = json::array();
    for (int k = 0; k < g.dim(); ++k) axes.push_back({{"min", g.axis(k).min}, {"max", g.axis(k).max}, {"n", g.axis(k).n}});
    return {{"dim", g.dim()}, {"axes", axes}};
}

Grid grid_from_json(const json& j) {
    const json& dim = field(j, "dim");
    if (!dim.is_number_integer()) throw Error("dim must be 1 or 2");
    const int d = dim.get<int>();
    const json& axes = field(j, "axes");
    if (!axes.is_array() || static_cast<int>(axes.size()) != d) throw Error("axes must list one entry per dimension");
    std::vector<Axis> out;
    for (const json& a : axes) {
        const json& n = field(a, "n");
        if (!n.is_number_integer() || n.get<long long>() < 2) throw Error("axis n must be an integer >= 2");
        out.push_back({number(field(a, "min"), "axis min"), number(field(a, "max"), "axis max"), n.get<std::size_t>()});
    }
    return Grid::make(out);
}

json to_json(const GridFn& f) {
    json j = to_json(f.grid());
    json vals = json::array();
    for (double v : f.values()) vals.push_back(encode_value(v));
    j["values"] = std::move(vals);
    if (f.lip()) j["lip"] = *f.lip();
    return j;
}

GridFn gridfn_from_json(const json& j) {
    Grid g = grid_from_json(j);
    const json& vals = field(j, "values");
    if (!vals.is_array()) throw Error("values must be an array");
    std::vector<double> v;
    v.reserve(vals.size());
    for (const json& x : vals) v.push_back(value_or_inf(x));
    std::optional<double> lip;
    if (auto it = j.find("lip"); it != j.end() && !it->is_null()) lip = number(*it, "lip");
    return GridFn(g, std::move(v), lip);
}

json to_json(const Hamiltonian& H) {
    return std::visit(
        [](const auto& k) -> json {
            using K = std::decay_t<decltype(k)>;
            if constexpr (std::is_same_v<K, ham::PowerScaled>) return {{"kind", "power_scaled"}, {"alpha", k.alpha}};
            if constexpr (std::is_same_v<K, ham::Power>) return {{"kind", "power"}, {"alpha", k.alpha}};
            if constexpr (std::is_same_v<K, ham::Abs>) return {{"kind", "abs"}};
            if constexpr (std::is_same_v<K, ham::Quadratic>) return {{"kind", "quadratic"}};
            if constexpr (std::is_same_v<K, ham::Affine>) return {{"kind", "affine"}, {"a", {k.a[0], k.a[1]}}, {"b", k.b}};
            if constexpr (std::is_same_v<K, ham::Sampled>) return {{"kind", "sampled"}, {"fn", to_json(k.f)}};
        },
        H.kind());
}

Hamiltonian hamiltonian_from_json(const json& j) {
    const json& kind = field(j, "kind");
    if (!kind.is_string()) throw Error("kind must be a string");
    const std::string k = kind.get<std::string>();
    if (k == "power_scaled") return Hamiltonian::power_scaled(number(field(j, "alpha"), "alpha"));
    if (k == "power") return Hamiltonian::power(number(field(j, "alpha"), "alpha"));
    if (k == "abs") return Hamiltonian::abs();
    if (k == "quadratic") return Hamiltonian::quadratic();
    if (k == "affine") return Hamiltonian::affine(point_from_json(field(j, "a")), number(field(j, "b"), "b"));
    if (k == "sampled") return Hamiltonian::sampled(gridfn_from_json(field(j, "fn")));
    throw Error("unknown Hamiltonian kind \"" + k + "\"");
}

std::string format_number(double v) {
    if (v == kInf) return "inf";
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, ptr);
}

std::string to_csv(const GridFn& f) {
    if (f.grid().dim() != 1) throw Error("CSV export of a GridFn needs a 1D grid");
    return plot_csv(f.grid(), f.values());
}

GridFn gridfn_from_csv(std::string_view text, const std::string& source) {
    std::vector<double> xs, vs;
    std::size_t line = 0;
    bool header_seen = false;
    while (!text.empty()) {
        const auto nl = text.find('\n');
        std::string_view row = text.substr(0, nl);
        text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
        ++line;
        if (!row.empty() && row.back() == '\r') row.remove_suffix(1);
        if (row.empty()) continue;
        if (!header_seen) {
            header_seen = true;
            if (row.find_first_of("0123456789") == std::string_view::npos || row.front() == 'x') continue;
        }
        const auto comma = row.find(',');
        if (comma == std::string_view::npos || row.find(',', comma + 1) != std::string_view::npos)
            throw ParseError(source + ":" + std::to_string(line) + ": expected two columns x,value", line, 1);
        xs.push_back(parse_double(row.substr(0, comma), source, line));
        vs.push_back(parse_double(row.substr(comma + 1), source, line));
    }
    if (xs.size() < 2) throw ParseError(source + ": CSV needs at least two rows", line, 1);
    const Grid g = Grid::line(xs.front(), xs.back(), xs.size());
    const double h = g.spacing(0);
    for (std::size_t k = 0; k < xs.size(); ++k) {
        if (std::abs(xs[k] - g.axis(0).point(k)) > 1e-6 * h)
            throw ParseError(source + ": x column is not uniformly spaced (row " + std::to_string(k + 1) + ")", k + 2, 1);
    }
    return GridFn(g, std::move(vs));
}

GridFn read_gridfn(const std::filesystem::path& path) {
    if (path.extension() == ".csv") return gridfn_from_csv(read_file(path), path.string());
    return gridfn_from_json(read_json(path));
}

void write_gridfn(const std::filesystem::path& path, const GridFn& f) {
    if (path.extension() == ".csv") {
        write_file_atomic(path, to_csv(f));
    } else {
        write_file_atomic(path, to_json(f).dump() + "\n");
    }
}

std::string plot_csv(const Grid& g, std::span<const double> values, const std::string& column) {
    if (values.size() != g.size()) throw Error("plot data: value count does not match the grid");
    std::string out = g.dim() == 1 ? "x," + column + "\n" : "x,y," + column + "\n";
    for (std::size_t k = 0; k < g.size(); ++k) {
        const Point p = g.point(k);
        out += format_number(p[0]);
        out += ',';
        if (g.dim() == 2) {
            out += format_number(p[1]);
            out += ',';
        }
        out += format_number(values[k]);
        out += '\n';
    }
    return out;
}

std::string pgm(const Grid& g, std::span<const std::uint8_t> bits) {
    if (g.dim() != 2) throw Error("PGM export needs a 2D grid");
    if (bits.size() != g.size()) throw Error("PGM export: mask size does not match the grid");
    const std::size_t w = g.count(0), h = g.count(1);
    std::string out = "P5\n" + std::to_string(w) + " " + std::to_string(h) + "\n255\n";
    out.reserve(out.size() + w * h);
    for (std::size_t r = 0; r < h; ++r) {
        const std::size_t j = h - 1 - r;
        for (std::size_t i = 0; i < w; ++i) out += static_cast<char>(bits[g.flat(i, j)] ? 255 : 0);
    }
    return out;
}

void write_file_atomic(const std::filesystem::path& path, std::string_view content) {
    const std::filesystem::path tmp = path.string() + ".tmp" + std::to_string(::getpid());
    {
        std::ofstream os(tmp, std::ios::binary | std::ios::trunc);
        if (!os) throw Error("cannot write " + tmp.string());
        os.write(content.data(), static_cast<std::streamsize>(content.size()));
        if (!os) throw Error("write failed: " + tmp.string());
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
        std::filesystem::remove(tmp);
        throw Error("cannot rename onto " + path.string() + ": " + ec.message());
    }
}

std::string read_file(const std::filesystem::path& path) {
    std::ifstream is(path, std::ios::binary);
    if (!is) throw Error("cannot read " + path.string());
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

}  // namespace reach::io
