#include "osc/serialize.hpp"

#include <charconv>
#include <fstream>
#include <istream>
#include <sstream>

#include "osc/errors.hpp"

namespace osc {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

std::size_t CsvTable::column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i)
        if (header[i] == name) return i;
    throw DimensionError("csv has no column '" + name + "'");
}

CsvTable parse_csv(std::istream& in) {
    CsvTable t;
    std::string line;
    auto split = [](const std::string& s) {
        std::vector<std::string> parts;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, ',')) parts.push_back(cell);
        return parts;
    };
    if (!std::getline(in, line)) throw DimensionError("csv is empty");
    t.header = split(line);
    while (std::getline(in, line)) {
        if (line.empty()) continue;
        const auto cells = split(line);
        if (cells.size() != t.header.size()) throw DimensionError("csv row width differs from header");
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) {
            double v = 0.0;
            const auto res = std::from_chars(c.data(), c.data() + c.size(), v);
            if (res.ec != std::errc{} || res.ptr != c.data() + c.size())
                throw DimensionError("csv cell '" + c + "' is not a number");
            row.push_back(v);
        }
        t.rows.push_back(std::move(row));
    }
    return t;
}

CsvTable read_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open '" + path.string() + "'");
    return parse_csv(in);
}

void write_table_csv(std::ostream& out, const ConcomitantCdfTable& table) {
    out << "r,x,y,value\n";
    for (int r = 1; r <= table.n; ++r)
        for (std::size_t ix = 0; ix < table.nx(); ++ix)
            for (std::size_t iy = 0; iy < table.ny(); ++iy)
                out << r << ',' << format_double(table.grid_x[ix]) << ',' << format_double(table.grid_y[iy])
                    << ',' << format_double(table.at(r, ix, iy)) << '\n';
}

nlohmann::json table_to_json(const ConcomitantCdfTable& table) {
    return {{"n", table.n},           {"model", table.model}, {"tolerance", table.tol},
            {"grid_x", table.grid_x}, {"grid_y", table.grid_y}, {"values", table.values}};
}

ConcomitantCdfTable table_from_json(const nlohmann::json& j) {
    ConcomitantCdfTable t;
    t.n = j.at("n").get<int>();
    t.model = j.at("model");
    t.tol = j.at("tolerance").get<double>();
    t.grid_x = j.at("grid_x").get<std::vector<double>>();
    t.grid_y = j.at("grid_y").get<std::vector<double>>();
    t.values = j.at("values").get<std::vector<double>>();
    if (t.values.size() != static_cast<std::size_t>(t.n) * t.nx() * t.ny())
        throw DimensionError("table json: values size does not match n * |grid_x| * |grid_y|");
    return t;
}

void write_envelope_csv(std::ostream& out, const EnvelopePair& pair) {
    out << "x,y,H,F,K,gap\n";
    const std::size_t ny = pair.grid_y.size();
    for (std::size_t ix = 0; ix < pair.grid_x.size(); ++ix)
        for (std::size_t iy = 0; iy < ny; ++iy) {
            const std::size_t c = ix * ny + iy;
            out << format_double(pair.grid_x[ix]) << ',' << format_double(pair.grid_y[iy]) << ','
                << format_double(pair.lower[c]) << ',' << format_double(pair.truth[c]) << ','
                << format_double(pair.upper[c]) << ',' << format_double(pair.upper[c] - pair.lower[c]) << '\n';
        }
}

void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::error_code ec;
    if (path.has_parent_path()) {
        std::filesystem::create_directories(path.parent_path(), ec);
        if (ec) throw IoError("cannot create directory '" + path.parent_path().string() + "': " + ec.message());
    }
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw IoError("cannot open '" + path.string() + "' for writing");
    out << content;
    out.flush();
    if (!out) throw IoError("write to '" + path.string() + "' failed");
}

}  // namespace osc
