#pragma once

#include <filesystem>
#include <iosfwd>
#include <json.hpp>
#include <string>
#include <vector>

#include "osc/concomitant.hpp"
#include "osc/envelope.hpp"

namespace osc {

/// Shortest decimal string that parses back to the same double.
std::string format_double(double v);

struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;

    /// Index of a named column; throws DimensionError when absent.
    std::size_t column(const std::string& name) const;
};
CsvTable parse_csv(std::istream& in);
CsvTable read_csv(const std::filesystem::path& path);

/// Columns r, x, y, value; rows ordered by r, then x, then y.
void write_table_csv(std::ostream& out, const ConcomitantCdfTable& table);
nlohmann::json table_to_json(const ConcomitantCdfTable& table);
ConcomitantCdfTable table_from_json(const nlohmann::json& j);

/// Columns x, y, H, F, K, gap.
void write_envelope_csv(std::ostream& out, const EnvelopePair& pair);

/// Writes `content` to `path`, creating parent directories. Throws IoError.
void write_text_file(const std::filesystem::path& path, const std::string& content);

}  // namespace osc
