#include <cctype>
#include <cmath>
#include <charconv>
#include <fstream>
#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>

#include "torsym/errors.hpp"
#include "torsym/io.hpp"

namespace torsym::io {

Units parse_units(const std::string& text) {
    if (text == "rad") return Units::Radians;
    if (text == "deg") return Units::Degrees;
    throw InputError("units must be 'rad' or 'deg', got '" + text + "'");
}

double to_radians(double value, Units units) {
    return units == Units::Degrees ? value * kPi / 180.0 : value;
}

double from_radians(double value, Units units) {
    return units == Units::Degrees ? value * 180.0 / kPi : value;
}

namespace {

std::string trim(const std::string& s) {
    std::size_t b = 0;
    std::size_t e = s.size();
    while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
    while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
    return s.substr(b, e - b);
}

bool parse_double(const std::string& field, double& out) {
    const std::string t = trim(field);
    if (t.empty()) return false;
    const char* first = t.data();
    if (*first == '+') ++first;
    auto [ptr, ec] = std::from_chars(first, t.data() + t.size(), out);
    return ec == std::errc() && ptr == t.data() + t.size();
}

std::vector<std::string> split_fields(const std::string& line) {
    std::vector<std::string> fields;
    std::stringstream ss(line);
    std::string field;
    while (std::getline(ss, field, ',')) fields.push_back(field);
    if (!line.empty() && line.back() == ',') fields.emplace_back();
    return fields;
}

}  // namespace

AngleMatrix read_angle_csv(std::istream& in, Units units) {
    std::vector<double> values;
    std::size_t cols = 0;
    std::size_t rows = 0;
    std::string line;
    std::size_t line_no = 0;
    bool first_content = true;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (trim(line).empty() || trim(line).front() == '#') continue;
        const auto fields = split_fields(line);
        std::vector<double> row;
        row.reserve(fields.size());
        bool numeric = true;
        for (const auto& f : fields) {
            double v = 0.0;
            if (!parse_double(f, v)) {
                numeric = false;
                break;
            }
            row.push_back(v);
        }
        if (!numeric) {
            if (first_content) {
                first_content = false;
                cols = fields.size();
                continue;  // header
            }
            throw InputError("CSV line " + std::to_string(line_no) + ": non-numeric field");
        }
        first_content = false;
        if (cols == 0) cols = row.size();
        if (row.size() != cols) {
            throw InputError("CSV line " + std::to_string(line_no) + ": expected " + std::to_string(cols) +
                             " columns, found " + std::to_string(row.size()));
        }
        for (double v : row) {
            if (!std::isfinite(v)) throw InputError("CSV line " + std::to_string(line_no) + ": non-finite value");
            values.push_back(to_radians(v, units));
        }
        ++rows;
    }
    if (rows == 0) throw InputError("CSV contains no observations");
    return AngleMatrix(rows, cols, std::move(values));
}

AngleMatrix read_angle_csv(const std::filesystem::path& path, Units units) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open data file '" + path.string() + "'");
    return read_angle_csv(in, units);
}

void write_angle_csv(std::ostream& out, const AngleMatrix& data, Units units) {
    out << std::setprecision(17);
    for (std::size_t j = 0; j < data.cols(); ++j) out << (j ? "," : "") << "theta" << (j + 1);
    out << '\n';
    for (std::size_t i = 0; i < data.rows(); ++i) {
        for (std::size_t j = 0; j < data.cols(); ++j) {
            out << (j ? "," : "") << from_radians(data(i, j), units);
        }
        out << '\n';
    }
}

}  // namespace torsym::io
