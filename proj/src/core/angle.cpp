#include "torsym/angle.hpp"

#include <charconv>
#include <cmath>
#include <string>

#include "torsym/errors.hpp"

namespace torsym {

double wrap_angle(double x) {
    if (!std::isfinite(x)) {
        throw DomainError("wrap_angle: non-finite angle");
    }
    double r = x - kTwoPi * std::nearbyint(x / kTwoPi);
    // Rounding in the subtraction can land exactly on the excluded end.
    if (r >= kPi) {
        r -= kTwoPi;
    } else if (r < -kPi) {
        r += kTwoPi;
    }
    return r;
}

std::vector<double> wrap_angles(std::span<const double> x) {
    std::vector<double> out(x.size());
    for (std::size_t i = 0; i < x.size(); ++i) {
        out[i] = wrap_angle(x[i]);
    }
    return out;
}

std::vector<double> parse_angle_list(std::string_view text) {
    std::vector<double> out;
    std::size_t pos = 0;
    while (pos <= text.size()) {
        std::size_t comma = text.find(',', pos);
        if (comma == std::string_view::npos) comma = text.size();
        std::string token(text.substr(pos, comma - pos));
        // trim
        auto first = token.find_first_not_of(" \t");
        auto last = token.find_last_not_of(" \t");
        if (first == std::string::npos) {
            throw InputError("empty entry in angle list '" + std::string(text) + "'");
        }
        token = token.substr(first, last - first + 1);
        try {
            std::size_t used = 0;
            double v = std::stod(token, &used);
            if (used != token.size()) throw std::invalid_argument(token);
            out.push_back(v);
        } catch (const std::exception&) {
            throw InputError("not a number: '" + token + "'");
        }
        pos = comma + 1;
    }
    return out;
}

AngleMatrix::AngleMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, 0.0) {}

AngleMatrix::AngleMatrix(std::size_t rows, std::size_t cols, std::vector<double> values)
    : rows_(rows), cols_(cols), data_(std::move(values)) {
    if (data_.size() != rows * cols) {
        throw DomainError("AngleMatrix: value count does not match shape");
    }
    for (double& v : data_) v = wrap_angle(v);
}

void AngleMatrix::set(std::size_t i, std::size_t j, double value) {
    data_[i * cols_ + j] = wrap_angle(value);
}

}  // namespace torsym
