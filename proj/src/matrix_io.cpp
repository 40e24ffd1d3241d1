#include "bergman/matrix_io.hpp"

#include <iomanip>
#include <istream>
#include <ostream>
#include <sstream>
#include <string>

#include <json.hpp>

#include "bergman/specfun.hpp"

namespace bergman {

void write_matrix_text(std::ostream& os, const OperatorMatrix& m, const std::string& config_json) {
    nlohmann::json meta = {{"spec", m.spec},
                           {"alpha", m.alpha},
                           {"degree", m.degree},
                           {"radial_cutoff", m.radial_cutoff},
                           {"rows", m.entries.rows()},
                           {"cols", m.entries.cols()},
                           {"couplings", m.couplings}};
    if (!config_json.empty()) meta["config"] = nlohmann::json::parse(config_json);
    os << "# " << meta.dump() << '\n';
    os << std::setprecision(17);
    for (Eigen::Index i = 0; i < m.entries.rows(); ++i) {
        for (Eigen::Index j = 0; j < m.entries.cols(); ++j) {
            if (j) os << ' ';
            os << m.entries(i, j).real() << ' ' << m.entries(i, j).imag();
        }
        os << '\n';
    }
}

OperatorMatrix read_matrix_text(std::istream& is) {
    std::string line;
    if (!std::getline(is, line) || line.rfind("# ", 0) != 0) throw DomainError("matrix file: missing metadata line");
    const auto meta = nlohmann::json::parse(line.substr(2));
    OperatorMatrix m;
    m.spec = meta.at("spec").get<std::string>();
    m.alpha = meta.at("alpha").get<double>();
    m.degree = meta.at("degree").get<int>();
    m.radial_cutoff = meta.at("radial_cutoff").get<int>();
    m.couplings = meta.at("couplings").get<std::vector<std::pair<int, int>>>();
    const auto rows = meta.at("rows").get<Eigen::Index>(), cols = meta.at("cols").get<Eigen::Index>();
    m.entries.resize(rows, cols);
    for (Eigen::Index i = 0; i < rows; ++i)
        for (Eigen::Index j = 0; j < cols; ++j) {
            double re, im;
            if (!(is >> re >> im)) throw DomainError("matrix file: truncated entries");
            m.entries(i, j) = {re, im};
        }
    return m;
}

void write_spectrum_csv(std::ostream& os, const std::vector<double>& values) {
    os << "index,value\n" << std::setprecision(17);
    for (std::size_t i = 0; i < values.size(); ++i) os << i + 1 << ',' << values[i] << '\n';
}

std::vector<double> read_spectrum_csv(std::istream& is) {
    std::vector<double> out;
    std::string line;
    long expected = 1;
    while (std::getline(is, line)) {
        if (line.empty() || line[0] == '#' || line == "index,value") continue;
        const auto comma = line.find(',');
        if (comma == std::string::npos) throw DomainError("spectrum csv: expected index,value on line " + std::to_string(expected));
        try {
            const long idx = std::stol(line.substr(0, comma));
            if (idx != expected) throw DomainError("spectrum csv: indices must run 1, 2, 3, ...");
            out.push_back(std::stod(line.substr(comma + 1)));
        } catch (const std::invalid_argument&) {
            throw DomainError("spectrum csv: malformed number on line " + std::to_string(expected));
        }
        ++expected;
    }
    return out;
}

}  // namespace bergman
