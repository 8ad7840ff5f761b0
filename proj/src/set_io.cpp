#include "perigeo/set_io.hpp"

#include <fstream>
#include <iomanip>
#include <sstream>
#include <vector>

namespace perigeo {
namespace {

struct Line {
    int number;
    std::vector<std::string> tokens;
};

std::vector<Line> tokenize(const std::string& text) {
    std::vector<Line> out;
    std::istringstream in(text);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
        ++number;
        std::istringstream ls(raw);
        Line line{number, {}};
        std::string tok;
        while (ls >> tok) {
            if (tok[0] == '#') break;
            line.tokens.push_back(tok);
        }
        if (!line.tokens.empty()) out.push_back(std::move(line));
    }
    return out;
}

double to_number(const std::string& tok, int line) {
    try {
        std::size_t used = 0;
        const double v = std::stod(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        return v;
    } catch (const std::exception&) {
        throw ParseError("expected a number, got '" + tok + "'", line);
    }
}

int to_count(const std::string& tok, int line) {
    const double v = to_number(tok, line);
    if (v != static_cast<int>(v)) throw ParseError("expected an integer, got '" + tok + "'", line);
    return static_cast<int>(v);
}

PeriodicSet parse_text(const std::string& text, const Tolerances& tol) {
    const auto lines = tokenize(text);
    std::size_t at = 0;
    auto next = [&](const char* what) -> const Line& {
        if (at >= lines.size()) throw ParseError(std::string("unexpected end of input, expected ") + what, 0);
        return lines[at++];
    };

    const Line& head = next("'dim n'");
    if (head.tokens.size() != 2 || head.tokens[0] != "dim") throw ParseError("expected 'dim n'", head.number);
    const int n = to_count(head.tokens[1], head.number);
    if (n < 1 || n > kMaxDim) throw ParseError("dimension must be 1, 2 or 3", head.number);

    Mat basis(n, n);
    for (int i = 0; i < n; ++i) {
        const Line& row = next("a basis vector");
        if (static_cast<int>(row.tokens.size()) != n)
            throw ParseError("basis vector needs " + std::to_string(n) + " coordinates", row.number);
        for (int j = 0; j < n; ++j) basis(j, i) = to_number(row.tokens[j], row.number);
    }
    UnitCell cell = [&] {
        try {
            return UnitCell(basis, tol);
        } catch (const DataError& e) {
            throw ParseError(e.what(), head.number);
        }
    }();

    const Line& motif_head = next("'motif m'");
    if (motif_head.tokens.size() != 2 || motif_head.tokens[0] != "motif")
        throw ParseError("expected 'motif m'", motif_head.number);
    const int m = to_count(motif_head.tokens[1], motif_head.number);
    if (m < 1) throw ParseError("motif must contain at least one point", motif_head.number);

    std::vector<Vec> frac;
    std::vector<std::string> labels;
    bool any_label = false;
    for (int i = 0; i < m; ++i) {
        const Line& row = next("a motif point");
        const int count = static_cast<int>(row.tokens.size());
        if (count != n && count != n + 1)
            throw ParseError("motif point needs " + std::to_string(n) + " fractions", row.number);
        Vec f(n);
        for (int j = 0; j < n; ++j) {
            f[j] = to_number(row.tokens[j], row.number);
            if (!(f[j] >= 0.0 && f[j] < 1.0)) throw ParseError("fraction out of range [0,1)", row.number);
        }
        frac.push_back(f);
        labels.push_back(count == n + 1 ? row.tokens[n] : "");
        any_label = any_label || count == n + 1;
    }
    if (at != lines.size()) throw ParseError("unexpected trailing content", lines[at].number);
    if (!any_label) labels.clear();
    try {
        return PeriodicSet(std::move(cell), std::move(frac), std::move(labels), tol);
    } catch (const ParseError&) {
        throw;
    } catch (const DataError& e) {
        throw ParseError(e.what(), motif_head.number);
    }
}

}  // namespace

PeriodicSet set_from_json(const nlohmann::json& j, const Tolerances& tol) {
    try {
        const int n = j.at("dim").get<int>();
        if (n < 1 || n > kMaxDim) throw DataError("dimension must be 1, 2 or 3");
        const auto& rows = j.at("basis");
        if (static_cast<int>(rows.size()) != n) throw DataError("basis needs n vectors");
        Mat basis(n, n);
        for (int i = 0; i < n; ++i) {
            if (static_cast<int>(rows[i].size()) != n) throw DataError("basis vector has wrong length");
            for (int k = 0; k < n; ++k) basis(k, i) = rows[i][k].get<double>();
        }
        std::vector<Vec> frac;
        for (const auto& p : j.at("motif")) {
            if (static_cast<int>(p.size()) != n) throw DataError("motif point has wrong length");
            Vec f(n);
            for (int k = 0; k < n; ++k) {
                f[k] = p[k].get<double>();
                if (!(f[k] >= 0.0 && f[k] < 1.0))
                    throw DataError("motif point " + std::to_string(frac.size()) + ": fraction out of range [0,1)");
            }
            frac.push_back(f);
        }
        std::vector<std::string> labels;
        if (j.contains("labels")) labels = j.at("labels").get<std::vector<std::string>>();
        return PeriodicSet(UnitCell(basis, tol), std::move(frac), std::move(labels), tol);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("malformed set JSON: ") + e.what());
    }
}

PeriodicSet parse_set(const std::string& text, const Tolerances& tol) {
    const auto first = text.find_first_not_of(" \t\r\n");
    if (first != std::string::npos && text[first] == '{') {
        nlohmann::json j;
        try {
            j = nlohmann::json::parse(text);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError(std::string("invalid JSON: ") + e.what(), 0);
        }
        return set_from_json(j, tol);
    }
    return parse_text(text, tol);
}

PeriodicSet parse_set_file(const std::string& path, const Tolerances& tol) {
    std::ifstream in(path);
    if (!in) throw DataError("cannot open '" + path + "'");
    std::stringstream buf;
    buf << in.rdbuf();
    try {
        return parse_set(buf.str(), tol);
    } catch (const ParseError& e) {
        throw ParseError(path + ": " + e.what(), e.line());
    }
}

nlohmann::json set_to_json(const PeriodicSet& set) {
    const int n = set.dim();
    nlohmann::json j;
    j["dim"] = n;
    j["basis"] = nlohmann::json::array();
    for (int i = 0; i < n; ++i) {
        std::vector<double> v(n);
        for (int k = 0; k < n; ++k) v[k] = set.cell().basis()(k, i);
        j["basis"].push_back(v);
    }
    j["motif"] = nlohmann::json::array();
    for (const Vec& f : set.fractional()) j["motif"].push_back(std::vector<double>(f.data(), f.data() + n));
    if (!set.labels().empty()) j["labels"] = set.labels();
    return j;
}

std::string write_set_text(const PeriodicSet& set) {
    const int n = set.dim();
    std::ostringstream out;
    out << std::setprecision(17);
    out << "dim " << n << '\n';
    for (int i = 0; i < n; ++i) {
        for (int k = 0; k < n; ++k) out << (k ? " " : "") << set.cell().basis()(k, i);
        out << '\n';
    }
    out << "motif " << set.size() << '\n';
    for (int i = 0; i < set.size(); ++i) {
        for (int k = 0; k < n; ++k) out << (k ? " " : "") << set.fractional()[i][k];
        if (!set.labels().empty() && !set.labels()[i].empty()) out << ' ' << set.labels()[i];
        out << '\n';
    }
    return out.str();
}

}  // namespace perigeo
