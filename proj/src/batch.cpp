#include "perigeo/batch.hpp"

#include "perigeo/amd.hpp"
#include "perigeo/set_io.hpp"

#include <iomanip>
#include <limits>
#include <sstream>

namespace perigeo {

BatchMode parse_batch_mode(const std::string& name) {
    if (name == "amd") return BatchMode::Amd;
    if (name == "isoset") return BatchMode::Isoset;
    if (name == "emd") return BatchMode::Emd;
    throw Error("unknown batch mode '" + name + "'");
}

std::string batch_mode_name(BatchMode mode) {
    switch (mode) {
        case BatchMode::Amd: return "amd";
        case BatchMode::Isoset: return "isoset";
        default: return "emd";
    }
}

BatchResult batch_compare(const std::vector<std::string>& paths, BatchMode mode, int k, const DrConfig& cfg,
                          const Tolerances& tol) {
    BatchResult out;
    out.mode = mode;
    std::vector<PeriodicSet> sets;
    for (const auto& p : paths) {
        try {
            sets.push_back(parse_set_file(p, tol));
            out.names.push_back(p);
        } catch (const DataError& e) {
            out.warnings.push_back(std::string("skipped: ") + e.what());
        }
    }
    const int count = static_cast<int>(sets.size());
    if (count < 2) out.warnings.push_back("fewer than two valid inputs");
    out.matrix = Eigen::MatrixXd::Zero(count, count);

    std::vector<AmdVector> amds;
    if (mode == BatchMode::Amd)
        for (const auto& s : sets) amds.push_back(amd(s, k));

    for (int i = 0; i < count; ++i) {
        if (mode == BatchMode::Isoset) out.matrix(i, i) = 1;
        for (int j = i + 1; j < count; ++j) {
            double v = 0;
            if (mode == BatchMode::Amd) {
                v = amd_linf(amds[i], amds[j]);
            } else if (sets[i].dim() != sets[j].dim()) {
                out.warnings.push_back("dimension mismatch: " + out.names[i] + " vs " + out.names[j]);
                v = mode == BatchMode::Isoset ? 0.0 : std::numeric_limits<double>::quiet_NaN();
            } else if (mode == BatchMode::Isoset) {
                v = isosets_equal(sets[i], sets[j], tol) ? 1.0 : 0.0;
            } else {
                const double alpha = common_stable_radius(sets[i], sets[j]);
                v = emd(isoset(sets[i], alpha, tol), isoset(sets[j], alpha, tol), cfg).cost;
            }
            out.matrix(i, j) = out.matrix(j, i) = v;
        }
    }
    return out;
}

std::string batch_to_csv(const BatchResult& r) {
    std::ostringstream out;
    out << std::setprecision(12) << "file";
    for (const auto& n : r.names) out << ',' << n;
    out << '\n';
    for (int i = 0; i < static_cast<int>(r.names.size()); ++i) {
        out << r.names[i];
        for (int j = 0; j < static_cast<int>(r.names.size()); ++j) {
            out << ',';
            if (r.mode == BatchMode::Isoset)
                out << (r.matrix(i, j) != 0 ? "true" : "false");
            else
                out << r.matrix(i, j);
        }
        out << '\n';
    }
    return out.str();
}

nlohmann::json batch_to_json(const BatchResult& r) {
    nlohmann::json j;
    j["schema"] = 1;
    j["mode"] = batch_mode_name(r.mode);
    j["files"] = r.names;
    j["warnings"] = r.warnings;
    j["matrix"] = nlohmann::json::array();
    for (int i = 0; i < r.matrix.rows(); ++i) {
        nlohmann::json row = nlohmann::json::array();
        for (int k = 0; k < r.matrix.cols(); ++k) {
            if (r.mode == BatchMode::Isoset)
                row.push_back(r.matrix(i, k) != 0);
            else
                row.push_back(r.matrix(i, k));
        }
        j["matrix"].push_back(row);
    }
    return j;
}

}  // namespace perigeo
