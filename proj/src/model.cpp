#include "plume/model.hpp"

#include <cmath>
#include <json.hpp>

#include "plume/csv.hpp"
#include "plume/errors.hpp"

namespace plume {

std::vector<FeatureKind> SparseModel::active_terms(double tol) const {
    std::vector<FeatureKind> out;
    for (int q = 0; q < kNumIntrinsicKinds; ++q) {
        if (std::abs(coeff[q]) > tol) out.push_back(static_cast<FeatureKind>(q));
    }
    return out;
}

void SparseModel::validate() const {
    for (double c : coeff) {
        if (!std::isfinite(c)) throw DataError("model has a non-finite coefficient");
    }
    if (!std::isfinite(cx) || !std::isfinite(cy)) {
        throw DataError("model has non-finite advection coefficients");
    }
    if (mode == AdvectionMode::Measured && (cx != 1.0 || cy != 1.0)) {
        throw DataError("measured-advection models carry unit drift coefficients");
    }
}

std::string SparseModel::to_json(std::uint64_t config_hash, std::uint64_t seed) const {
    nlohmann::json j;
    j["library"] = library_id;
    j["mode"] = std::string(advection_mode_label(mode));
    nlohmann::json terms = nlohmann::json::object();
    for (int q = 0; q < kNumIntrinsicKinds; ++q) {
        if (coeff[q] != 0.0) terms[std::string(feature_label(static_cast<FeatureKind>(q)))] = coeff[q];
    }
    j["terms"] = terms;
    j["cx"] = cx;
    j["cy"] = cy;
    if (config_hash) j["config_hash"] = hash_hex(config_hash);
    j["seed"] = seed;
    return j.dump(2) + "\n";
}

SparseModel SparseModel::from_json_text(const std::string& text) {
    nlohmann::json j;
    try {
        j = nlohmann::json::parse(text);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("model json parse error: ") + e.what());
    }
    SparseModel m;
    try {
        m.library_id = j.value("library", std::string("C"));
        m.mode = advection_mode_from_label(j.value("mode", std::string("measured")));
        for (const auto& [label, value] : j.at("terms").items()) {
            const FeatureKind kind = feature_from_label(label);
            if (kind == FeatureKind::AdvX || kind == FeatureKind::AdvY) {
                throw DataError("advection coefficients belong in cx/cy, not terms");
            }
            m.set_coefficient(kind, value.get<double>());
        }
        m.cx = j.value("cx", 1.0);
        m.cy = j.value("cy", 1.0);
    } catch (const nlohmann::json::exception& e) {
        throw DataError(std::string("model json is missing fields: ") + e.what());
    }
    m.validate();
    return m;
}

FitResult fit_library(const FieldSeries& field, const DriftSeries* drift,
                      const FeatureLibrary& library, FrameWindow train,
                      const TestFunctionSpec& spec, const StlsqConfig& cfg) {
    FitResult result;
    result.centres = sample_centres(field.grid(), train, spec);
    WeakSystem full =
        assemble_weak_system(field, drift, library, train, spec, result.centres);

    const bool measured = library.advection_mode == AdvectionMode::Measured;
    if (measured && library.has_advection()) {
        // drift imposed with unit coefficient: move its columns onto b and
        // regress only the intrinsic terms
        WeakSystem reduced;
        reduced.b = full.b;
        std::vector<int> keep;
        for (int c = 0; c < static_cast<int>(full.columns.size()); ++c) {
            if (full.columns[c] == FeatureKind::AdvX || full.columns[c] == FeatureKind::AdvY) {
                reduced.b -= full.theta.col(c);
            } else {
                keep.push_back(c);
            }
        }
        reduced.theta.resize(full.theta.rows(), static_cast<Eigen::Index>(keep.size()));
        for (std::size_t c = 0; c < keep.size(); ++c) {
            reduced.theta.col(static_cast<Eigen::Index>(c)) = full.theta.col(keep[c]);
            reduced.columns.push_back(full.columns[keep[c]]);
        }
        result.system = std::move(reduced);
    } else {
        result.system = std::move(full);
    }

    result.stlsq = stlsq(result.system.theta, result.system.b, cfg);

    SparseModel& model = result.model;
    model.library_id = library.id;
    model.mode = library.advection_mode;
    model.cx = measured ? 1.0 : 0.0;
    model.cy = measured ? 1.0 : 0.0;
    for (std::size_t c = 0; c < result.system.columns.size(); ++c) {
        const FeatureKind kind = result.system.columns[c];
        const double value = result.stlsq.xi[static_cast<Eigen::Index>(c)];
        if (kind == FeatureKind::AdvX) {
            model.cx = value;
        } else if (kind == FeatureKind::AdvY) {
            model.cy = value;
        } else {
            model.set_coefficient(kind, value);
        }
    }
    return result;
}

}  // namespace plume
