#pragma once

#include <cstdint>
#include <map>
#include <string>

#include "footcast/regression.hpp"

namespace footcast {

struct ModelStoreMeta {
    int schema_version = 1;
    std::string reference_date;
    double half_period_days = kDefaultHalfPeriodDays;
    std::string config_hash;
    std::uint64_t seed = 0;
};

// Versioned JSON document holding every team's fitted coefficients and fit
// metadata, so simulation can run without refitting.
void save_models_file(const std::string& path, const std::map<std::string, TeamModel>& models,
                      const ModelStoreMeta& meta);
std::string models_to_json(const std::map<std::string, TeamModel>& models,
                           const ModelStoreMeta& meta);

std::map<std::string, TeamModel> load_models_file(const std::string& path,
                                                  ModelStoreMeta* meta = nullptr);
std::map<std::string, TeamModel> models_from_json(const std::string& text,
                                                  ModelStoreMeta* meta = nullptr);

}  // namespace footcast
