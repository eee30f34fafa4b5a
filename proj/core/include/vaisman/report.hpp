#pragma once

// Machine-readable output: versioned JSON for reports, locale-free CSV for
// tables. JSON field order is fixed so that identical runs are byte-identical
// apart from the timestamp.

#include <string>
#include <vector>

#include "vaisman/brieskorn.hpp"
#include "vaisman/curvature.hpp"
#include "vaisman/flow.hpp"
#include "vaisman/ghlimit.hpp"

namespace vaisman {

inline constexpr int kSchemaVersion = 1;

std::string format_double(double v);  // shortest round-trip, '.' decimal
std::string utc_timestamp();

std::string to_json(const VerificationReport& rep, bool with_timestamp = true);
std::string to_json(const CurvatureReport& rep, bool with_timestamp = true);
std::string to_json(const std::vector<BrieskornTuple>& tuples, const std::string& command,
                    bool with_timestamp = true);
std::string to_json(const CurvatureProfile& profile, bool with_timestamp = true);

std::string to_csv(const std::vector<FlowRow>& rows);
std::string to_csv(const std::vector<DistortionRow>& rows);

struct ScalRow {
    double zeta = 0.0;
    double s_chern = 0.0;
    double torsion_sq = 0.0;
    double scal_direct = 0.0;
    double scal_formula = 0.0;
    double scal_via_relation = 0.0;
    double lc_ricci_norm = 0.0;
};
std::string to_csv(const std::vector<ScalRow>& rows);

}  // namespace vaisman
