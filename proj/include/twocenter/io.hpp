#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <json.hpp>

#include "twocenter/emmap.hpp"
#include "twocenter/model.hpp"
#include "twocenter/orbits.hpp"
#include "twocenter/periods.hpp"

namespace twocenter {

void to_json(nlohmann::json& j, const Params& p);
void from_json(const nlohmann::json& j, Params& p);
void to_json(nlohmann::json& j, const CartesianState& s);
void from_json(const nlohmann::json& j, CartesianState& s);
void to_json(nlohmann::json& j, const PhaseState& s);
void from_json(const nlohmann::json& j, PhaseState& s);
void to_json(nlohmann::json& j, const RegionType& r);
void to_json(nlohmann::json& j, const CriticalData& c);
void to_json(nlohmann::json& j, const TorusData& t);
void to_json(nlohmann::json& j, const ModulusData& m);
namespace sturmian {
void to_json(nlohmann::json& j, const WindowPhases& w);
}

namespace io {

/// Shortest round-trip decimal form.
std::string number(double v);
/// RFC 4180 quoting when needed.
std::string csv_field(const std::string& s);

void write_trajectory_csv(std::ostream& os, const Trajectory& t);
void write_trajectory_svg(std::ostream& os, const Trajectory& t);
void write_atlas_csv(std::ostream& os, const std::vector<periods::AtlasRow>& rows);

nlohmann::json trajectory_json(const Trajectory& t);
nlohmann::json report_json(const orbits::VerifyReport& r);

}  // namespace io
}  // namespace twocenter
