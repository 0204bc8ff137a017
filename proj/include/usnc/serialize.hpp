#pragma once

// JSON wire formats. Fields serialize as "GF(p^e)/poly=<hex>", matrices as
// flat arrays of element codes, distributions with exact rationals written
// as "num/den" strings, and outcome keys as hex-coded packed vectors.

#include <json.hpp>

#include "usnc/infoprob.hpp"
#include "usnc/netcode.hpp"

namespace usnc::serialize {

using nlohmann::ordered_json;

ordered_json matrix_to_json(const gf::Matrix& m);
gf::Matrix matrix_from_json(const gf::FieldSpecPtr& spec, const ordered_json& j);

ordered_json scenario_to_json(const netcode::Scenario& sc);
netcode::Scenario scenario_from_json(const ordered_json& j);

ordered_json packetset_to_json(const netcode::PacketSet& ps);

ordered_json dist_to_json(const infoprob::MessageDist& dist);
infoprob::MessageDist dist_from_json(const netcode::Scenario& sc,
                                     const ordered_json& j);

ordered_json load_json_file(const std::string& path);

}  // namespace usnc::serialize
