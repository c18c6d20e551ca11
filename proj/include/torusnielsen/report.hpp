#pragma once

#include <string>

#include <json.hpp>

#include "torusnielsen/nielsen.hpp"
#include "torusnielsen/oracle.hpp"
#include "torusnielsen/orbits.hpp"

// Text and JSON renderings. Infinity is written as "inf" in both.
namespace tn::report {

nlohmann::json to_json(const ExtNat& x);
nlohmann::json to_json(const Int& x);
nlohmann::json to_json(const orbits::OrbitStats& st);
nlohmann::json to_json(const NielsenReport& r);
nlohmann::json to_json(const FixedPointReport& r);
nlohmann::json to_json(const oracle::GaussTable& t);

std::string render_text(const orbits::OrbitStats& st);
std::string render_text(const NielsenReport& r);
std::string render_text(const FixedPointReport& r);
std::string render_text(const oracle::GaussTable& t);

}  // namespace tn::report
