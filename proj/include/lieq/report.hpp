#pragma once

#include "lieq/classify.hpp"
#include "lieq/equivmap.hpp"

#include <json.hpp>

#include <string>

namespace lieq {

/// Machine-readable classification report.  Rationals are serialized as
/// decimal strings ("1/3") so exactness survives; structure constants are
/// listed as 1-based nonzero entries.
nlohmann::ordered_json report_json(const SystemSpec& s, const ClassificationReport& r);

/// Human-readable rendering carrying the same numbers.
std::string report_text(const SystemSpec& s, const ClassificationReport& r);

nlohmann::ordered_json demo_json(const EquivalenceDemoReport& r);

std::string completeness_status_string(CompletenessStatus st);

}  // namespace lieq
