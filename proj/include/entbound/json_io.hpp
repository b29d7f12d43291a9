#ifndef ENTBOUND_JSON_IO_HPP
#define ENTBOUND_JSON_IO_HPP

#include <string>

#include <json.hpp>

#include "entbound/bounds.hpp"
#include "entbound/states.hpp"

namespace entbound::io {

using json = nlohmann::ordered_json;

/// State schema: {"dims": [...], "re": [[...]], "im": [[...]]}, row-major.
json density_to_json(const states::DensityMatrix& rho);
/// Parses the schema; throws BadInput on malformed structure. Invariants are
/// not checked here (see states::validate_density).
states::DensityMatrix density_from_json(const json& j);

json bound_report_to_json(const bounds::BoundReport& report);

void write_text_file(const std::string& path, const std::string& content);
std::string read_text_file(const std::string& path);

}  // namespace entbound::io

#endif
