#pragma once

#include <string>
#include <vector>

#include "entgeo/entdetect.hpp"
#include "entgeo/infochannel.hpp"
#include "entgeo/qstate.hpp"

namespace entgeo {

/// Matrix files are JSON objects {"dims": [dA, dB], "re": [[...]], "im": [[...]]}
/// with row-major entries; "im" may be omitted for real matrices. Channel files
/// add "kraus": [{"re": ..., "im": ...}, ...] and optionally "dims_in" and
/// "dims_out"; their top-level "re"/"im" are not required.
/// Failures throw Error{Io} (file access, malformed JSON) or the validation
/// error of the constructed object.

std::string state_to_json(const DensityOperator& rho);
DensityOperator state_from_json(const std::string& text);

DensityOperator read_state(const std::string& path);
void write_state(const std::string& path, const DensityOperator& rho);

KrausChannel channel_from_json(const std::string& text);
std::string channel_to_json(const KrausChannel& ch);
KrausChannel read_channel(const std::string& path);

/// {"center": [...], "shape": [[...]], "eps": e, "ensemble_norm": eta,
///  "dims": [dA, dB], "ensemble_size": n}
std::string model_to_json(const SeparableModel& model);
SeparableModel model_from_json(const std::string& text);

SeparableModel read_model(const std::string& path);
void write_model(const std::string& path, const SeparableModel& model);

std::string read_text(const std::string& path);

// Writes to a sibling temporary file, then renames it over `path`.
void write_text_atomic(const std::string& path, const std::string& content);

}  // namespace entgeo
