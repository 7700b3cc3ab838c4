#pragma once

#include "cohcert/channels.hpp"
#include "cohcert/linalg.hpp"
#include "cohcert/types.hpp"

#include <json.hpp>

#include <string>

namespace cohcert::json_io {

using nlohmann::json;

/// Square matrices serialize as {"dim", "re", "im"}; rectangular ones as
/// {"rows", "cols", "re", "im"}. Readers accept both and validate shape.
json matrix_to_json(const Matrix& m);
Matrix matrix_from_json(const json& j);

json state_to_json(const linalg::DensityMatrix& rho);
/// Parses and validates a density matrix (Hermitian, PSD, unit trace).
linalg::DensityMatrix state_from_json(const json& j, bool allow_subnormalized = false);

json channel_to_json(const channels::KrausChannel& ch);
/// Accepts {"dim_in","dim_out","kraus":[...]} or {"dim_in","dim_out","choi":...}.
channels::KrausChannel channel_from_json(const json& j);

json load_json_file(const std::string& path);
/// Write-to-temporary-then-rename so readers never observe a partial file.
void write_json_atomic(const std::string& path, const json& j);

}  // namespace cohcert::json_io
