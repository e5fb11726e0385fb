#pragma once

#include <map>
#include <string>
#include <vector>

#include "adm/diagnostics.hpp"
#include "adm/field.hpp"

namespace adm {

// Fixed column schema; NaN renders as an empty cell. Values carry 17
// significant digits so rereading reproduces the doubles exactly.
extern const char* const kDiagnosticsHeader;

std::string diagnostics_csv_text(const std::vector<DiagnosticsRow>& rows,
                                 const std::map<std::string, std::string>& meta);
void write_diagnostics_csv(const std::string& path,
                           const std::vector<DiagnosticsRow>& rows,
                           const std::map<std::string, std::string>& meta);

// Binary state snapshot: magic "ADM2", u32 version, f64 L, u32 M, then the
// three real-space sample arrays v1, v2, theta, row-major, little-endian.
void write_snapshot(const std::string& path, const State& V);
State read_snapshot(const std::string& path);

void write_text_file(const std::string& path, const std::string& content);

} // namespace adm
