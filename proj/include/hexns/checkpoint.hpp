#pragma once

#include <string>
#include <vector>

#include "hexns/solver.hpp"

namespace hexns {

// "HEXNS\x01" then little-endian u32 n, f64 box, time, dissipation, a, b, d,
// followed by n*n f64 vorticity values, row-major.
std::vector<unsigned char> encode_checkpoint(const FlowState& s);
FlowState decode_checkpoint(const std::vector<unsigned char>& bytes);

void write_checkpoint(const FlowState& s, const std::string& path);
// da, db, dd are recomputed from the stored vorticity.
FlowState read_checkpoint(const std::string& path);

}  // namespace hexns
