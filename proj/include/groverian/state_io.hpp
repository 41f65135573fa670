#pragma once

// Plain-text state files.
//
//     # optional comments
//     qudit d=3 n=2
//     1 1 0.57735026919 0.0
//     2 2 0.57735026919 0.0
//     3 3 0.57735026919 0.0
//
// The header line fixes the register shape; every following non-comment line
// carries one basis amplitude as n 1-based labels, a real part, and an
// imaginary part. Omitted basis states are zero; duplicate label tuples are
// an error. Unless `normalize` is set, the assembled vector must have unit
// norm within 1e-9.

#include <filesystem>
#include <iosfwd>

#include "groverian/state.hpp"

namespace groverian {

QuditRegisterState read_state(std::istream& in, bool normalize = false);
QuditRegisterState read_state_file(const std::filesystem::path& path,
                                   bool normalize = false);

// Writes the header plus one line per nonzero amplitude (12 significant
// digits, LF endings); byte-stable for a given state.
void write_state(std::ostream& out, const QuditRegisterState& psi);
void write_state_file(const std::filesystem::path& path,
                      const QuditRegisterState& psi);

} // namespace groverian
