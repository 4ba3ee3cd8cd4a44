/// @file matrix_market.hpp
/// @brief Matrix Market coordinate reader/writer for symmetric SPD matrices.
#pragma once

#include <iosfwd>
#include <string>

#include "recycg/csr_matrix.hpp"

namespace recycg {

/// @brief Parse a Matrix Market stream into a CsrMatrix.
///
/// Accepted headers: object `matrix`, format `coordinate`, field `real` or
/// `integer`, symmetry `general` or `symmetric`. Anything else (pattern,
/// complex, array, ...) raises ParseError. Indices are 1-based on the wire
/// and 0-based internally. For `symmetric` input each off-diagonal entry is
/// mirrored; duplicate coordinates are summed. The assembled matrix must be
/// square and passes the CsrMatrix invariants (symmetry, positive diagonal).
/// Diagnostics name the offending line where possible.
CsrMatrix parse_matrix_market(std::istream& in);

/// Parse from a file path; ParseError names the path when unreadable.
CsrMatrix load_matrix_market(const std::string& path);

/// Write in coordinate format with `general` symmetry (all stored entries).
void write_matrix_market(std::ostream& out, const CsrMatrix& a);

}  // namespace recycg
