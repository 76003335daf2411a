#pragma once

#include "qgcl/linalg.hpp"

#include <iosfwd>
#include <string>
#include <string_view>

namespace qgcl {

// Formats a number as "a+bi" with 12 significant digits.  Parts below
// 5e-15 in magnitude print as zero, and a vanishing imaginary part is
// omitted ("0.5", "-i", "0.5+0.5i").
std::string formatComplex(Complex z, int digits = 12);

// "rows cols" on the first line followed by one line per row.
std::string formatMatrix(const CMatrix& m, int digits = 12);

// Accepts "1", "-i", "2.5e-3", "0.5+0.5i", "-0.25-i" and similar.
Complex parseComplex(std::string_view token);

// Reads the "rows cols" header followed by rows*cols complex entries.
CMatrix parseMatrixText(std::string_view text);
CMatrix readMatrixFile(const std::string& path);

} // namespace qgcl
