#pragma once

#include "qgcl/ast.hpp"

#include <string>
#include <string_view>
#include <vector>

namespace qgcl {

// Parses declarations followed by a program body.  Throws ParseError with
// the line and column of the offending token.
ProgramFile parse(std::string_view source);
ProgramFile parseFile(const std::string& path);

// Source text that parses back to an equal program.  Declarations are
// emitted for every variable and for every non-built-in gate or
// measurement the body uses.
std::string print(const ProgramFile& file);
std::string printProgram(const ProgramPtr& program);

// Structural equality of programs (matrices compared exactly).
bool sameProgram(const ProgramPtr& a, const ProgramPtr& b);

/// Static-check finding tied to the clause of the formation rules it
/// violates.
struct Diagnostic {
    std::string clause;
    std::string message;
    SourceLoc loc;
};

std::string formatDiagnostic(const Diagnostic& d);

// Returns every violated formation rule; an empty list means the program
// is well formed.
std::vector<Diagnostic> check(const ProgramFile& file, double tol = kTolEq);
std::vector<Diagnostic> check(const ProgramPtr& program, const Registry& registry, double tol = kTolEq);

// Rewrites every quantum choice [P](guards -> branches) into
// P; qif [qvar(P)] guards -> branches fiq.
ProgramPtr desugarQChoice(const ProgramPtr& program, const Registry& registry);

} // namespace qgcl
